//! Benchmark circuits: rotated surface code syndrome extraction and seeded
//! random Clifford circuits.
//!
//! Surface code layout, distance `d`: data qubits sit at `(2c+1, 2r+1)` for
//! `c, r` in `0..d`. Ancillas sit at even coordinates `(2c, 2r)`: interior
//! ones (`1 <= c, r <= d-1`) are X-type when `c + r` is even, and the
//! weight-2 boundary ancillas are X-type on the top and bottom rows and
//! Z-type on the left and right columns, continuing the same checkerboard.
//! Qubit indices follow coordinates sorted by `(y, x)`.
//!
//! CX order per ancilla, as `(dx, dy)` offsets to data qubits:
//! X-type `(-1,-1) (1,-1) (-1,1) (1,1)` with the ancilla as control;
//! Z-type `(-1,-1) (-1,1) (1,-1) (1,1)` with the data qubit as control.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{Circuit, Instruction};
use crate::gates::{BasisChange, EntanglerClass, Gate};
use crate::pauli::Pauli;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("distance must be odd and at least 3, got {0}")]
    InvalidDistance(usize),
    #[error("random circuits need at least 2 qubits, got {0}")]
    TooFewQubits(usize),
    #[error("{0} is not an entangling two-qubit gate")]
    NotEntangler(Gate),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceCodeSpec {
    pub distance: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QubitRole {
    Data,
    XAncilla,
    ZAncilla,
}

/// Qubit coordinates and roles, indexed like the generated circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCodeLayout {
    pub distance: usize,
    pub coords: Vec<(usize, usize)>,
    pub roles: Vec<QubitRole>,
}

impl SurfaceCodeLayout {
    pub fn new(spec: SurfaceCodeSpec) -> Result<Self, GeneratorError> {
        let d = spec.distance;
        if d < 3 || d % 2 == 0 {
            return Err(GeneratorError::InvalidDistance(d));
        }
        let mut qubits = Vec::new();
        for r in 0..d {
            for c in 0..d {
                qubits.push(((2 * c + 1, 2 * r + 1), QubitRole::Data));
            }
        }
        for r in 0..=d {
            for c in 0..=d {
                let x_parity = (c + r) % 2 == 0;
                let interior = (1..d).contains(&c) && (1..d).contains(&r);
                let role = if interior {
                    Some(if x_parity {
                        QubitRole::XAncilla
                    } else {
                        QubitRole::ZAncilla
                    })
                } else if (r == 0 || r == d) && (1..d).contains(&c) && x_parity {
                    Some(QubitRole::XAncilla)
                } else if (c == 0 || c == d) && (1..d).contains(&r) && !x_parity {
                    Some(QubitRole::ZAncilla)
                } else {
                    None
                };
                if let Some(role) = role {
                    qubits.push(((2 * c, 2 * r), role));
                }
            }
        }
        qubits.sort_by_key(|&((x, y), _)| (y, x));
        Ok(Self {
            distance: d,
            coords: qubits.iter().map(|&(xy, _)| xy).collect(),
            roles: qubits.iter().map(|&(_, role)| role).collect(),
        })
    }

    pub fn index_of(&self, xy: (usize, usize)) -> Option<usize> {
        self.coords.iter().position(|&c| c == xy)
    }

    pub fn qubits_with(&self, role: QubitRole) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&q| self.roles[q] == role)
            .collect()
    }

    /// Data qubits adjacent to an ancilla, in its CX order; `None` where the
    /// ancilla sits on the boundary.
    pub fn schedule(&self, ancilla: usize) -> [Option<usize>; 4] {
        const X_ORDER: [(isize, isize); 4] = [(-1, -1), (1, -1), (-1, 1), (1, 1)];
        const Z_ORDER: [(isize, isize); 4] = [(-1, -1), (-1, 1), (1, -1), (1, 1)];
        let order = match self.roles[ancilla] {
            QubitRole::XAncilla => X_ORDER,
            QubitRole::ZAncilla => Z_ORDER,
            QubitRole::Data => return [None; 4],
        };
        let (x, y) = self.coords[ancilla];
        order.map(|(dx, dy)| {
            let nx = x.checked_add_signed(dx)?;
            let ny = y.checked_add_signed(dy)?;
            let q = self.index_of((nx, ny))?;
            (self.roles[q] == QubitRole::Data).then_some(q)
        })
    }
}

/// One round of syndrome extraction, without measurement or reset: a
/// Hadamard layer on X-ancillas, four CX layers, another Hadamard layer.
pub fn surface_code_syndrome_extraction(spec: SurfaceCodeSpec) -> Result<Circuit, GeneratorError> {
    let layout = SurfaceCodeLayout::new(spec)?;
    let x_ancillas = layout.qubits_with(QubitRole::XAncilla);
    let z_ancillas = layout.qubits_with(QubitRole::ZAncilla);
    let hadamards: Vec<Instruction> = x_ancillas
        .iter()
        .map(|&q| Instruction::single(Gate::H, q))
        .collect();
    let mut circuit = Circuit::new(layout.coords.len());
    circuit
        .push_layer(hadamards.clone())
        .expect("distinct qubits");
    for step in 0..4 {
        let mut layer = Vec::new();
        for &a in &x_ancillas {
            if let Some(d) = layout.schedule(a)[step] {
                layer.push(Instruction::pair(Gate::Cx, a, d));
            }
        }
        for &a in &z_ancillas {
            if let Some(d) = layout.schedule(a)[step] {
                layer.push(Instruction::pair(Gate::Cx, d, a));
            }
        }
        circuit
            .push_layer(layer)
            .expect("schedule touches each qubit once per step");
    }
    circuit.push_layer(hadamards).expect("distinct qubits");
    Ok(circuit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomCircuitSpec {
    pub n: usize,
    pub entangler_layers: usize,
    pub seed: u64,
    pub entangler: Gate,
}

/// Alternating single-qubit and entangler layers, seeded.
///
/// Each single-qubit layer gives every qubit a uniformly random element of
/// the 24 single-qubit Cliffords, written as a basis-change gate followed by
/// a Pauli (identities omitted, so it can occupy two layers). Each entangler
/// layer pairs between 1 and `n / 2` random disjoint qubit pairs in random
/// order. A single-qubit layer closes the circuit.
pub fn random_clifford_circuit(spec: RandomCircuitSpec) -> Result<Circuit, GeneratorError> {
    if spec.n < 2 {
        return Err(GeneratorError::TooFewQubits(spec.n));
    }
    if spec.entangler.arity() != 2
        || matches!(
            spec.entangler.def().entangler_class(),
            EntanglerClass::None | EntanglerClass::SwapLike
        )
    {
        return Err(GeneratorError::NotEntangler(spec.entangler));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut circuit = Circuit::new(spec.n);
    let mut qubits: Vec<usize> = (0..spec.n).collect();
    for layer in 0..=spec.entangler_layers {
        single_qubit_layer(&mut rng, spec.n, &mut circuit);
        if layer == spec.entangler_layers {
            break;
        }
        qubits.shuffle(&mut rng);
        let k = rng.gen_range(1..=spec.n / 2);
        let pairs = (0..k)
            .map(|i| Instruction::pair(spec.entangler, qubits[2 * i], qubits[2 * i + 1]))
            .collect();
        circuit.push_layer(pairs).expect("disjoint pairs");
    }
    Ok(circuit)
}

fn single_qubit_layer(rng: &mut ChaCha8Rng, n: usize, circuit: &mut Circuit) {
    let mut classes = Vec::new();
    let mut paulis = Vec::new();
    for q in 0..n {
        let class = BasisChange::ALL[rng.gen_range(0..6)];
        let pauli = Pauli::ALL[rng.gen_range(0..4)];
        if class != BasisChange::I {
            classes.push(Instruction::single(class.gate(), q));
        }
        if pauli != Pauli::I {
            paulis.push(Instruction::single(Gate::pauli(pauli), q));
        }
    }
    circuit.push_layer(classes).expect("one gate per qubit");
    circuit.push_layer(paulis).expect("one gate per qubit");
}
