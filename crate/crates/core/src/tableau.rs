//! Stabilizer tableaux: the images of every generator `X_j`, `Z_j` under a
//! unitary Clifford circuit.
//!
//! Storage is column-oriented. Column `X_j` is the signed product
//! `U X_j U†`; column `Z_j` likewise. In the printed table layout each
//! column is one generator and each row is one output qubit, so the entry at
//! (row `q`, column `X_j`) is the letter that `U X_j U†` places on qubit `q`.
//! The row view is derived from the columns on demand (see [`Tableau::row`]).

use std::fmt;

use thiserror::Error;

use crate::circuit::Circuit;
use crate::gates::GateDef;
use crate::pauli::{Pauli, PauliError, PauliProduct, PhaseAccumulator, SignVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("gate {gate} takes {expected} qubits, got {got}")]
    Arity {
        gate: String,
        expected: usize,
        got: usize,
    },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} repeated in one gate application")]
    RepeatedQubit(usize),
    #[error("images violate the symplectic condition")]
    NotSymplectic,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    n: usize,
    image_x: Vec<PauliProduct>,
    image_z: Vec<PauliProduct>,
}

impl Tableau {
    /// The standard initial tableau: `X_j -> +X_j`, `Z_j -> +Z_j`.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            image_x: (0..n)
                .map(|j| PauliProduct::single(n, j, Pauli::X))
                .collect(),
            image_z: (0..n)
                .map(|j| PauliProduct::single(n, j, Pauli::Z))
                .collect(),
        }
    }

    /// Build from explicit images, checking sizes, Hermitian signs and the
    /// symplectic condition.
    pub fn from_images(
        image_x: Vec<PauliProduct>,
        image_z: Vec<PauliProduct>,
    ) -> Result<Self, TableauError> {
        let n = image_x.len();
        if image_z.len() != n {
            return Err(TableauError::SizeMismatch(n, image_z.len()));
        }
        if let Some(p) = image_x.iter().chain(&image_z).find(|p| p.num_qubits() != n) {
            return Err(TableauError::SizeMismatch(n, p.num_qubits()));
        }
        let t = Self {
            n,
            image_x,
            image_z,
        };
        if !t.is_symplectic() {
            return Err(TableauError::NotSymplectic);
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn image_x(&self, j: usize) -> &PauliProduct {
        &self.image_x[j]
    }

    pub fn image_z(&self, j: usize) -> &PauliProduct {
        &self.image_z[j]
    }

    /// Image of generator `g` in the order `X_0, Z_0, X_1, Z_1, …`.
    pub fn image(&self, g: usize) -> &PauliProduct {
        if g % 2 == 0 {
            &self.image_x[g / 2]
        } else {
            &self.image_z[g / 2]
        }
    }

    /// All `2n` images in generator order.
    pub fn images(&self) -> Vec<PauliProduct> {
        (0..2 * self.n).map(|g| self.image(g).clone()).collect()
    }

    /// Row view: the letter each generator image places on qubit `q`, in
    /// generator order.
    pub fn row(&self, q: usize) -> Vec<Pauli> {
        (0..2 * self.n).map(|g| self.image(g).get(q)).collect()
    }

    /// Wire-`q` components of the images of `X_j` and `Z_j`.
    pub fn local_pair(&self, j: usize, q: usize) -> (Pauli, Pauli) {
        (self.image_x[j].get(q), self.image_z[j].get(q))
    }

    /// Diagonal entry for qubit `j`: `local_pair(j, j)`.
    pub fn diagonal_pair(&self, j: usize) -> (Pauli, Pauli) {
        self.local_pair(j, j)
    }

    pub fn signs(&self) -> SignVector {
        SignVector::from_flags(
            (0..2 * self.n)
                .map(|g| self.image(g).is_negative())
                .collect(),
        )
    }

    /// `X_j` images anticommute with `Z_j` images; every other pair commutes.
    pub fn is_symplectic(&self) -> bool {
        for a in 0..2 * self.n {
            for b in a + 1..2 * self.n {
                let expect_anti = a / 2 == b / 2;
                if self.image(a).anticommutes_unchecked(self.image(b)) != expect_anti {
                    return false;
                }
            }
        }
        true
    }

    fn check_qubits(&self, def: &GateDef, qubits: &[usize]) -> Result<(), TableauError> {
        if qubits.len() != def.arity() {
            return Err(TableauError::Arity {
                gate: def.name().to_string(),
                expected: def.arity(),
                got: qubits.len(),
            });
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.n {
                return Err(TableauError::QubitOutOfRange {
                    qubit: q,
                    n: self.n,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(TableauError::RepeatedQubit(q));
            }
        }
        Ok(())
    }

    /// Append `def` acting on `qubits`: every image is conjugated through the
    /// gate.
    pub fn apply(&mut self, def: &GateDef, qubits: &[usize]) -> Result<(), TableauError> {
        self.check_qubits(def, qubits)?;
        self.apply_unchecked(def, qubits);
        Ok(())
    }

    pub(crate) fn apply_unchecked(&mut self, def: &GateDef, qubits: &[usize]) {
        let action = def.local_action();
        for p in self.image_x.iter_mut().chain(self.image_z.iter_mut()) {
            p.conjugate_local(action, qubits);
        }
        debug_assert!(self.n > 12 || self.is_symplectic());
    }

    /// Functional form of [`Tableau::apply`].
    pub fn append_gate(mut self, def: &GateDef, qubits: &[usize]) -> Result<Self, TableauError> {
        self.apply(def, qubits)?;
        Ok(self)
    }

    /// Left-to-right fold of every instruction over the identity tableau.
    pub fn from_circuit(circuit: &Circuit) -> Self {
        let mut t = Self::identity(circuit.num_qubits());
        for inst in circuit.instructions() {
            t.apply_unchecked(inst.gate().def(), inst.qubits());
        }
        t
    }

    /// Image of an arbitrary product, built from the generator images by the
    /// distributive property.
    pub fn conjugate_product(&self, p: &PauliProduct) -> Result<PauliProduct, TableauError> {
        if p.num_qubits() != self.n {
            return Err(TableauError::SizeMismatch(self.n, p.num_qubits()));
        }
        let mut acc = PhaseAccumulator::identity(self.n);
        if p.is_negative() {
            acc.mul_i(2);
        }
        for q in p.support() {
            let (x, z) = p.get(q).bits();
            if x && z {
                // Y = i X Z
                acc.mul_i(1);
            }
            if x {
                acc.mul_assign(&self.image_x[q]);
            }
            if z {
                acc.mul_assign(&self.image_z[q]);
            }
        }
        Ok(acc.finish().into_hermitian()?)
    }

    /// Exact equality including signs.
    pub fn equal(&self, other: &Self) -> bool {
        self == other
    }

    /// When every image agrees letter-for-letter, returns the per-generator
    /// sign discrepancies (`-1` where the signs differ).
    pub fn equal_up_to_sign(&self, other: &Self) -> Option<SignVector> {
        if self.n != other.n {
            return None;
        }
        let mut flips = SignVector::all_positive(self.n);
        for g in 0..2 * self.n {
            let (a, b) = (self.image(g), other.image(g));
            if !a.same_letters(b) {
                return None;
            }
            flips.set(g, a.is_negative() != b.is_negative());
        }
        Some(flips)
    }

    /// Generators whose image supports differ between the two tableaux.
    pub fn support_mismatches(&self, other: &Self) -> Vec<usize> {
        (0..2 * self.n)
            .filter(|&g| self.image(g).support() != other.image(g).support())
            .collect()
    }

    fn check_permutation(&self, perm: &[usize]) -> Result<(), TableauError> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(TableauError::InvalidPermutation(self.n));
        }
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(TableauError::InvalidPermutation(self.n));
            }
            seen[p] = true;
        }
        Ok(())
    }

    /// Relabel qubit `q` as `perm[q]` on both the generator side and the
    /// image side (conjugation by the permutation).
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self, TableauError> {
        self.check_permutation(perm)?;
        let mut image_x = vec![PauliProduct::identity(self.n); self.n];
        let mut image_z = vec![PauliProduct::identity(self.n); self.n];
        for j in 0..self.n {
            image_x[perm[j]] = self.image_x[j].relabeled(perm);
            image_z[perm[j]] = self.image_z[j].relabeled(perm);
        }
        Ok(Self {
            n: self.n,
            image_x,
            image_z,
        })
    }

    /// Move the output on qubit `q` to qubit `perm[q]`, leaving generator
    /// labels alone. This is the tableau of the circuit followed by the wire
    /// permutation.
    pub fn relabel_outputs(&self, perm: &[usize]) -> Result<Self, TableauError> {
        self.check_permutation(perm)?;
        Ok(Self {
            n: self.n,
            image_x: self.image_x.iter().map(|p| p.relabeled(perm)).collect(),
            image_z: self.image_z.iter().map(|p| p.relabeled(perm)).collect(),
        })
    }

    /// Output permutation `perm` with `self.relabel_outputs(perm)` matching
    /// `other` letter-for-letter, if one exists.
    pub fn find_output_permutation(&self, other: &Self) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let mut by_row = std::collections::HashMap::new();
        for q in 0..other.n {
            by_row.insert(other.row(q), q);
        }
        let mut perm = Vec::with_capacity(self.n);
        for q in 0..self.n {
            perm.push(*by_row.get(&self.row(q))?);
        }
        self.check_permutation(&perm).ok()?;
        Some(perm)
    }
}

impl fmt::Display for Tableau {
    /// Table layout: one column pair per qubit, a sign row, then one row per
    /// output qubit with `_` for identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let digits = n.saturating_sub(1).to_string().len();
        let cell = digits + 1;
        let label = digits.max(1);
        let mut lines = Vec::with_capacity(n + 2);

        let mut header = format!("{:>label$} |", "");
        let mut signs = format!("{:>label$} |", "±");
        for j in 0..n {
            if j > 0 {
                header.push_str(" |");
                signs.push_str(" |");
            }
            header.push_str(&format!(
                " {:<cell$} {:<cell$}",
                format!("X{j}"),
                format!("Z{j}")
            ));
            let s = |p: &PauliProduct| if p.is_negative() { "-" } else { "+" };
            signs.push_str(&format!(
                " {:<cell$} {:<cell$}",
                s(&self.image_x[j]),
                s(&self.image_z[j])
            ));
        }
        lines.push(header);
        lines.push(signs);
        for q in 0..n {
            let mut row = format!("{:>label$} |", q);
            for j in 0..n {
                if j > 0 {
                    row.push_str(" |");
                }
                let c = |p: Pauli| match p {
                    Pauli::I => "_".to_string(),
                    other => other.to_string(),
                };
                let (x, z) = self.local_pair(j, q);
                row.push_str(&format!(" {:<cell$} {:<cell$}", c(x), c(z)));
            }
            lines.push(row);
        }
        for line in lines {
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tableau(n={})", self.n)?;
        for j in 0..self.n {
            writeln!(f, "  X{j} -> {}", self.image_x[j])?;
            writeln!(f, "  Z{j} -> {}", self.image_z[j])?;
        }
        Ok(())
    }
}

/// Generator label for index `g`: `X3`, `Z0`, …
pub fn generator_label(g: usize) -> String {
    format!("{}{}", if g % 2 == 0 { 'X' } else { 'Z' }, g / 2)
}
