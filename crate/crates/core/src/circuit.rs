//! Layered circuits and the text dialect.
//!
//! The dialect is a subset of the stim circuit format. One instruction per
//! line (`NAME t0 t1 ...`), `TICK` closes a layer, `#` starts a comment and
//! `QUBIT_COORDS` lines are skipped. Gate names are matched
//! case-insensitively. A two-qubit gate with several target pairs on one
//! line becomes one instruction per pair in the same layer.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gates::{Clifford1, Gate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: unknown gate {name:?}")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: parametric gate {name:?} is not supported")]
    Parametric { line: usize, name: String },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: qubit {qubit} used twice in one layer")]
    QubitReuse { line: usize, qubit: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate {gate} takes {expected} qubits, got {got}")]
    Arity {
        gate: Gate,
        expected: usize,
        got: usize,
    },
    #[error("qubit {0} repeated within one instruction")]
    RepeatedQubit(usize),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} used twice in one layer")]
    QubitReuse(usize),
    #[error("layer boundary {boundary} out of range (depth {depth})")]
    InvalidPosition { boundary: usize, depth: usize },
    #[error("{0} is not a single-qubit gate")]
    NotSingleQubit(Gate),
}

/// A gate applied to an ordered list of qubits. For asymmetric gates the
/// order carries the roles (`CX c t`, `ECR c t`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instruction {
    gate: Gate,
    qubits: Vec<usize>,
}

impl Instruction {
    pub fn new(gate: Gate, qubits: Vec<usize>) -> Result<Self, CircuitError> {
        if qubits.len() != gate.arity() {
            return Err(CircuitError::Arity {
                gate,
                expected: gate.arity(),
                got: qubits.len(),
            });
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(CircuitError::RepeatedQubit(qubits[0]));
        }
        Ok(Self { gate, qubits })
    }

    pub fn single(gate: Gate, qubit: usize) -> Self {
        Self::new(gate, vec![qubit]).expect("single-qubit gate")
    }

    pub fn pair(gate: Gate, a: usize, b: usize) -> Self {
        Self::new(gate, vec![a, b]).expect("two-qubit gate on distinct wires")
    }

    pub fn gate(&self) -> Gate {
        self.gate
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    fn min_qubit(&self) -> usize {
        *self.qubits.iter().min().expect("non-empty")
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gate.name())?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// Emission switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmitOptions {
    /// Replace each `ECR c t` layer with `S c; SQRT_X t`, then `CX c t`,
    /// then `X c`.
    pub expand_ecr: bool,
}

/// Layers of instructions on disjoint qubits. Layers are never empty and
/// are kept sorted by lowest qubit index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    layers: Vec<Vec<Instruction>>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            layers: Vec::new(),
        }
    }

    pub fn from_layers(n: usize, layers: Vec<Vec<Instruction>>) -> Result<Self, CircuitError> {
        let mut c = Self::new(n);
        for layer in layers {
            c.push_layer(layer)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Same circuit declared on at least `n` qubits.
    pub fn widened(mut self, n: usize) -> Self {
        self.n = self.n.max(n);
        self
    }

    pub fn layers(&self) -> &[Vec<Instruction>] {
        &self.layers
    }

    pub fn instructions(&self) -> impl Iterator<Item = &Instruction> + '_ {
        self.layers.iter().flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Append a layer. Empty layers are ignored.
    pub fn push_layer(&mut self, mut layer: Vec<Instruction>) -> Result<(), CircuitError> {
        let mut used = vec![false; self.n];
        for inst in &layer {
            for &q in inst.qubits() {
                if q >= self.n {
                    return Err(CircuitError::QubitOutOfRange {
                        qubit: q,
                        n: self.n,
                    });
                }
                if used[q] {
                    return Err(CircuitError::QubitReuse(q));
                }
                used[q] = true;
            }
        }
        if !layer.is_empty() {
            layer.sort_by_key(Instruction::min_qubit);
            self.layers.push(layer);
        }
        Ok(())
    }

    /// Concatenate `other` after `self`.
    pub fn append(&mut self, other: &Circuit) {
        self.n = self.n.max(other.n);
        self.layers.extend(other.layers.iter().cloned());
    }

    pub fn gate_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for inst in self.instructions() {
            *counts.entry(inst.gate().name().to_string()).or_insert(0) += 1;
        }
        counts
    }

    /// Number of layers.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.instructions().filter(|i| i.is_two_qubit()).count()
    }

    pub fn single_qubit_count(&self) -> usize {
        self.instructions().filter(|i| !i.is_two_qubit()).count()
    }

    pub fn parse(text: &str) -> Result<Circuit, ParseError> {
        let mut layers: Vec<Vec<Instruction>> = Vec::new();
        let mut current: Vec<Instruction> = Vec::new();
        let mut used: Vec<usize> = Vec::new();
        let mut max_qubit: Option<usize> = None;

        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let name = tokens.next().expect("non-empty line");
            let upper = name.to_ascii_uppercase();
            if upper.starts_with("QUBIT_COORDS") {
                continue;
            }
            if upper == "TICK" {
                if tokens.next().is_some() {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "TICK takes no targets".into(),
                    });
                }
                layers.push(std::mem::take(&mut current));
                used.clear();
                continue;
            }
            if let Some(open) = name.find('(') {
                return Err(ParseError::Parametric {
                    line,
                    name: name[..open].to_string(),
                });
            }
            let gate = Gate::from_name(name).ok_or_else(|| ParseError::UnknownGate {
                line,
                name: name.to_string(),
            })?;
            let targets = tokens
                .map(|t| {
                    t.parse::<usize>().map_err(|_| ParseError::Malformed {
                        line,
                        reason: format!("bad qubit target {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let arity = gate.arity();
            if targets.is_empty() || targets.len() % arity != 0 {
                return Err(ParseError::Malformed {
                    line,
                    reason: format!(
                        "{} needs a positive multiple of {arity} targets, got {}",
                        gate.name(),
                        targets.len()
                    ),
                });
            }
            for chunk in targets.chunks(arity) {
                let inst =
                    Instruction::new(gate, chunk.to_vec()).map_err(|e| ParseError::Malformed {
                        line,
                        reason: e.to_string(),
                    })?;
                for &q in chunk {
                    if used.contains(&q) {
                        return Err(ParseError::QubitReuse { line, qubit: q });
                    }
                    used.push(q);
                    max_qubit = Some(max_qubit.map_or(q, |m| m.max(q)));
                }
                current.push(inst);
            }
        }
        layers.push(current);

        let n = max_qubit.map_or(0, |m| m + 1);
        Ok(Circuit::from_layers(n, layers).expect("validated while parsing"))
    }

    pub fn emit(&self) -> String {
        self.emit_with(EmitOptions::default())
    }

    pub fn emit_with(&self, options: EmitOptions) -> String {
        let layers: Vec<Vec<Instruction>> = if options.expand_ecr {
            self.layers
                .iter()
                .flat_map(|l| expand_ecr_layer(l))
                .collect()
        } else {
            self.layers.clone()
        };
        let mut out = String::new();
        for (i, layer) in layers.iter().enumerate() {
            if i > 0 {
                out.push_str("TICK\n");
            }
            for inst in layer {
                out.push_str(&inst.to_string());
                out.push('\n');
            }
        }
        out
    }

    /// Insert a single-qubit gate on `qubit` at layer boundary `boundary`
    /// (before layer `boundary`; `depth()` means the end).
    ///
    /// The gate fuses with a single-qubit gate already adjacent on that wire
    /// when the product is a named gate, moves into a neighbouring
    /// single-qubit layer where the wire is idle, or otherwise gets a new
    /// layer. Layers holding two-qubit gates are left untouched.
    pub fn insert_single_qubit(
        &self,
        boundary: usize,
        qubit: usize,
        gate: Gate,
    ) -> Result<Circuit, CircuitError> {
        if gate.arity() != 1 {
            return Err(CircuitError::NotSingleQubit(gate));
        }
        if boundary > self.depth() {
            return Err(CircuitError::InvalidPosition {
                boundary,
                depth: self.depth(),
            });
        }
        let mut out = self.clone();
        out.n = out.n.max(qubit + 1);
        if gate == Gate::I {
            return Ok(out);
        }
        let new = Clifford1::from_gate(gate);
        let single_only = |layer: &Vec<Instruction>| layer.iter().all(|i| !i.is_two_qubit());
        let on_wire = |layer: &Vec<Instruction>| layer.iter().position(|i| i.qubits() == [qubit]);

        // Fuse with the gate just before, then just after.
        let neighbours = [
            (boundary.checked_sub(1), true),
            ((boundary < out.depth()).then_some(boundary), false),
        ];
        for (index, before) in neighbours {
            let Some(li) = index else { continue };
            if !single_only(&out.layers[li]) {
                continue;
            }
            let Some(pos) = on_wire(&out.layers[li]) else {
                continue;
            };
            let existing = Clifford1::from_gate(out.layers[li][pos].gate());
            let fused = if before {
                existing.then(&new)
            } else {
                new.then(&existing)
            };
            if fused.is_identity() {
                out.layers[li].remove(pos);
                if out.layers[li].is_empty() {
                    out.layers.remove(li);
                }
                return Ok(out);
            }
            if let Some(g) = fused.named_gate() {
                out.layers[li][pos] = Instruction::single(g, qubit);
                return Ok(out);
            }
        }
        // Free slot in a neighbouring single-qubit layer.
        for (index, _) in neighbours {
            let Some(li) = index else { continue };
            let layer = &mut out.layers[li];
            if single_only(layer) && layer.iter().all(|i| !i.qubits().contains(&qubit)) {
                layer.push(Instruction::single(gate, qubit));
                layer.sort_by_key(Instruction::min_qubit);
                return Ok(out);
            }
        }
        out.layers
            .insert(boundary, vec![Instruction::single(gate, qubit)]);
        Ok(out)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emit())
    }
}

fn expand_ecr_layer(layer: &[Instruction]) -> Vec<Vec<Instruction>> {
    if layer.iter().all(|i| i.gate() != Gate::Ecr) {
        return vec![layer.to_vec()];
    }
    let mut pre = Vec::new();
    let mut mid = Vec::new();
    let mut post = Vec::new();
    for inst in layer {
        if inst.gate() == Gate::Ecr {
            let (c, t) = (inst.qubits()[0], inst.qubits()[1]);
            pre.push(Instruction::single(Gate::S, c));
            pre.push(Instruction::single(Gate::SqrtX, t));
            mid.push(Instruction::pair(Gate::Cx, c, t));
            post.push(Instruction::single(Gate::X, c));
        } else {
            mid.push(inst.clone());
        }
    }
    [pre, mid, post]
        .into_iter()
        .map(|mut l| {
            l.sort_by_key(Instruction::min_qubit);
            l
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::Tableau;

    #[test]
    fn parse_two_layers() {
        let c = Circuit::parse("H 0\nTICK\nCX 0 1").unwrap();
        assert_eq!(c.depth(), 2);
        assert_eq!(c.instructions().count(), 2);
        assert_eq!(c.num_qubits(), 2);
    }

    #[test]
    fn multi_target_lines_split() {
        let c = Circuit::parse("cnot 0 1 2 3\nh 4 5").unwrap();
        assert_eq!(c.depth(), 1);
        assert_eq!(c.instructions().count(), 4);
        assert_eq!(c.gate_counts()["CX"], 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Circuit::parse("RX(0.3) 0"),
            Err(ParseError::Parametric { line: 1, .. })
        ));
        assert!(matches!(
            Circuit::parse("M 0"),
            Err(ParseError::UnknownGate { .. })
        ));
        assert!(matches!(
            Circuit::parse("CX 0 1 2"),
            Err(ParseError::Malformed { .. })
        ));
        assert!(matches!(
            Circuit::parse("CX 0 0"),
            Err(ParseError::Malformed { .. })
        ));
        assert!(matches!(
            Circuit::parse("H 0\nCX 0 1"),
            Err(ParseError::QubitReuse { line: 2, qubit: 0 })
        ));
    }

    #[test]
    fn comments_and_coords_ignored() {
        let c =
            Circuit::parse("# hello\nQUBIT_COORDS(1, 2) 0\nH 0 # trailing\n\nTICK\nTICK\nS 0\n")
                .unwrap();
        assert_eq!(c.depth(), 2);
    }

    #[test]
    fn emit_round_trip() {
        let text = "H 0\nS 2\nTICK\nCX 0 1\nTICK\nECR 3 2\n";
        let c = Circuit::parse(text).unwrap();
        assert_eq!(c.emit(), text);
        assert_eq!(Circuit::parse(&c.emit()).unwrap(), c);
        assert_eq!(Circuit::new(0).emit(), "");
    }

    #[test]
    fn layers_sorted_by_lowest_qubit() {
        let c = Circuit::parse("CX 3 2\nH 0\n").unwrap();
        assert_eq!(c.emit(), "H 0\nCX 3 2\n");
    }

    #[test]
    fn ecr_expansion_preserves_tableau() {
        let c = Circuit::parse("ECR 0 1\nH 2\nTICK\nECR 2 1").unwrap();
        let expanded = c.emit_with(EmitOptions { expand_ecr: true });
        assert!(!expanded.contains("ECR"));
        let d = Circuit::parse(&expanded).unwrap();
        assert_eq!(d.depth(), 6);
        assert_eq!(Tableau::from_circuit(&c), Tableau::from_circuit(&d));
    }

    #[test]
    fn insertion_fuses_to_class_gate() {
        let c = Circuit::parse("CX 0 1").unwrap();
        let c = c.insert_single_qubit(1, 1, Gate::H).unwrap();
        let c = c.insert_single_qubit(2, 1, Gate::S).unwrap();
        assert_eq!(c.emit(), "CX 0 1\nTICK\nC_ZYX 1\n");
    }

    #[test]
    fn insertion_of_identity_is_noop() {
        let c = Circuit::parse("CX 0 1").unwrap();
        assert_eq!(c.insert_single_qubit(0, 0, Gate::I).unwrap(), c);
    }

    #[test]
    fn insertion_never_touches_entangler_layers() {
        let c = Circuit::parse("ECR 0 1\nTICK\nECR 1 2").unwrap();
        let d = c.insert_single_qubit(1, 1, Gate::HYz).unwrap();
        assert_eq!(d.emit(), "ECR 0 1\nTICK\nH_YZ 1\nTICK\nECR 1 2\n");
        let e = d.insert_single_qubit(1, 0, Gate::H).unwrap();
        assert_eq!(e.emit(), "ECR 0 1\nTICK\nH 0\nH_YZ 1\nTICK\nECR 1 2\n");
        let f = e.insert_single_qubit(1, 1, Gate::HYz).unwrap();
        assert_eq!(f.emit(), "ECR 0 1\nTICK\nH 0\nTICK\nECR 1 2\n");
        assert!(c.insert_single_qubit(3, 0, Gate::H).is_err());
    }
}
