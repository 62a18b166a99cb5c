//! Slot/layer view of a circuit used while compiling.
//!
//! A circuit with `L` entangler layers has `L + 1` single-qubit slots: slot
//! `s` sits just before entangler layer `s`, and slot `L` ends the circuit.
//! Slots hold basis changes only; Pauli parts are dropped and accounted for
//! by the frame.

use crate::circuit::{Circuit, Instruction};
use crate::gates::{BasisChange, Clifford1, Gate, GateDef, GateSet};
use crate::pauli::PauliProduct;
use crate::tableau::Tableau;

use super::CompileError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct WorkingCircuit {
    pub n: usize,
    /// Entangler pairs per layer, in role order.
    pub layers: Vec<Vec<(usize, usize)>>,
    pub slots: Vec<Vec<BasisChange>>,
}

impl WorkingCircuit {
    pub fn skeleton(n: usize, layers: Vec<Vec<(usize, usize)>>) -> Self {
        let slots = vec![vec![BasisChange::I; n]; layers.len() + 1];
        Self { n, layers, slots }
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn compose_into(&mut self, slot: usize, qubit: usize, class: BasisChange) {
        let cell = &mut self.slots[slot][qubit];
        *cell = cell.then(class);
    }

    /// Conjugate a product through slot `s`, letters only.
    pub fn apply_slot(&self, s: usize, p: &mut PauliProduct) {
        for q in p.support() {
            let class = self.slots[s][q];
            if class != BasisChange::I {
                p.set(q, class.apply(p.get(q)));
            }
        }
    }

    pub fn apply_layer(&self, l: usize, entangler: &GateDef, p: &mut PauliProduct) {
        for &(a, b) in &self.layers[l] {
            p.conjugate_local(entangler.local_action(), &[a, b]);
        }
    }

    /// Tableau with each slot class replaced by its representative gate.
    pub fn tableau(&self, entangler: &GateDef) -> Tableau {
        let mut t = Tableau::identity(self.n);
        for s in 0..=self.num_layers() {
            for q in 0..self.n {
                let class = self.slots[s][q];
                if class != BasisChange::I {
                    t.apply_unchecked(class.gate().def(), &[q]);
                }
            }
            if s < self.num_layers() {
                for &(a, b) in &self.layers[s] {
                    t.apply_unchecked(entangler, &[a, b]);
                }
            }
        }
        t
    }

    /// Emit with explicit gate lists per slot and wire. Logical wire `q` is
    /// emitted on physical `map[q]`; when `swap_after` is set every
    /// entangler exchanges the physical homes of its two logical wires.
    fn emit_words(
        &self,
        native: Gate,
        words: &[Vec<Vec<Gate>>],
        map: &mut [usize],
        swap_after: bool,
    ) -> Circuit {
        let mut out = Circuit::new(self.n);
        for (s, slot) in words.iter().enumerate() {
            let depth = slot.iter().map(Vec::len).max().unwrap_or(0);
            for k in 0..depth {
                let layer = slot
                    .iter()
                    .enumerate()
                    .filter_map(|(q, w)| w.get(k).map(|&g| Instruction::single(g, map[q])))
                    .collect();
                out.push_layer(layer).expect("one gate per wire");
            }
            if s < self.num_layers() {
                let mut layer = Vec::new();
                for &(a, b) in &self.layers[s] {
                    layer.push(Instruction::pair(native, map[a], map[b]));
                    if swap_after {
                        map.swap(a, b);
                    }
                }
                out.push_layer(layer).expect("disjoint pairs");
            }
        }
        out
    }

    /// One basis-change gate per occupied slot cell.
    pub fn class_circuit_mapped(
        &self,
        native: Gate,
        map: &mut [usize],
        swap_after: bool,
    ) -> Circuit {
        let words: Vec<Vec<Vec<Gate>>> = self
            .slots
            .iter()
            .map(|slot| {
                slot.iter()
                    .map(|&c| {
                        if c == BasisChange::I {
                            vec![]
                        } else {
                            vec![c.gate()]
                        }
                    })
                    .collect()
            })
            .collect();
        self.emit_words(native, &words, map, swap_after)
    }

    pub fn class_circuit(&self, native: Gate) -> Circuit {
        let mut map: Vec<usize> = (0..self.n).collect();
        self.class_circuit_mapped(native, &mut map, false)
    }

    /// Runs of slots where a wire is idle, as `(wire, first, last)`.
    fn gaps(&self) -> Vec<(usize, usize, usize)> {
        let mut start = vec![0usize; self.n];
        let mut out = Vec::new();
        for (l, layer) in self.layers.iter().enumerate() {
            for &(a, b) in layer {
                for q in [a, b] {
                    out.push((q, start[q], l));
                    start[q] = l + 1;
                }
            }
        }
        for (q, &s) in start.iter().enumerate() {
            out.push((q, s, self.num_layers()));
        }
        out
    }

    /// Native expansion. The content of each idle run on a wire is merged
    /// into one basis change and its native word is spread over the run's
    /// slots. Slot widths are chosen by covering the runs in order of their
    /// last slot, adding width as late as possible, which minimises the
    /// total number of single-qubit layers for the given words.
    pub fn native_circuit(&self, gs: &GateSet, map: &mut [usize], swap_after: bool) -> Circuit {
        let mut runs: Vec<(usize, usize, usize, Vec<Gate>)> = self
            .gaps()
            .into_iter()
            .map(|(q, lo, hi)| {
                let class = (lo..=hi).fold(BasisChange::I, |acc, s| acc.then(self.slots[s][q]));
                (q, lo, hi, gs.class_word(class))
            })
            .filter(|r| !r.3.is_empty())
            .collect();
        runs.sort_by_key(|r| (r.2, r.1));
        let mut width = vec![0usize; self.num_layers() + 1];
        for (_, lo, hi, word) in &runs {
            let have: usize = width[*lo..=*hi].iter().sum();
            if have < word.len() {
                width[*hi] += word.len() - have;
            }
        }
        let mut words = vec![vec![Vec::new(); self.n]; self.num_layers() + 1];
        for (q, lo, hi, word) in runs {
            let mut rest = word.len();
            let mut take = vec![0usize; hi - lo + 1];
            for s in (lo..=hi).rev() {
                let k = rest.min(width[s]);
                take[s - lo] = k;
                rest -= k;
            }
            let mut gates = word.into_iter();
            for s in lo..=hi {
                words[s][q].extend(gates.by_ref().take(take[s - lo]));
            }
        }
        self.emit_words(gs.entangler(), &words, map, swap_after)
    }
}

/// A circuit split into entangler layers and the exact single-qubit content
/// between them.
#[derive(Clone, Debug)]
pub(crate) struct Skeleton {
    pub n: usize,
    pub layers: Vec<Vec<(Gate, usize, usize)>>,
    pub slots: Vec<Vec<Clifford1>>,
}

impl Skeleton {
    pub fn from_circuit(c: &Circuit) -> Self {
        let n = c.num_qubits();
        let mut layers = Vec::new();
        let mut slots = vec![vec![Clifford1::IDENTITY; n]];
        for layer in c.layers() {
            let s = layers.len();
            let mut pairs = Vec::new();
            for inst in layer {
                match inst.qubits() {
                    [q] => {
                        let g = Clifford1::from_gate(inst.gate());
                        slots[s][*q] = slots[s][*q].then(&g);
                    }
                    [a, b] => pairs.push((inst.gate(), *a, *b)),
                    _ => unreachable!("gates act on one or two qubits"),
                }
            }
            if !pairs.is_empty() {
                layers.push(pairs);
                slots.push(vec![Clifford1::IDENTITY; n]);
            }
        }
        Self { n, layers, slots }
    }

    pub fn entangler_gates(&self) -> impl Iterator<Item = Gate> + '_ {
        self.layers.iter().flatten().map(|&(g, _, _)| g)
    }

    pub fn pairs(&self) -> Vec<Vec<(usize, usize)>> {
        self.layers
            .iter()
            .map(|l| l.iter().map(|&(_, a, b)| (a, b)).collect())
            .collect()
    }

    /// Read a circuit whose entanglers are all `native` into slot form.
    pub fn working(&self, native: Gate) -> Result<WorkingCircuit, CompileError> {
        if let Some(g) = self.entangler_gates().find(|&g| g != native) {
            return Err(CompileError::UnexpectedGate(g));
        }
        let mut w = WorkingCircuit::skeleton(self.n, self.pairs());
        for (s, slot) in self.slots.iter().enumerate() {
            for (q, c) in slot.iter().enumerate() {
                w.slots[s][q] = c.class();
            }
        }
        Ok(w)
    }
}
