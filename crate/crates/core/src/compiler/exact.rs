//! Entangler-by-entangler dressing solver.
//!
//! Every source entangler `E` is rewritten as `(c ⊗ d) · G · (a ⊗ b)` up
//! to Paulis, with `G` the native entangler. Pending single-qubit content is
//! pushed forward through the circuit and absorbed into the `c`, `d` slots,
//! so the result matches the source letter-for-letter by construction.

use std::collections::HashMap;

use crate::gates::{BasisChange, Gate, GateDef, GateSet};
use crate::tableau::Tableau;

use super::working::{Skeleton, WorkingCircuit};
use super::CompileError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Dressing {
    pub pre: [BasisChange; 2],
    pub post: [BasisChange; 2],
}

/// All dressings turning `native` into `source`, up to Paulis.
pub(crate) fn dressings(source: &GateDef, native: &GateDef) -> Vec<Dressing> {
    let classes = BasisChange::PRECEDENCE;
    let mut out = Vec::new();
    for c in classes {
        for d in classes {
            let mut pre = Tableau::identity(2);
            pre.apply_unchecked(c.gate().def(), &[0]);
            pre.apply_unchecked(d.gate().def(), &[1]);
            pre.apply_unchecked(native, &[0, 1]);
            for a in classes {
                for b in classes {
                    let mut t = pre.clone();
                    t.apply_unchecked(a.gate().def(), &[0]);
                    t.apply_unchecked(b.gate().def(), &[1]);
                    if t.equal_up_to_sign(source.semantics()).is_some() {
                        out.push(Dressing {
                            pre: [c, d],
                            post: [a, b],
                        });
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn solve(
    skeleton: &Skeleton,
    native: &GateDef,
    gs: &GateSet,
) -> Result<WorkingCircuit, CompileError> {
    let mut cache: HashMap<Gate, Vec<Dressing>> = HashMap::new();
    let mut w = WorkingCircuit::skeleton(skeleton.n, skeleton.pairs());
    let mut pending = vec![BasisChange::I; skeleton.n];
    for (s, layer) in skeleton.layers.iter().enumerate() {
        for (q, p) in pending.iter_mut().enumerate() {
            *p = p.then(skeleton.slots[s][q].class());
        }
        for &(gate, a, b) in layer {
            let options = cache
                .entry(gate)
                .or_insert_with(|| dressings(gate.def(), native));
            let cost = |d: &Dressing| {
                gs.class_cost(pending[a].then(d.pre[0])) + gs.class_cost(pending[b].then(d.pre[1]))
            };
            let best =
                options
                    .iter()
                    .min_by_key(|d| cost(d))
                    .ok_or(CompileError::ClassMismatch {
                        from: gate,
                        native: gs.entangler(),
                    })?;
            w.slots[s][a] = pending[a].then(best.pre[0]);
            w.slots[s][b] = pending[b].then(best.pre[1]);
            pending[a] = best.post[0];
            pending[b] = best.post[1];
        }
    }
    let last = skeleton.layers.len();
    for (q, p) in pending.into_iter().enumerate() {
        w.slots[last][q] = p.then(skeleton.slots[last][q].class());
    }
    Ok(w)
}
