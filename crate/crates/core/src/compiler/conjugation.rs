//! Final basis changes that align each output row with the target.

use crate::gates::BasisChange;
use crate::tableau::Tableau;

use super::lookup::ConjugationLookup;
use super::working::WorkingCircuit;
use super::{CompileError, Insertion};

/// Rows are checked letter-for-letter after each choice, so success means
/// the working circuit matches `target` up to signs.
pub(crate) fn fix(
    w: &mut WorkingCircuit,
    current: &Tableau,
    target: &Tableau,
    trace: &mut Vec<Insertion>,
) -> Result<(), CompileError> {
    let lookup = ConjugationLookup::new();
    let last = w.num_layers();
    for q in 0..w.n {
        let have = current.row(q);
        let want = target.row(q);
        let fits = |b: BasisChange| have.iter().zip(&want).all(|(&h, &t)| b.apply(h) == t);
        let class = lookup
            .get(current.diagonal_pair(q), target.diagonal_pair(q))
            .or_else(|| BasisChange::PRECEDENCE.into_iter().find(|&b| fits(b)))
            .ok_or(CompileError::ConjugationMismatch { qubit: q })?;
        if !fits(class) {
            return Err(CompileError::ConjugationMismatch { qubit: q });
        }
        if class != BasisChange::I {
            w.compose_into(last, q, class);
            trace.push(Insertion {
                qubit: q,
                slot: last,
                class,
                before_layer: None,
            });
        }
    }
    Ok(())
}
