//! Basis-change lookup keyed by the current and desired local pairs.

use crate::gates::BasisChange;
use crate::pauli::Pauli;

/// Ordered anticommuting pairs `(X', Z')`, in table order.
pub const PAIRS: [(Pauli, Pauli); 6] = [
    (Pauli::X, Pauli::Y),
    (Pauli::X, Pauli::Z),
    (Pauli::Y, Pauli::X),
    (Pauli::Y, Pauli::Z),
    (Pauli::Z, Pauli::X),
    (Pauli::Z, Pauli::Y),
];

use BasisChange::{CXyz as XYZ, CZyx as ZYX, HXy as XY, HYz as YZ, H, I};

/// Rows: current pair. Columns: desired pair. Both in [`PAIRS`] order.
const TABLE: [[BasisChange; 6]; 6] = [
    [I, YZ, XY, XYZ, ZYX, H],
    [YZ, I, XYZ, XY, H, ZYX],
    [XY, ZYX, I, H, YZ, XYZ],
    [ZYX, XY, H, I, XYZ, YZ],
    [XYZ, H, YZ, ZYX, I, XY],
    [H, XYZ, ZYX, YZ, XY, I],
];

/// Map from (current local pair, desired local pair) to the basis change
/// whose conjugation takes one to the other, up to sign.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConjugationLookup;

impl ConjugationLookup {
    pub fn new() -> Self {
        Self
    }

    /// `None` unless both pairs are ordered anticommuting non-identity pairs.
    pub fn get(&self, current: (Pauli, Pauli), target: (Pauli, Pauli)) -> Option<BasisChange> {
        let row = PAIRS.iter().position(|&p| p == current)?;
        let col = PAIRS.iter().position(|&p| p == target)?;
        Some(TABLE[row][col])
    }

    /// All 36 cells as `(current, target, class)`.
    pub fn cells(&self) -> impl Iterator<Item = ((Pauli, Pauli), (Pauli, Pauli), BasisChange)> {
        PAIRS.into_iter().enumerate().flat_map(|(r, cur)| {
            PAIRS
                .into_iter()
                .enumerate()
                .map(move |(c, tgt)| (cur, tgt, TABLE[r][c]))
        })
    }
}
