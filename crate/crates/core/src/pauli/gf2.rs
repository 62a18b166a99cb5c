//! Dense GF(2) elimination for Pauli frame solving.

use super::{words_for, PauliError, PauliProduct, SignVector};

/// Augmented bit matrix, one row per constraint. Columns `0..cols` are
/// coefficients; the right-hand side lives in `rhs`.
struct System {
    cols: usize,
    rows: Vec<Vec<u64>>,
    rhs: Vec<bool>,
}

impl System {
    fn bit(row: &[u64], c: usize) -> bool {
        (row[c / 64] >> (c % 64)) & 1 == 1
    }

    /// Reduced row echelon form; returns one solution or `None` when
    /// inconsistent. Free variables are set to zero.
    fn solve(mut self) -> Option<Vec<bool>> {
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            let Some(r) = (pivot_row..self.rows.len()).find(|&r| Self::bit(&self.rows[r], c))
            else {
                continue;
            };
            self.rows.swap(pivot_row, r);
            self.rhs.swap(pivot_row, r);
            let (pivot, pivot_rhs) = (self.rows[pivot_row].clone(), self.rhs[pivot_row]);
            for r in 0..self.rows.len() {
                if r != pivot_row && Self::bit(&self.rows[r], c) {
                    for (a, b) in self.rows[r].iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                    self.rhs[r] ^= pivot_rhs;
                }
            }
            pivots.push(c);
            pivot_row += 1;
            if pivot_row == self.rows.len() {
                break;
            }
        }
        if self.rhs[pivot_row..].iter().any(|&b| b) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = self.rhs[r];
        }
        Some(x)
    }
}

/// Find a Pauli product `F` that anticommutes with `images[g]` exactly when
/// `required_flips[g]` is `-1`.
///
/// `images` must hold the `2n` generator images in the order
/// `X_0, Z_0, X_1, Z_1, …`. Appending `F` after a circuit with these images
/// flips precisely the requested generator signs. The returned product is
/// positive; its sign is a global phase.
pub fn solve_frame(
    images: &[PauliProduct],
    required_flips: &SignVector,
) -> Result<PauliProduct, PauliError> {
    let n = required_flips.num_qubits();
    if images.len() != 2 * n {
        return Err(PauliError::WrongImageCount {
            expected: 2 * n,
            got: images.len(),
        });
    }
    if let Some(bad) = images.iter().find(|p| p.num_qubits() != n) {
        return Err(PauliError::SizeMismatch(bad.num_qubits(), n));
    }
    if required_flips.all_positive_entries() {
        return Ok(PauliProduct::identity(n));
    }
    // Unknowns: fx_0..fx_{n-1}, fz_0..fz_{n-1}.
    // <F, P> = sum_j fx_j P.z_j + fz_j P.x_j.
    let w = words_for(2 * n);
    let mut rows = Vec::with_capacity(2 * n);
    for img in images {
        let mut row = vec![0u64; w];
        for q in img.support() {
            let (x, z) = img.get(q).bits();
            if z {
                row[q / 64] |= 1 << (q % 64);
            }
            if x {
                let c = n + q;
                row[c / 64] |= 1 << (c % 64);
            }
        }
        rows.push(row);
    }
    let system = System {
        cols: 2 * n,
        rows,
        rhs: required_flips.flags().to_vec(),
    };
    let sol = system.solve().ok_or(PauliError::InconsistentFrame)?;
    let mut frame = PauliProduct::identity(n);
    for q in 0..n {
        frame.set(q, super::Pauli::from_bits(sol[q], sol[n + q]));
    }
    Ok(frame)
}
