//! Greedy propagation fixing, one qubit at a time.

use crate::gates::{commuting_local_pauli, BasisChange, GateDef};
use crate::pauli::{Pauli, PauliProduct};
use crate::tableau::Tableau;

use super::working::WorkingCircuit;
use super::{CompileError, Insertion};

/// For each qubit `j` in ascending order, walk its entanglers and insert a
/// basis change before any entangler whose commute/spread behaviour
/// disagrees with the target images of `X_j` and `Z_j`.
pub(crate) fn fix(
    w: &mut WorkingCircuit,
    entangler: &GateDef,
    target: &Tableau,
    trace: &mut Vec<Insertion>,
) -> Result<(), CompileError> {
    let commuting = [
        commuting_local_pauli(entangler, 0),
        commuting_local_pauli(entangler, 1),
    ];
    for j in 0..w.n {
        let mut px = PauliProduct::single(w.n, j, Pauli::X);
        let mut pz = PauliProduct::single(w.n, j, Pauli::Z);
        let mut previous: Option<usize> = None;
        for l in 0..w.num_layers() {
            w.apply_slot(l, &mut px);
            w.apply_slot(l, &mut pz);
            let hit = w.layers[l].iter().find_map(|&(a, b)| {
                if a == j {
                    Some((0, b))
                } else if b == j {
                    Some((1, a))
                } else {
                    None
                }
            });
            if let Some((wire, k)) = hit {
                let c = commuting[wire].ok_or(CompileError::NoCommutingPauli)?;
                let (x, z) = (px.get(j), pz.get(j));
                if x.is_identity() || z.is_identity() || x.commutes_with(z) {
                    return Err(CompileError::IllFormedPair { qubit: j, layer: l });
                }
                let x_stays = target.image_x(j).get(k).is_identity();
                let z_stays = target.image_z(j).get(k).is_identity();
                if x_stays && z_stays {
                    return Err(CompileError::Unreachable { qubit: j, layer: l });
                }
                let ok = |x: Pauli, z: Pauli| (x == c) == x_stays && (z == c) == z_stays;
                if !ok(x, z) {
                    let class = BasisChange::PRECEDENCE
                        .into_iter()
                        .find(|b| ok(b.apply(x), b.apply(z)))
                        .ok_or(CompileError::Unreachable { qubit: j, layer: l })?;
                    let slot = previous.map_or(0, |p| p + 1);
                    let mut pending = BasisChange::I;
                    for s in slot..=l {
                        pending = pending.then(w.slots[s][j]);
                        w.slots[s][j] = BasisChange::I;
                    }
                    w.slots[slot][j] = pending.then(class);
                    px.set(j, class.apply(x));
                    pz.set(j, class.apply(z));
                    trace.push(Insertion {
                        qubit: j,
                        slot,
                        class,
                        before_layer: Some(l),
                    });
                }
                previous = Some(l);
            }
            w.apply_layer(l, entangler, &mut px);
            w.apply_layer(l, entangler, &mut pz);
        }
    }
    Ok(())
}
