//! The frame solver against exhaustive search and the symplectic dual basis.

use stabcomp::generators::{random_clifford_circuit, RandomCircuitSpec};
use stabcomp::pauli::{solve_frame, Pauli};
use stabcomp::{Circuit, Gate, PauliProduct, SignVector, Tableau};

fn tableaux(n: usize) -> Vec<Tableau> {
    let mut out = vec![Tableau::identity(n)];
    if n == 1 {
        for g in ["H", "S", "SQRT_X", "C_XYZ", "H_YZ"] {
            out.push(Tableau::from_circuit(
                &Circuit::parse(&format!("{g} 0")).unwrap(),
            ));
        }
        return out;
    }
    for seed in 0..6 {
        let c = random_clifford_circuit(RandomCircuitSpec {
            n,
            entangler_layers: 4,
            seed,
            entangler: if seed % 2 == 0 { Gate::Cx } else { Gate::Ecr },
        })
        .unwrap();
        out.push(Tableau::from_circuit(&c.widened(n)));
    }
    out
}

fn all_products(n: usize) -> impl Iterator<Item = PauliProduct> {
    (0..4usize.pow(n as u32)).map(move |mut k| {
        let ps: Vec<Pauli> = (0..n)
            .map(|_| {
                let p = Pauli::ALL[k % 4];
                k /= 4;
                p
            })
            .collect();
        PauliProduct::from_paulis(&ps, false)
    })
}

fn flips_of(f: &PauliProduct, images: &[PauliProduct]) -> Vec<bool> {
    images.iter().map(|im| !f.commutes(im).unwrap()).collect()
}

#[test]
fn every_flip_pattern_up_to_three_qubits() {
    for n in 1..=3 {
        for t in tableaux(n) {
            let images = t.images();
            for mask in 0..1usize << (2 * n) {
                let flags: Vec<bool> = (0..2 * n).map(|g| mask >> g & 1 == 1).collect();
                let f = solve_frame(&images, &SignVector::from_flags(flags.clone())).unwrap();
                assert_eq!(flips_of(&f, &images), flags);

                let brute: Vec<PauliProduct> = all_products(n)
                    .filter(|p| flips_of(p, &images) == flags)
                    .collect();
                assert_eq!(brute.len(), 1);
                assert!(brute[0].same_letters(&f));

                // Dual basis: the image of Z_j anticommutes only with the
                // image of X_j, and the other way round.
                let mut dual = PauliProduct::identity(n);
                for j in 0..n {
                    if flags[2 * j] {
                        dual = dual.multiply(t.image_z(j)).unwrap().product;
                    }
                    if flags[2 * j + 1] {
                        dual = dual.multiply(t.image_x(j)).unwrap().product;
                    }
                }
                assert!(dual.same_letters(&f));
            }
        }
    }
}

#[test]
fn frame_from_sign_difference() {
    let base = Circuit::parse("H 0\nTICK\nCX 0 1\nTICK\nS 1").unwrap();
    let target = Tableau::from_circuit(&base);
    for p in all_products(2) {
        let mut c = base.clone();
        let layer = stabcomp::compiler::frame_layer(&p);
        c.push_layer(layer).unwrap();
        let f = stabcomp::compiler::extract_frame(&c, &target).unwrap();
        assert!(f.same_letters(&p), "{p} vs {f}");
    }
}
