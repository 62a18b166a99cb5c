//! Dense-matrix oracle: every built-in gate's conjugation table is checked
//! against U P U† computed from explicit unitaries.

use num_complex::Complex64 as C;
use stabcomp::{Gate, Pauli, PauliProduct, Tableau};

type M = Vec<Vec<C>>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn zeros(d: usize) -> M {
    vec![vec![c(0.0, 0.0); d]; d]
}

fn eye(d: usize) -> M {
    let mut m = zeros(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

fn mul(a: &M, b: &M) -> M {
    let d = a.len();
    let mut out = zeros(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn add(a: &M, b: &M) -> M {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

fn scale(a: &M, s: C) -> M {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

fn dagger(a: &M) -> M {
    let d = a.len();
    let mut out = zeros(d);
    for i in 0..d {
        for j in 0..d {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

fn close(a: &M, b: &M) -> bool {
    a.iter()
        .zip(b)
        .all(|(r, s)| r.iter().zip(s).all(|(x, y)| (x - y).norm() < 1e-9))
}

fn m2(a: [[C; 2]; 2]) -> M {
    a.iter().map(|r| r.to_vec()).collect()
}

fn pauli_matrix(p: Pauli) -> M {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        Pauli::I => m2([[l, o], [o, l]]),
        Pauli::X => m2([[o, l], [l, o]]),
        Pauli::Y => m2([[o, -i], [i, o]]),
        Pauli::Z => m2([[l, o], [o, -l]]),
    }
}

/// Operator on `n` qubits with `ops[q]` on qubit `q`; qubit 0 is the least
/// significant bit of the basis index.
fn tensor(ops: &[M]) -> M {
    let n = ops.len();
    let d = 1 << n;
    let mut out = zeros(d);
    for row in 0..d {
        for col in 0..d {
            let mut v = c(1.0, 0.0);
            for (q, op) in ops.iter().enumerate() {
                v *= op[(row >> q) & 1][(col >> q) & 1];
            }
            out[row][col] = v;
        }
    }
    out
}

fn product_matrix(p: &PauliProduct) -> M {
    let ops: Vec<M> = p.paulis().into_iter().map(pauli_matrix).collect();
    let m = tensor(&ops);
    if p.is_negative() {
        scale(&m, c(-1.0, 0.0))
    } else {
        m
    }
}

fn on(n: usize, placed: &[(usize, M)]) -> M {
    let mut ops: Vec<M> = (0..n).map(|_| eye(2)).collect();
    for (q, m) in placed {
        ops[*q] = m.clone();
    }
    tensor(&ops)
}

fn unitary(g: Gate) -> M {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    let x = pauli_matrix(Pauli::X);
    let y = pauli_matrix(Pauli::Y);
    let z = pauli_matrix(Pauli::Z);
    let p0 = m2([[l, o], [o, o]]);
    let p1 = m2([[o, o], [o, l]]);
    let half = c(0.5, 0.0);
    let swap = scale(
        &[
            on(2, &[]),
            on(2, &[(0, x.clone()), (1, x.clone())]),
            on(2, &[(0, y.clone()), (1, y.clone())]),
            on(2, &[(0, z.clone()), (1, z.clone())]),
        ]
        .iter()
        .fold(zeros(4), |a, b| add(&a, b)),
        half,
    );
    let cx = add(
        &on(2, &[(0, p0.clone())]),
        &on(2, &[(0, p1.clone()), (1, x.clone())]),
    );
    let cz = add(
        &on(2, &[(0, p0.clone())]),
        &on(2, &[(0, p1.clone()), (1, z.clone())]),
    );
    match g {
        Gate::I => eye(2),
        Gate::X => x,
        Gate::Y => y,
        Gate::Z => z,
        Gate::H => scale(&add(&x, &z), c(r, 0.0)),
        Gate::S => m2([[l, o], [o, i]]),
        Gate::SDag => m2([[l, o], [o, -i]]),
        Gate::SqrtX => m2([[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]]),
        Gate::SqrtXDag => m2([[c(0.5, -0.5), c(0.5, 0.5)], [c(0.5, 0.5), c(0.5, -0.5)]]),
        Gate::HXy => scale(&add(&x, &y), c(r, 0.0)),
        Gate::HYz => scale(&add(&y, &z), c(r, 0.0)),
        Gate::CXyz => m2([[c(0.5, -0.5), c(-0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]]),
        Gate::CZyx => m2([[c(0.5, 0.5), c(0.5, 0.5)], [c(-0.5, 0.5), c(0.5, -0.5)]]),
        Gate::Cx => cx,
        Gate::Cz => cz,
        // exp(-i pi/4 XX) up to phase
        Gate::SqrtXx => scale(
            &add(&on(2, &[]), &scale(&on(2, &[(0, x.clone()), (1, x)]), -i)),
            c(r, 0.0),
        ),
        // (X0 - Y0 X1) / sqrt 2
        Gate::Ecr => scale(
            &add(
                &on(2, &[(0, x.clone())]),
                &scale(&on(2, &[(0, y), (1, x)]), -l),
            ),
            c(r, 0.0),
        ),
        // (II + ZZ)/2 + i (XX + YY)/2
        Gate::ISwap => add(
            &scale(&add(&on(2, &[]), &on(2, &[(0, z.clone()), (1, z)])), half),
            &scale(
                &add(
                    &on(2, &[(0, x.clone()), (1, x)]),
                    &on(2, &[(0, y.clone()), (1, y)]),
                ),
                c(0.0, 0.5),
            ),
        ),
        Gate::Swap => swap,
        Gate::CxSwap => mul(&swap, &cx),
        Gate::CzSwap => mul(&swap, &cz),
    }
}

/// All Pauli products on `n` qubits, positive sign.
fn all_products(n: usize) -> Vec<PauliProduct> {
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            let ps: Vec<Pauli> = (0..n)
                .map(|_| {
                    let p = Pauli::ALL[k % 4];
                    k /= 4;
                    p
                })
                .collect();
            PauliProduct::from_paulis(&ps, false)
        })
        .collect()
}

#[test]
fn unitaries_are_unitary() {
    for g in Gate::ALL {
        let u = unitary(g);
        assert!(close(&mul(&u, &dagger(&u)), &eye(u.len())), "{g}");
    }
}

#[test]
fn every_builtin_matches_dense_conjugation() {
    for g in Gate::ALL {
        let n = g.arity();
        let u = unitary(g);
        let qubits: Vec<usize> = (0..n).collect();
        let t = Tableau::identity(n).append_gate(g.def(), &qubits).unwrap();
        for p in all_products(n) {
            let expected = mul(&mul(&u, &product_matrix(&p)), &dagger(&u));
            let got = t.conjugate_product(&p).unwrap();
            assert!(
                close(&product_matrix(&got), &expected),
                "{g} on {p}: got {got}"
            );
        }
    }
}

#[test]
fn gates_embedded_in_wider_registers() {
    for g in [Gate::Cx, Gate::Ecr, Gate::ISwap, Gate::CxSwap] {
        let u2 = unitary(g);
        // Role 0 on qubit 2, role 1 on qubit 0, qubit 1 idle.
        let d = 8;
        let mut u = zeros(d);
        for row in 0..d {
            for col in 0..d {
                if (row >> 1) & 1 != (col >> 1) & 1 {
                    continue;
                }
                let sub = |k: usize| ((k >> 2) & 1) | ((k & 1) << 1);
                u[row][col] = u2[sub(row)][sub(col)];
            }
        }
        let t = Tableau::identity(3).append_gate(g.def(), &[2, 0]).unwrap();
        for p in all_products(3) {
            let expected = mul(&mul(&u, &product_matrix(&p)), &dagger(&u));
            let got = t.conjugate_product(&p).unwrap();
            assert!(close(&product_matrix(&got), &expected), "{g} on {p}");
        }
    }
}

#[test]
fn commutation_matches_matrices() {
    let all = all_products(2);
    for a in &all {
        for b in &all {
            let (ma, mb) = (product_matrix(a), product_matrix(b));
            let commute = close(&mul(&ma, &mb), &mul(&mb, &ma));
            assert_eq!(a.commutes(b).unwrap(), commute, "{a} {b}");
        }
    }
}

#[test]
fn multiplication_phases_match_matrices() {
    let all = all_products(2);
    for a in &all {
        for b in &all {
            let prod = a.multiply(b).unwrap();
            let phase = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
                [prod.phase_exponent() as usize];
            let expected = mul(&product_matrix(a), &product_matrix(b));
            let mut letters = prod.product.clone();
            letters.set_negative(false);
            let got = scale(&product_matrix(&letters), phase);
            assert!(close(&got, &expected), "{a} * {b} = {prod}");
        }
    }
}
