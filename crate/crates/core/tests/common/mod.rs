#![allow(dead_code)]

use stabcomp::{Circuit, Pauli, PauliProduct, Tableau};

/// H, CX pairs (0,1) (2,3), then (0,2), then (1,3), then H.
pub const WORKED: &str = "H 0\nTICK\nCX 0 1\nCX 2 3\nTICK\nCX 0 2\nTICK\nCX 1 3\nTICK\nH 0\n";

/// Weight-4 X-stabiliser measurement with ancilla 0.
pub const WEIGHT_FOUR: &str =
    "H 0\nTICK\nCX 0 1\nTICK\nCX 0 2\nTICK\nCX 0 3\nTICK\nCX 0 4\nTICK\nH 0\n";

/// The compiled worked example in S and SQRT_X as it is usually drawn.
pub const WORKED_ECR_NATIVE: &str =
    "S 0\nTICK\nSQRT_X 0\nTICK\nS 0\nTICK\nECR 0 1\nECR 2 3\nTICK\n\
SQRT_X 1\nS 2\nTICK\nECR 0 2\nTICK\nECR 1 3\nTICK\nS 0\nS 1\nTICK\nSQRT_X 0\nSQRT_X 2\nTICK\nS 0\n";

pub fn circuit(text: &str) -> Circuit {
    Circuit::parse(text).unwrap()
}

/// Tableau written like a printed table: `signs` has one `+`/`-` per
/// generator (X0 Z0 X1 Z1 ...), and `rows[q]` lists the local letter of each
/// generator's image on qubit `q`, `_` for identity.
pub fn table(signs: &str, rows: &[&str]) -> Tableau {
    let n = rows.len();
    let signs: Vec<char> = signs.chars().filter(|c| !c.is_whitespace()).collect();
    let rows: Vec<Vec<char>> = rows
        .iter()
        .map(|r| r.chars().filter(|c| !c.is_whitespace()).collect())
        .collect();
    assert_eq!(signs.len(), 2 * n);
    let image = |g: usize| {
        let letters: Vec<Pauli> = rows
            .iter()
            .map(|r| {
                if r[g] == '_' {
                    Pauli::I
                } else {
                    Pauli::from_letter(r[g]).unwrap()
                }
            })
            .collect();
        PauliProduct::from_paulis(&letters, signs[g] == '-')
    };
    let xs = (0..n).map(|j| image(2 * j)).collect();
    let zs = (0..n).map(|j| image(2 * j + 1)).collect();
    Tableau::from_images(xs, zs).unwrap()
}
