//! Signed Pauli products in binary symplectic form.
//!
//! A [`PauliProduct`] on `n` qubits stores one X bit and one Z bit per qubit
//! plus an overall sign. Qubit `j` carries `Y` exactly when both of its bits
//! are set, so the stored operator is always Hermitian (`Y` is the Hermitian
//! `Y`, not `XZ`). Products whose phase would be `±i` only appear through
//! [`PhasedProduct`], which carries an explicit imaginary flag.
//!
//! Text syntax (used by the CLI and by `Display`/`FromStr`):
//!
//! ```text
//! product := sign? body
//! sign    := "+" | "-"
//! body    := "I" | factor ("*" factor)*
//! factor  := ("X" | "Y" | "Z") index
//! index   := decimal qubit index
//! ```
//!
//! `Display` always writes the sign and lists factors in ascending qubit
//! order, e.g. `-X0*Y2`; the identity prints as `+I`.

mod gf2;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use gf2::solve_frame;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("product has imaginary phase and is not Hermitian")]
    Imaginary,
    #[error("frame system is inconsistent; images do not form a symplectic basis")]
    InconsistentFrame,
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("invalid Pauli text {0:?}")]
    Syntax(String),
}

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// `(x, z)` bits of the symplectic representation.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn is_identity(self) -> bool {
        self == Pauli::I
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    /// Letter-level product, ignoring phase.
    pub fn times(self, other: Pauli) -> Pauli {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        Pauli::from_bits(ax ^ bx, az ^ bz)
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Exponent `k` (mod 4) such that `a · b = i^k · (a*b)` for Hermitian letters,
/// summed over all qubits of two packed words.
fn word_phase(x1: u64, z1: u64, x2: u64, z2: u64) -> i64 {
    let (px1, py1, pz1) = (x1 & !z1, x1 & z1, !x1 & z1);
    let (px2, py2, pz2) = (x2 & !z2, x2 & z2, !x2 & z2);
    let plus = (px1 & py2) | (py1 & pz2) | (pz1 & px2);
    let minus = (py1 & px2) | (pz1 & py2) | (px1 & pz2);
    plus.count_ones() as i64 - minus.count_ones() as i64
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Signed Pauli product over `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliProduct {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    negative: bool,
}

impl PauliProduct {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self {
            n,
            x: vec![0; w],
            z: vec![0; w],
            negative: false,
        }
    }

    /// `+P_q` on `n` qubits.
    pub fn single(n: usize, qubit: usize, pauli: Pauli) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, pauli);
        p
    }

    pub fn from_paulis(paulis: &[Pauli], negative: bool) -> Self {
        let mut p = Self::identity(paulis.len());
        for (q, &s) in paulis.iter().enumerate() {
            p.set(q, s);
        }
        p.negative = negative;
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        assert!(
            qubit < self.n,
            "qubit {qubit} out of range for {} qubits",
            self.n
        );
        let (w, b) = (qubit / 64, qubit % 64);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        assert!(
            qubit < self.n,
            "qubit {qubit} out of range for {} qubits",
            self.n
        );
        let (w, b) = (qubit / 64, qubit % 64);
        let (x, z) = pauli.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((x as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((z as u64) << b);
    }

    pub fn paulis(&self) -> Vec<Pauli> {
        (0..self.n).map(|q| self.get(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Same operator letters, ignoring sign.
    pub fn same_letters(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Qubit indices carrying a non-identity Pauli, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, (&x, &z)) in self.x.iter().zip(&self.z).enumerate() {
            let mut bits = x | z;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(&x, &z)| (x | z).count_ones() as usize)
            .sum()
    }

    fn check_size(&self, other: &Self) -> Result<(), PauliError> {
        if self.n != other.n {
            return Err(PauliError::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Parity of the binary symplectic form; `true` means the two anticommute.
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones() & 1;
        }
        acc == 1
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_size(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    /// Operator product `self · other`, with the phase tracked exactly.
    pub fn multiply(&self, other: &Self) -> Result<PhasedProduct, PauliError> {
        self.check_size(other)?;
        let mut acc = PhaseAccumulator::from_product(self);
        acc.mul_assign(other);
        Ok(acc.finish())
    }

    /// Conjugate in place by a gate acting on `qubits`, using the gate's
    /// precomputed local action.
    pub(crate) fn conjugate_local(&mut self, action: &LocalAction, qubits: &[usize]) {
        let mut index = 0usize;
        for (w, &q) in qubits.iter().enumerate() {
            let (x, z) = self.get(q).bits();
            index |= ((x as usize) << (2 * w)) | ((z as usize) << (2 * w + 1));
        }
        if index == 0 {
            return;
        }
        let (image, negative) = action.table[index];
        for (w, &q) in qubits.iter().enumerate() {
            let x = (image >> (2 * w)) & 1 == 1;
            let z = (image >> (2 * w + 1)) & 1 == 1;
            self.set(q, Pauli::from_bits(x, z));
        }
        if negative {
            self.negate();
        }
    }

    /// Relabel qubit `q` to `perm[q]`.
    pub(crate) fn relabeled(&self, perm: &[usize]) -> Self {
        let mut out = Self::identity(self.n);
        for q in self.support() {
            out.set(perm[q], self.get(q));
        }
        out.negative = self.negative;
        out
    }

    /// Local letters on `qubits`, packed as in [`LocalAction`].
    pub(crate) fn local_index(&self, qubits: &[usize]) -> usize {
        let mut index = 0usize;
        for (w, &q) in qubits.iter().enumerate() {
            let (x, z) = self.get(q).bits();
            index |= ((x as usize) << (2 * w)) | ((z as usize) << (2 * w + 1));
        }
        index
    }
}

/// Lookup table for conjugating the local part of a product through a gate
/// on `arity` wires. Index bits: `x` of wire `w` at `2w`, `z` at `2w + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LocalAction {
    pub(crate) table: Vec<(u8, bool)>,
}

/// A Pauli product together with a possible extra factor of `i`.
///
/// The represented operator is `product` when `imaginary` is false and
/// `i · product` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasedProduct {
    pub product: PauliProduct,
    pub imaginary: bool,
}

impl PhasedProduct {
    pub fn into_hermitian(self) -> Result<PauliProduct, PauliError> {
        if self.imaginary {
            Err(PauliError::Imaginary)
        } else {
            Ok(self.product)
        }
    }

    /// Power of `i` in front of the unsigned letters.
    pub fn phase_exponent(&self) -> u8 {
        (if self.product.negative { 2 } else { 0 }) + self.imaginary as u8
    }
}

impl fmt::Display for PhasedProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.product.to_string();
        if self.imaginary {
            write!(f, "{}i{}", &s[..1], &s[1..])
        } else {
            write!(f, "{s}")
        }
    }
}

/// Running product with phase kept as a power of `i`.
pub(crate) struct PhaseAccumulator {
    letters: PauliProduct,
    exponent: i64,
}

impl PhaseAccumulator {
    pub(crate) fn identity(n: usize) -> Self {
        Self {
            letters: PauliProduct::identity(n),
            exponent: 0,
        }
    }

    pub(crate) fn from_product(p: &PauliProduct) -> Self {
        let mut letters = p.clone();
        letters.negative = false;
        Self {
            letters,
            exponent: if p.negative { 2 } else { 0 },
        }
    }

    pub(crate) fn mul_i(&mut self, k: i64) {
        self.exponent += k;
    }

    pub(crate) fn mul_assign(&mut self, rhs: &PauliProduct) {
        debug_assert_eq!(self.letters.n, rhs.n);
        let mut k = if rhs.negative { 2 } else { 0 };
        for i in 0..self.letters.x.len() {
            k += word_phase(self.letters.x[i], self.letters.z[i], rhs.x[i], rhs.z[i]);
            self.letters.x[i] ^= rhs.x[i];
            self.letters.z[i] ^= rhs.z[i];
        }
        self.exponent += k;
    }

    pub(crate) fn finish(self) -> PhasedProduct {
        let e = self.exponent.rem_euclid(4);
        let mut product = self.letters;
        product.negative = e >= 2;
        PhasedProduct {
            product,
            imaginary: e % 2 == 1,
        }
    }
}

impl fmt::Display for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        self.fmt_unsigned(f)
    }
}

impl PauliProduct {
    /// Text without the sign prefix; used where the sign carries no meaning
    /// (Pauli frames).
    pub fn unsigned_text(&self) -> String {
        struct Unsigned<'a>(&'a PauliProduct);
        impl fmt::Display for Unsigned<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_unsigned(f)
            }
        }
        Unsigned(self).to_string()
    }

    fn fmt_unsigned(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        if support.is_empty() {
            return f.write_str("I");
        }
        for (i, q) in support.into_iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}{}", self.get(q), q)?;
        }
        Ok(())
    }

    /// Parse the text syntax on `n` qubits.
    pub fn parse(text: &str, n: usize) -> Result<Self, PauliError> {
        let err = || PauliError::Syntax(text.to_string());
        let t = text.trim();
        let (negative, body) = match t.as_bytes().first() {
            Some(b'+') => (false, &t[1..]),
            Some(b'-') => (true, &t[1..]),
            _ => (false, t),
        };
        let mut p = Self::identity(n);
        p.negative = negative;
        if body == "I" {
            return Ok(p);
        }
        for factor in body.split('*') {
            let mut chars = factor.chars();
            let letter = chars.next().and_then(Pauli::from_letter).ok_or_else(err)?;
            if letter == Pauli::I {
                return Err(err());
            }
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let q: usize = digits.parse().map_err(|_| err())?;
            if q >= n || !p.get(q).is_identity() {
                return Err(err());
            }
            p.set(q, letter);
        }
        Ok(p)
    }
}

impl fmt::Debug for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliProduct({}; n={})", self, self.n)
    }
}

impl FromStr for PauliProduct {
    type Err = PauliError;

    /// Parse with the qubit count inferred as one past the largest index.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches(['+', '-']);
        let n = if body == "I" {
            0
        } else {
            body.split('*')
                .filter_map(|f| f.get(1..).and_then(|d| d.parse::<usize>().ok()))
                .max()
                .map_or(0, |m| m + 1)
        };
        Self::parse(s, n)
    }
}

/// Per-generator signs, indexed `X_0, Z_0, X_1, Z_1, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector {
    negative: Vec<bool>,
}

impl SignVector {
    pub fn all_positive(n: usize) -> Self {
        Self {
            negative: vec![false; 2 * n],
        }
    }

    pub fn from_flags(negative: Vec<bool>) -> Self {
        assert!(negative.len() % 2 == 0, "sign vector needs 2n entries");
        Self { negative }
    }

    pub fn num_qubits(&self) -> usize {
        self.negative.len() / 2
    }

    pub fn len(&self) -> usize {
        self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.negative.is_empty()
    }

    /// `+1` or `-1` for generator index `g`.
    pub fn get(&self, g: usize) -> i8 {
        if self.negative[g] {
            -1
        } else {
            1
        }
    }

    pub fn is_flipped(&self, g: usize) -> bool {
        self.negative[g]
    }

    pub fn set(&mut self, g: usize, negative: bool) {
        self.negative[g] = negative;
    }

    pub fn all_positive_entries(&self) -> bool {
        self.negative.iter().all(|&b| !b)
    }

    pub fn flags(&self) -> &[bool] {
        &self.negative
    }
}

/// Index of generator `X_q` (`z = false`) or `Z_q` (`z = true`).
pub fn generator_index(qubit: usize, z: bool) -> usize {
    2 * qubit + z as usize
}
