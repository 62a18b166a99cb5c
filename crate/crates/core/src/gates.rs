//! Built-in Clifford gates, single-qubit basis changes, and native gatesets.
//!
//! Every gate is defined by its tableau (the conjugation `U P U†` of each
//! generator). Tableaux for the primitive gates are written out directly;
//! compound gates (`ECR`, `CXSWAP`, `CZSWAP`) are built by composition. The
//! `ECR` composition `S ⊗ √X`, `CX`, `X ⊗ I` is checked against its golden
//! tableau when the registry is first touched, and a mismatch aborts.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{LocalAction, Pauli, PauliProduct};
use crate::tableau::Tableau;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GateError {
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("unknown gateset {0:?}")]
    UnknownGateSet(String),
    #[error("gate {0} is not a single-qubit gate")]
    NotSingleQubit(String),
    #[error("gate {0} is not a two-qubit gate")]
    NotTwoQubit(String),
    #[error("natives {natives:?} generate {found} single-qubit Cliffords, expected 24")]
    IncompleteNatives { natives: Vec<String>, found: usize },
}

/// Equivalence class of a two-qubit Clifford under single-qubit dressing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntanglerClass {
    None,
    CxLike,
    IswapLike,
    SwapLike,
}

impl fmt::Display for EntanglerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntanglerClass::None => "none",
            EntanglerClass::CxLike => "cx_like",
            EntanglerClass::IswapLike => "iswap_like",
            EntanglerClass::SwapLike => "swap_like",
        })
    }
}

/// A named Clifford gate with exact conjugation semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateDef {
    name: String,
    arity: usize,
    semantics: Tableau,
    symmetric: bool,
    entangler_class: EntanglerClass,
    action: LocalAction,
}

impl GateDef {
    /// Wrap a one- or two-qubit tableau.
    pub fn from_tableau(name: impl Into<String>, semantics: Tableau) -> Self {
        let arity = semantics.num_qubits();
        assert!(arity == 1 || arity == 2, "gates act on one or two qubits");
        let action = local_action(&semantics);
        let (symmetric, entangler_class) = if arity == 2 {
            let swapped = semantics
                .permute_qubits(&[1, 0])
                .expect("valid permutation");
            (swapped == semantics, classify_entangler(&semantics))
        } else {
            (true, EntanglerClass::None)
        };
        Self {
            name: name.into(),
            arity,
            semantics,
            symmetric,
            entangler_class,
            action,
        }
    }

    /// Sequential composition of gates on `arity` wires.
    pub fn compose(name: impl Into<String>, arity: usize, parts: &[(Gate, &[usize])]) -> Self {
        let mut t = Tableau::identity(arity);
        for (g, qubits) in parts {
            t.apply(g.def(), qubits)
                .expect("composite parts fit the arity");
        }
        Self::from_tableau(name, t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn semantics(&self) -> &Tableau {
        &self.semantics
    }

    /// Invariant under exchanging the two wires. Single-qubit gates report
    /// `true`.
    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn entangler_class(&self) -> EntanglerClass {
        self.entangler_class
    }

    pub(crate) fn local_action(&self) -> &LocalAction {
        &self.action
    }

    /// Conjugate a single Pauli on `wire` through the gate, returning the
    /// image on the gate's own wires.
    pub fn conjugate_local(&self, wire: usize, p: Pauli) -> PauliProduct {
        let mut prod = PauliProduct::single(self.arity, wire, p);
        let qubits: Vec<usize> = (0..self.arity).collect();
        prod.conjugate_local(&self.action, &qubits);
        prod
    }
}

fn local_action(semantics: &Tableau) -> LocalAction {
    let k = semantics.num_qubits();
    let qubits: Vec<usize> = (0..k).collect();
    let table = (0..1usize << (2 * k))
        .map(|index| {
            let mut p = PauliProduct::identity(k);
            for w in 0..k {
                let x = (index >> (2 * w)) & 1 == 1;
                let z = (index >> (2 * w + 1)) & 1 == 1;
                p.set(w, Pauli::from_bits(x, z));
            }
            let image = semantics
                .conjugate_product(&p)
                .expect("tableau images are Hermitian");
            (image.local_index(&qubits) as u8, image.is_negative())
        })
        .collect();
    LocalAction { table }
}

/// Built-in gate identifiers. Names follow the stim text format, plus `ECR`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    SDag,
    SqrtX,
    SqrtXDag,
    HXy,
    HYz,
    CXyz,
    CZyx,
    Cx,
    Cz,
    SqrtXx,
    Ecr,
    ISwap,
    Swap,
    CxSwap,
    CzSwap,
}

impl Gate {
    pub const ALL: [Gate; 21] = [
        Gate::I,
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::H,
        Gate::S,
        Gate::SDag,
        Gate::SqrtX,
        Gate::SqrtXDag,
        Gate::HXy,
        Gate::HYz,
        Gate::CXyz,
        Gate::CZyx,
        Gate::Cx,
        Gate::Cz,
        Gate::SqrtXx,
        Gate::Ecr,
        Gate::ISwap,
        Gate::Swap,
        Gate::CxSwap,
        Gate::CzSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::I => "I",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::H => "H",
            Gate::S => "S",
            Gate::SDag => "S_DAG",
            Gate::SqrtX => "SQRT_X",
            Gate::SqrtXDag => "SQRT_X_DAG",
            Gate::HXy => "H_XY",
            Gate::HYz => "H_YZ",
            Gate::CXyz => "C_XYZ",
            Gate::CZyx => "C_ZYX",
            Gate::Cx => "CX",
            Gate::Cz => "CZ",
            Gate::SqrtXx => "SQRT_XX",
            Gate::Ecr => "ECR",
            Gate::ISwap => "ISWAP",
            Gate::Swap => "SWAP",
            Gate::CxSwap => "CXSWAP",
            Gate::CzSwap => "CZSWAP",
        }
    }

    /// Case-insensitive lookup by canonical name or alias (`CNOT`).
    pub fn from_name(name: &str) -> Option<Gate> {
        let upper = name.to_ascii_uppercase();
        if upper == "CNOT" {
            return Some(Gate::Cx);
        }
        Gate::ALL.into_iter().find(|g| g.name() == upper)
    }

    pub fn def(self) -> &'static GateDef {
        &registry()[self as usize]
    }

    pub fn arity(self) -> usize {
        self.def().arity()
    }

    pub fn is_pauli(self) -> bool {
        matches!(self, Gate::I | Gate::X | Gate::Y | Gate::Z)
    }

    pub fn pauli(p: Pauli) -> Gate {
        match p {
            Pauli::I => Gate::I,
            Pauli::X => Gate::X,
            Pauli::Y => Gate::Y,
            Pauli::Z => Gate::Z,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Look up a built-in gate by name.
pub fn builtin(name: &str) -> Result<&'static GateDef, GateError> {
    Gate::from_name(name)
        .map(Gate::def)
        .ok_or_else(|| GateError::UnknownGate(name.to_string()))
}

fn product(text: &str, n: usize) -> PauliProduct {
    PauliProduct::parse(text, n).expect("well-formed golden constant")
}

fn one_qubit(x: &str, z: &str) -> Tableau {
    Tableau::from_images(vec![product(x, 1)], vec![product(z, 1)]).expect("golden tableau")
}

fn two_qubit(x0: &str, z0: &str, x1: &str, z1: &str) -> Tableau {
    Tableau::from_images(
        vec![product(x0, 2), product(x1, 2)],
        vec![product(z0, 2), product(z1, 2)],
    )
    .expect("golden tableau")
}

/// ECR images, `X_0 -> -Y_0 X_1`, `Z_0 -> -Z_0`, `X_1 -> +X_1`,
/// `Z_1 -> +Z_0 Y_1`.
pub fn ecr_golden_tableau() -> Tableau {
    two_qubit("-Y0*X1", "-Z0", "+X1", "+Z0*Y1")
}

/// √XX images, from conjugation by `exp(-iπ/4 X⊗X)`.
pub fn sqrt_xx_golden_tableau() -> Tableau {
    two_qubit("+X0", "-Y0*X1", "+X1", "-X0*Y1")
}

fn build_registry() -> Vec<GateDef> {
    let prim = |g: Gate| -> Tableau {
        match g {
            Gate::I => one_qubit("+X0", "+Z0"),
            Gate::X => one_qubit("+X0", "-Z0"),
            Gate::Y => one_qubit("-X0", "-Z0"),
            Gate::Z => one_qubit("-X0", "+Z0"),
            Gate::H => one_qubit("+Z0", "+X0"),
            Gate::S => one_qubit("+Y0", "+Z0"),
            Gate::SDag => one_qubit("-Y0", "+Z0"),
            Gate::SqrtX => one_qubit("+X0", "-Y0"),
            Gate::SqrtXDag => one_qubit("+X0", "+Y0"),
            Gate::HXy => one_qubit("+Y0", "-Z0"),
            Gate::HYz => one_qubit("-X0", "+Y0"),
            Gate::CXyz => one_qubit("+Y0", "+X0"),
            Gate::CZyx => one_qubit("+Z0", "+Y0"),
            Gate::Cx => two_qubit("+X0*X1", "+Z0", "+X1", "+Z0*Z1"),
            Gate::Cz => two_qubit("+X0*Z1", "+Z0", "+Z0*X1", "+Z1"),
            Gate::SqrtXx => sqrt_xx_golden_tableau(),
            Gate::ISwap => two_qubit("+Z0*Y1", "+Z1", "+Y0*Z1", "+Z0"),
            Gate::Swap => two_qubit("+X1", "+Z1", "+X0", "+Z0"),
            Gate::Ecr | Gate::CxSwap | Gate::CzSwap => unreachable!("compound gate"),
        }
    };
    let compose = |parts: &[(Tableau, &[usize])]| -> Tableau {
        let mut t = Tableau::identity(2);
        for (sem, qubits) in parts {
            let def = GateDef::from_tableau("part", sem.clone());
            t.apply(&def, qubits).expect("valid part");
        }
        t
    };
    Gate::ALL
        .into_iter()
        .map(|g| {
            let semantics = match g {
                Gate::Ecr => {
                    let built = compose(&[
                        (prim(Gate::S), &[0]),
                        (prim(Gate::SqrtX), &[1]),
                        (prim(Gate::Cx), &[0, 1]),
                        (prim(Gate::X), &[0]),
                    ]);
                    assert_eq!(
                        built,
                        ecr_golden_tableau(),
                        "ECR decomposition disagrees with its golden tableau"
                    );
                    built
                }
                Gate::CxSwap => compose(&[(prim(Gate::Cx), &[0, 1]), (prim(Gate::Swap), &[0, 1])]),
                Gate::CzSwap => compose(&[(prim(Gate::Cz), &[0, 1]), (prim(Gate::Swap), &[0, 1])]),
                other => prim(other),
            };
            GateDef::from_tableau(g.name(), semantics)
        })
        .collect()
}

fn registry() -> &'static [GateDef] {
    static REGISTRY: OnceLock<Vec<GateDef>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

/// For each wire, which single-wire Paulis stay on their wire and which hop
/// entirely to the other wire.
fn wire_behaviour(semantics: &Tableau, wire: usize) -> (Vec<Pauli>, usize) {
    let other = 1 - wire;
    let mut stays = Vec::new();
    let mut moves = 0;
    for p in Pauli::NON_IDENTITY {
        let image = semantics
            .conjugate_product(&PauliProduct::single(2, wire, p))
            .expect("Hermitian image");
        let support = image.support();
        if support == [wire] {
            stays.push(p);
        } else if support == [other] {
            moves += 1;
        }
    }
    (stays, moves)
}

/// The non-identity Pauli on `wire` whose image stays on that wire alone,
/// when exactly one exists. Defined for two-qubit gates; `None` for
/// iSWAP-like gates.
pub fn commuting_local_pauli(def: &GateDef, wire: usize) -> Option<Pauli> {
    if def.arity() != 2 || wire > 1 {
        return None;
    }
    let (stays, _) = wire_behaviour(def.semantics(), wire);
    (stays.len() == 1).then(|| stays[0])
}

/// Classify a two-qubit tableau up to single-qubit dressing.
pub fn classify_entangler(semantics: &Tableau) -> EntanglerClass {
    if semantics.num_qubits() != 2 {
        return EntanglerClass::None;
    }
    let (stay0, move0) = wire_behaviour(semantics, 0);
    let (stay1, move1) = wire_behaviour(semantics, 1);
    match (stay0.len(), stay1.len(), move0, move1) {
        (3, 3, _, _) => EntanglerClass::None,
        (0, 0, 3, 3) => EntanglerClass::SwapLike,
        (1, 1, _, _) => EntanglerClass::CxLike,
        _ => EntanglerClass::IswapLike,
    }
}

/// Single-qubit Clifford modulo Paulis, named by its representative gate.
///
/// These six classes are the basis changes used when fixing conjugations:
/// each permutes the letters `X`, `Y`, `Z` (signs ignored).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisChange {
    I,
    H,
    #[serde(rename = "H_XY")]
    HXy,
    #[serde(rename = "H_YZ")]
    HYz,
    #[serde(rename = "C_XYZ")]
    CXyz,
    #[serde(rename = "C_ZYX")]
    CZyx,
}

impl BasisChange {
    pub const ALL: [BasisChange; 6] = [
        BasisChange::I,
        BasisChange::H,
        BasisChange::HXy,
        BasisChange::HYz,
        BasisChange::CXyz,
        BasisChange::CZyx,
    ];

    /// Tie-break order when several classes satisfy a constraint.
    pub const PRECEDENCE: [BasisChange; 6] = [
        BasisChange::I,
        BasisChange::HXy,
        BasisChange::HYz,
        BasisChange::H,
        BasisChange::CXyz,
        BasisChange::CZyx,
    ];

    pub fn gate(self) -> Gate {
        match self {
            BasisChange::I => Gate::I,
            BasisChange::H => Gate::H,
            BasisChange::HXy => Gate::HXy,
            BasisChange::HYz => Gate::HYz,
            BasisChange::CXyz => Gate::CXyz,
            BasisChange::CZyx => Gate::CZyx,
        }
    }

    pub fn name(self) -> &'static str {
        self.gate().name()
    }

    /// Letter map `(X, Y, Z) -> (self(X), self(Y), self(Z))`.
    fn images(self) -> [Pauli; 3] {
        use Pauli::*;
        match self {
            BasisChange::I => [X, Y, Z],
            BasisChange::H => [Z, Y, X],
            BasisChange::HXy => [Y, X, Z],
            BasisChange::HYz => [X, Z, Y],
            BasisChange::CXyz => [Y, Z, X],
            BasisChange::CZyx => [Z, X, Y],
        }
    }

    fn from_images(images: [Pauli; 3]) -> BasisChange {
        BasisChange::ALL
            .into_iter()
            .find(|b| b.images() == images)
            .expect("letter permutation")
    }

    /// Letter this class maps `p` to; `I` is fixed.
    pub fn apply(self, p: Pauli) -> Pauli {
        match p {
            Pauli::I => Pauli::I,
            Pauli::X => self.images()[0],
            Pauli::Y => self.images()[1],
            Pauli::Z => self.images()[2],
        }
    }

    /// `self` first, then `next`.
    pub fn then(self, next: BasisChange) -> BasisChange {
        let [x, y, z] = self.images();
        BasisChange::from_images([next.apply(x), next.apply(y), next.apply(z)])
    }

    pub fn inverse(self) -> BasisChange {
        BasisChange::ALL
            .into_iter()
            .find(|b| self.then(*b) == BasisChange::I)
            .expect("group inverse")
    }

    /// The class taking the anticommuting pair `from` to `to`, letter-wise.
    pub fn mapping(from: (Pauli, Pauli), to: (Pauli, Pauli)) -> Option<BasisChange> {
        BasisChange::PRECEDENCE
            .into_iter()
            .find(|b| b.apply(from.0) == to.0 && b.apply(from.1) == to.1)
    }

    pub fn exact(self) -> Clifford1 {
        Clifford1::from_gate(self.gate())
    }
}

impl fmt::Display for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Local product `a · b = i^k (a*b)`, returned as `(a*b, k mod 4)`.
fn local_product(a: Pauli, b: Pauli) -> (Pauli, u8) {
    use Pauli::*;
    let k = match (a, b) {
        (X, Y) | (Y, Z) | (Z, X) => 1,
        (Y, X) | (Z, Y) | (X, Z) => 3,
        _ => 0,
    };
    (a.times(b), k)
}

/// Exact single-qubit Clifford (up to global phase), stored as the signed
/// images of `X` and `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clifford1 {
    x: (Pauli, bool),
    z: (Pauli, bool),
}

impl Clifford1 {
    pub const IDENTITY: Clifford1 = Clifford1 {
        x: (Pauli::X, false),
        z: (Pauli::Z, false),
    };

    pub fn from_gate(g: Gate) -> Clifford1 {
        let def = g.def();
        assert_eq!(def.arity(), 1, "{g} is not a single-qubit gate");
        let t = def.semantics();
        let (x, z) = (t.image_x(0), t.image_z(0));
        Clifford1 {
            x: (x.get(0), x.is_negative()),
            z: (z.get(0), z.is_negative()),
        }
    }

    pub fn pauli(p: Pauli) -> Clifford1 {
        Clifford1::from_gate(Gate::pauli(p))
    }

    /// Signed image of a letter.
    pub fn conjugate(&self, p: Pauli) -> (Pauli, bool) {
        match p {
            Pauli::I => (Pauli::I, false),
            Pauli::X => self.x,
            Pauli::Z => self.z,
            Pauli::Y => {
                // Y = i X Z
                let (letter, k) = local_product(self.x.0, self.z.0);
                let negative = self.x.1 ^ self.z.1 ^ ((1 + k) % 4 == 2);
                (letter, negative)
            }
        }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Clifford1) -> Clifford1 {
        let map = |(p, neg): (Pauli, bool)| {
            let (q, n2) = next.conjugate(p);
            (q, neg ^ n2)
        };
        Clifford1 {
            x: map(self.x),
            z: map(self.z),
        }
    }

    pub fn class(&self) -> BasisChange {
        BasisChange::from_images([self.x.0, self.conjugate(Pauli::Y).0, self.z.0])
    }

    pub fn is_identity(&self) -> bool {
        *self == Clifford1::IDENTITY
    }

    /// A built-in gate with exactly this action, if any.
    pub fn named_gate(&self) -> Option<Gate> {
        Gate::ALL
            .into_iter()
            .filter(|g| g.arity() == 1)
            .find(|&g| Clifford1::from_gate(g) == *self)
    }

    /// The class representative followed by the Pauli needed to restore the
    /// exact action.
    pub fn class_and_pauli(&self) -> (BasisChange, Pauli) {
        let class = self.class();
        let rep = class.exact();
        let p = Pauli::ALL
            .into_iter()
            .find(|&p| rep.then(&Clifford1::pauli(p)) == *self)
            .expect("class representative differs by a Pauli");
        (class, p)
    }

    /// Named gates reproducing this action in time order: one gate when a
    /// built-in matches exactly, else the class gate and a Pauli.
    pub fn as_gates(&self) -> Vec<Gate> {
        if self.is_identity() {
            return Vec::new();
        }
        if let Some(g) = self.named_gate() {
            return vec![g];
        }
        let (class, p) = self.class_and_pauli();
        let mut out = Vec::new();
        if class != BasisChange::I {
            out.push(class.gate());
        }
        if p != Pauli::I {
            out.push(Gate::pauli(p));
        }
        out
    }

    pub fn tableau(&self) -> Tableau {
        let prod = |(p, neg): (Pauli, bool)| PauliProduct::from_paulis(&[p], neg);
        Tableau::from_images(vec![prod(self.x)], vec![prod(self.z)]).expect("valid Clifford")
    }

    pub fn to_gate_def(&self) -> GateDef {
        let name = match self.as_gates().as_slice() {
            [] => "I".to_string(),
            gates => gates.iter().map(|g| g.name()).collect::<Vec<_>>().join("+"),
        };
        GateDef::from_tableau(name, self.tableau())
    }
}

/// Closure of `generators` under composition, in breadth-first order, with
/// the first word reaching each element.
fn closure(generators: &[Gate]) -> Vec<(Clifford1, Vec<Gate>)> {
    let mut seen: HashMap<Clifford1, usize> = HashMap::new();
    let mut out = vec![(Clifford1::IDENTITY, Vec::new())];
    seen.insert(Clifford1::IDENTITY, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (elem, word) = out[i].clone();
        for &g in generators {
            let next = elem.then(&Clifford1::from_gate(g));
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(next) {
                let mut w = word.clone();
                w.push(g);
                e.insert(out.len());
                queue.push_back(out.len());
                out.push((next, w));
            }
        }
    }
    out
}

/// All 24 single-qubit Cliffords modulo global phase, as the closure of
/// `{S, √X}`.
pub fn all_single_qubit_cliffords() -> Vec<Clifford1> {
    closure(&[Gate::S, Gate::SqrtX])
        .into_iter()
        .map(|(c, _)| c)
        .collect()
}

/// Same set as [`all_single_qubit_cliffords`], wrapped as gate definitions.
pub fn all_single_qubit_clifford_defs() -> Vec<GateDef> {
    all_single_qubit_cliffords()
        .iter()
        .map(Clifford1::to_gate_def)
        .collect()
}

/// Shortest native sequence for a single-qubit gate, plus the Pauli that
/// must follow it to reproduce the gate exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub gates: Vec<Gate>,
    pub residual: Pauli,
}

/// Single-qubit native set choices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NativeSet {
    /// `{S, √X}`.
    SSx,
    /// The five non-trivial basis-change gates, unexpanded.
    Class6,
}

impl NativeSet {
    pub fn gates(self) -> Vec<Gate> {
        match self {
            NativeSet::SSx => vec![Gate::S, Gate::SqrtX],
            NativeSet::Class6 => vec![Gate::H, Gate::HXy, Gate::HYz, Gate::CXyz, Gate::CZyx],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NativeSet::SSx => "s_sx",
            NativeSet::Class6 => "class6",
        }
    }

    pub fn from_name(name: &str) -> Option<NativeSet> {
        match name {
            "s_sx" => Some(NativeSet::SSx),
            "class6" => Some(NativeSet::Class6),
            _ => None,
        }
    }
}

/// A native two-qubit gate plus single-qubit natives.
#[derive(Clone, Debug)]
pub struct GateSet {
    name: String,
    entangler: Gate,
    natives: Vec<Gate>,
    words: HashMap<Clifford1, Vec<Gate>>,
}

impl GateSet {
    /// Build a gateset; fails unless `natives` generate all 24 single-qubit
    /// Cliffords.
    pub fn new(
        name: impl Into<String>,
        entangler: Gate,
        natives: Vec<Gate>,
    ) -> Result<Self, GateError> {
        if entangler.arity() != 2 {
            return Err(GateError::NotTwoQubit(entangler.name().to_string()));
        }
        if let Some(g) = natives.iter().find(|g| g.arity() != 1) {
            return Err(GateError::NotSingleQubit(g.name().to_string()));
        }
        let elements = closure(&natives);
        if elements.len() != 24 {
            return Err(GateError::IncompleteNatives {
                natives: natives.iter().map(|g| g.name().to_string()).collect(),
                found: elements.len(),
            });
        }
        Ok(Self {
            name: name.into(),
            entangler,
            natives,
            words: elements.into_iter().collect(),
        })
    }

    /// Gateset by CLI name: `cx`, `cz`, `sqrt_xx`, `ecr`, `iswap`.
    pub fn named(target: &str, natives: NativeSet) -> Result<Self, GateError> {
        let entangler = match target {
            "cx" => Gate::Cx,
            "cz" => Gate::Cz,
            "sqrt_xx" => Gate::SqrtXx,
            "ecr" => Gate::Ecr,
            "iswap" => Gate::ISwap,
            other => return Err(GateError::UnknownGateSet(other.to_string())),
        };
        Self::new(
            format!("{target}/{}", natives.name()),
            entangler,
            natives.gates(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn entangler(&self) -> Gate {
        self.entangler
    }

    pub fn single_qubit_natives(&self) -> &[Gate] {
        &self.natives
    }

    pub fn contains(&self, g: Gate) -> bool {
        g == self.entangler || self.natives.contains(&g)
    }

    /// Exact decomposition of a single-qubit Clifford into natives plus a
    /// trailing Pauli.
    pub fn decompose(&self, target: &Clifford1) -> Decomposition {
        Pauli::ALL
            .into_iter()
            .map(|p| {
                // word then p == target  <=>  word == target then p
                let word = &self.words[&target.then(&Clifford1::pauli(p))];
                (word.len(), p, word)
            })
            .min_by_key(|(len, p, _)| (*len, *p))
            .map(|(_, residual, word)| Decomposition {
                gates: word.clone(),
                residual,
            })
            .expect("four candidates")
    }

    /// Native sequence implementing a basis change up to a Pauli.
    pub fn class_word(&self, class: BasisChange) -> Vec<Gate> {
        self.decompose(&class.exact()).gates
    }

    /// Native gate count of a basis change.
    pub fn class_cost(&self, class: BasisChange) -> usize {
        self.class_word(class).len()
    }
}

/// Decompose a single-qubit gate over the gateset's natives.
pub fn decompose_single_qubit(g: &GateDef, natives: &GateSet) -> Result<Decomposition, GateError> {
    if g.arity() != 1 {
        return Err(GateError::NotSingleQubit(g.name().to_string()));
    }
    let t = g.semantics();
    let c = Clifford1 {
        x: (t.image_x(0).get(0), t.image_x(0).is_negative()),
        z: (t.image_z(0).get(0), t.image_z(0).is_negative()),
    };
    Ok(natives.decompose(&c))
}
