//! Tableau-manipulation compiler.
//!
//! Pipeline: replace every source entangler by the native entangler on the
//! same pair (the initial condition), fix where each generator image
//! spreads by inserting basis changes before entanglers, fix the final
//! output letters with one basis change per qubit, expand basis changes
//! into the native single-qubit gates, and recover the Pauli frame.
//!
//! When the greedy propagation pass cannot reach the target (repeated
//! interactions between one pair can defeat it) the compiler switches to
//! the dressing solver in [`exact`], which always succeeds for same-class
//! entanglers. Every result is checked by exact tableau comparison.

mod conjugation;
mod exact;
pub mod lookup;
mod propagation;
mod working;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Instruction};
use crate::gates::{BasisChange, EntanglerClass, Gate, GateDef, GateSet};
use crate::pauli::{solve_frame, PauliError, PauliProduct};
use crate::report::{report, Report};
use crate::tableau::{Tableau, TableauError};

pub use lookup::ConjugationLookup;

use working::{Skeleton, WorkingCircuit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("source entangler {from} is not in the same class as native {native}")]
    ClassMismatch { from: Gate, native: Gate },
    #[error("gate {0} cannot be compiled")]
    UnsupportedGate(Gate),
    #[error("unexpected two-qubit gate {0} in working circuit")]
    UnexpectedGate(Gate),
    #[error("entangler has no wire-local commuting Pauli")]
    NoCommutingPauli,
    #[error("local pair of qubit {qubit} is degenerate before layer {layer}")]
    IllFormedPair { qubit: usize, layer: usize },
    #[error(
        "target unreachable under same-structure initial condition (qubit {qubit}, layer {layer})"
    )]
    Unreachable { qubit: usize, layer: usize },
    #[error("generator images still spread differently: {0:?}")]
    SupportMismatch(Vec<String>),
    #[error("no basis change aligns output row {qubit}")]
    ConjugationMismatch { qubit: usize },
    #[error("compiled circuit differs from target beyond signs")]
    NotEquivalent,
    #[error("frame {0} required but frame mode is none")]
    NonTrivialFrame(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("interaction between qubits {0} and {1} is unavailable")]
    UnavailableInteraction(usize, usize),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// What to do with the Pauli frame.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameMode {
    /// Record it in the result only.
    #[default]
    Report,
    /// Append it to the circuit as a layer of Pauli gates.
    Fold,
    /// Fail unless the frame is the identity.
    None,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileOptions {
    pub frame: FrameMode,
    /// Physical qubit pairs allowed to interact; `None` allows all.
    pub coupling: Option<Vec<(usize, usize)>>,
    /// Force one strategy; `None` tries greedy first, then exact.
    pub strategy: Option<Strategy>,
}

/// A basis change added by the compiler.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Insertion {
    pub qubit: usize,
    /// Slot index: slot `s` precedes entangler layer `s`; the last slot ends
    /// the circuit.
    pub slot: usize,
    pub class: BasisChange,
    /// The entangler layer that required the change; `None` for the final
    /// row alignment.
    pub before_layer: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Greedy,
    Exact,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Greedy => "greedy",
            Strategy::Exact => "exact",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompilationResult {
    /// Native gates only, plus a trailing Pauli layer in fold mode.
    pub circuit: Circuit,
    /// Same placement with basis-change gates left unexpanded.
    pub class_circuit: Circuit,
    /// Pauli product that, appended to the unfolded circuit, gives exact
    /// equality with the (relabelled) source.
    pub frame: PauliProduct,
    pub stats: Report,
    pub verified: bool,
    /// `permutation[q]` is the physical qubit holding logical output `q`.
    pub permutation: Vec<usize>,
    pub strategy: Strategy,
    pub insertions: Vec<Insertion>,
    /// Depth before the frame layer was appended.
    pub depth_without_frame: usize,
}

fn check_entanglers(
    skeleton: &Skeleton,
    gs: &GateSet,
    allow_cross: bool,
) -> Result<bool, CompileError> {
    let native = gs.entangler();
    let native_class = native.def().entangler_class();
    if native_class == EntanglerClass::SwapLike {
        return Err(CompileError::UnsupportedGate(native));
    }
    let mut cross = false;
    for g in skeleton.entangler_gates() {
        let class = g.def().entangler_class();
        if class == EntanglerClass::SwapLike {
            return Err(CompileError::UnsupportedGate(g));
        }
        if class != native_class {
            if !allow_cross {
                return Err(CompileError::ClassMismatch { from: g, native });
            }
            cross = true;
        }
    }
    if cross
        && skeleton
            .entangler_gates()
            .any(|g| g.def().entangler_class() == native_class)
    {
        return Err(CompileError::ClassMismatch {
            from: skeleton
                .entangler_gates()
                .find(|g| g.def().entangler_class() == native_class)
                .expect("present"),
            native,
        });
    }
    Ok(cross)
}

/// The native entangler on every source entangler's pair, nothing else.
pub fn initial_condition(source: &Circuit, gs: &GateSet) -> Result<Circuit, CompileError> {
    let skeleton = Skeleton::from_circuit(source);
    check_entanglers(&skeleton, gs, false)?;
    Ok(WorkingCircuit::skeleton(skeleton.n, skeleton.pairs()).class_circuit(gs.entangler()))
}

fn working_entangler(c: &Circuit) -> Result<(Skeleton, Option<Gate>), CompileError> {
    let skeleton = Skeleton::from_circuit(c);
    let first = skeleton.entangler_gates().next();
    if let Some(other) = skeleton.entangler_gates().find(|&g| Some(g) != first) {
        return Err(CompileError::UnexpectedGate(other));
    }
    Ok((skeleton, first))
}

fn check_supports(current: &Tableau, target: &Tableau) -> Result<(), CompileError> {
    let bad = current.support_mismatches(target);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CompileError::SupportMismatch(
            bad.into_iter()
                .map(crate::tableau::generator_label)
                .collect(),
        ))
    }
}

/// Greedy propagation pass on a circuit of native entanglers and
/// single-qubit gates. The result holds basis-change gates; Pauli parts of
/// the input are dropped.
pub fn fix_propagation(
    working: &Circuit,
    target: &Tableau,
    gs: &GateSet,
) -> Result<Circuit, CompileError> {
    if working.num_qubits() != target.num_qubits() {
        return Err(TableauError::SizeMismatch(working.num_qubits(), target.num_qubits()).into());
    }
    let native = gs.entangler();
    let mut w = Skeleton::from_circuit(working).working(native)?;
    propagation::fix(&mut w, native.def(), target, &mut Vec::new())?;
    check_supports(&w.tableau(native.def()), target)?;
    Ok(w.class_circuit(native))
}

/// Append one basis change per qubit so every output row matches the
/// target letter-for-letter. Supports must already agree.
pub fn fix_conjugation(working: &Circuit, target: &Tableau) -> Result<Circuit, CompileError> {
    if working.num_qubits() != target.num_qubits() {
        return Err(TableauError::SizeMismatch(working.num_qubits(), target.num_qubits()).into());
    }
    let (skeleton, native) = working_entangler(working)?;
    let native = native.unwrap_or(Gate::Cx);
    let mut w = skeleton.working(native)?;
    let current = w.tableau(native.def());
    conjugation::fix(&mut w, &current, target, &mut Vec::new())?;
    Ok(w.class_circuit(native))
}

/// The Pauli product that turns `compiled` into exactly `target` when
/// appended.
pub fn extract_frame(compiled: &Circuit, target: &Tableau) -> Result<PauliProduct, CompileError> {
    let current = Tableau::from_circuit(&compiled.clone().widened(target.num_qubits()));
    frame_between(&current, target)
}

/// Pauli frame `F` with `current` followed by `F` equal to `target`.
pub fn frame_between(current: &Tableau, target: &Tableau) -> Result<PauliProduct, CompileError> {
    let flips = current
        .equal_up_to_sign(target)
        .ok_or(CompileError::NotEquivalent)?;
    Ok(solve_frame(&current.images(), &flips)?)
}

/// Pauli gates for a frame, as one layer.
pub fn frame_layer(frame: &PauliProduct) -> Vec<Instruction> {
    frame
        .support()
        .into_iter()
        .map(|q| Instruction::single(Gate::pauli(frame.get(q)), q))
        .collect()
}

fn greedy(
    skeleton: &Skeleton,
    entangler: &GateDef,
    target: &Tableau,
    trace: &mut Vec<Insertion>,
) -> Result<WorkingCircuit, CompileError> {
    let mut w = WorkingCircuit::skeleton(skeleton.n, skeleton.pairs());
    propagation::fix(&mut w, entangler, target, trace)?;
    let current = w.tableau(entangler);
    check_supports(&current, target)?;
    conjugation::fix(&mut w, &current, target, trace)?;
    Ok(w)
}

/// Compile `source` into `gs`. Every source entangler must be in the same
/// class as the native entangler.
pub fn compile(
    source: &Circuit,
    gs: &GateSet,
    options: &CompileOptions,
) -> Result<CompilationResult, CompileError> {
    run(source, gs, options, false)
}

/// Compile across entangler classes (CX-like to iSWAP-like or back) by
/// treating each native entangler as followed by a virtual SWAP, then
/// dropping the SWAPs and tracking where each logical qubit ends up.
/// Same-class inputs take the standard path.
pub fn compile_iswap_heuristic(
    source: &Circuit,
    gs: &GateSet,
    options: &CompileOptions,
) -> Result<CompilationResult, CompileError> {
    run(source, gs, options, true)
}

fn run(
    source: &Circuit,
    gs: &GateSet,
    options: &CompileOptions,
    allow_cross: bool,
) -> Result<CompilationResult, CompileError> {
    let skeleton = Skeleton::from_circuit(source);
    let cross = check_entanglers(&skeleton, gs, allow_cross)?;
    let native = gs.entangler();
    let composite;
    let entangler = if cross {
        composite = GateDef::compose(
            format!("{}+SWAP", native.name()),
            2,
            &[(native, &[0, 1]), (Gate::Swap, &[0, 1])],
        );
        &composite
    } else {
        native.def()
    };

    let target = Tableau::from_circuit(source);
    let mut insertions = Vec::new();
    let attempt = match options.strategy {
        Some(Strategy::Exact) => Err(CompileError::NotEquivalent),
        _ => greedy(&skeleton, entangler, &target, &mut insertions),
    };
    let (working, strategy) = match attempt {
        Ok(w) => (w, Strategy::Greedy),
        Err(e) if options.strategy == Some(Strategy::Greedy) => return Err(e),
        Err(_) => {
            insertions.clear();
            (exact::solve(&skeleton, entangler, gs)?, Strategy::Exact)
        }
    };

    let identity: Vec<usize> = (0..skeleton.n).collect();
    let mut class_map = identity.clone();
    let class_circuit = working.class_circuit_mapped(native, &mut class_map, cross);
    let mut permutation = identity;
    let mut circuit = working.native_circuit(gs, &mut permutation, cross);

    if let Some(pairs) = &options.coupling {
        for inst in circuit.instructions().filter(|i| i.is_two_qubit()) {
            let (a, b) = (inst.qubits()[0], inst.qubits()[1]);
            if !pairs
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
            {
                return Err(CompileError::UnavailableInteraction(a, b));
            }
        }
    }

    let target = target.relabel_outputs(&permutation)?;
    let mut compiled = Tableau::from_circuit(&circuit);
    let frame = frame_between(&compiled, &target)?;
    let layer = frame_layer(&frame);
    for inst in &layer {
        compiled.apply(inst.gate().def(), inst.qubits())?;
    }
    let mut folded = circuit.clone();
    folded
        .push_layer(layer)
        .expect("frame layer fits the circuit");
    if compiled != target {
        return Err(CompileError::Verification(
            "folded circuit tableau differs from source".into(),
        ));
    }
    let depth_without_frame = circuit.depth();
    match options.frame {
        FrameMode::Report => {}
        FrameMode::Fold => circuit = folded,
        FrameMode::None => {
            if !frame.is_identity() {
                return Err(CompileError::NonTrivialFrame(frame.unsigned_text()));
            }
        }
    }
    let mut frame = frame;
    frame.set_negative(false);
    Ok(CompilationResult {
        stats: report(&circuit),
        circuit,
        class_circuit,
        frame,
        verified: true,
        permutation,
        strategy,
        insertions,
        depth_without_frame,
    })
}
