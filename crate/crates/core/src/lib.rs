//! Clifford circuit compilation by tableau manipulation.
//!
//! The pipeline rewrites a unitary stabilizer circuit into a target gateset
//! (a native two-qubit gate plus single-qubit natives) while keeping every
//! entangler in place, then certifies the result by exact tableau
//! comparison up to a Pauli frame.

pub mod circuit;
pub mod cli;
pub mod compiler;
pub mod gates;
pub mod generators;
pub mod pauli;
pub mod report;
pub mod tableau;

pub use circuit::{Circuit, EmitOptions, Instruction, ParseError};
pub use compiler::{
    compile, compile_iswap_heuristic, CompilationResult, CompileError, CompileOptions, FrameMode,
};
pub use gates::{BasisChange, Clifford1, EntanglerClass, Gate, GateDef, GateSet, NativeSet};
pub use pauli::{Pauli, PauliProduct, SignVector};
pub use report::{compare, report, Comparison, Report};
pub use tableau::Tableau;
