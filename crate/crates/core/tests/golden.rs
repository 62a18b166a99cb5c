//! Tableaux and circuits transcribed from the printed tables of the method's
//! worked example and of the cross-class discussion.

mod common;

use common::*;
use stabcomp::compiler::{extract_frame, fix_propagation, initial_condition};
use stabcomp::{
    compile, compile_iswap_heuristic, CompileOptions, Gate, GateSet, NativeSet, Tableau,
};

fn ecr() -> GateSet {
    GateSet::named("ecr", NativeSet::SSx).unwrap()
}

const WORKED_ROWS: [&str; 4] = ["XZ _X _X _X", "_X XZ __ _Z", "_X __ XZ _Z", "_X X_ X_ XZ"];

#[test]
fn cx_table() {
    let expected = table("++ ++", &["XZ _Z", "X_ XZ"]);
    assert_eq!(Gate::Cx.def().semantics(), &expected);
}

#[test]
fn ecr_table_and_its_circuit() {
    let expected = table("-- ++", &["YZ _Z", "X_ XY"]);
    assert_eq!(Gate::Ecr.def().semantics(), &expected);
    let c = circuit("S 0\nSQRT_X 1\nTICK\nCX 0 1\nTICK\nX 0\n");
    assert_eq!(Tableau::from_circuit(&c), expected);
}

#[test]
fn worked_source_table() {
    assert_eq!(
        Tableau::from_circuit(&circuit(WORKED)),
        table("++ ++ ++ ++", &WORKED_ROWS)
    );
}

#[test]
fn initial_condition_table() {
    let skel = initial_condition(&circuit(WORKED), &ecr()).unwrap();
    let expected = table(
        "-+ -+ +- +-",
        &["XZ _Z ZZ _Z", "Y_ YX __ _Z", "X_ __ ZY _Y", "X_ XX X_ XZ"],
    );
    assert_eq!(Tableau::from_circuit(&skel), expected);
}

#[test]
fn propagation_fix_tables() {
    let first =
        circuit("H 0\nTICK\nECR 0 1\nECR 2 3\nTICK\nH_YZ 1\nTICK\nECR 0 2\nTICK\nECR 1 3\n");
    let expected_first = table(
        "++ ++ +- +-",
        &["ZX _Z ZZ _Z", "_Y YZ __ _Z", "_X __ ZY _Y", "_X X_ X_ XZ"],
    );
    assert_eq!(Tableau::from_circuit(&first), expected_first);

    let expected_second = table(
        "++ ++ -+ ++",
        &["ZX _Z _Z _Z", "_Y YZ __ _Z", "_X __ XY _Y", "_X X_ X_ XZ"],
    );
    let source = circuit(WORKED);
    let target = Tableau::from_circuit(&source);
    let skel = initial_condition(&source, &ecr()).unwrap();
    let fixed = fix_propagation(&skel, &target, &ecr()).unwrap();
    assert_eq!(Tableau::from_circuit(&fixed), expected_second);
}

#[test]
fn compiled_worked_example_signs() {
    let expected = table("++ ++ +- +-", &WORKED_ROWS);
    assert_eq!(Tableau::from_circuit(&circuit(WORKED_ECR_NATIVE)), expected);

    let result = compile(&circuit(WORKED), &ecr(), &CompileOptions::default()).unwrap();
    assert_eq!(Tableau::from_circuit(&result.circuit), expected);
    assert_eq!(result.frame.unsigned_text(), "X2");
    assert_eq!(result.stats.counts["ECR"], 4);
    let target = Tableau::from_circuit(&circuit(WORKED));
    let frame = extract_frame(&circuit(WORKED_ECR_NATIVE), &target).unwrap();
    assert_eq!(frame.unsigned_text(), "X2");
}

#[test]
fn weight_four_tables() {
    let source = table(
        "++ ++ ++ ++ ++",
        &[
            "XZ _X _X _X _X",
            "_X XZ __ __ __",
            "_X __ XZ __ __",
            "_X __ __ XZ __",
            "_X __ __ __ XZ",
        ],
    );
    assert_eq!(Tableau::from_circuit(&circuit(WEIGHT_FOUR)), source);

    let chain = circuit("ISWAP 0 1\nTICK\nISWAP 1 2\nTICK\nISWAP 2 3\nTICK\nISWAP 3 4\n");
    let expected = table(
        "++ ++ ++ ++ ++",
        &[
            "Z_ YZ __ __ __",
            "Z_ __ YZ __ __",
            "Z_ __ __ YZ __",
            "Z_ __ __ __ YZ",
            "XZ Z_ Z_ Z_ Z_",
        ],
    );
    assert_eq!(Tableau::from_circuit(&chain), expected);
}

#[test]
fn weight_four_through_iswap() {
    let gs = GateSet::named("iswap", NativeSet::SSx).unwrap();
    let source = circuit(WEIGHT_FOUR);
    let result = compile_iswap_heuristic(&source, &gs, &CompileOptions::default()).unwrap();

    // The heuristic lands on the nearest-neighbour chain.
    let pairs: Vec<Vec<usize>> = result
        .circuit
        .instructions()
        .filter(|i| i.is_two_qubit())
        .map(|i| {
            let mut q = i.qubits().to_vec();
            q.sort();
            q
        })
        .collect();
    assert_eq!(pairs, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);

    // The measured qubit ends on qubit 4.
    assert_eq!(result.permutation[0], 4);
    let target = Tableau::from_circuit(&source)
        .relabel_outputs(&result.permutation)
        .unwrap();
    let compiled = Tableau::from_circuit(&result.circuit);
    assert!(compiled.equal_up_to_sign(&target).is_some());
    assert_eq!(
        stabcomp::cli::check_equivalence(&result.circuit, &source, true, true)
            .unwrap()
            .permutation,
        result.permutation
    );
}
