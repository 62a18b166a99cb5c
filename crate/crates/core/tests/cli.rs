//! The binary end to end, and the in-process entry point against the
//! library calls it wraps.

mod common;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use common::*;
use stabcomp::generators::{surface_code_syndrome_extraction, SurfaceCodeSpec};
use stabcomp::{compile, report, CompileOptions, GateSet, NativeSet};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn bin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stabcomp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn in_process(args: &[&str], stdin: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stabcomp").chain(args.iter().copied());
    let code = stabcomp::cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn compile_worked_example_writes_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.stim");
    let meta = dir.path().join("out.json");
    let src = fixture("worked_example.stim");
    let (code, _, _) = bin(
        &[
            "compile",
            "--target",
            "ecr",
            "--natives",
            "s_sx",
            p(&src),
            "-o",
            p(&out),
            "--metadata",
            p(&meta),
        ],
        "",
    );
    assert_eq!(code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(json["frame"], "X2");
    assert_eq!(json["verified"], true);
    assert_eq!(json["gateset"], "ecr/s_sx");
    assert_eq!(json["output_counts"]["counts"]["ECR"], 4);

    let lib = compile(
        &circuit(WORKED),
        &GateSet::named("ecr", NativeSet::SSx).unwrap(),
        &CompileOptions::default(),
    )
    .unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), lib.circuit.emit());

    let (code, stdout, _) = bin(&["verify", "--up-to-frame", p(&out), p(&src)], "");
    assert_eq!(code, 0);
    assert!(stdout.contains("frame: X2"), "{stdout}");
}

#[test]
fn compile_surface_code_to_sqrt_xx() {
    let (code, out, _) = bin(
        &["compile", "--target", "sqrt_xx", p(&fixture("d11_se.stim"))],
        "",
    );
    assert_eq!(code, 0);
    assert_eq!(report(&circuit(&out)).two_qubit, 440);
}

#[test]
fn pipes_through_stdin_and_stdout() {
    let (code, out, _) = bin(&["compile", "--target", "cz", "-"], "CX 0 1\n");
    assert_eq!(code, 0);
    let (code, stats, _) = bin(&["stats", "--format", "csv"], &out);
    assert_eq!(code, 0);
    assert!(stats.contains("CZ,1,two_qubit"));
}

#[test]
fn empty_input() {
    let (code, out, _) = bin(&["compile", p(&fixture("empty.stim"))], "");
    assert_eq!((code, out.as_str()), (0, ""));
    let (code, out, _) = bin(&["stats", "--format", "csv", p(&fixture("empty.stim"))], "");
    assert_eq!((code, out.as_str()), (0, "gate,count,category\n"));
}

#[test]
fn verify_outcomes() {
    let worked = fixture("worked_example.stim");
    assert_eq!(bin(&["verify", p(&worked), p(&worked)], "").0, 0);
    let (code, out, _) = bin(
        &["verify", p(&fixture("cx.stim")), p(&fixture("ecr.stim"))],
        "",
    );
    assert_eq!(code, 1);
    assert_eq!(out, "not equivalent\n");
    let (code, _, _) = bin(
        &[
            "verify",
            "--up-to-frame",
            p(&fixture("worked_ecr.stim")),
            p(&worked),
        ],
        "",
    );
    assert_eq!(code, 0);
}

#[test]
fn iswap_needs_the_heuristic() {
    let src = fixture("weight_four.stim");
    let (code, _, err) = bin(&["compile", "--target", "iswap", p(&src)], "");
    assert_eq!(code, 3);
    assert!(err.contains("--iswap-heuristic"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.stim");
    let (code, _, _) = bin(
        &[
            "compile",
            "--target",
            "iswap",
            "--iswap-heuristic",
            p(&src),
            "-o",
            p(&out),
        ],
        "",
    );
    assert_eq!(code, 0);
    assert_eq!(bin(&["verify", p(&out), p(&src)], "").0, 1);
    let (code, stdout, _) = bin(
        &[
            "verify",
            "--up-to-frame",
            "--up-to-permutation",
            p(&out),
            p(&src),
        ],
        "",
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("permutation: [4,"), "{stdout}");
}

#[test]
fn input_errors() {
    assert_eq!(bin(&["compile", "/nonexistent/x.stim"], "").0, 2);
    let (code, _, err) = bin(&["compile"], "CX 0 1\nRX(0.3) 0\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(bin(&["compile", "--target", "bogus"], "").0, 2);
    assert_eq!(
        bin(&["generate", "surface-code", "--distance", "4"], "").0,
        2
    );
}

#[test]
fn generate_and_count() {
    let (code, text, _) = bin(&["generate", "surface-code", "--distance", "11"], "");
    assert_eq!(code, 0);
    let lib = surface_code_syndrome_extraction(SurfaceCodeSpec { distance: 11 }).unwrap();
    assert_eq!(text, lib.emit());
    let (_, json, _) = bin(&["stats"], &text);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["counts"]["CX"], 440);
    assert_eq!(v["counts"]["H"], 120);
    assert_eq!(v["depth"], 6);
}

#[test]
fn random_generation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &Path| {
        bin(
            &[
                "generate",
                "random-clifford",
                "--qubits",
                "4",
                "--entanglers",
                "6",
                "--seed",
                "7",
                "-o",
                p(out),
            ],
            "",
        )
    };
    let (a, b) = (dir.path().join("a.stim"), dir.path().join("b.stim"));
    assert_eq!(args(&a).0, 0);
    assert_eq!(args(&b).0, 0);
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    assert_eq!(
        text,
        std::fs::read(fixture("random_q4_e6_s7.stim")).unwrap()
    );
}

#[test]
fn stats_compare() {
    let (code, out, _) = bin(
        &[
            "stats",
            p(&fixture("worked_ecr.stim")),
            "--compare",
            p(&fixture("worked_example.stim")),
        ],
        "",
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ratios"]["two_qubit"], 1.0);
    assert!(v["ratios"]["x_type"].is_null());
    assert!(v["undefined"]
        .as_array()
        .unwrap()
        .contains(&"x_type".into()));
}

#[test]
fn batch_mode() {
    let dir = tempfile::tempdir().unwrap();
    let names = ["worked_example.stim", "d3_se.stim", "random_q4_e6_s7.stim"];
    let inputs: Vec<PathBuf> = names.iter().map(|n| fixture(n)).collect();
    let mut args = vec![
        "compile",
        "--target",
        "sqrt_xx",
        "--jobs",
        "2",
        "--out-dir",
        p(dir.path()),
    ];
    args.extend(inputs.iter().map(|i| p(i)));
    assert_eq!(bin(&args, "").0, 0);
    for n in names {
        let stem = n.trim_end_matches(".stim");
        let compiled = std::fs::read_to_string(dir.path().join(format!("{stem}.stim"))).unwrap();
        let source = std::fs::read_to_string(fixture(n)).unwrap();
        assert!(stabcomp::cli::check_equivalence(
            &circuit(&compiled),
            &circuit(&source),
            true,
            false
        )
        .is_some());
        assert!(dir.path().join(format!("{stem}.json")).exists());
    }
}

#[test]
fn in_process_matches_binary() {
    let text = std::fs::read_to_string(fixture("random_q4_e6_s7.stim")).unwrap();
    for target in ["cx", "cz", "sqrt_xx", "ecr"] {
        let args = ["compile", "--target", target, "--frame", "fold"];
        let (code, out) = in_process(&args, &text);
        assert_eq!((code, out.clone()), {
            let (c, o, _) = bin(&args, &text);
            (c, o)
        });
        let lib = compile(
            &circuit(&text),
            &GateSet::named(target, NativeSet::SSx).unwrap(),
            &CompileOptions {
                frame: stabcomp::FrameMode::Fold,
                ..CompileOptions::default()
            },
        )
        .unwrap();
        assert_eq!(out, lib.circuit.emit());
    }
}

#[test]
fn help_and_version() {
    let (code, out, _) = bin(&["--version"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("stabcomp "));
    let (code, out, _) = bin(&["compile", "--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("--iswap-heuristic"));
}

#[test]
fn show_tableau_and_expand_ecr() {
    let (code, out, err) = bin(
        &[
            "compile",
            "--target",
            "ecr",
            "--expand-ecr",
            "--show-tableau",
        ],
        WORKED,
    );
    assert_eq!(code, 0);
    assert!(!out.contains("ECR"));
    assert!(out.contains("CX 0 1"));
    assert!(err.starts_with("source:\n"));
    assert!(err.contains("± | +  +"));
}
