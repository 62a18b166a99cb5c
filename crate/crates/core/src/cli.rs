//! Command-line front end. `run` takes its streams as arguments so tests can
//! drive it in-process.
//!
//! Exit codes: 0 success, 1 not equivalent, 2 parse or I/O error, 3
//! compilation error, 4 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{Circuit, EmitOptions};
use crate::compiler::{
    compile, compile_iswap_heuristic, frame_between, CompilationResult, CompileError,
    CompileOptions, FrameMode, Insertion, Strategy,
};
use crate::gates::{Gate, GateSet, NativeSet};
use crate::generators::{
    random_clifford_circuit, surface_code_syndrome_extraction, RandomCircuitSpec, SurfaceCodeSpec,
};
use crate::report::{compare, report, Comparison, Report};
use crate::tableau::Tableau;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPILE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "stabcomp",
    version,
    about = "Compile Clifford circuits into native gatesets"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rewrite a circuit into a target gateset.
    Compile(CompileArgs),
    /// Check two circuits for equivalence.
    Verify(VerifyArgs),
    /// Write a benchmark circuit.
    Generate(GenerateArgs),
    /// Gate counts and depth.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Cx,
    Cz,
    #[value(name = "sqrt_xx")]
    SqrtXx,
    Ecr,
    Iswap,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::Cx => "cx",
            Target::Cz => "cz",
            Target::SqrtXx => "sqrt_xx",
            Target::Ecr => "ecr",
            Target::Iswap => "iswap",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Natives {
    #[value(name = "s_sx")]
    SSx,
    Class6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    Report,
    Fold,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Greedy,
    Exact,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Input circuit files, `-` for stdin.
    #[arg(default_value = "-")]
    pub inputs: Vec<String>,
    #[arg(long, value_enum, default_value = "ecr")]
    pub target: Target,
    #[arg(long, value_enum, default_value = "s_sx", alias = "native")]
    pub natives: Natives,
    #[arg(long, value_enum, default_value = "report")]
    pub frame: FrameArg,
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,
    /// Write ECR as S, SQRT_X, CX, X.
    #[arg(long)]
    pub expand_ecr: bool,
    /// Print source and compiled tableaux to stderr.
    #[arg(long)]
    pub show_tableau: bool,
    /// Allow compiling across entangler classes by tracking virtual SWAPs.
    #[arg(long)]
    pub iswap_heuristic: bool,
    /// Allowed interactions, e.g. `0-1,1-2`.
    #[arg(long)]
    pub coupling: Option<String>,
    /// Output circuit, `-` for stdout (single input only).
    #[arg(short, long, default_value = "-")]
    pub output: String,
    /// JSON metadata path (single input only).
    #[arg(long)]
    pub metadata: Option<PathBuf>,
    /// Output directory for batch mode; writes `<stem>.stim` and `<stem>.json`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Worker threads for batch mode.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub a: String,
    pub b: String,
    /// Accept a Pauli frame difference.
    #[arg(long)]
    pub up_to_frame: bool,
    /// Accept a relabelling of the output qubits.
    #[arg(long)]
    pub up_to_permutation: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub kind: GenerateKind,
    #[arg(short, long, default_value = "-", global = true)]
    pub output: String,
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// One round of rotated surface code syndrome extraction.
    SurfaceCode {
        #[arg(long)]
        distance: usize,
    },
    /// Seeded random Clifford circuit.
    RandomClifford {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        entanglers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "CX")]
        entangler: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(default_value = "-")]
    pub input: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Report ratios of this circuit's counts to another circuit's.
    #[arg(long)]
    pub compare: Option<String>,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

/// Compilation metadata written next to the compiled circuit.
#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub gateset: String,
    pub strategy: Strategy,
    pub verified: bool,
    /// Unsigned Pauli text, `I` for the identity.
    pub frame: String,
    pub permutation: Vec<usize>,
    pub depth_in: usize,
    pub depth_out: usize,
    pub depth_out_with_frame: usize,
    pub input_counts: Report,
    pub output_counts: Report,
    pub insertions: Vec<Insertion>,
}

impl Metadata {
    pub fn new(source: &Circuit, gs: &GateSet, result: &CompilationResult) -> Self {
        let frame_layers = usize::from(!result.frame.is_identity());
        Self {
            gateset: gs.name().to_string(),
            strategy: result.strategy,
            verified: result.verified,
            frame: frame_text(&result.frame),
            permutation: result.permutation.clone(),
            depth_in: source.depth(),
            depth_out: result.depth_without_frame,
            depth_out_with_frame: result.depth_without_frame + frame_layers,
            input_counts: report(source),
            output_counts: result.stats.clone(),
            insertions: result.insertions.clone(),
        }
    }
}

fn frame_text(frame: &crate::pauli::PauliProduct) -> String {
    frame.unsigned_text()
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<CompileError> for Failure {
    fn from(e: CompileError) -> Self {
        let code = match e {
            CompileError::Verification(_) => EXIT_VERIFY,
            _ => EXIT_COMPILE,
        };
        let mut message = e.to_string();
        if let CompileError::ClassMismatch { .. } = e {
            message.push_str(" (try --iswap-heuristic)");
        }
        Self { code, message }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("stdin: {e}")))?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
        }
    }

    fn read_circuit(&mut self, path: &str) -> Result<Circuit, Failure> {
        let text = self.read(path)?;
        Circuit::parse(&text).map_err(|e| Failure::input(format!("{path}: {e}")))
    }

    fn write(&mut self, path: &str, text: &str) -> Result<(), Failure> {
        if path == "-" {
            self.stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::input(format!("stdout: {e}")))
        } else {
            write_file(Path::new(path), text)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Parse `args` (program name first) and run. Returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    let outcome = match config.command {
        Command::Compile(args) => cmd_compile(&args, &mut io),
        Command::Verify(args) => cmd_verify(&args, &mut io),
        Command::Generate(args) => cmd_generate(&args, &mut io),
        Command::Stats(args) => cmd_stats(&args, &mut io),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_coupling(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| Failure::input(format!("bad coupling pair {pair:?}")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::input(format!("bad coupling pair {pair:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

struct Job {
    gs: GateSet,
    options: CompileOptions,
    heuristic: bool,
    emit: EmitOptions,
}

impl Job {
    fn new(args: &CompileArgs) -> Result<Self, Failure> {
        let natives = match args.natives {
            Natives::SSx => NativeSet::SSx,
            Natives::Class6 => NativeSet::Class6,
        };
        let gs = GateSet::named(args.target.name(), natives).map_err(|e| Failure {
            code: EXIT_COMPILE,
            message: e.to_string(),
        })?;
        let options = CompileOptions {
            frame: match args.frame {
                FrameArg::Report => FrameMode::Report,
                FrameArg::Fold => FrameMode::Fold,
                FrameArg::None => FrameMode::None,
            },
            coupling: args.coupling.as_deref().map(parse_coupling).transpose()?,
            strategy: match args.strategy {
                StrategyArg::Auto => None,
                StrategyArg::Greedy => Some(Strategy::Greedy),
                StrategyArg::Exact => Some(Strategy::Exact),
            },
        };
        Ok(Self {
            gs,
            options,
            heuristic: args.iswap_heuristic,
            emit: EmitOptions {
                expand_ecr: args.expand_ecr,
            },
        })
    }

    fn compile(&self, source: &Circuit) -> Result<CompilationResult, CompileError> {
        if self.heuristic {
            compile_iswap_heuristic(source, &self.gs, &self.options)
        } else {
            compile(source, &self.gs, &self.options)
        }
    }

    /// Compiled text and metadata JSON.
    fn outputs(&self, source: &Circuit, result: &CompilationResult) -> (String, String) {
        let meta = Metadata::new(source, &self.gs, result);
        let json = serde_json::to_string_pretty(&meta).expect("plain data") + "\n";
        (result.circuit.emit_with(self.emit), json)
    }
}

fn cmd_compile(args: &CompileArgs, io: &mut Io) -> Result<i32, Failure> {
    let job = Job::new(args)?;
    if args.inputs.len() > 1 || args.out_dir.is_some() {
        return compile_batch(args, &job, io);
    }
    let source = io.read_circuit(&args.inputs[0])?;
    let result = job.compile(&source)?;
    if args.show_tableau {
        let _ = write!(
            io.stderr,
            "source:\n{}compiled:\n{}",
            Tableau::from_circuit(&source),
            Tableau::from_circuit(&result.circuit)
        );
    }
    let (text, json) = job.outputs(&source, &result);
    io.write(&args.output, &text)?;
    if let Some(path) = &args.metadata {
        write_file(path, &json)?;
    }
    Ok(if result.verified {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn compile_batch(args: &CompileArgs, job: &Job, io: &mut Io) -> Result<i32, Failure> {
    let dir = args
        .out_dir
        .as_ref()
        .ok_or_else(|| Failure::input("several inputs need --out-dir"))?;
    if args.inputs.iter().any(|p| p == "-") {
        return Err(Failure::input("stdin cannot be used in batch mode"));
    }
    fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| Failure::input(e.to_string()))?;
    let outcomes: Vec<Result<(), Failure>> = pool.install(|| {
        args.inputs
            .par_iter()
            .map(|path| {
                let text =
                    fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
                let source =
                    Circuit::parse(&text).map_err(|e| Failure::input(format!("{path}: {e}")))?;
                let result = job.compile(&source).map_err(|e| {
                    let f = Failure::from(e);
                    Failure {
                        message: format!("{path}: {}", f.message),
                        ..f
                    }
                })?;
                let (circuit, json) = job.outputs(&source, &result);
                let stem = Path::new(path)
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "circuit".into());
                write_file(&dir.join(format!("{stem}.stim")), &circuit)?;
                write_file(&dir.join(format!("{stem}.json")), &json)
            })
            .collect()
    });
    // Report every failure; exit with the highest code.
    let mut code = EXIT_OK;
    for f in outcomes.into_iter().filter_map(Result::err) {
        let _ = writeln!(io.stderr, "error: {}", f.message);
        code = code.max(f.code);
    }
    Ok(code)
}

/// Outcome of an equivalence check between two circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    /// `a` followed by this Pauli gives `b` (after relabelling).
    pub frame: crate::pauli::PauliProduct,
    /// Output relabelling: `b.relabel_outputs(permutation)` is compared to `a`.
    pub permutation: Vec<usize>,
}

/// Is `a` equivalent to `b` under the allowed relaxations? Circuits on
/// different qubit counts are padded with idle qubits.
pub fn check_equivalence(
    a: &Circuit,
    b: &Circuit,
    up_to_frame: bool,
    up_to_permutation: bool,
) -> Option<Equivalence> {
    let n = a.num_qubits().max(b.num_qubits());
    let ta = Tableau::from_circuit(&a.clone().widened(n));
    let mut tb = Tableau::from_circuit(&b.clone().widened(n));
    let mut permutation: Vec<usize> = (0..n).collect();
    if up_to_permutation {
        permutation = tb.find_output_permutation(&ta)?;
        tb = tb
            .relabel_outputs(&permutation)
            .expect("found permutation is valid");
    }
    let frame = if up_to_frame {
        frame_between(&ta, &tb).ok()?
    } else if ta == tb {
        crate::pauli::PauliProduct::identity(n)
    } else {
        return None;
    };
    let mut frame = frame;
    frame.set_negative(false);
    Some(Equivalence { frame, permutation })
}

fn cmd_verify(args: &VerifyArgs, io: &mut Io) -> Result<i32, Failure> {
    let a = io.read_circuit(&args.a)?;
    let b = io.read_circuit(&args.b)?;
    match check_equivalence(&a, &b, args.up_to_frame, args.up_to_permutation) {
        Some(eq) => {
            let mut text = "equivalent\n".to_string();
            if args.up_to_frame {
                text.push_str(&format!("frame: {}\n", frame_text(&eq.frame)));
            }
            if args.up_to_permutation {
                text.push_str(&format!("permutation: {:?}\n", eq.permutation));
            }
            io.write("-", &text)?;
            Ok(EXIT_OK)
        }
        None => {
            io.write("-", "not equivalent\n")?;
            Ok(EXIT_NOT_EQUIVALENT)
        }
    }
}

fn cmd_generate(args: &GenerateArgs, io: &mut Io) -> Result<i32, Failure> {
    let circuit = match &args.kind {
        GenerateKind::SurfaceCode { distance } => {
            surface_code_syndrome_extraction(SurfaceCodeSpec {
                distance: *distance,
            })
        }
        GenerateKind::RandomClifford {
            qubits,
            entanglers,
            seed,
            entangler,
        } => {
            let gate = Gate::from_name(entangler)
                .ok_or_else(|| Failure::input(format!("unknown gate {entangler:?}")))?;
            random_clifford_circuit(RandomCircuitSpec {
                n: *qubits,
                entangler_layers: *entanglers,
                seed: *seed,
                entangler: gate,
            })
        }
    }
    .map_err(Failure::input)?;
    io.write(&args.output, &circuit.emit())?;
    Ok(EXIT_OK)
}

fn comparison_csv(cmp: &Comparison) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["category", "ratio"]).expect("in-memory");
    for (name, ratio) in &cmp.ratios {
        let value = ratio.map(|r| r.to_string()).unwrap_or_default();
        w.write_record([name.as_str(), &value]).expect("in-memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("ASCII")
}

fn cmd_stats(args: &StatsArgs, io: &mut Io) -> Result<i32, Failure> {
    let a = report(&io.read_circuit(&args.input)?);
    let text = match &args.compare {
        None => match args.format {
            Format::Json => a.to_json() + "\n",
            Format::Csv => a.to_csv(),
        },
        Some(other) => {
            let b = report(&io.read_circuit(other)?);
            let cmp = compare(&a, &b);
            match args.format {
                Format::Json => cmp.to_json() + "\n",
                Format::Csv => comparison_csv(&cmp),
            }
        }
    };
    io.write(&args.output, &text)?;
    Ok(EXIT_OK)
}
