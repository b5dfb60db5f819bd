use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use superschur::format::AlgebraFile;
use superschur::verify::{
    self, check_all, check_central_ideal, check_quotient_inequality, check_stem_cover, random_nilpotent,
};
use superschur::{
    abelian, heisenberg, multiplier_dim, profile, run_suite, stem_cover_heisenberg, summarize, AlgebraError,
    ClaimVerdict, GradedDim, JacobiViolation, LoadedAlgebra, ModelKind, MultiplierResult, StructureProfile,
    SuiteConfig, VerdictSummary,
};

const SCHEMA_VERSION: u32 = 1;

const EXIT_MATH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DISCREPANCY: u8 = 3;

#[derive(Parser)]
#[command(name = "superschur", version, about = "Schur multipliers of Lie superalgebras given by structure constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check grading, skew symmetry and the graded Jacobi identity.
    Validate { path: PathBuf },
    /// Dimensions, derived subalgebra, center and nilpotency.
    Invariants { path: PathBuf },
    /// Graded dimension of the Schur multiplier.
    Multiplier { path: PathBuf },
    /// Write a model algebra file.
    Model {
        kind: ModelKind,
        m: usize,
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the stem cover of H(m,n), with its kernel as the `ideal` field.
    Cover {
        m: usize,
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the bound checks on files, on the built-in suite, or both.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<SuiteName>,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SuiteConfig::default().count)]
        count: usize,
        paths: Vec<PathBuf>,
    },
    /// Write a seeded random two-step nilpotent algebra.
    Random {
        #[arg(long)]
        seed: u64,
        /// Total graded dimension.
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        dim: Vec<usize>,
        /// Graded dimension of the central part receiving all brackets.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        center: Vec<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Default,
}

#[derive(Serialize)]
struct ReportFile<P: Serialize> {
    schema_version: u32,
    tool: &'static str,
    tool_version: &'static str,
    command: &'static str,
    input_digest: String,
    payload: P,
}

#[derive(Serialize)]
struct ValidatePayload {
    dim: GradedDim,
    valid: bool,
    violations: Vec<JacobiViolation>,
}

#[derive(Serialize)]
struct MultiplierPayload {
    dim: GradedDim,
    multiplier: MultiplierResult,
}

#[derive(Serialize)]
struct VerifyPayload {
    suite: Option<SuiteConfig>,
    files: Vec<String>,
    summary: VerdictSummary,
    verdicts: Vec<ClaimVerdict>,
}

/// Reason for a non-zero exit.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn math(message: impl Into<String>) -> Self {
        Self { code: EXIT_MATH, message: message.into() }
    }
}

fn from_algebra_error(path: &Path, e: AlgebraError) -> Failure {
    match e {
        AlgebraError::Invalid { .. } => Failure::math(format!("{}: {e}", path.display())),
        other => Failure::usage(format!("{}: {other}", path.display())),
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_algebra(path: &Path) -> Result<(Vec<u8>, LoadedAlgebra), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let loaded = AlgebraFile::parse(text)
        .and_then(|f| f.load())
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((bytes, loaded))
}

fn emit<P: Serialize>(command: &'static str, input_digest: String, payload: P) {
    let report = ReportFile {
        schema_version: SCHEMA_VERSION,
        tool: "superschur",
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        input_digest,
        payload,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn write_file(path: &Path, file: &AlgebraFile) -> Result<(), Failure> {
    fs::write(path, file.to_json()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_validate(path: &Path) -> Result<(), Failure> {
    let (bytes, loaded) = read_algebra(path)?;
    let report = loaded.algebra.validate();
    emit(
        "validate",
        digest(&bytes),
        ValidatePayload { dim: loaded.algebra.dim(), valid: report.is_ok(), violations: report.violations.clone() },
    );
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::math(format!(
            "{}: graded Jacobi identity fails on {} triple(s)",
            path.display(),
            report.violations.len()
        )))
    }
}

fn cmd_invariants(path: &Path) -> Result<(), Failure> {
    let (bytes, loaded) = read_algebra(path)?;
    let p: StructureProfile = profile(&loaded.algebra).map_err(|e| from_algebra_error(path, e))?;
    emit("invariants", digest(&bytes), p);
    Ok(())
}

fn cmd_multiplier(path: &Path) -> Result<(), Failure> {
    let (bytes, loaded) = read_algebra(path)?;
    let multiplier = multiplier_dim(&loaded.algebra).map_err(|e| from_algebra_error(path, e))?;
    emit("multiplier", digest(&bytes), MultiplierPayload { dim: loaded.algebra.dim(), multiplier });
    Ok(())
}

fn cmd_model(kind: ModelKind, m: usize, n: usize, output: &Path) -> Result<(), Failure> {
    let algebra = match kind {
        ModelKind::Abelian => abelian(m, n),
        ModelKind::Heisenberg => heisenberg(m, n).map_err(|e| Failure::usage(e.to_string()))?,
    };
    write_file(output, &AlgebraFile::from_algebra(&algebra, None))
}

fn cmd_cover(m: usize, n: usize, output: &Path) -> Result<(), Failure> {
    let cover = stem_cover_heisenberg(m, n).map_err(|e| Failure::usage(e.to_string()))?;
    write_file(output, &AlgebraFile::from_algebra(&cover.algebra, Some(&cover.kernel)))
}

fn cmd_random(seed: u64, dim: &[usize], center: &[usize], output: &Path) -> Result<(), Failure> {
    let dim = GradedDim::new(dim[0], dim[1]);
    let w = GradedDim::new(center[0], center[1]);
    let v = dim.checked_sub(w).ok_or_else(|| Failure::usage(format!("center {w} does not fit in {dim}")))?;
    let algebra = random_nilpotent(seed, v, w, &verify::default_pool());
    write_file(output, &AlgebraFile::from_algebra(&algebra, None))
}

/// Checks for one file. A marked `ideal` is treated as the kernel of a
/// claimed stem extension.
fn verify_file(path: &Path, loaded: &LoadedAlgebra) -> Result<Vec<ClaimVerdict>, Failure> {
    let name = path.display().to_string();
    let err = |e: AlgebraError| from_algebra_error(path, e);
    let mut out = check_all(&name, &loaded.algebra).map_err(err)?;
    if let Some(ideal) = &loaded.ideal {
        let mut q = check_quotient_inequality(&loaded.algebra, ideal).map_err(err)?;
        q.subject = format!("{name} / ideal");
        out.push(q);
        match check_central_ideal(&loaded.algebra, ideal) {
            Ok(pair) => out.extend(pair.into_iter().map(|mut v| {
                v.subject = format!("{name} / ideal");
                v
            })),
            Err(AlgebraError::NotCentral) => {}
            Err(e) => return Err(err(e)),
        }
        out.push(check_stem_cover(&name, &loaded.algebra, ideal, None).map_err(|e| Failure::usage(e.to_string()))?);
    }
    Ok(out)
}

fn cmd_verify(suite: Option<SuiteName>, seed: u64, count: usize, paths: &[PathBuf]) -> Result<(), Failure> {
    let run_suite_too = suite.is_some() || paths.is_empty();
    let config = SuiteConfig { seed, count };
    let mut hasher = Sha256::new();
    let mut verdicts = Vec::new();
    if run_suite_too {
        hasher.update(format!("suite=default;seed={seed};count={count}\n").as_bytes());
        verdicts.extend(run_suite(config).map_err(|e| Failure::math(e.to_string()))?);
    }
    for path in paths {
        let (bytes, loaded) = read_algebra(path)?;
        hasher.update(&bytes);
        verdicts.extend(verify_file(path, &loaded)?);
    }
    // canonical claim order; stable within a claim
    verdicts.sort_by_key(|v| v.claim);
    let summary = summarize(&verdicts);
    emit(
        "verify",
        hex::encode(hasher.finalize()),
        VerifyPayload {
            suite: run_suite_too.then_some(config),
            files: paths.iter().map(|p| p.display().to_string()).collect(),
            summary,
            verdicts,
        },
    );
    if summary.fail > 0 {
        Err(Failure::math(format!("{} check(s) failed", summary.fail)))
    } else if summary.discrepancy > 0 {
        Err(Failure {
            code: EXIT_DISCREPANCY,
            message: format!("{} discrepancy verdict(s), no failures", summary.discrepancy),
        })
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Invariants { path } => cmd_invariants(&path),
        Command::Multiplier { path } => cmd_multiplier(&path),
        Command::Model { kind, m, n, output } => cmd_model(kind, m, n, &output),
        Command::Cover { m, n, output } => cmd_cover(m, n, &output),
        Command::Verify { suite, seed, count, paths } => cmd_verify(suite, seed, count, &paths),
        Command::Random { seed, dim, center, output } => cmd_random(seed, &dim, &center, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("superschur: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
