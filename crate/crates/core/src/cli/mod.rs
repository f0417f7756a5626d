//! Batch front-end behind the `seqspace` binary.
//!
//! Every command writes one JSON report (to `--out` or stdout) whose header
//! records the command, truncation, kernel, tolerance and toolkit version.
//! Exit codes: 0 success, 1 failed self-test, 2 invalid input, 3 numeric
//! policy violation, 4 inconclusive verdict under `--strict`.

pub mod ingest;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::compact::{
    associated_matrix, chi_estimate, classify_compact, Compactness, Target, DEFAULT_CLASSIFY_TOL, DEFAULT_SERIES_TOL,
};
use crate::duals::{dual_membership, mapping_class_test, ConditionPolicy, DualKind, MappingTarget, Truth};
use crate::error::{Error, Result};
use crate::scalar::{NumericMode, Rational, Scalar};
use crate::sequence::{ExponentSequence, SequenceFamily, SpaceParams};
use crate::spaces::{lp_norm, Space};
use crate::triangles::{SpaceWindow, TriangleMatrix};

use ingest::{ingest_operator, ingest_params, ingest_sequence, ingest_vector, preset_from_name, SequenceSource};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "seqspace", version, about = "Generalized-mean difference sequence spaces at finite truncation")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Parameter file (`{"r","s","t","m","p"}` or `{"preset", "args", "m", "p"}`).
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    /// Preset name used when no parameter file is given.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Difference order.
    #[arg(long, global = true, default_value_t = 1)]
    pub m: usize,
    /// Constant exponent; also the domain exponent of `compact`.
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Truncation index.
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, default_value = "rational")]
    pub mode: NumericMode,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Exit with status 4 when the verdict is inconclusive.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixKind {
    A,
    Delta,
    Composite,
    Inverse,
    InverseA,
    D,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump one of the triangles on the window.
    Build {
        #[arg(long, value_enum, default_value = "composite")]
        matrix: MatrixKind,
    },
    /// Forward (or inverse) transform of a vector.
    Transform {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Paranorm and BK norm of a vector.
    Paranorm {
        #[arg(long)]
        x: PathBuf,
    },
    /// Basis vectors and basis reconstruction curves.
    Basis {
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        x: Option<PathBuf>,
        /// CSV export of the remainder curve `J,remainder`.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Dual spaces and matrix mappings.
    Duals {
        #[command(subcommand)]
        command: DualsCommand,
    },
    /// Operator norms and compactness.
    Compact {
        #[command(subcommand)]
        command: CompactCommand,
    },
    /// Invariant battery on the chosen parameters.
    Selftest {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum DualsCommand {
    Check {
        #[arg(long, default_value = "beta")]
        dual: DualKind,
        #[arg(long)]
        a: PathBuf,
    },
    Map {
        #[arg(long, default_value = "linf")]
        target: MappingTarget,
        #[arg(long = "A")]
        operator: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OperatorArgs {
    #[arg(long = "A")]
    pub operator: PathBuf,
    #[arg(long, default_value = "c0")]
    pub target: Target,
    #[arg(long, default_value_t = 16)]
    pub window: usize,
    /// CSV export of the tail sequence `n,T_n`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CompactCommand {
    Norm(OperatorArgs),
    Chi(OperatorArgs),
    Classify(OperatorArgs),
}

/// Parses the process arguments, runs the job and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Job<'a> {
    common: &'a CommonArgs,
    command: &'static str,
    tol: Option<f64>,
}

impl Job<'_> {
    fn emit(&self, n: usize, body: Value) -> Result<()> {
        let mut report = Map::new();
        report.insert("command".into(), json!(self.command));
        report.insert("N".into(), json!(n));
        report.insert("mode".into(), json!(self.common.mode));
        // Exact kernels carry no rounding; floats report machine epsilon unless
        // the command has its own tolerance.
        let tol = self.tol.unwrap_or(match self.common.mode {
            NumericMode::Rational => 0.0,
            NumericMode::Float => f64::EPSILON,
        });
        report.insert("tol".into(), json!(tol));
        report.insert("version".into(), json!(VERSION));
        match body {
            Value::Object(fields) => report.extend(fields),
            other => {
                report.insert("result".into(), other);
            }
        }
        let text = serde_json::to_string_pretty(&Value::Object(report))? + "\n";
        match &self.common.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn params_of(common: &CommonArgs) -> Result<SpaceParams> {
    let p = common.p.unwrap_or(2.0);
    match (&common.params, &common.preset) {
        (Some(path), _) => ingest_params(path, common.m, Some(p)),
        (None, Some(name)) => {
            SpaceParams::from_preset(&preset_from_name(name, None)?, common.m, ExponentSequence::constant(p)?)
        }
        (None, None) => Err(Error::Validation("give --params or --preset".into())),
    }
}

/// Resolves `N` against a vector: defaults to its last index, pads with
/// zeros when `N` is larger.
fn fit_vector(mut v: Vec<Rational>, n: Option<usize>) -> Result<(Vec<Rational>, usize)> {
    if v.is_empty() {
        return Err(Error::Validation("empty vector".into()));
    }
    let n = n.unwrap_or(v.len() - 1);
    if v.len() > n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: v.len() });
    }
    v.resize(n + 1, Rational::from_i64(0));
    Ok((v, n))
}

fn sequence_terms(path: &Path, n: Option<usize>) -> Result<(Vec<Rational>, usize)> {
    match ingest_sequence(path)? {
        SequenceSource::Family(SequenceFamily::Explicit { prefix, tail: None }) => fit_vector(prefix, n),
        SequenceSource::Family(f) => {
            let n = n.unwrap_or(32);
            Ok((f.terms(n + 1)?, n))
        }
        SequenceSource::Preset(_) => Err(Error::Validation("expected a sequence, found a preset".into())),
    }
}

fn to_kernel<S: Scalar>(v: &[Rational]) -> Vec<S> {
    v.iter().map(S::from_rational).collect()
}

fn json_vec<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

fn write_csv(path: &Path, header: &str, rows: impl IntoIterator<Item = (usize, f64)>) -> Result<()> {
    let mut text = format!("{header}\n");
    for (i, v) in rows {
        text.push_str(&format!("{i},{v:e}\n"));
    }
    std::fs::write(path, text)?;
    Ok(())
}

fn strict_code(common: &CommonArgs, inconclusive: bool) -> i32 {
    if common.strict && inconclusive {
        4
    } else {
        0
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    match cli.common.mode {
        NumericMode::Rational => run_in::<Rational>(cli),
        NumericMode::Float => run_in::<f64>(cli),
    }
}

fn run_in<S: Scalar>(cli: &Cli) -> Result<i32> {
    let c = &cli.common;
    if let Some(t) = c.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Validation(format!("tol must be positive, got {t}")));
        }
    }
    if c.n == Some(0) {
        return Err(Error::Validation("N must be at least 1".into()));
    }
    match &cli.command {
        Command::Build { matrix } => {
            let params = params_of(c)?;
            let n = c.n.unwrap_or(8);
            let job = Job { common: c, command: "build", tol: None };
            let w = SpaceWindow::<S>::new(&params, n)?;
            let body = match matrix {
                MatrixKind::D => json!({ "D": json_vec(&w.d.values), "precisionWarning": w.d.precision_warning }),
                kind => {
                    let m: TriangleMatrix<S> = match kind {
                        MatrixKind::A => w.a_matrix(),
                        MatrixKind::Delta => w.delta_matrix(),
                        MatrixKind::Composite => w.composite_matrix(),
                        MatrixKind::Inverse => w.inverse_composite_matrix(),
                        _ => w.inverse_a_matrix(),
                    };
                    json!({ "matrix": m.to_json() })
                }
            };
            job.emit(n, body)?;
            Ok(0)
        }
        Command::Transform { x, inverse } => {
            let params = params_of(c)?;
            let (x, n) = fit_vector(ingest_vector(x)?, c.n)?;
            let space = Space::<S>::new(&params, n)?;
            let x: Vec<S> = to_kernel(&x);
            let body = if *inverse {
                json!({ "x": json_vec(&space.inverse_transform(&x)?) })
            } else {
                let y = space.forward_transform(&x)?;
                let h = space.paranorm_of_image(&y)?;
                json!({ "y": json_vec(&y), "paranorm": h.value, "lastTerm": h.last_term })
            };
            Job { common: c, command: "transform", tol: None }.emit(n, body)?;
            Ok(0)
        }
        Command::Paranorm { x } => {
            let params = params_of(c)?;
            let (x, n) = fit_vector(ingest_vector(x)?, c.n)?;
            let space = Space::<S>::new(&params, n)?;
            let y = space.forward_transform(&to_kernel::<S>(&x))?;
            let h = space.paranorm_of_image(&y)?;
            let mut body = json!({ "y": json_vec(&y), "paranorm": h.value, "lastTerm": h.last_term, "M": h.big_m });
            if let Some(p) = params.p.as_constant().filter(|&p| p >= 1.0) {
                body["bkNorm"] = json!(lp_norm(&y, p)?);
            }
            if let Some(s) = h.exact_power_sum {
                body["powerSum"] = s.to_json();
            }
            Job { common: c, command: "paranorm", tol: None }.emit(n, body)?;
            Ok(0)
        }
        Command::Basis { j, x, csv } => {
            let params = params_of(c)?;
            let mut body = Map::new();
            let n;
            if let Some(path) = x {
                let (xv, nn) = fit_vector(ingest_vector(path)?, c.n)?;
                n = nn;
                let space = Space::<S>::new(&params, n)?;
                let element = space.element(to_kernel(&xv))?;
                let mut curve = Vec::with_capacity(n + 1);
                for jj in 0..=n {
                    curve.push(space.reconstruct(&element, jj)?.remainder);
                }
                if let Some(path) = csv {
                    write_csv(path, "J,remainder", curve.iter().copied().enumerate())?;
                }
                body.insert("remainders".into(), json!(curve));
                if let Some(j) = j {
                    body.insert("basisVector".into(), json_vec(&space.basis_vector(*j)?.b));
                }
            } else {
                n = c.n.unwrap_or(8);
                let j = j.ok_or_else(|| Error::Validation("basis needs --j or --x".into()))?;
                let space = Space::<S>::new(&params, n)?;
                body.insert("basisVector".into(), json_vec(&space.basis_vector(j)?.b));
            }
            if let Some(j) = j {
                body.insert("j".into(), json!(j));
            }
            Job { common: c, command: "basis", tol: None }.emit(n, Value::Object(body))?;
            Ok(0)
        }
        Command::Duals { command } => {
            let params = params_of(c)?;
            let policy = ConditionPolicy { tol: c.tol.unwrap_or(ConditionPolicy::default().tol), ..Default::default() };
            let (name, n, verdict) = match command {
                DualsCommand::Check { dual, a } => {
                    let (a, n) = sequence_terms(a, c.n)?;
                    ("duals check", n, dual_membership(&to_kernel::<S>(&a), *dual, &params, n, &policy)?)
                }
                DualsCommand::Map { target, operator } => {
                    let op = ingest_operator(operator)?;
                    let n = c.n.unwrap_or(16);
                    ("duals map", n, mapping_class_test::<S>(&op, *target, &params, n, &policy)?)
                }
            };
            let body = serde_json::to_value(&verdict)?;
            Job { common: c, command: name, tol: Some(policy.tol) }.emit(n, body)?;
            Ok(strict_code(c, verdict.holds == Truth::Inconclusive))
        }
        Command::Compact { command } => {
            let params = params_of(c)?;
            let (name, args) = match command {
                CompactCommand::Norm(a) => ("compact norm", a),
                CompactCommand::Chi(a) => ("compact chi", a),
                CompactCommand::Classify(a) => ("compact classify", a),
            };
            let p = match c.p.or_else(|| params.p.as_constant()) {
                Some(p) => p,
                None => return Err(Error::Validation("compact needs a constant exponent (--p)".into())),
            };
            let n = c.n.unwrap_or(128);
            let tol = c.tol.unwrap_or(DEFAULT_CLASSIFY_TOL);
            let op = ingest_operator(&args.operator)?;
            let assoc = associated_matrix::<S>(&op, &params, n, DEFAULT_SERIES_TOL)?;
            let job = Job { common: c, command: name, tol: Some(tol) };
            let mut code = 0;
            let mut body = match command {
                CompactCommand::Norm(_) => {
                    let mut b = json!({ "l1Norm": assoc.l1_norm(), "bvNorm": assoc.bv_norm(), "p": p });
                    if p > 1.0 {
                        b["operatorNorm"] = json!(assoc.operator_norm(p)?);
                    }
                    b
                }
                CompactCommand::Chi(_) => {
                    let chi = chi_estimate(&assoc, p, args.target, args.window, tol)?;
                    if let Some(path) = &args.csv {
                        write_csv(path, "n,T_n", chi.tail_sequence.iter().copied().enumerate())?;
                    }
                    serde_json::to_value(&chi)?
                }
                CompactCommand::Classify(_) => {
                    let cls = classify_compact(&assoc, p, args.target, args.window, tol)?;
                    if let (Some(path), Some(chi)) = (&args.csv, &cls.chi) {
                        write_csv(path, "n,T_n", chi.tail_sequence.iter().copied().enumerate())?;
                    }
                    code = strict_code(c, cls.verdict == Compactness::Undetermined);
                    serde_json::to_value(&cls)?
                }
            };
            body["seriesTol"] = json!(DEFAULT_SERIES_TOL);
            body["errorBudget"] = json!(assoc.error_budget);
            job.emit(n, body)?;
            Ok(code)
        }
        Command::Selftest { trials, seed } => {
            let mut common = c.clone();
            if common.params.is_none() && common.preset.is_none() {
                common.preset = Some("weighted-mean".into());
            }
            let params = params_of(&common)?;
            let n = c.n.unwrap_or(12);
            let checks = selftest::run_selftest(&params, n, *trials, *seed)?;
            let passed = checks.iter().all(|k| k.passed);
            let body = json!({ "passed": passed, "seed": seed, "checks": checks });
            Job { common: c, command: "selftest", tol: Some(1e-12) }.emit(n, body)?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}
