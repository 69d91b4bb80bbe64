//! Command-line driver.
//!
//! Exit codes: 0 success, 1 usage error, 2 algorithmic failure, 3 malformed
//! or unreadable matrix input, 4 invalid pole specification.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::algebroid::check_commutators;
use crate::bench::{evaluate_placement, run_suite, ExampleFamily, PoleOrder, SuiteConfig};
use crate::exact::{place_exact_roots, rational_to_decimal, ExactError, ExactMatrix};
use crate::io::{parse_integer_system, parse_system, read_file, IoError};
use crate::linalg::{ComplexScalar, DenseVector, PrecisionMode};
use crate::placement::{place_with_precision, Algorithm, PlacementError, PoleSpec, StateSpace};
use crate::sim::{simulate, trace_diff, FeedbackMode, SimConfig, SimError, Trace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ALGORITHM: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_POLES: i32 = 4;

pub const DEFAULT_SEED: u64 = 341;

#[derive(Debug, Parser)]
#[command(name = "poleplace", version, about = "Single-input pole placement toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a feedback gain and verify the achieved eigenvalues.
    Place(PlaceArgs),
    /// Compare algorithms on an example family.
    Bench(BenchArgs),
    /// Simulate the closed loop with RK4.
    Simulate(SimulateArgs),
    /// Exact rational gain by ring operations.
    Exact(ExactArgs),
    /// Check the commutator identities on the worked examples and random data.
    CheckCommutators(CommutatorArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Integer,
    Diag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    #[value(name = "32")]
    B32,
    #[value(name = "64")]
    B64,
    #[value(name = "both")]
    Both,
}

impl PrecisionArg {
    fn modes(self) -> Vec<PrecisionMode> {
        match self {
            PrecisionArg::B32 => vec![PrecisionMode::Bits32],
            PrecisionArg::B64 => vec![PrecisionMode::Bits64],
            PrecisionArg::Both => vec![PrecisionMode::Bits32, PrecisionMode::Bits64],
        }
    }

    fn single(self) -> Result<PrecisionMode, CliError> {
        match self {
            PrecisionArg::B32 => Ok(PrecisionMode::Bits32),
            PrecisionArg::B64 => Ok(PrecisionMode::Bits64),
            PrecisionArg::Both => Err(CliError::Usage("this subcommand takes --precision 32 or 64".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Fwd,
    Rev,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Gain,
    Chain,
    Both,
}

/// Where the system comes from.
#[derive(Debug, Clone, Args)]
pub struct SystemSource {
    /// System file: A then B as text blocks, or JSON {"a": ..., "b": ...}.
    #[arg(long, conflicts_with = "family")]
    pub system: Option<PathBuf>,
    /// Built-in example family instead of a file.
    #[arg(long, value_enum, requires = "n")]
    pub family: Option<FamilyArg>,
    /// Dimension for --family.
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed for the random similarity of the diag family.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PlaceArgs {
    #[arg(long, default_value = "algebroid2")]
    pub algo: String,
    #[command(flatten)]
    pub source: SystemSource,
    /// Comma-separated poles; ranges like -1..-10 and complex literals like -1+2i.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "charpoly")]
    pub poles: Option<String>,
    /// Monic characteristic polynomial, highest degree first.
    #[arg(long, allow_hyphen_values = true)]
    pub charpoly: Option<String>,
    #[arg(long, value_enum, default_value = "64")]
    pub precision: PrecisionArg,
    #[arg(long)]
    pub reverse_poles: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "integer")]
    pub family: FamilyArg,
    /// Inclusive dimension range `a..b`, or a single dimension.
    #[arg(long, default_value = "8..12")]
    pub n_range: String,
    /// Comma-separated algorithm names, or `all`.
    #[arg(long, default_value = "all")]
    pub algos: String,
    #[arg(long, value_enum, default_value = "64")]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value = "fwd")]
    pub order: OrderArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: SystemSource,
    /// Poles; defaults to the family's own (-0.01 * (1..n) for diag).
    #[arg(long, allow_hyphen_values = true)]
    pub poles: Option<String>,
    /// Initial state; defaults to 1..n.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: ModeArg,
    /// Horizon; defaults to five times the slowest time constant.
    #[arg(long = "T")]
    pub horizon: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub h: f64,
    #[arg(long, value_enum, default_value = "64")]
    pub precision: PrecisionArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub source: SystemSource,
    /// Integer poles, e.g. -1..-10.
    #[arg(long, allow_hyphen_values = true)]
    pub poles: String,
    /// Also print each entry with this many decimals.
    #[arg(long)]
    pub decimals: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CommutatorArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Algorithm(String),
    Malformed(String),
    Poles(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Algorithm(_) => EXIT_ALGORITHM,
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Poles(_) => EXIT_POLES,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Algorithm(m) | CliError::Malformed(m) | CliError::Poles(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<PlacementError> for CliError {
    fn from(e: PlacementError) -> Self {
        match e {
            PlacementError::InvalidPoleSet(_) | PlacementError::DimensionMismatch(_) => CliError::Poles(e.to_string()),
            other => CliError::Algorithm(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Placement(p) => p.into(),
            SimError::InvalidConfig(m) => CliError::Usage(m),
            other => CliError::Algorithm(other.to_string()),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::DimensionMismatch(_) => CliError::Poles(e.to_string()),
            other => CliError::Algorithm(other.to_string()),
        }
    }
}

fn parse_real(tok: &str) -> Result<f64, String> {
    let v: f64 = tok.trim().parse().map_err(|_| format!("'{tok}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{tok}' is not finite"))
    }
}

/// `a+bi`, `a-bi`, `bi`, `i` or a plain real.
pub fn parse_complex(tok: &str) -> Result<ComplexScalar, String> {
    let t = tok.trim();
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(t).map(ComplexScalar::real);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => parse_real(s)?,
    };
    Ok(ComplexScalar::new(re, im))
}

/// Comma-separated poles; `a..b` expands to the integers from `a` to `b`.
pub fn parse_poles(text: &str) -> Result<Vec<ComplexScalar>, String> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, b)) = tok.split_once("..") {
            let (a, b) = (parse_real(a)?, parse_real(b)?);
            if a.fract() != 0.0 || b.fract() != 0.0 {
                return Err(format!("range '{tok}' needs integer endpoints"));
            }
            let step = if b >= a { 1.0 } else { -1.0 };
            let mut x = a;
            while (x - b) * step <= 0.0 {
                out.push(ComplexScalar::real(x));
                x += step;
            }
        } else {
            out.push(parse_complex(tok)?);
        }
    }
    if out.is_empty() {
        return Err("no poles given".into());
    }
    Ok(out)
}

fn parse_reals(text: &str) -> Result<Vec<f64>, String> {
    text.split(',').map(str::trim).filter(|t| !t.is_empty()).map(parse_real).collect()
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected a range like 8..12, got '{text}'"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b),
        None => (text, text),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b || a == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_algos(text: &str) -> Result<Vec<Algorithm>, CliError> {
    if text.trim() == "all" {
        return Ok(Algorithm::ALL.to_vec());
    }
    text.split(',')
        .map(|s| s.parse::<Algorithm>().map_err(CliError::Usage))
        .collect()
}

fn family(kind: FamilyArg, n: usize, seed: u64) -> ExampleFamily {
    match kind {
        FamilyArg::Integer => ExampleFamily::integer(n),
        FamilyArg::Diag => ExampleFamily::scaled_diagonal(n, Some(seed)),
    }
}

fn load_system(src: &SystemSource) -> Result<(StateSpace<f64>, Option<ExampleFamily>), CliError> {
    match (&src.system, src.family) {
        (Some(path), _) => Ok((parse_system(&read_file(path)?)?, None)),
        (None, Some(kind)) => {
            let fam = family(kind, src.n.unwrap_or(0), src.seed);
            let sys = fam.system().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok((sys, Some(fam)))
        }
        (None, None) => Err(CliError::Usage("give --system <file> or --family <name> --n <k>".into())),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn run_place(args: &PlaceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let algo: Algorithm = args.algo.parse().map_err(CliError::Usage)?;
    let (sys, fam) = load_system(&args.source)?;
    let mut spec = match (&args.poles, &args.charpoly) {
        (Some(p), None) => PoleSpec::roots(parse_poles(p).map_err(CliError::Poles)?)?,
        (None, Some(c)) => PoleSpec::char_poly(parse_reals(c).map_err(CliError::Poles)?)?,
        (None, None) => match fam {
            Some(f) => PoleSpec::real(&f.default_poles()),
            None => return Err(CliError::Usage("give --poles or --charpoly".into())),
        },
        (Some(_), Some(_)) => return Err(CliError::Usage("--poles and --charpoly are exclusive".into())),
    };
    if args.reverse_poles {
        spec = spec.reversed();
    }
    if spec.degree() != sys.n() {
        return Err(CliError::Poles(format!("{} poles for a system of order {}", spec.degree(), sys.n())));
    }
    let precision = args.precision.single()?;
    let k = place_with_precision(&sys, &spec, algo, precision)?;
    let mut rec = evaluate_placement(&sys, &spec, &k, precision);
    rec.algorithm = algo;
    if let Some(f) = fam {
        rec.family = f.kind;
    }
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&rec).expect("serialisable") + "\n",
        Format::Csv => {
            let mut s = String::from("index,gain,achieved_re,achieved_im\n");
            for (i, g) in rec.gain.iter().enumerate() {
                let e = rec.achieved.get(i).copied().unwrap_or(ComplexScalar::real(f64::NAN));
                let _ = writeln!(s, "{i},{g:?},{:?},{:?}", e.re, e.im);
            }
            s
        }
        Format::Text => {
            let mut s = format!("algorithm {algo}, precision {precision} bits\nK =");
            for g in &rec.gain {
                let _ = write!(s, " {g:?}");
            }
            s.push_str("\n\ntarget                  achieved\n");
            let mut targets = spec.poles()?;
            targets.sort_by(ComplexScalar::cmp_re_im);
            for (t, a) in targets.iter().zip(&rec.achieved) {
                let _ = writeln!(s, "{:<22}  {}", t.to_string(), a);
            }
            let _ = writeln!(
                s,
                "\nmax |error| = {:e}, complex pairs = {}",
                rec.max_abs_error, rec.complex_pair_count
            );
            s
        }
    };
    emit(out, None, &text)
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (lo, hi) = parse_range(&args.n_range)?;
    let families = (lo..=hi).map(|n| family(args.family, n, args.seed)).collect();
    let orders = match args.order {
        OrderArg::Fwd => vec![PoleOrder::Forward],
        OrderArg::Rev => vec![PoleOrder::Reversed],
        OrderArg::Both => vec![PoleOrder::Forward, PoleOrder::Reversed],
    };
    let cfg = SuiteConfig {
        families,
        algorithms: parse_algos(&args.algos)?,
        precisions: args.precision.modes(),
        orders,
    };
    let report = run_suite(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let format = match (args.format, &args.out) {
        (Format::Text, Some(p)) if p.extension().is_some_and(|e| e == "csv") => Format::Csv,
        (f, _) => f,
    };
    let text = match format {
        Format::Text => report.render_text(),
        Format::Csv => report.render_csv(),
        Format::Json => serde_json::to_string_pretty(&report).expect("serialisable") + "\n",
    };
    emit(out, args.out.as_deref(), &text)
}

fn run_sim_typed<T: crate::linalg::Real>(
    sys: &StateSpace<f64>,
    spec: &PoleSpec,
    x0: &DenseVector<f64>,
    horizon: f64,
    h: f64,
    mode: FeedbackMode,
) -> Result<Trace, CliError> {
    let sys_t = sys.cast::<T>();
    let cfg = SimConfig::new(horizon, h, x0.cast::<T>(), mode)?;
    Ok(simulate(&sys_t, spec, &cfg, None)?)
}

fn run_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (sys, fam) = load_system(&args.source)?;
    let n = sys.n();
    let spec = match (&args.poles, fam) {
        (Some(p), _) => PoleSpec::roots(parse_poles(p).map_err(CliError::Poles)?)?,
        (None, Some(f)) => PoleSpec::real(&f.default_poles()),
        (None, None) => return Err(CliError::Usage("give --poles".into())),
    };
    if spec.degree() != n {
        return Err(CliError::Poles(format!("{} poles for a system of order {n}", spec.degree())));
    }
    let x0 = match &args.x0 {
        Some(t) => DenseVector::new(parse_reals(t).map_err(CliError::Usage)?)
            .map_err(|e| CliError::Usage(e.to_string()))?,
        None => DenseVector::new((1..=n).map(|k| k as f64).collect()).expect("finite"),
    };
    let horizon = match args.horizon {
        Some(t) => t,
        None => SimConfig::with_defaults(&spec, x0.clone(), FeedbackMode::GainVector)?.horizon,
    };
    let precision = args.precision.single()?;
    let run = |mode| match precision {
        PrecisionMode::Bits32 => run_sim_typed::<f32>(&sys, &spec, &x0, horizon, args.h, mode),
        PrecisionMode::Bits64 => run_sim_typed::<f64>(&sys, &spec, &x0, horizon, args.h, mode),
    };
    let text = match args.mode {
        ModeArg::Gain => run(FeedbackMode::GainVector)?.to_csv(),
        ModeArg::Chain => run(FeedbackMode::ChainFunction)?.to_csv(),
        ModeArg::Both => {
            let g = run(FeedbackMode::GainVector)?;
            let c = run(FeedbackMode::ChainFunction)?;
            let d = trace_diff(&g, &c)?;
            let mut s = String::from("t");
            for prefix in ["gain_x", "chain_x", "diff_x"] {
                for i in 1..=n {
                    let _ = write!(s, ",{prefix}{i}");
                }
            }
            s.push('\n');
            for k in 0..g.len() {
                let _ = write!(s, "{}", g.times[k]);
                for tr in [&g, &c, &d] {
                    for v in &tr.states[k] {
                        let _ = write!(s, ",{v}");
                    }
                }
                s.push('\n');
            }
            s
        }
    };
    emit(out, args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct ExactOutput {
    denominator: String,
    numerators: Vec<String>,
    gain: Vec<String>,
}

fn run_exact(args: &ExactArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (a, b) = match (&args.source.system, args.source.family) {
        (Some(path), _) => parse_integer_system(&read_file(path)?)?,
        (None, Some(FamilyArg::Integer)) => {
            let n = args.source.n.unwrap_or(0);
            let (a, b) = crate::bench::integer_example_entries(n).map_err(|e| CliError::Usage(e.to_string()))?;
            (
                a.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
                b.into_iter().map(BigInt::from).collect(),
            )
        }
        _ => return Err(CliError::Usage("exact needs --system <file> or --family integer --n <k>".into())),
    };
    let poles = parse_poles(&args.poles).map_err(CliError::Poles)?;
    let roots = poles
        .iter()
        .map(|p| {
            if p.im == 0.0 && p.re.fract() == 0.0 && p.re.abs() < 9.0e15 {
                Ok(p.re as i64)
            } else {
                Err(CliError::Poles(format!("exact placement needs integer poles, got {p}")))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let am = ExactMatrix::from_rows(a).map_err(|e| CliError::Malformed(e.to_string()))?;
    if roots.len() != b.len() {
        return Err(CliError::Poles(format!("{} poles for a system of order {}", roots.len(), b.len())));
    }
    let g = place_exact_roots(&am, &b, &roots)?.simplify();
    let ratio = g.ratio()?;
    let text = match args.format {
        Format::Json => {
            let o = ExactOutput {
                denominator: g.denominator.to_string(),
                numerators: g.numerator.iter().map(ToString::to_string).collect(),
                gain: ratio.iter().map(ToString::to_string).collect(),
            };
            serde_json::to_string_pretty(&o).expect("serialisable") + "\n"
        }
        Format::Text | Format::Csv => {
            let mut s = String::new();
            for r in &ratio {
                match args.decimals {
                    Some(d) => {
                        let _ = writeln!(s, "{r}\t{}", rational_to_decimal(r, d));
                    }
                    None => {
                        let _ = writeln!(s, "{r}");
                    }
                }
            }
            s
        }
    };
    emit(out, None, &text)
}

fn run_commutators(args: &CommutatorArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let checks = check_commutators(args.seed, args.trials).map_err(|e| CliError::Algorithm(e.to_string()))?;
    let mut s = String::new();
    for c in &checks {
        let _ = write!(s, "{} {} (residual {:e})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.residual);
        if !c.detail.is_empty() {
            let _ = write!(s, " {}", c.detail);
        }
        s.push('\n');
    }
    emit(out, None, &s)?;
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(CliError::Algorithm("some commutator checks failed".into()))
    }
}

/// Executes a parsed command.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Place(a) => run_place(a, out),
        Command::Bench(a) => run_bench(a, out),
        Command::Simulate(a) => run_simulate(a, out),
        Command::Exact(a) => run_exact(a, out),
        Command::CheckCommutators(a) => run_commutators(a, out),
    }
}

/// Parses `args` (program name first) and runs; diagnostics go to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_syntax() {
        let p = parse_poles("-1..-4").unwrap();
        assert_eq!(p.iter().map(|c| c.re).collect::<Vec<_>>(), vec![-1.0, -2.0, -3.0, -4.0]);
        let p = parse_poles("-1+2i,-1-2i, -3").unwrap();
        assert_eq!(p[0], ComplexScalar::new(-1.0, 2.0));
        assert_eq!(p[1], ComplexScalar::new(-1.0, -2.0));
        assert_eq!(p[2], ComplexScalar::real(-3.0));
        assert_eq!(parse_complex("2i").unwrap(), ComplexScalar::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), ComplexScalar::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3-1e-2i").unwrap(), ComplexScalar::new(1e-3, -1e-2));
        assert!(parse_poles("").is_err());
        assert!(parse_poles("-1.5..-3").is_err());
        assert!(parse_poles("abc").is_err());
    }

    #[test]
    fn ranges_and_algos() {
        assert_eq!(parse_range("8..12").unwrap(), (8, 12));
        assert_eq!(parse_range("10").unwrap(), (10, 10));
        assert!(parse_range("12..8").is_err());
        assert_eq!(parse_algos("alg1,alg2").unwrap(), vec![Algorithm::Algebroid1, Algorithm::Algebroid2]);
        assert_eq!(parse_algos("all").unwrap().len(), 9);
        assert!(parse_algos("nope").is_err());
    }

    #[test]
    fn exit_codes() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["poleplace", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        let code = run(
            ["poleplace", "place", "--family", "integer", "--n", "3", "--poles", "-1+2i,-3"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_POLES);
        assert!(String::from_utf8_lossy(&err).contains("conjugate"));
        assert_eq!(run(["poleplace", "--help"], &mut out, &mut err), EXIT_OK);
    }
}
