//! The `muntz` command line.
//!
//! Exit codes: 0 on success, 2 when an input is rejected, 1 when a proven
//! bound fails on the grid.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructive::{qn_coefficients, qn_convergence_report_with_slack, BOUND_SLACK};
use crate::error::{invalid, Error, Result};
use crate::gram::{
    self, distance_to_span, distance_via_float_gram, distance_via_gram_ratio, DistanceReport,
};
use crate::muntz::{density_check, distance_profile, product_sum_table};
use crate::poly::{GeneralizedPolynomial, Grid, Interval, MIN_EXPONENT};
use crate::primes::{euler_report, euler_table, prime_exponent_distance, EulerReport};
use crate::report::{Cell, Format, Report, Table};
use crate::sequence::{parse_number_list, ExponentSequence};
use crate::weierstrass::{
    abs_approximant, default_slack, lattice_max_min, sqrt_certificate_with_slack, ErrorCertificate,
};

/// Relative `--output` paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "MUNTZ_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "muntz",
    version,
    about = "Certified polynomial and Müntz approximation reports"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Write the report here instead of standard output. Relative paths are
    /// taken from $MUNTZ_OUTPUT_DIR when it is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Number of uniform grid points used for sup-norm estimates.
    #[arg(long, global = true, default_value_t = 1001)]
    pub grid: usize,

    /// Numeric slack for bound checks [default: 1e-12·n for the Weierstrass
    /// certificates, 1e-9 for Müntz approximants].
    #[arg(long, global = true)]
    pub slack: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Table,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weierstrass iterates for √t and |t|.
    #[command(subcommand)]
    Approx(ApproxCommand),
    /// Polynomial approximants of max{f,g} and min{f,g}.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// L² distances from x^q to monomial spans.
    #[command(subcommand)]
    Dist(DistCommand),
    /// Density of exponent sequences.
    #[command(subcommand)]
    Density(DensityCommand),
    /// Explicit Müntz approximants Q_n.
    #[command(subcommand)]
    Muntz(MuntzCommand),
    /// Euler inequality and prime exponents.
    #[command(subcommand)]
    Primes(PrimesCommand),
    /// Best L² approximation of a polynomial from a monomial span.
    Project(ProjectArgs),
}

#[derive(Debug, Subcommand)]
pub enum ApproxCommand {
    /// Certificate for sup |√t − p_n(t)| <= 2/n on [0, 1].
    Sqrt {
        #[arg(long)]
        n: u32,
    },
    /// Certificate for sup ||t| − q_n(t)| <= 2a/n on [−a, a].
    Abs {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Approximants of max{f,g}, min{f,g} and their grid errors.
    Maxmin {
        /// First polynomial as JSON terms, or @file.
        #[arg(long)]
        f: String,
        /// Second polynomial as JSON terms, or @file.
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        hi: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpanMethod {
    ClosedForm,
    Gram,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    /// Sequence descriptor: "i", "2*i+1", "i^2", "primes", a list, or @file.
    #[arg(long)]
    pub sequence: String,
    /// First index for symbolic families.
    #[arg(long)]
    pub start: Option<u64>,
    /// Prepend λ = 0.
    #[arg(long)]
    pub with_zero: bool,
}

impl SequenceArgs {
    fn build(&self) -> Result<ExponentSequence> {
        let mut seq = ExponentSequence::parse(&self.sequence)?;
        if let Some(start) = self.start {
            seq = seq.starting_at(start)?;
        }
        if self.with_zero {
            seq = seq.with_leading_zero();
        }
        Ok(seq)
    }
}

#[derive(Debug, Subcommand)]
pub enum DistCommand {
    /// Distance from x^q to span{x^λ : λ in the list}.
    Span {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        /// Comma-separated exponents.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: String,
        #[arg(long, value_enum, default_value_t = SpanMethod::ClosedForm)]
        method: SpanMethod,
        /// Accept exponents in (−1/2, 0).
        #[arg(long)]
        allow_negative: bool,
    },
    /// δ_n along a sequence, n = 0..=n_max.
    Profile {
        #[arg(long)]
        q: f64,
        #[command(flatten)]
        sequence: SequenceArgs,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
    /// Exact δ² from rational Gram determinants.
    GramOracle {
        /// Rational target exponent, e.g. 3/2.
        #[arg(long)]
        q: String,
        /// Comma-separated rational exponents.
        #[arg(long)]
        lambdas: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum DensityCommand {
    /// Density verdict with partial-sum evidence.
    Check {
        #[command(flatten)]
        sequence: SequenceArgs,
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
    },
    /// Partial products ∏(1 − 1/a_i) and sums Σ 1/a_i for a_i > 1.
    Table {
        #[command(flatten)]
        sequence: SequenceArgs,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum MuntzCommand {
    /// Coefficients and bound of Q_n.
    Construct {
        #[arg(long)]
        q: f64,
        /// Comma-separated positive exponents λ_1, …, λ_n.
        #[arg(long)]
        lambdas: String,
        /// Number of steps [default: all exponents].
        #[arg(long)]
        n: Option<usize>,
    },
    /// Bound and grid sup of Q_n for n = 0..=n_max.
    Report {
        #[arg(long)]
        q: f64,
        #[command(flatten)]
        sequence: SequenceArgs,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PrimesCommand {
    /// Euler inequality H_n <= ∏(1 + 1/p) Σ 1/i².
    Euler {
        #[arg(long)]
        n: u64,
        /// Also compute every quantity in exact rationals.
        #[arg(long)]
        exact: bool,
        /// One row per n = 2..=N instead of a single report.
        #[arg(long)]
        table: bool,
    },
    /// Distance from x^q to span{1, x^p : p <= n prime}.
    Span {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// Target polynomial on [0, 1] as JSON terms, or @file.
    #[arg(long)]
    pub target: String,
    /// Comma-separated exponents of the span.
    #[arg(long)]
    pub lambdas: String,
}

/// Runs the command line and returns the process exit code.
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
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.report) {
                eprintln!("muntz: {e}");
                return 2;
            }
            match outcome.failure {
                None => 0,
                Some(msg) => {
                    eprintln!("muntz: certificate failure: {msg}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("muntz: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Certificate(_) => 1,
        _ => 2,
    }
}

/// A report plus an optional certificate failure to signal after writing it.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            failure: None,
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = report.render(cli.format.into())?;
    match &cli.output {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| invalid(format!("stdout: {e}")))
        }
        Some(path) => {
            let path = resolve_output(
                path,
                std::env::var_os(OUTPUT_DIR_ENV).as_deref().map(Path::new),
            );
            std::fs::write(&path, text)
                .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn resolve_output(path: &Path, dir: Option<&Path>) -> PathBuf {
    match dir {
        Some(d) if path.is_relative() => d.join(path),
        _ => path.to_path_buf(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.grid < 2 {
        return Err(invalid(format!(
            "--grid {} needs at least 2 points",
            cli.grid
        )));
    }
    if let Some(s) = cli.slack {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(invalid(format!(
                "--slack {s} must be finite and non-negative"
            )));
        }
    }
    match &cli.command {
        Command::Approx(ApproxCommand::Sqrt { n }) => {
            let grid = Grid::unit(cli.grid)?;
            let cert =
                sqrt_certificate_with_slack(*n, &grid, cli.slack.unwrap_or(default_slack(*n)))?;
            certificate_outcome(cert)
        }
        Command::Approx(ApproxCommand::Abs { n, a }) => {
            let approx = abs_approximant(*a, *n)?;
            let grid = Grid::uniform(-a, *a, cli.grid)?;
            let slack = cli.slack.unwrap_or(default_slack(*n) * a);
            certificate_outcome(approx.certificate_with_slack(&grid, slack)?)
        }
        Command::Lattice(LatticeCommand::Maxmin { f, g, n, lo, hi }) => {
            lattice(cli, f, g, *n, *lo, *hi)
        }
        Command::Dist(cmd) => dist(cmd),
        Command::Density(DensityCommand::Check { sequence, n_max }) => {
            let v = density_check(&sequence.build()?, *n_max)?;
            let table = Table::new(&[
                "sequence",
                "classical_condition",
                "full_condition",
                "verdict",
            ])
            .with_row(vec![
                v.sequence.clone().into(),
                v.classical_condition.as_str().into(),
                v.full_condition.as_str().into(),
                v.verdict.as_str().into(),
            ]);
            Ok(Report::new(&v, table)?.into())
        }
        Command::Density(DensityCommand::Table { sequence, n_max }) => {
            let seq = sequence.build()?;
            let rows = product_sum_table(seq.take(*n_max)?, *n_max)?;
            let mut table = Table::new(&["n", "product", "sum"]);
            for r in &rows {
                table.push(vec![r.n.into(), r.product.into(), r.sum.into()]);
            }
            Ok(Report::new(&rows, table)?.into())
        }
        Command::Muntz(cmd) => muntz(cli, cmd),
        Command::Primes(PrimesCommand::Euler { n, exact, table }) => {
            let reports = if *table {
                euler_table(*n, *exact)?
            } else {
                vec![euler_report(*n, *exact)?]
            };
            let mut t = Table::new(&[
                "n",
                "harmonic",
                "product_plus",
                "product_minus",
                "basel",
                "inequality_holds",
            ]);
            for r in &reports {
                t.push(euler_row(r));
            }
            let report = if *table {
                Report::new(&reports, t)?
            } else {
                Report::new(&reports[0], t)?
            };
            let failure = reports
                .iter()
                .find(|r| !r.inequality_holds)
                .map(|r| format!("Euler inequality fails at n = {}", r.n));
            Ok(Outcome { report, failure })
        }
        Command::Primes(PrimesCommand::Span { q, n }) => {
            distance_outcome(prime_exponent_distance(*q, *n)?)
        }
        Command::Project(args) => project(args),
    }
}

fn euler_row(r: &EulerReport) -> Vec<Cell> {
    vec![
        r.n.into(),
        r.harmonic.into(),
        r.product_plus.into(),
        r.product_minus.into(),
        r.basel.into(),
        r.inequality_holds.into(),
    ]
}

fn certificate_outcome(cert: ErrorCertificate) -> Result<Outcome> {
    let table = Table::new(&["n", "analytic_bound", "grid_estimate", "violations"]).with_row(vec![
        cert.n.into(),
        cert.analytic_bound.into(),
        cert.grid_estimate.into(),
        cert.violations.len().into(),
    ]);
    let failure = cert.clone().check().err().map(|e| match e {
        Error::Certificate(msg) => msg,
        other => other.to_string(),
    });
    Ok(Outcome {
        report: Report::new(&cert, table)?,
        failure,
    })
}

fn distance_outcome(r: DistanceReport) -> Result<Outcome> {
    let lambdas: Vec<String> = r
        .lambdas
        .iter()
        .map(|l| crate::report::format_float(*l))
        .collect();
    let table = Table::new(&["q", "lambdas", "delta", "method"]).with_row(vec![
        r.q.into(),
        lambdas.join(" ").into(),
        r.delta.into(),
        r.method.as_str().into(),
    ]);
    Ok(Report::new(&r, table)?.into())
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))
        }
        None => Ok(s.to_string()),
    }
}

fn parse_polynomial(s: &str) -> Result<GeneralizedPolynomial> {
    GeneralizedPolynomial::from_json(&read_arg(s)?)
}

fn parse_exponents(s: &str, allow_negative: bool) -> Result<Vec<f64>> {
    let exps = parse_number_list(&read_arg(s)?)?;
    for &l in &exps {
        let ok = if allow_negative {
            l > MIN_EXPONENT
        } else {
            l >= 0.0
        };
        if !(ok && l.is_finite()) {
            let need = if allow_negative {
                "> -1/2"
            } else {
                ">= 0 (use --allow-negative for (-1/2, 0))"
            };
            return Err(invalid(format!("exponent {l} must be {need}")));
        }
    }
    Ok(exps)
}

#[derive(Serialize)]
struct LatticeReport {
    n: u32,
    a: f64,
    bound: f64,
    max_error: f64,
    min_error: f64,
}

fn lattice(cli: &Cli, f: &str, g: &str, n: u32, lo: f64, hi: f64) -> Result<Outcome> {
    let domain = Interval::new(lo, hi)?;
    let f = parse_polynomial(f)?.with_domain(domain)?;
    let g = parse_polynomial(g)?.with_domain(domain)?;
    let grid = Grid::uniform(lo, hi, cli.grid)?;
    let lm = lattice_max_min(&f, &g, n, &grid)?;
    let (max_error, min_error) = lm.grid_errors(&grid)?;
    let r = LatticeReport {
        n,
        a: lm.a(),
        bound: lm.bound(),
        max_error,
        min_error,
    };
    let table = Table::new(&["n", "a", "bound", "max_error", "min_error"]).with_row(vec![
        n.into(),
        r.a.into(),
        r.bound.into(),
        max_error.into(),
        min_error.into(),
    ]);
    let slack = cli.slack.unwrap_or(default_slack(n) * r.a.max(1.0));
    let failure = (max_error.max(min_error) > r.bound + slack).then(|| {
        format!(
            "lattice error {:e} exceeds a/n = {:e}",
            max_error.max(min_error),
            r.bound
        )
    });
    Ok(Outcome {
        report: Report::new(&r, table)?,
        failure,
    })
}

fn dist(cmd: &DistCommand) -> Result<Outcome> {
    match cmd {
        DistCommand::Span {
            q,
            lambdas,
            method,
            allow_negative,
        } => {
            let floor = if *allow_negative { MIN_EXPONENT } else { 0.0 };
            if !(*q >= floor && *q > MIN_EXPONENT && q.is_finite()) {
                return Err(invalid(format!("q = {q} is out of range")));
            }
            let exps = parse_exponents(lambdas, *allow_negative)?;
            let r = match method {
                SpanMethod::ClosedForm => distance_to_span(*q, &exps)?,
                SpanMethod::Gram => distance_via_float_gram(*q, &exps)?,
            };
            distance_outcome(r)
        }
        DistCommand::Profile { q, sequence, n_max } => {
            let rows = distance_profile(*q, &sequence.build()?, *n_max)?;
            let mut table = Table::new(&["n", "delta"]);
            for r in &rows {
                table.push(vec![r.n.into(), r.delta.into()]);
            }
            Ok(Report::new(&rows, table)?.into())
        }
        DistCommand::GramOracle { q, lambdas } => {
            let q = gram::exact::parse_rational(q)?;
            let exps = read_arg(lambdas)?
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(gram::exact::parse_rational)
                .collect::<Result<Vec<_>>>()?;
            distance_outcome(distance_via_gram_ratio(&q, &exps)?)
        }
    }
}

#[derive(Serialize)]
struct ConstructReport {
    q: f64,
    lambdas: Vec<f64>,
    coefficients: Vec<f64>,
    bound: f64,
    grid_sup: f64,
}

fn muntz(cli: &Cli, cmd: &MuntzCommand) -> Result<Outcome> {
    let slack = cli.slack.unwrap_or(BOUND_SLACK);
    let grid = Grid::unit(cli.grid)?;
    match cmd {
        MuntzCommand::Construct { q, lambdas, n } => {
            let exps = parse_exponents(lambdas, false)?;
            let approx = qn_coefficients(*q, &exps, n.unwrap_or(exps.len()))?;
            let grid_sup = approx.grid_sup(&grid)?;
            let mut table = Table::new(&["i", "lambda", "coefficient"]);
            for (i, (l, a)) in approx
                .exponents
                .iter()
                .zip(&approx.coefficients)
                .enumerate()
            {
                table.push(vec![(i + 1).into(), (*l).into(), (*a).into()]);
            }
            let failure = (grid_sup > approx.bound + slack).then(|| {
                format!(
                    "grid sup {grid_sup:e} of Q_{} exceeds the bound {:e}",
                    approx.n(),
                    approx.bound
                )
            });
            let r = ConstructReport {
                q: approx.q,
                lambdas: approx.exponents,
                coefficients: approx.coefficients,
                bound: approx.bound,
                grid_sup,
            };
            Ok(Outcome {
                report: Report::new(&r, table)?,
                failure,
            })
        }
        MuntzCommand::Report { q, sequence, n_max } => {
            let rows =
                qn_convergence_report_with_slack(*q, &sequence.build()?, *n_max, &grid, slack)?;
            let mut table = Table::new(&["n", "bound", "grid_sup"]);
            for r in &rows {
                table.push(vec![r.n.into(), r.bound.into(), r.grid_sup.into()]);
            }
            Ok(Report::new(&rows, table)?.into())
        }
    }
}

#[derive(Serialize)]
struct ProjectReport {
    lambdas: Vec<f64>,
    coefficients: Vec<f64>,
    residual: f64,
    condition: f64,
}

fn project(args: &ProjectArgs) -> Result<Outcome> {
    let target = parse_polynomial(&args.target)?;
    if target.domain() != Interval::unit() {
        return Err(invalid("the target must live on [0, 1]"));
    }
    let exps = parse_exponents(&args.lambdas, false)?;
    let moments = gram::polynomial_moments(&target, &exps);
    let p = gram::project_l2(&moments, &exps, Some(gram::l2_norm_squared(&target)))?;
    let residual = p.residual_squared.unwrap_or(0.0).sqrt();
    let mut table = Table::new(&["lambda", "coefficient"]);
    for (l, c) in exps.iter().zip(&p.coefficients) {
        table.push(vec![(*l).into(), (*c).into()]);
    }
    let r = ProjectReport {
        lambdas: exps,
        coefficients: p.coefficients,
        residual,
        condition: p.condition,
    };
    Ok(Report::new(&r, table)?.into())
}
