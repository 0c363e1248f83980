//! Command-line front end for the `kgibbs` library.
//!
//! Data goes to stdout, progress and errors to stderr. Exit status is 0 on
//! success, 1 when a computation fails or a verification check does not
//! pass, and 2 on a usage error.

pub mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgibbs::approx::{
    build_closed_form, build_direct, cd_delta_residual, lagrange_interpolant, leading_coeff_check,
    FourierApprox, SignPointSet,
};
use kgibbs::combinat::{int, rat};
use kgibbs::gibbs::{
    default_scan_step, gibbs_constant_certified, overshoot, overshoot_table, steepness_table,
    DecimalValue, OvershootOptions, OvershootResult, Rounding,
};
use kgibbs::krawtchouk::{difference_identity_check, KrawtchoukFamily};
use kgibbs::steepident::{steepness_exact, BinomialSource, IdentityChecker, IdentityReport};
use kgibbs::BigRational;

use output::{exact_string, write_rows, Field, Format, Record};

/// Environment variable that caps the worker thread count.
pub const THREADS_ENV: &str = "KGIBBS_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "kgibbs",
    version,
    about = "Exact Krawtchouk-Fourier approximation of sgn"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Projection coefficients of F_N, or samples of F_N on [0, N/2].
    Approx(ApproxArgs),
    /// Slope F_N'(0).
    Steepness(SteepnessArgs),
    /// Slope F_N'(0) over a range of N.
    SteepnessTable(SteepnessTableArgs),
    /// Value of F_N at its first positive critical point.
    Overshoot(OvershootArgs),
    /// Overshoot over a list or range of N.
    OvershootTable(OvershootTableArgs),
    /// Exact verification suites.
    Verify(VerifyArgs),
    /// The classical Gibbs constant (2/pi) Si(pi).
    Gamma(GammaArgs),
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("expected a rational like 1/3: {e}"))
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected n,k, got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Coeffs,
    Samples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    HalfEven,
    Truncate,
}

impl From<RoundingArg> for Rounding {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::HalfEven => Rounding::HalfEven,
            RoundingArg::Truncate => Rounding::Truncate,
        }
    }
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long = "N")]
    pub size: usize,
    /// Krawtchouk parameter as a/b.
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    pub p: BigRational,
    #[arg(long, value_enum, default_value_t = Emit::Coeffs)]
    pub emit: Emit,
    /// Number of equispaced points on [0, N/2]; implies --emit samples.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = RoundingArg::HalfEven)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SteepnessArgs {
    #[arg(long = "N")]
    pub size: usize,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = RoundingArg::Truncate)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 2)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
    #[arg(long, default_value_t = 2)]
    pub step: usize,
}

impl RangeArgs {
    fn sizes(&self) -> Result<Vec<usize>, String> {
        if self.step == 0 {
            return Err("--step must be positive".into());
        }
        Ok((self.from..=self.to).step_by(self.step).collect())
    }
}

#[derive(Debug, Args)]
pub struct SteepnessTableArgs {
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = RoundingArg::Truncate)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OvershootArgs {
    #[arg(long = "N")]
    pub size: usize,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    /// Scan step for the critical-point search, as a/b.
    #[arg(long, value_parser = parse_rational)]
    pub theta_step: Option<BigRational>,
    #[arg(long, value_enum, default_value_t = RoundingArg::Truncate)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OvershootTableArgs {
    /// Comma-separated sizes, e.g. 10,50,100.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["from", "to", "step"])]
    pub list: Vec<usize>,
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long)]
    pub to: Option<usize>,
    #[arg(long)]
    pub step: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    #[arg(long, value_parser = parse_rational)]
    pub theta_step: Option<BigRational>,
    #[arg(long, value_enum, default_value_t = RoundingArg::Truncate)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Interpolation,
    Kernel,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Upper bound on M for the identity ladder.
    #[arg(long, default_value_t = 200)]
    pub m_max: usize,
    /// Upper bound on N for the interpolation suite.
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    /// Upper bound on N for the kernel suite.
    #[arg(long, default_value_t = 12)]
    pub kernel_max: usize,
    /// Take binomials from an uncached recomputation instead of the memo.
    #[arg(long)]
    pub audit: bool,
    /// Corrupt binom(n, k) by one, to exercise the failure path.
    #[arg(long, hide = true, value_parser = parse_pair)]
    pub inject_fault: Option<(i64, i64)>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = RoundingArg::HalfEven)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
    Check,
    Io(io::Error),
}

impl From<kgibbs::Error> for Failure {
    fn from(e: kgibbs::Error) -> Self {
        Self::Compute(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be positive"));
    }
    // A second call in the same process (tests) keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

pub fn execute<W: Write>(command: Command, out: &mut W) -> Outcome {
    match command {
        Command::Approx(a) => cmd_approx(a, out),
        Command::Steepness(a) => cmd_steepness(a, out),
        Command::SteepnessTable(a) => cmd_steepness_table(a, out),
        Command::Overshoot(a) => cmd_overshoot(a, out),
        Command::OvershootTable(a) => cmd_overshoot_table(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Gamma(a) => cmd_gamma(a, out),
    }
}

fn check_size(size: usize) -> Outcome {
    if size < 2 || size % 2 == 1 {
        return Err(Failure::Usage(format!(
            "--N must be even and at least 2, got {size}"
        )));
    }
    Ok(())
}

fn decimal(v: &BigRational, digits: u32, rounding: RoundingArg) -> DecimalValue {
    DecimalValue::from_rational(v, digits, rounding.into())
}

fn cmd_approx<W: Write>(a: ApproxArgs, out: &mut W) -> Outcome {
    check_size(a.size)?;
    let fam = KrawtchoukFamily::new(a.size, a.p.clone())?;
    let approx: FourierApprox = build_direct(&fam)?;
    let emit = if a.samples.is_some() {
        Emit::Samples
    } else {
        a.emit
    };
    let rows: Vec<Record> = match emit {
        Emit::Coeffs => approx
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(n, c)| {
                Record::new()
                    .with("n", Field::Int(n as i64))
                    .with("c", Field::Exact(c.clone()))
                    .with(
                        "c_decimal",
                        Field::Decimal(decimal(c, a.digits, a.rounding)),
                    )
            })
            .collect(),
        Emit::Samples => {
            let count = a.samples.unwrap_or(101);
            if count == 0 {
                return Err(Failure::Usage("--samples must be positive".into()));
            }
            let half = int((a.size / 2) as i64);
            (0..count)
                .map(|i| {
                    let x = if count == 1 {
                        int(0)
                    } else {
                        &half * rat(i as i64, count as i64 - 1)
                    };
                    let y = approx.polynomial().eval(&x);
                    Record::new()
                        .with("x", Field::Exact(x))
                        .with("f", Field::Decimal(decimal(&y, a.digits, a.rounding)))
                        .with("f_exact", Field::Exact(y))
                })
                .collect()
        }
    };
    write_rows(out, &rows, a.format)?;
    Ok(())
}

fn cmd_steepness<W: Write>(a: SteepnessArgs, out: &mut W) -> Outcome {
    check_size(a.size)?;
    let v = steepness_exact(a.size)?;
    let shown = decimal(&v, a.digits, a.rounding);
    match a.format {
        Format::Plain => writeln!(out, "{shown}")?,
        Format::Exact => writeln!(out, "{}", exact_string(&v))?,
        f => write_rows(out, &[steepness_record(a.size, v, shown)], f)?,
    }
    Ok(())
}

fn steepness_record(size: usize, v: BigRational, shown: DecimalValue) -> Record {
    Record::new()
        .with("N", Field::Int(size as i64))
        .with("steepness", Field::Exact(v))
        .with("decimal", Field::Decimal(shown))
}

fn cmd_steepness_table<W: Write>(a: SteepnessTableArgs, out: &mut W) -> Outcome {
    let sizes = a.range.sizes().map_err(Failure::Usage)?;
    for &n in &sizes {
        check_size(n)?;
    }
    eprintln!("steepness: {} sizes", sizes.len());
    let rows: Vec<Record> = steepness_table(&sizes, a.digits, a.rounding.into())?
        .into_iter()
        .map(|(n, v, shown)| steepness_record(n, v, shown))
        .collect();
    write_rows(out, &rows, a.format)?;
    Ok(())
}

fn overshoot_options(
    digits: u32,
    rounding: RoundingArg,
    step: Option<BigRational>,
) -> Result<OvershootOptions, Failure> {
    let scan_step = step.unwrap_or_else(default_scan_step);
    if scan_step <= int(0) {
        return Err(Failure::Usage("--theta-step must be positive".into()));
    }
    Ok(OvershootOptions {
        digits,
        rounding: rounding.into(),
        scan_step,
    })
}

fn overshoot_record(r: &OvershootResult) -> Record {
    Record::new()
        .with("N", Field::Int(r.size as i64))
        .with("overshoot", Field::Decimal(r.decimal.clone()))
        .with("theta_lo", Field::Exact(r.theta_lo.clone()))
        .with("theta_hi", Field::Exact(r.theta_hi.clone()))
        .with("value", Field::Exact(r.value.clone()))
        .with("certified", Field::Bool(r.certified))
}

fn cmd_overshoot<W: Write>(a: OvershootArgs, out: &mut W) -> Outcome {
    check_size(a.size)?;
    let opts = overshoot_options(a.digits, a.rounding, a.theta_step)?;
    let r = overshoot(a.size, &opts)?;
    if !r.certified {
        eprintln!("warning: N={} digits not certified", r.size);
    }
    match a.format {
        Format::Plain => writeln!(out, "{}", r.decimal)?,
        Format::Exact => writeln!(
            out,
            "{} in [{}, {}]",
            exact_string(&r.value),
            exact_string(&r.theta_lo),
            exact_string(&r.theta_hi)
        )?,
        f => write_rows(out, &[overshoot_record(&r)], f)?,
    }
    Ok(())
}

fn cmd_overshoot_table<W: Write>(a: OvershootTableArgs, out: &mut W) -> Outcome {
    let sizes = if a.list.is_empty() {
        let to = a.to.ok_or_else(|| {
            Failure::Usage("give --list or --to (with optional --from/--step)".into())
        })?;
        RangeArgs {
            from: a.from.unwrap_or(2),
            to,
            step: a.step.unwrap_or(2),
        }
        .sizes()
        .map_err(Failure::Usage)?
    } else {
        a.list.clone()
    };
    for &n in &sizes {
        check_size(n)?;
    }
    let opts = overshoot_options(a.digits, a.rounding, a.theta_step)?;
    eprintln!("overshoot: {} sizes", sizes.len());
    let mut rows = Vec::with_capacity(sizes.len());
    let mut failed = None;
    for (n, r) in overshoot_table(&sizes, &opts) {
        match r {
            Ok(r) => {
                eprintln!("overshoot: N={n} done");
                rows.push(overshoot_record(&r));
            }
            Err(e) => {
                eprintln!("error: N={n}: {e}");
                failed.get_or_insert(e);
            }
        }
    }
    write_rows(out, &rows, a.format)?;
    match failed {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn report_of(name: &str, range: String, cases: Vec<(Vec<i64>, bool)>) -> IdentityReport {
    let checked = cases.len();
    let first_failure = cases.into_iter().find(|c| !c.1).map(|c| c.0);
    IdentityReport {
        name: name.into(),
        range,
        checked,
        all_passed: first_failure.is_none(),
        first_failure,
    }
}

fn identity_suite(a: &VerifyArgs) -> Vec<IdentityReport> {
    let source = match (a.inject_fault, a.audit) {
        (Some((n, k)), _) => BinomialSource::Corrupt { n, k },
        (None, true) => BinomialSource::Audit,
        (None, false) => BinomialSource::Memo,
    };
    let c = IdentityChecker::new(source);
    let m = a.m_max;
    vec![
        c.st_equality(m),
        c.steepness_harmonic(m),
        c.cd_identities(m),
        c.x_recurrence(m),
        c.x_closed_form(m),
        c.wallis(m),
        c.supercatalan_identity(12, 12),
        c.appendix_lemma(40),
    ]
}

fn interpolation_suite(n_max: usize) -> Result<Vec<IdentityReport>, Failure> {
    let sizes: Vec<usize> = (2..=n_max).step_by(2).collect();
    let range = format!("even 2<=N<={n_max}");
    let mut triple = Vec::new();
    let mut interp = Vec::new();
    let mut lead = Vec::new();
    for &n in &sizes {
        let direct = build_direct(&KrawtchoukFamily::symmetric(n)?)?;
        let closed = build_closed_form(n)?;
        let lagrange = lagrange_interpolant(n)?;
        let case = vec![n as i64];
        triple.push((
            case.clone(),
            direct.polynomial() == closed.polynomial() && closed.polynomial() == &lagrange,
        ));
        interp.push((
            case.clone(),
            SignPointSet::new(n)?.interpolated_by(&lagrange),
        ));
        lead.push((case, leading_coeff_check(n)?));
    }
    Ok(vec![
        report_of("direct = closed form = interpolant", range.clone(), triple),
        report_of("F_N(m) = sgn(m)", range.clone(), interp),
        report_of("leading coefficient", range, lead),
    ])
}

fn kernel_suite(kernel_max: usize) -> Result<Vec<IdentityReport>, Failure> {
    let mut delta = Vec::new();
    for (pi, p) in [rat(1, 2), rat(2, 5)].into_iter().enumerate() {
        for n in (2..=kernel_max).step_by(2) {
            let fam = KrawtchoukFamily::new(n, p.clone())?;
            let half = (n / 2) as i64;
            for x in -half..=half {
                for y in -half..=half {
                    let ok = num_traits::Zero::is_zero(&cd_delta_residual(&fam, x, y)?);
                    delta.push((vec![pi as i64, n as i64, x, y], ok));
                }
            }
        }
    }
    let mut diff = Vec::new();
    for n in (2..=20).step_by(2) {
        for k in 1..=n {
            diff.push((vec![n as i64, k as i64], difference_identity_check(n, k)?));
        }
    }
    Ok(vec![
        report_of(
            "kernel delta property",
            format!("p in {{1/2, 2/5}}, even N<={kernel_max}"),
            delta,
        ),
        report_of("difference identity", "1<=n<=N<=20".into(), diff),
    ])
}

fn cmd_verify<W: Write>(a: VerifyArgs, out: &mut W) -> Outcome {
    let mut reports: Vec<(&str, IdentityReport)> = Vec::new();
    if matches!(a.suite, Suite::Identities | Suite::All) {
        eprintln!("verify: identities");
        reports.extend(identity_suite(&a).into_iter().map(|r| ("identities", r)));
    }
    if matches!(a.suite, Suite::Interpolation | Suite::All) {
        eprintln!("verify: interpolation");
        reports.extend(
            interpolation_suite(a.n_max)?
                .into_iter()
                .map(|r| ("interpolation", r)),
        );
    }
    if matches!(a.suite, Suite::Kernel | Suite::All) {
        eprintln!("verify: kernel");
        reports.extend(
            kernel_suite(a.kernel_max)?
                .into_iter()
                .map(|r| ("kernel", r)),
        );
    }
    match a.format {
        Format::Plain | Format::Exact => {
            for (suite, r) in &reports {
                writeln!(out, "{suite}: {r}")?;
            }
        }
        f => {
            let rows: Vec<Record> = reports
                .iter()
                .map(|(suite, r)| {
                    let first = r
                        .first_failure
                        .as_ref()
                        .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
                        .unwrap_or_default();
                    Record::new()
                        .with("suite", Field::Text(suite.to_string()))
                        .with("name", Field::Text(r.name.clone()))
                        .with("range", Field::Text(r.range.clone()))
                        .with("checked", Field::Int(r.checked as i64))
                        .with("passed", Field::Bool(r.all_passed))
                        .with("first_failure", Field::Text(first))
                })
                .collect();
            write_rows(out, &rows, f)?;
        }
    }
    if reports.iter().all(|(_, r)| r.all_passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_gamma<W: Write>(a: GammaArgs, out: &mut W) -> Outcome {
    let g = gibbs_constant_certified(a.digits, a.rounding.into());
    match a.format {
        Format::Plain => writeln!(out, "{}", g.value)?,
        Format::Exact => writeln!(out, "{}", exact_string(&g.value.to_rational()))?,
        f => {
            let row = Record::new()
                .with("digits", Field::Int(a.digits as i64))
                .with("gamma", Field::Decimal(g.value.clone()))
                .with("error_bound", Field::Exact(g.error_bound.clone()));
            write_rows(out, &[row], f)?;
        }
    }
    Ok(())
}
