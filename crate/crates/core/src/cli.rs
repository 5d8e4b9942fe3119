//! Command-line front end. [`run_with`] is the whole program minus process
//! plumbing, so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::criteria::{
    build_example_params, check_theorem_with_rho, corollary_threshold, ozaki_check,
    ozaki_coefficients, subordinating_sequence, ChainIndexing, CriterionId, CriterionReport,
    Overall, ThresholdKind,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{
    subordinating_check_with, verify_property_with, DiscGrid, PropertyKind, PropertyReport,
    DEFAULT_ANGLES, DEFAULT_MAX_RADIUS, DEFAULT_MIN_RADIUS, DEFAULT_RADII,
};
use crate::params::{FWParams, Pair};
use crate::report::{parse_job, run_scan, write_scan_csv, Action, Augment, JobSpec};
use crate::series::{CoefficientWindow, FoxWrightSeries, SeriesControl};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// Everything checked passed.
    Pass = 0,
    /// At least one check failed or passed only conditionally.
    Fail = 1,
    /// Bad arguments or unreadable input.
    Usage = 2,
    /// Non-convergence, domain or range failure.
    Numerical = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_error(e: &Error) -> Self {
        if e.is_numerical() {
            ExitStatus::Numerical
        } else {
            ExitStatus::Usage
        }
    }

    fn worst(self, other: ExitStatus) -> ExitStatus {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "foxwright",
    version,
    about = "Fox-Wright functions and geometric criteria"
)]
struct Cli {
    /// Series truncation tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Series term cap.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Number of sampled radii.
    #[arg(long, global = true, default_value_t = DEFAULT_RADII)]
    grid_radii: usize,
    /// Angles sampled per radius.
    #[arg(long, global = true, default_value_t = DEFAULT_ANGLES)]
    grid_angles: usize,
    /// Terms examined by coefficient-sequence tests.
    #[arg(long, global = true, default_value_t = crate::criteria::DEFAULT_PREFIX)]
    prefix_len: usize,
    /// Emit CSV instead of text reports.
    #[arg(long, global = true)]
    csv: bool,
    /// Assert non-negativity of the H-function kernel where a criterion needs it.
    #[arg(long, global = true)]
    assert_h_nonneg: bool,
    /// Disable grid parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Upper pair `a,A`; repeat for more pairs.
    #[arg(long = "upper", value_name = "a,A", value_parser = parse_pair, allow_hyphen_values = true)]
    upper: Vec<Pair>,
    /// Lower pair `b,B`; repeat for more pairs.
    #[arg(long = "lower", value_name = "b,B", value_parser = parse_pair, allow_hyphen_values = true)]
    lower: Vec<Pair>,
}

impl ParamArgs {
    fn build(&self) -> Result<FWParams> {
        FWParams::new(self.upper.iter().copied(), self.lower.iter().copied())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the normalized function z·pΨ̃q(z) (or pΨq(z) with --raw).
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        /// Real part of z.
        #[arg(allow_negative_numbers = true)]
        z: f64,
        /// Imaginary part of z.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        im: f64,
        /// Print pΨq(z) itself.
        #[arg(long)]
        raw: bool,
    },
    /// Print the normalized coefficients U_0..U_N.
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        n: usize,
    },
    /// Check the hypotheses of one or more criteria.
    Check {
        #[command(flatten)]
        params: ParamArgs,
        /// Criterion ids, e.g. T1_CASE1 T3 TT9_INEQ.
        #[arg(required = true)]
        ids: Vec<String>,
        /// ρ for T8_INEQ / TY8_INEQ.
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Sample a geometric property on a disc.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Starlike, Convex, CloseToConvexLog, ReOverZ(c), DerivDist(c), RatioDist(c).
        kind: String,
        /// Disc radius, 1 or 1/2.
        #[arg(long, default_value = "1")]
        radius: String,
        /// none, unit_upper or lower_two.
        #[arg(long, default_value = "none")]
        augment: String,
    },
    /// Run the scan actions of a job file and print CSV.
    Scan { job: PathBuf },
    /// Run every action of a job file.
    Run { job: PathBuf },
    /// Closed-form parameter thresholds: C2, K1_CONST, FINAL_STARLIKE.
    Thresholds {
        kind: String,
        #[arg(allow_negative_numbers = true)]
        a: Option<f64>,
    },
    /// Build the (α, β, γ) example family and its ρ₁.
    Example {
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
        #[arg(allow_negative_numbers = true)]
        beta: f64,
        #[arg(allow_negative_numbers = true)]
        gamma: f64,
        /// Criteria to check on the constructed parameters, using ρ₁.
        #[arg(long = "check")]
        check: Vec<String>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<Pair, String> {
    let (v, w) = s
        .split_once(',')
        .ok_or_else(|| format!("expected 'value,weight', got '{s}'"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("not a number: '{t}'"))
    };
    Ok(Pair::new(num(v)?, num(w)?))
}

fn parse_radius(s: &str) -> Result<f64> {
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad radius '{s}'")))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad radius '{s}'")))?;
            n / d
        }
        None => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad radius '{s}'")))?,
    };
    Ok(r)
}

/// 17 significant digits; positional for moderate magnitudes.
pub fn fmt17(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent present") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..15).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt17(z.re)
    } else {
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        format!("{} {sign} {}i", fmt17(z.re), fmt17(z.im.abs()))
    }
}

struct Ctx<'a> {
    control: SeriesControl,
    grid: DiscGrid,
    prefix_len: usize,
    csv: bool,
    assert_h: bool,
    exec: Execution,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref())
            .map_err(|e| Error::Usage(format!("cannot write output: {e}")))
    }
}

/// Parses `argv` (including the program name), runs the command, and
/// returns the exit status. Reports go to `out`, diagnostics to `err`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(out, "{rendered}");
                return ExitStatus::Pass;
            }
            let _ = write!(err, "{rendered}");
            return ExitStatus::Usage;
        }
    };
    match execute(cli, out) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::from_error(&e)
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<ExitStatus> {
    let defaults = SeriesControl::default();
    let control = SeriesControl::new(
        cli.tol.unwrap_or(defaults.tol()),
        cli.max_terms.unwrap_or(defaults.max_terms()),
        defaults.min_terms(),
    )?;
    let grid = DiscGrid::geometric(
        cli.grid_radii,
        cli.grid_angles,
        DEFAULT_MIN_RADIUS,
        DEFAULT_MAX_RADIUS,
    )?;
    let mut ctx = Ctx {
        control,
        grid,
        prefix_len: cli.prefix_len,
        csv: cli.csv,
        assert_h: cli.assert_h_nonneg,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        out,
    };
    match cli.command {
        Command::Eval { params, z, im, raw } => {
            let params = params.build()?;
            let z = Complex64::new(z, im);
            let f = FoxWrightSeries::new(params, ctx.control, z.norm())?;
            let v = if raw {
                f.fox_wright(z)?
            } else {
                crate::series::NormalizedFunction::value(&f, z)?
            };
            ctx.line(fmt_complex(v))?;
            Ok(ExitStatus::Pass)
        }
        Command::Coeffs { params, n } => {
            let params = params.build()?;
            let window = CoefficientWindow::new(&params, n + 1)?;
            if ctx.csv {
                ctx.line("k,U_k")?;
            }
            for (k, ln) in window.log_values().iter().enumerate() {
                let v = ln.exp();
                if ctx.csv {
                    ctx.line(format!("{k},{v:.16e}"))?;
                } else {
                    ctx.line(format!("U_{k} = {}", fmt17(v)))?;
                }
            }
            Ok(ExitStatus::Pass)
        }
        Command::Check { params, ids, rho } => {
            let params = params.build()?;
            let ids = parse_ids(&ids)?;
            {
                let h = ctx.assert_h;
                run_checks(&mut ctx, &params, &ids, rho, h)
            }
        }
        Command::Verify {
            params,
            kind,
            radius,
            augment,
        } => {
            let params = params.build()?;
            let kind: PropertyKind = kind.parse()?;
            let radius = parse_radius(&radius)?;
            let augment: Augment = augment.parse()?;
            run_verify(&mut ctx, &params, kind, radius, augment)
        }
        Command::Scan { job } => {
            let job = load_job(&job)?;
            let scans: Vec<_> = job
                .actions
                .iter()
                .filter_map(|a| match a {
                    Action::Scan(s) => Some(s),
                    _ => None,
                })
                .collect();
            if scans.is_empty() {
                return Err(Error::Usage("job file contains no scan action".into()));
            }
            for (i, spec) in scans.iter().enumerate() {
                let rows = run_scan(&job, spec, ctx.exec)?;
                if i > 0 {
                    ctx.line("")?;
                }
                let csv = write_scan_csv(&rows, &spec.variable.to_string())?;
                write!(ctx.out, "{csv}").map_err(|e| Error::Usage(e.to_string()))?;
            }
            Ok(ExitStatus::Pass)
        }
        Command::Run { job } => {
            let job = load_job(&job)?;
            run_job(&mut ctx, &job)
        }
        Command::Thresholds { kind, a } => {
            let kind: ThresholdKind = kind.parse()?;
            let a = match (kind, a) {
                (ThresholdKind::K1Const, a) => a.unwrap_or(1.0),
                (_, Some(a)) => a,
                (_, None) => return Err(Error::Usage("this threshold needs a value of a".into())),
            };
            ctx.line(fmt17(corollary_threshold(kind, a)?))?;
            Ok(ExitStatus::Pass)
        }
        Command::Example {
            alpha,
            beta,
            gamma,
            check,
        } => {
            let fam = build_example_params(alpha, beta, gamma)?;
            ctx.line(format!("params: {}", fam.params))?;
            ctx.line(format!("rho1: {}", fmt17(fam.rho1)))?;
            if check.is_empty() {
                return Ok(ExitStatus::Pass);
            }
            let ids = parse_ids(&check)?;
            let h = ctx.assert_h;
            run_checks(&mut ctx, &fam.params, &ids, Some(fam.rho1), h)
        }
    }
}

fn parse_ids(ids: &[String]) -> Result<Vec<CriterionId>> {
    ids.iter().map(|s| s.parse()).collect()
}

fn load_job(path: &PathBuf) -> Result<JobSpec> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Usage(format!("cannot read job file {}: {e}", path.display())))?;
    parse_job(&bytes)
}

fn status_of(overall: Overall) -> ExitStatus {
    match overall {
        Overall::Pass => ExitStatus::Pass,
        Overall::Fail | Overall::ConditionalPass => ExitStatus::Fail,
    }
}

fn run_checks(
    ctx: &mut Ctx<'_>,
    params: &FWParams,
    ids: &[CriterionId],
    rho: Option<f64>,
    assert_h: bool,
) -> Result<ExitStatus> {
    let mut status = ExitStatus::Pass;
    if ctx.csv {
        ctx.line("criterion,check,holds,margin")?;
    }
    for &id in ids {
        let report = check_theorem_with_rho(id, params, assert_h, rho)?;
        status = status.worst(status_of(report.overall));
        if ctx.csv {
            for c in &report.checks {
                let name = if c.name.contains(',') {
                    format!("\"{}\"", c.name.replace('"', "\"\""))
                } else {
                    c.name.clone()
                };
                ctx.line(format!("{id},{name},{},{:.16e}", c.holds, c.margin))?;
            }
        } else {
            print_report(ctx, &report)?;
            supplementary_evidence(ctx, params, &report)?;
        }
    }
    Ok(status)
}

fn print_report(ctx: &mut Ctx<'_>, r: &CriterionReport) -> Result<()> {
    ctx.line(format!("{}: {}", r.criterion_id, r.overall))?;
    for c in &r.checks {
        let mark = if c.holds { "ok  " } else { "FAIL" };
        ctx.line(format!(
            "  [{mark}] {}  (margin {})",
            c.name,
            fmt17(c.margin)
        ))?;
    }
    ctx.line(format!("  subject: {}", r.subject))?;
    let lead = match r.overall {
        Overall::Pass => "conclusion",
        Overall::ConditionalPass => "conclusion (conditional on asserted hypotheses)",
        Overall::Fail => "conclusion not established",
    };
    ctx.line(format!("  {lead}: {}", r.conclusion))?;
    for n in &r.notes {
        ctx.line(format!("  note: {n}"))?;
    }
    Ok(())
}

/// Coefficient-level evidence printed under criterion reports; it never
/// changes the exit status.
fn supplementary_evidence(ctx: &mut Ctx<'_>, params: &FWParams, r: &CriterionReport) -> Result<()> {
    match r.criterion_id {
        CriterionId::T1Case1 | CriterionId::T1Case2 | CriterionId::T1Case3 => {
            let coeffs =
                ozaki_coefficients(&r.subject, ctx.prefix_len, ChainIndexing::WeightedByK)?;
            let v = ozaki_check(&coeffs, ctx.prefix_len)?;
            let verdict = match (v.holds, v.chain, v.first_violation) {
                (true, Some(c), _) => format!("monotone ({c:?})"),
                (_, _, Some(n)) => format!("broken at n = {n}"),
                _ => "broken".into(),
            };
            ctx.line(format!(
                "  evidence: chain 1, U_1, 2U_2, ... over {} terms: {verdict}",
                v.checked_prefix
            ))?;
        }
        CriterionId::T3 => {
            let seq = subordinating_sequence(params, ctx.prefix_len)?;
            let rep = subordinating_check_with(&seq, &ctx.grid, ctx.prefix_len.max(8), ctx.exec)?;
            ctx.line(format!(
                "  evidence: subordinating-factor test on {}: min Re(1 + 2Σα_k z^k) = {} ({})",
                ctx.grid,
                fmt17(rep.min_margin),
                if rep.pass { "pass" } else { "fail" }
            ))?;
        }
        _ => {}
    }
    Ok(())
}

fn run_verify(
    ctx: &mut Ctx<'_>,
    params: &FWParams,
    kind: PropertyKind,
    radius: f64,
    augment: Augment,
) -> Result<ExitStatus> {
    let subject = augment.apply(params)?;
    let f = FoxWrightSeries::new(subject.clone(), ctx.control, radius * ctx.grid.max_radius())?;
    let rep = verify_property_with(&f, kind, &ctx.grid, radius, ctx.exec)?;
    print_property(ctx, &subject, &rep)?;
    Ok(if rep.pass {
        ExitStatus::Pass
    } else {
        ExitStatus::Fail
    })
}

fn print_property(ctx: &mut Ctx<'_>, subject: &FWParams, rep: &PropertyReport) -> Result<()> {
    if ctx.csv {
        ctx.line("kind,domain_radius,min_margin,witness_re,witness_im,pass,points_checked,points_skipped")?;
        ctx.line(format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{},{},{}",
            rep.kind,
            rep.domain_radius,
            rep.min_margin,
            rep.witness.re,
            rep.witness.im,
            rep.pass,
            rep.points_checked,
            rep.points_skipped
        ))
    } else {
        ctx.line(format!("function: z * normalized pΨq, {subject}"))?;
        ctx.line(rep.to_string())
    }
}

fn run_job(ctx: &mut Ctx<'_>, job: &JobSpec) -> Result<ExitStatus> {
    ctx.control = job.control;
    ctx.grid = job.grid.clone();
    let mut status = ExitStatus::Pass;
    for action in &job.actions {
        let s = match action {
            Action::Check {
                criteria,
                assert_h_nonneg,
            } => run_checks(
                ctx,
                &job.params,
                criteria,
                job.rho,
                *assert_h_nonneg || ctx.assert_h,
            )?,
            Action::Verify {
                kind,
                radius,
                augment,
            } => run_verify(ctx, &job.params, *kind, *radius, *augment)?,
            Action::Scan(spec) => {
                let rows = run_scan(job, spec, ctx.exec)?;
                let csv = write_scan_csv(&rows, &spec.variable.to_string())?;
                write!(ctx.out, "{csv}").map_err(|e| Error::Usage(e.to_string()))?;
                ExitStatus::Pass
            }
        };
        status = status.worst(s);
    }
    Ok(status)
}
