//! The `figdist` command line.
//!
//! Every subcommand writes machine-readable output to stdout (or
//! `--output`). Failures print `{"error": {...}}` to stderr and exit with
//! 1 (usage), 2 (data) or 3 (convergence).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dataset::{detect_header, ingest_csv, Column, Ingested};
use crate::error::FigError;
use crate::eval::{self, ModelReport};
use crate::fig::FigParams;
use crate::mle::{Family, FitOptions};
use crate::sampler;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "figdist", version, about = "Fit, sample and evaluate the FIG distribution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one family and print a JSON report.
    Fit(FitArgs),
    /// Fit several families on one split; JSON array sorted by AIC.
    Compare(CompareArgs),
    /// Draw variates, one per line.
    Sample(SampleArgs),
    /// Print pdf, cdf, quantiles and moments as JSON.
    Eval(EvalArgs),
    /// Histogram and fitted density as TSV.
    Plotdata(PlotArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file, one observation per row.
    #[arg(long)]
    pub input: PathBuf,
    /// Column index (0-based) or header name.
    #[arg(long, default_value = "0")]
    pub column: Column,
    /// Treat the first row as a header (detected when neither flag is given).
    #[arg(long, conflicts_with = "no_header")]
    pub header: bool,
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Args)]
pub struct FitControl {
    #[arg(long, env = "FIGDIST_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Number of optimizer starts.
    #[arg(long, default_value_t = 5)]
    pub starts: usize,
    /// Gradient max-norm tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    /// Use finite-difference gradients.
    #[arg(long)]
    pub numeric_gradient: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "fig")]
    pub family: Family,
    /// Fraction of rows held out for the out-of-sample log-likelihood.
    #[arg(long, default_value_t = 0.0)]
    pub holdout: f64,
    #[command(flatten)]
    pub control: FitControl,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_delimiter = ',', default_value = "fig,gg,gamma,weibull,exponential")]
    pub families: Vec<Family>,
    #[arg(long, default_value_t = 0.1)]
    pub holdout: f64,
    #[command(flatten)]
    pub control: FitControl,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parameters on the FIG scale. Families fill in their fixed values and
/// copy tied ones (for `gg`, β defaults to α; for `weibull`, β and ν).
#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, default_value = "fig")]
    pub family: Family,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleMethod {
    Mixture,
    Invcdf,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(short = 'n', long = "count")]
    pub n: usize,
    #[arg(long, env = "FIGDIST_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SampleMethod::Mixture)]
    pub method: SampleMethod,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Points for pdf, cdf and survival values.
    #[arg(long, value_delimiter = ',')]
    pub at: Vec<f64>,
    /// Levels for the quantile function.
    #[arg(long, value_delimiter = ',')]
    pub quantile: Vec<f64>,
    /// Orders of raw moments.
    #[arg(long, value_delimiter = ',')]
    pub moment_order: Vec<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Family fitted to the data when `--sigma` etc. are not given.
    #[arg(long, default_value = "fig")]
    pub family: Family,
    /// Plot these parameters instead of fitting.
    #[arg(long, requires_all = ["alpha", "beta", "nu"])]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[command(flatten)]
    pub control: FitControl,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A failure with the exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<FigError> for CliError {
    fn from(e: FigError) -> Self {
        let (code, kind) = match &e {
            FigError::Data(_) | FigError::Io(_) => (EXIT_DATA, "data"),
            FigError::Domain(_) | FigError::Unrepresentable(_) => (EXIT_USAGE, "usage"),
            FigError::NonConvergence { .. } | FigError::NotPositiveDefinite(_) => (EXIT_CONVERGENCE, "convergence"),
            FigError::Divergent(_) => (EXIT_DATA, "divergent"),
        };
        CliError { code, kind, message: e.to_string() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError { code: EXIT_DATA, kind: "io", message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, kind: "usage", message: message.into() }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
    exit_code: i32,
}

fn write_error(stderr: &mut dyn Write, e: &CliError) {
    let body = serde_json::json!({ "error": ErrorBody { kind: e.kind, message: &e.message, exit_code: e.code } });
    let _ = writeln!(stderr, "{body}");
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            write_error(stderr, &usage(e.to_string().trim_end()));
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            write_error(stderr, &e);
            e.code
        }
    }
}

fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Fit(a) => with_output(&a.output, stdout, |w| cmd_fit(a, w, stderr)),
        Command::Compare(a) => with_output(&a.output, stdout, |w| cmd_compare(a, w, stderr)),
        Command::Sample(a) => with_output(&a.output, stdout, |w| cmd_sample(a, w)),
        Command::Eval(a) => with_output(&a.output, stdout, |w| cmd_eval(a, w)),
        Command::Plotdata(a) => with_output(&a.output, stdout, |w| cmd_plotdata(a, w, stderr)),
    }
}

fn with_output<F>(path: &Option<PathBuf>, stdout: &mut dyn Write, body: F) -> Result<i32, CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<i32, CliError>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError {
                code: EXIT_DATA,
                kind: "io",
                message: format!("{}: {e}", p.display()),
            })?;
            let mut w = BufWriter::new(file);
            let code = body(&mut w)?;
            w.flush()?;
            Ok(code)
        }
        None => {
            let code = body(stdout)?;
            stdout.flush()?;
            Ok(code)
        }
    }
}

fn load(input: &InputArgs, stderr: &mut dyn Write) -> Result<Ingested, CliError> {
    let has_header = if input.header {
        true
    } else if input.no_header {
        false
    } else {
        detect_header(&input.input, &input.column)?
    };
    let got = ingest_csv(&input.input, &input.column, has_header)?;
    if !got.rejects.is_empty() {
        let body = serde_json::json!({ "rejected_rows": got.rejects.len(), "rejects": got.rejects });
        let _ = writeln!(stderr, "{body}");
    }
    Ok(got)
}

fn fit_options(control: &FitControl, holdout: f64) -> Result<FitOptions, CliError> {
    if !(control.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    if control.starts == 0 {
        return Err(usage("--starts must be at least 1"));
    }
    if !(0.0..1.0).contains(&holdout) {
        return Err(usage("--holdout must lie in [0, 1)"));
    }
    Ok(FitOptions {
        max_iterations: control.max_iter,
        gradient_tolerance: control.tol,
        n_starts: control.starts,
        use_analytic_gradient: !control.numeric_gradient,
        holdout_fraction: holdout,
        seed: control.seed,
        standard_errors: true,
    })
}

#[derive(Serialize)]
struct FitOutput<'a> {
    #[serde(flatten)]
    report: &'a ModelReport,
    source: &'a str,
    rejected_rows: usize,
}

fn print_json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(|e| CliError {
        code: EXIT_DATA,
        kind: "io",
        message: e.to_string(),
    })?;
    writeln!(w)?;
    Ok(())
}

fn report_status(r: &ModelReport) -> i32 {
    if r.loglik_in.is_some() && r.converged {
        EXIT_OK
    } else if r.error.as_deref().is_some_and(|m| m.starts_with("data error")) {
        EXIT_DATA
    } else {
        EXIT_CONVERGENCE
    }
}

fn cmd_fit(a: &FitArgs, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let data = load(&a.input, stderr)?;
    let options = fit_options(&a.control, a.holdout)?;
    let report = eval::evaluate(&data.dataset, a.family, &options)?;
    if report.loglik_in.is_none() {
        let message = report.error.clone().unwrap_or_default();
        let code = report_status(&report);
        return Err(CliError { code, kind: if code == EXIT_DATA { "data" } else { "convergence" }, message });
    }
    print_json(out, &FitOutput { report: &report, source: data.dataset.source(), rejected_rows: data.rejects.len() })?;
    Ok(report_status(&report))
}

fn cmd_compare(a: &CompareArgs, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let data = load(&a.input, stderr)?;
    let options = fit_options(&a.control, a.holdout)?;
    if a.families.is_empty() {
        return Err(usage("--families is empty"));
    }
    let reports = eval::compare(&data.dataset, &a.families, &options)?;
    print_json(out, &reports)?;
    if reports.iter().all(|r| r.loglik_in.is_none()) {
        return Ok(reports.iter().map(report_status).max().unwrap_or(EXIT_CONVERGENCE));
    }
    Ok(EXIT_OK)
}

impl ParamArgs {
    /// Resolves the family's fixed and tied parameters.
    pub fn resolve(&self) -> Result<FigParams, CliError> {
        let (s, a, b, n) = (self.sigma, self.alpha, self.beta, self.nu);
        let fixed = |name: &str, given: Option<f64>, value: f64| -> Result<f64, CliError> {
            match given {
                Some(v) if v != value => Err(usage(format!(
                    "{} fixes {name} = {value}, got {v}",
                    self.family
                ))),
                _ => Ok(value),
            }
        };
        let need = |name: &str, given: Option<f64>| given.ok_or_else(|| usage(format!("--{name} is required")));
        let p = match self.family {
            Family::Fig => (s, need("alpha", a)?, need("beta", b)?, need("nu", n)?),
            Family::Gg => {
                let p = need("alpha", a.or(b))?;
                (s, p, fixed("beta", b, p)?, need("nu", n)?)
            }
            Family::Gamma => (s, fixed("alpha", a, 1.0)?, fixed("beta", b, 1.0)?, need("nu", n)?),
            Family::Weibull => {
                let k = need("alpha", a.or(b).or(n))?;
                (s, k, fixed("beta", b, k)?, fixed("nu", n, k)?)
            }
            Family::Exponential => (s, fixed("alpha", a, 1.0)?, fixed("beta", b, 1.0)?, fixed("nu", n, 1.0)?),
            Family::HalfNormal => (s, fixed("alpha", a, 2.0)?, fixed("beta", b, 2.0)?, fixed("nu", n, 1.0)?),
        };
        FigParams::new(p.0, p.1, p.2, p.3).map_err(|e| usage(e.to_string()))
    }
}

fn cmd_sample(a: &SampleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = a.params.resolve()?;
    if a.n == 0 {
        return Err(usage("-n must be at least 1"));
    }
    let values = match a.method {
        SampleMethod::Mixture => sampler::sample_fig(&params, a.n, a.seed)?,
        SampleMethod::Invcdf => sampler::sample_fig_invcdf(&params, a.n, a.seed)?,
    };
    for v in values {
        writeln!(out, "{v}")?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PointValues {
    x: f64,
    pdf: f64,
    log_pdf: f64,
    cdf: f64,
    sf: f64,
}

#[derive(Serialize)]
struct QuantileValue {
    q: f64,
    x: f64,
}

#[derive(Serialize)]
struct MomentValue {
    r: f64,
    value: f64,
}

#[derive(Serialize)]
struct EvalOutput {
    model: Family,
    params: FigParams,
    mean: f64,
    variance: f64,
    skewness: f64,
    kurtosis: f64,
    mode: Option<f64>,
    points: Vec<PointValues>,
    quantiles: Vec<QuantileValue>,
    moments: Vec<MomentValue>,
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = a.params.resolve()?;
    let mut points = Vec::with_capacity(a.at.len());
    for &x in &a.at {
        let (cdf, sf) = p.cdf_sf(x)?;
        points.push(PointValues { x, pdf: p.pdf(x)?, log_pdf: p.log_pdf(x)?, cdf, sf });
    }
    let quantiles =
        a.quantile.iter().map(|&q| Ok(QuantileValue { q, x: p.quantile(q)? })).collect::<Result<Vec<_>, FigError>>()?;
    let moments =
        a.moment_order.iter().map(|&r| Ok(MomentValue { r, value: p.raw_moment(r)? })).collect::<Result<Vec<_>, FigError>>()?;
    let output = EvalOutput {
        model: a.params.family,
        params: p,
        mean: p.mean(),
        variance: p.variance(),
        skewness: p.skewness(),
        kurtosis: p.kurtosis(),
        mode: p.mode().ok(),
        points,
        quantiles,
        moments,
    };
    print_json(out, &output)?;
    Ok(EXIT_OK)
}

/// Points of the fitted-density curve.
pub const PLOT_GRID: usize = 512;
const MAX_BINS: usize = 10_000;

fn quantile_of_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Freedman–Diaconis histogram, density-normalised:
/// `(left, right, count / (n · width))`.
pub fn histogram(data: &[f64]) -> Vec<(f64, f64, f64)> {
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let (min, max) = (sorted[0], sorted[n - 1]);
    if n < 2 || max == min {
        return vec![(min, max, f64::INFINITY)];
    }
    let iqr = quantile_of_sorted(&sorted, 0.75) - quantile_of_sorted(&sorted, 0.25);
    let mut width = 2.0 * iqr / (n as f64).cbrt();
    if !(width > 0.0) {
        // Sturges fallback when the IQR is zero.
        width = (max - min) / ((n as f64).log2().ceil() + 1.0);
    }
    let mut bins = ((max - min) / width).ceil().max(1.0) as usize;
    if bins > MAX_BINS {
        bins = MAX_BINS;
    }
    let width = (max - min) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in &sorted {
        let i = (((x - min) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let left = min + i as f64 * width;
            let right = if i + 1 == bins { max } else { min + (i + 1) as f64 * width };
            (left, right, c as f64 / (n as f64 * width))
        })
        .collect()
}

/// `PLOT_GRID` evenly spaced `(x, pdf)` pairs between the 0.1% and 99.9%
/// quantiles.
pub fn pdf_curve(p: &FigParams) -> crate::Result<Vec<(f64, f64)>> {
    let lo = p.quantile(0.001)?;
    let hi = p.quantile(0.999)?;
    (0..PLOT_GRID)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (PLOT_GRID - 1) as f64;
            Ok((x, p.pdf(x)?))
        })
        .collect()
}

fn cmd_plotdata(a: &PlotArgs, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let data = load(&a.input, stderr)?;
    let (params, label) = match (a.sigma, a.alpha, a.beta, a.nu) {
        (Some(s), Some(al), Some(b), Some(n)) => (FigParams::new(s, al, b, n).map_err(|e| usage(e.to_string()))?, "given".to_string()),
        _ => {
            let options = fit_options(&a.control, 0.0)?;
            let fit = crate::mle::fit_family(&data.dataset, a.family, &options)?;
            (fit.params, format!("fitted {} (loglik {}, converged {})", a.family, fit.loglik, fit.converged))
        }
    };
    let [s, al, b, n] = params.to_array();
    writeln!(out, "# source: {}", data.dataset.source())?;
    writeln!(out, "# model: {label}; sigma={s} alpha={al} beta={b} nu={n}")?;
    writeln!(out, "# section 1: histogram, Freedman-Diaconis bins, density = count / (n * width)")?;
    writeln!(out, "bin_left\tbin_right\tdensity")?;
    for (l, r, d) in histogram(&data.dataset) {
        writeln!(out, "{l}\t{r}\t{d}")?;
    }
    writeln!(out, "# section 2: pdf on {PLOT_GRID} points from quantile 0.001 to 0.999")?;
    writeln!(out, "x\tpdf")?;
    for (x, f) in pdf_curve(&params)? {
        writeln!(out, "{x}\t{f}")?;
    }
    Ok(EXIT_OK)
}
