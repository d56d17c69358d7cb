//! Command-line front end: fitting, evaluation, sampling and reference
//! tables for the intensive natural distributions.
//!
//! Exit codes: 0 on success, 1 for usage, input and domain errors, 2 for
//! numerical failures such as a fit that does not converge.

mod ingest;
mod svg;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use intensive::discrete_oracle::{
    binomial_pmf_exact, continuity_check, demoivre_approx, poisson_approx_mean, poisson_pmf_exact,
    TrialSpec,
};
use intensive::distribution::QuadratureCdf;
use intensive::estimation::{
    fit, pdf_at_midpoints, u_from_max, FitOptions, FitReport, HistfitOptions, Method,
    VarianceConvention,
};
use intensive::goodness_of_fit::Binning;
use intensive::horwitz::horwitz_table;
use intensive::lognormal_bridge::closeness_report;
use intensive::sampling::{sample, sample_unlikely_reciprocal, SampleRequest};
use intensive::{
    Error, GenericParams, HomogeneousParams, LikelyParams, LogNormalParams,
    MirroredLogNormalParams, Model, ModelKind, NormalParams, UnlikelyParams,
};

pub use ingest::ingest_csv;

/// Seed used by `sample` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Library(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numeric() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Library(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

fn io_error(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(
    name = "intensive",
    version,
    about = "Intensive natural distributions: fit, evaluate, sample"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit a model to one column of a CSV file
    Fit(FitArgs),
    /// Tabulate pdf and cdf over a grid
    Eval(EvalArgs),
    /// Draw seeded random variates
    Sample(SampleArgs),
    /// Exact binomial/Poisson probabilities against their approximations
    Oracle(OracleArgs),
    /// Coefficient of variation against mass fraction
    Horwitz(HorwitzArgs),
    /// Closeness of the unlikely and log-normal laws
    CompareLognormal(CompareArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Unlikely,
    Likely,
    Generic,
    Homogeneous,
    Normal,
    Lognormal,
    MirroredLognormal,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Unlikely => ModelKind::Unlikely,
            ModelArg::Likely => ModelKind::Likely,
            ModelArg::Generic => ModelKind::Generic,
            ModelArg::Homogeneous => ModelKind::Homogeneous,
            ModelArg::Normal => ModelKind::Normal,
            ModelArg::Lognormal => ModelKind::LogNormal,
            ModelArg::MirroredLognormal => ModelKind::MirroredLogNormal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Mle,
    Histfit,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Mle => Method::Mle,
            MethodArg::Histfit => Method::Histfit,
        }
    }
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    /// Upper bound of the support (likely, generic, mirrored-lognormal; optional for homogeneous)
    #[arg(long)]
    u: Option<f64>,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, value_enum, default_value = "closed")]
    method: MethodArg,
    #[arg(long)]
    input: PathBuf,
    /// 0-based column index
    #[arg(long, default_value_t = 0)]
    column: usize,
    /// Number of histogram bins (default: Freedman–Diaconis)
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    u: Option<f64>,
    /// Use u = max(x)·(1 + 1e-6) when --u is absent
    #[arg(long)]
    u_from_max: bool,
    /// Divide the variance by n instead of n − 1
    #[arg(long)]
    population_variance: bool,
    /// Evaluation budget of the histogram fit
    #[arg(long, default_value_t = 10_000)]
    max_evals: usize,
    /// Directory for report.json, report.csv, histogram.csv and pp.csv
    #[arg(long)]
    output: Option<PathBuf>,
    /// Directory for histogram.svg and pp.svg
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// CSV file (default: standard output)
    #[arg(long)]
    output: Option<PathBuf>,
    /// SVG file with the density curve
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SamplerArg {
    InverseCdf,
    Reciprocal,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// `reciprocal` is the exact inverse-Gaussian route (unlikely only)
    #[arg(long, value_enum, default_value = "inverse-cdf")]
    sampler: SamplerArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleKind {
    Binomial,
    Poisson,
    Continuity,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    p: Option<f64>,
    /// Poisson mean
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HorwitzArgs {
    #[arg(long, default_value_t = 1e-8)]
    from: f64,
    #[arg(long, default_value_t = 1e-1)]
    to: f64,
    #[arg(long, default_value_t = 29)]
    points: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Log-scale deviation; repeat for several rows
    #[arg(long, default_values_t = vec![0.2, 0.1, 0.05])]
    sigma: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    from: f64,
    #[arg(long, default_value_t = 2.0)]
    to: f64,
    #[arg(long, default_value_t = 301)]
    points: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Formats a real with 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_bytes(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let wrap = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(header).map_err(wrap)?;
    for r in rows {
        w.write_record(&r).map_err(wrap)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Input(format!("csv: {e}")))
}

fn emit(bytes: &[u8], path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| io_error(p, e)),
        None => out
            .write_all(bytes)
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

fn need(name: &str, v: Option<f64>, kind: ModelKind) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("the {kind} model needs --{name}")))
}

fn build_model(a: &ParamArgs) -> Result<Model, CliError> {
    let kind = ModelKind::from(a.model);
    let mu = need("mu", a.mu, kind)?;
    Ok(match kind {
        ModelKind::Unlikely => UnlikelyParams::new(mu, need("k", a.k, kind)?)?.into(),
        ModelKind::Likely => {
            LikelyParams::new(mu, need("k", a.k, kind)?, need("u", a.u, kind)?)?.into()
        }
        ModelKind::Generic => {
            GenericParams::new(mu, need("k", a.k, kind)?, need("u", a.u, kind)?)?.into()
        }
        ModelKind::Homogeneous => {
            HomogeneousParams::new(mu, need("k", a.k, kind)?, a.u.unwrap_or(f64::INFINITY))?.into()
        }
        ModelKind::Normal => NormalParams::new(mu, need("sigma", a.sigma, kind)?)?.into(),
        ModelKind::LogNormal => LogNormalParams::new(mu, need("sigma", a.sigma, kind)?)?.into(),
        ModelKind::MirroredLogNormal => {
            MirroredLogNormalParams::new(mu, need("sigma", a.sigma, kind)?, need("u", a.u, kind)?)?
                .into()
        }
    })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Fit(a) => run_fit(&a, out),
        Command::Eval(a) => run_eval(&a, out),
        Command::Sample(a) => run_sample(&a, out),
        Command::Oracle(a) => run_oracle(&a, out),
        Command::Horwitz(a) => run_horwitz(&a, out),
        Command::CompareLognormal(a) => run_compare(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct JsonReport {
    model: &'static str,
    method: &'static str,
    count: usize,
    parameters: serde_json::Map<String, serde_json::Value>,
    r_squared: Option<f64>,
    residual: Option<f64>,
    poor_fit: bool,
}

fn json_report(r: &FitReport) -> JsonReport {
    let parameters = r
        .model
        .parameters()
        .into_iter()
        .map(|(k, v)| {
            let value = serde_json::Number::from_f64(v)
                .map(serde_json::Value::Number)
                .unwrap_or_else(|| serde_json::Value::String(v.to_string()));
            (k.to_string(), value)
        })
        .collect();
    JsonReport {
        model: r.model.kind().name(),
        method: r.method.name(),
        count: r.count,
        parameters,
        r_squared: r.r_squared.is_finite().then_some(r.r_squared),
        residual: r.residual,
        poor_fit: r.poor_fit,
    }
}

fn run_fit(a: &FitArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let kind = ModelKind::from(a.model);
    let data = ingest_csv(&a.input, a.column)?;
    let u = match (a.u, a.u_from_max) {
        (Some(u), _) => Some(u),
        (None, true) => Some(u_from_max(&data)?),
        (None, false) if kind.needs_u() => {
            return Err(CliError::Usage(format!(
                "the {kind} model needs --u (or --u-from-max)"
            )))
        }
        (None, false) => None,
    };
    let opts = FitOptions {
        u,
        variance: if a.population_variance {
            VarianceConvention::Population
        } else {
            VarianceConvention::Sample
        },
        binning: a.bins.map_or(Binning::FreedmanDiaconis, Binning::Count),
        histfit: HistfitOptions {
            max_evals: a.max_evals,
            ..HistfitOptions::default()
        },
    };
    let report = fit(kind, a.method.into(), &data, &opts)?;
    let json = serde_json::to_string_pretty(&json_report(&report))
        .map_err(|e| CliError::Input(format!("json: {e}")))?;
    writeln!(out, "{json}").map_err(|e| CliError::Input(format!("stdout: {e}")))?;

    let overlay = pdf_at_midpoints(&report.histogram, &report.model)?;
    if let Some(dir) = &a.output {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let write = |name: &str, bytes: &[u8]| -> Result<(), CliError> {
            let p = dir.join(name);
            fs::write(&p, bytes).map_err(|e| io_error(&p, e))
        };
        write("report.json", format!("{json}\n").as_bytes())?;

        let params = report.model.parameters();
        let mut header = vec!["model", "method", "count"];
        header.extend(params.iter().map(|(k, _)| *k));
        header.extend(["r_squared", "residual", "poor_fit"]);
        let mut row = vec![
            report.model.kind().name().to_string(),
            report.method.name().to_string(),
            report.count.to_string(),
        ];
        row.extend(params.iter().map(|(_, v)| num(*v)));
        row.push(num(report.r_squared));
        row.push(report.residual.map(num).unwrap_or_default());
        row.push(report.poor_fit.to_string());
        write("report.csv", &csv_bytes(&header, [row])?)?;

        let h = &report.histogram;
        let rows = (0..h.bins()).map(|i| {
            vec![
                num(h.edges[i]),
                num(h.edges[i + 1]),
                h.counts[i].to_string(),
                num(h.densities[i]),
                num(overlay[i]),
            ]
        });
        write(
            "histogram.csv",
            &csv_bytes(&["left", "right", "count", "density", "pdf"], rows)?,
        )?;

        let rows = report
            .pp
            .points
            .iter()
            .map(|p| vec![num(p.x), num(p.p_exp), num(p.p_theo)]);
        write("pp.csv", &csv_bytes(&["x", "p_exp", "p_theo"], rows)?)?;
    }
    if let Some(dir) = &a.svg {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let curve: Vec<(f64, f64)> = report
            .histogram
            .midpoints()
            .into_iter()
            .zip(overlay)
            .collect();
        let title = format!("{} fit ({})", report.model.kind(), report.method);
        let hist = svg::histogram(
            &title,
            &report.histogram.edges,
            &report.histogram.densities,
            &curve,
        );
        let p = dir.join("histogram.svg");
        fs::write(&p, hist).map_err(|e| io_error(&p, e))?;
        let pts: Vec<(f64, f64)> = report
            .pp
            .points
            .iter()
            .map(|p| (p.p_exp, p.p_theo))
            .collect();
        let p = dir.join("pp.svg");
        fs::write(&p, svg::pp(&title, &pts)).map_err(|e| io_error(&p, e))?;
    }
    Ok(())
}

fn run_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let model = build_model(&a.params)?;
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if !(a.from.is_finite() && a.to.is_finite() && a.from < a.to) {
        return Err(CliError::Usage(format!(
            "need finite --from < --to, got {} and {}",
            a.from, a.to
        )));
    }
    let cdf = QuadratureCdf::new(&model)?;
    let step = (a.to - a.from) / (a.points - 1) as f64;
    let grid: Vec<f64> = (0..a.points)
        .map(|i| {
            if i == a.points - 1 {
                a.to
            } else {
                a.from + i as f64 * step
            }
        })
        .collect();
    let pdfs = grid
        .iter()
        .map(|&x| {
            if model.in_closed_support(x) {
                intensive::distribution::pdf(&model, x)
            } else {
                let (lo, hi) = model.support();
                Err(Error::Domain(format!(
                    "x = {x} lies outside the support [{lo}, {hi}] of the {} model",
                    model.kind()
                )))
            }
        })
        .collect::<Result<Vec<f64>, Error>>()?;
    let cdfs = cdf.cdf_sorted(&grid)?;
    let rows = (0..grid.len()).map(|i| vec![num(grid[i]), num(pdfs[i]), num(cdfs[i])]);
    emit(
        &csv_bytes(&["x", "pdf", "cdf"], rows)?,
        a.output.as_deref(),
        out,
    )?;
    if let Some(p) = &a.svg {
        let pts: Vec<(f64, f64)> = grid.iter().copied().zip(pdfs).collect();
        let body = svg::curve(&format!("{} density", model.kind()), &pts);
        fs::write(p, body).map_err(|e| io_error(p, e))?;
    }
    Ok(())
}

fn run_sample(a: &SampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let model = build_model(&a.params)?;
    let draws = match a.sampler {
        SamplerArg::InverseCdf => sample(&SampleRequest {
            model,
            count: a.count,
            seed: a.seed,
        })?,
        SamplerArg::Reciprocal => match model {
            Model::Unlikely(p) => sample_unlikely_reciprocal(&p, a.count, a.seed),
            _ => {
                return Err(CliError::Usage(
                    "the reciprocal sampler is only defined for the unlikely model".into(),
                ))
            }
        },
    };
    let rows = draws.into_iter().map(|x| vec![num(x)]);
    emit(&csv_bytes(&["x"], rows)?, a.output.as_deref(), out)
}

fn run_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let trial = || -> Result<TrialSpec, CliError> {
        let n =
            a.n.ok_or_else(|| CliError::Usage("this oracle needs --n".into()))?;
        let p =
            a.p.ok_or_else(|| CliError::Usage("this oracle needs --p".into()))?;
        Ok(TrialSpec::new(n, p)?)
    };
    let bytes = match a.kind {
        OracleKind::Binomial => {
            let t = trial()?;
            let sd = (t.mean() * t.q()).sqrt();
            let lo = (t.mean() - 6.0 * sd).ceil().max(1.0) as u64;
            let hi = ((t.mean() + 6.0 * sd).floor() as u64).min(t.n().saturating_sub(1));
            let mut rows = Vec::new();
            for m in lo..=hi {
                let exact = binomial_pmf_exact(&t, m)?;
                let approx = demoivre_approx(&t, m)?;
                rows.push(vec![
                    m.to_string(),
                    num(exact),
                    num(approx),
                    num((approx - exact) / exact),
                ]);
            }
            csv_bytes(&["m", "exact", "approx", "rel_error"], rows)?
        }
        OracleKind::Poisson => {
            let lambda = match (a.lambda, a.n, a.p) {
                (Some(l), _, _) => l,
                (None, Some(_), Some(_)) => trial()?.mean(),
                _ => {
                    return Err(CliError::Usage(
                        "the poisson oracle needs --lambda or --n and --p".into(),
                    ))
                }
            };
            poisson_pmf_exact(lambda, 0)?;
            let sd = lambda.sqrt();
            let lo = (lambda - 6.0 * sd).ceil().max(1.0) as u64;
            let hi = (lambda + 6.0 * sd).floor().max(1.0) as u64;
            let mut rows = Vec::new();
            for m in lo..=hi {
                let exact = poisson_pmf_exact(lambda, m)?;
                let approx = poisson_approx_mean(lambda, m)?;
                rows.push(vec![
                    m.to_string(),
                    num(exact),
                    num(approx),
                    num((approx - exact) / exact),
                ]);
            }
            csv_bytes(&["m", "exact", "approx", "rel_error"], rows)?
        }
        OracleKind::Continuity => {
            let table = continuity_check(&trial()?)?;
            let rows = table
                .rows
                .iter()
                .map(|r| vec![r.m.to_string(), num(r.chi), num(r.n_pmf), num(r.density)]);
            csv_bytes(&["m", "chi", "n_pmf", "density"], rows)?
        }
    };
    emit(&bytes, a.output.as_deref(), out)
}

fn run_horwitz(a: &HorwitzArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = horwitz_table(a.from, a.to, a.points)?
        .into_iter()
        .map(|r| vec![num(r.p), num(r.n), num(r.cv), num(r.cv_horwitz)]);
    emit(
        &csv_bytes(&["p", "n", "cv", "cv_horwitz"], rows)?,
        a.output.as_deref(),
        out,
    )
}

fn run_compare(a: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &s in &a.sigma {
        let r = closeness_report(s, a.from, a.to, a.points)?;
        rows.push(vec![
            num(r.sigma),
            num(r.max_rel_gap),
            num(r.argmax_r),
            num(r.r_squared),
            num(r.pdf_r_squared),
            num(r.pdf_sup_rel_diff),
            num(r.pdf_sup_pointwise_rel_diff),
        ]);
    }
    let header = [
        "sigma",
        "max_rel_gap",
        "argmax_r",
        "r_squared",
        "pdf_r_squared",
        "pdf_sup_rel_diff",
        "pdf_sup_pointwise_rel_diff",
    ];
    emit(&csv_bytes(&header, rows)?, a.output.as_deref(), out)
}
