//! Parameter estimation: closed forms, numerical maximum likelihood and
//! least-squares fits to a histogram.
//!
//! The closed forms for the unlikely law are the harmonic mean for `μ` and
//! the gap between arithmetic and harmonic mean for `k`. They are also the
//! maximum-likelihood estimates, which [`mle_unlikely`] reproduces
//! numerically.

use std::fmt;
use std::str::FromStr;

use crate::distribution::{
    ln_density, pdf, GenericParams, HomogeneousParams, LikelyParams, LogNormalParams,
    MirroredLogNormalParams, Model, ModelKind, NormalParams, UnlikelyParams,
};
use crate::error::{domain, Error, Result};
use crate::goodness_of_fit::{
    build_histogram, pp_series, r_squared_pp, Binning, Histogram, PpSeries,
};
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// A nonempty collection of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl Dataset {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("dataset is empty"));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(domain(format!("value #{} is not finite ({v})", i + 1)));
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { values, sorted })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    fn variance(&self, conv: VarianceConvention) -> f64 {
        variance(&self.values, conv)
    }
}

/// Denominator of the variance: `n − 1` (sample) or `n` (population).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarianceConvention {
    #[default]
    Sample,
    Population,
}

fn variance(xs: &[f64], conv: VarianceConvention) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    match conv {
        VarianceConvention::Sample if xs.len() > 1 => ss / (n - 1.0),
        VarianceConvention::Sample => 0.0,
        VarianceConvention::Population => ss / n,
    }
}

/// Upper bound just above the largest observation, `max·(1 + 1e-6)`.
pub fn u_from_max(d: &Dataset) -> Result<f64> {
    let m = d.max();
    if m > 0.0 {
        Ok(m * (1.0 + 1e-6))
    } else {
        Err(domain(format!(
            "cannot derive u from a nonpositive maximum ({m})"
        )))
    }
}

fn require_positive(d: &Dataset, model: &str) -> Result<()> {
    match d.values().iter().find(|&&x| !(x > 0.0)) {
        Some(x) => Err(domain(format!(
            "the {model} model needs positive values, found {x}"
        ))),
        None => Ok(()),
    }
}

fn require_below(d: &Dataset, u: f64, model: &str) -> Result<()> {
    if !(u.is_finite() && u > 0.0) {
        return Err(domain(format!("u must be positive and finite, got {u}")));
    }
    match d.values().iter().find(|&&x| !(x < u)) {
        Some(x) => Err(domain(format!(
            "the {model} model needs values below u = {u}, found {x}"
        ))),
        None => Ok(()),
    }
}

fn degenerate(d: &Dataset) -> Error {
    Error::DegenerateData(format!(
        "{} value(s) with no spread (min = max = {})",
        d.len(),
        d.min()
    ))
}

/// Harmonic mean and arithmetic mean minus harmonic mean of positive values.
fn harmonic_split(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let h = n / xs.iter().map(|x| 1.0 / x).sum::<f64>();
    let a = xs.iter().sum::<f64>() / n;
    (h, a - h)
}

/// `μ` = harmonic mean, `k` = arithmetic mean − `μ`.
pub fn estimate_unlikely_closed(d: &Dataset) -> Result<UnlikelyParams> {
    require_positive(d, "unlikely")?;
    if d.min() == d.max() {
        return Err(degenerate(d));
    }
    let (mu, k) = harmonic_split(d.values());
    if !(k > 16.0 * f64::EPSILON * mu) {
        return Err(Error::DegenerateData(format!(
            "arithmetic and harmonic means coincide (k = {k})"
        )));
    }
    UnlikelyParams::new(mu, k)
}

/// The unlikely estimates applied to `u − x`.
pub fn estimate_likely_closed(d: &Dataset, u: f64) -> Result<LikelyParams> {
    require_below(d, u, "likely")?;
    if d.min() == d.max() {
        return Err(degenerate(d));
    }
    let y: Vec<f64> = d.values().iter().map(|x| u - x).collect();
    let (nu, k) = harmonic_split(&y);
    if !(k > 16.0 * f64::EPSILON * nu) {
        return Err(Error::DegenerateData(format!(
            "arithmetic and harmonic means of u − x coincide (k = {k})"
        )));
    }
    LikelyParams::new(u - nu, k, u)
}

/// `μ` = mean, `k` = variance / `μ`, with `u = ∞`.
pub fn estimate_homogeneous(d: &Dataset, conv: VarianceConvention) -> Result<HomogeneousParams> {
    estimate_homogeneous_bounded(d, f64::INFINITY, conv)
}

/// `μ` = mean, `k` = variance / (`μ(u − μ)`); `u = ∞` gives variance / `μ`.
pub fn estimate_homogeneous_bounded(
    d: &Dataset,
    u: f64,
    conv: VarianceConvention,
) -> Result<HomogeneousParams> {
    require_positive(d, "homogeneous")?;
    if d.len() < 2 {
        return Err(Error::DegenerateData(
            "the homogeneous model needs at least 2 values".into(),
        ));
    }
    let var = d.variance(conv);
    if !(var > 0.0) || d.min() == d.max() {
        return Err(degenerate(d));
    }
    let mu = d.mean();
    let k = if u.is_infinite() {
        var / mu
    } else {
        require_below(d, u, "homogeneous")?;
        var / (mu * (u - mu))
    };
    HomogeneousParams::new(mu, k, u)
}

pub fn estimate_normal(d: &Dataset, conv: VarianceConvention) -> Result<NormalParams> {
    if d.len() < 2 || d.min() == d.max() {
        return Err(degenerate(d));
    }
    NormalParams::new(d.mean(), d.variance(conv).sqrt())
}

/// Geometric mean and population deviation of the logarithms.
fn log_moments(ys: &[f64]) -> (f64, f64) {
    let logs: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = logs.iter().sum::<f64>() / logs.len() as f64;
    (
        m.exp(),
        variance(&logs, VarianceConvention::Population).sqrt(),
    )
}

pub fn estimate_lognormal(d: &Dataset) -> Result<LogNormalParams> {
    require_positive(d, "lognormal")?;
    let (mu, sigma) = log_moments(d.values());
    if !(sigma > 0.0) {
        return Err(degenerate(d));
    }
    LogNormalParams::new(mu, sigma)
}

pub fn estimate_mirrored_lognormal(d: &Dataset, u: f64) -> Result<MirroredLogNormalParams> {
    require_below(d, u, "mirrored-lognormal")?;
    let y: Vec<f64> = d.values().iter().map(|x| u - x).collect();
    let (nu, sigma) = log_moments(&y);
    if !(sigma > 0.0) {
        return Err(degenerate(d));
    }
    MirroredLogNormalParams::new(u - nu, sigma, u)
}

fn need_u(kind: ModelKind, u: Option<f64>) -> Result<f64> {
    u.ok_or_else(|| domain(format!("the {kind} model needs an upper bound u")))
}

/// Closed-form estimate for any model with one.
pub fn estimate_closed(
    kind: ModelKind,
    d: &Dataset,
    u: Option<f64>,
    conv: VarianceConvention,
) -> Result<Model> {
    Ok(match kind {
        ModelKind::Unlikely => estimate_unlikely_closed(d)?.into(),
        ModelKind::Likely => estimate_likely_closed(d, need_u(kind, u)?)?.into(),
        ModelKind::Homogeneous => {
            estimate_homogeneous_bounded(d, u.unwrap_or(f64::INFINITY), conv)?.into()
        }
        ModelKind::Normal => estimate_normal(d, conv)?.into(),
        ModelKind::LogNormal => estimate_lognormal(d)?.into(),
        ModelKind::MirroredLogNormal => estimate_mirrored_lognormal(d, need_u(kind, u)?)?.into(),
        ModelKind::Generic => {
            return Err(Error::Unsupported {
                model: "generic",
                what: "a closed-form estimator",
            })
        }
    })
}

/// Moment-based starting point that does not rely on the closed forms.
fn rough_start(kind: ModelKind, d: &Dataset, u: Option<f64>) -> Result<Model> {
    let var = d.variance(VarianceConvention::Population);
    let mean = d.mean();
    if d.len() < 2 || !(var > 0.0) {
        return Err(degenerate(d));
    }
    let geo = |ys: &[f64]| (ys.iter().map(|y| y.ln()).sum::<f64>() / ys.len() as f64).exp();
    Ok(match kind {
        ModelKind::Unlikely => {
            require_positive(d, "unlikely")?;
            UnlikelyParams::new(geo(d.values()), var / mean)?.into()
        }
        ModelKind::Likely => {
            let u = need_u(kind, u)?;
            require_below(d, u, "likely")?;
            let y: Vec<f64> = d.values().iter().map(|x| u - x).collect();
            LikelyParams::new(u - geo(&y), var / (u - mean), u)?.into()
        }
        ModelKind::Generic => {
            let u = need_u(kind, u)?;
            require_positive(d, "generic")?;
            require_below(d, u, "generic")?;
            GenericParams::new(mean, var / (mean * (u - mean)), u)?.into()
        }
        ModelKind::Homogeneous => estimate_homogeneous_bounded(
            d,
            u.unwrap_or(f64::INFINITY),
            VarianceConvention::Population,
        )?
        .into(),
        ModelKind::Normal => estimate_normal(d, VarianceConvention::Population)?.into(),
        ModelKind::LogNormal => estimate_lognormal(d)?.into(),
        ModelKind::MirroredLogNormal => estimate_mirrored_lognormal(d, need_u(kind, u)?)?.into(),
    })
}

/// Unconstrained coordinates of a model: logs and logits of the free
/// parameters, with `u` held fixed.
fn encode(m: &Model) -> Vec<f64> {
    match *m {
        Model::Unlikely(p) => vec![p.mu().ln(), p.k().ln()],
        Model::Likely(p) => vec![(p.u() - p.mu()).ln(), p.k().ln()],
        Model::Generic(p) => vec![(p.mu() / (p.u() - p.mu())).ln(), p.k().ln()],
        Model::Homogeneous(p) => vec![p.mu().ln(), p.k().ln()],
        Model::Normal(p) => vec![p.mu(), p.sigma().ln()],
        Model::LogNormal(p) => vec![p.mu().ln(), p.sigma().ln()],
        Model::MirroredLogNormal(p) => vec![(p.u() - p.mu()).ln(), p.sigma().ln()],
    }
}

fn decode(template: &Model, z: &[f64]) -> Result<Model> {
    let e = |v: f64| v.exp();
    Ok(match *template {
        Model::Unlikely(_) => UnlikelyParams::new(e(z[0]), e(z[1]))?.into(),
        Model::Likely(p) => LikelyParams::new(p.u() - e(z[0]), e(z[1]), p.u())?.into(),
        Model::Generic(p) => {
            let frac = 1.0 / (1.0 + (-z[0]).exp());
            GenericParams::new(p.u() * frac, e(z[1]), p.u())?.into()
        }
        Model::Homogeneous(p) => HomogeneousParams::new(e(z[0]), e(z[1]), p.u())?.into(),
        Model::Normal(_) => NormalParams::new(z[0], e(z[1]))?.into(),
        Model::LogNormal(_) => LogNormalParams::new(e(z[0]), e(z[1]))?.into(),
        Model::MirroredLogNormal(p) => {
            MirroredLogNormalParams::new(p.u() - e(z[0]), e(z[1]), p.u())?.into()
        }
    })
}

fn mle_options() -> NelderMeadOptions {
    NelderMeadOptions {
        max_evals: 20_000,
        ftol_rel: 1e-14,
        ftol_abs: 1e-13,
        xtol: 1e-10,
        initial_step: 0.25,
        restarts: 2,
    }
}

/// Numerical maximum-likelihood estimate of `kind`.
pub fn mle(kind: ModelKind, d: &Dataset, u: Option<f64>) -> Result<Model> {
    let start = rough_start(kind, d, u)?;
    let xs = d.values();
    let n = xs.len() as f64;
    let nll = |z: &[f64]| match decode(&start, z) {
        Ok(m) => -xs.iter().map(|&x| ln_density(&m, x)).sum::<f64>() / n,
        Err(_) => f64::INFINITY,
    };
    let min = nelder_mead(nll, &encode(&start), &mle_options())?;
    if !min.converged {
        return Err(Error::Numeric(format!(
            "maximum likelihood for the {kind} model did not converge after {} evaluations \
             (best mean negative log-likelihood {:e} at {:?})",
            min.evaluations, min.value, min.x
        )));
    }
    decode(&start, &min.x)
}

pub fn mle_unlikely(d: &Dataset) -> Result<UnlikelyParams> {
    match mle(ModelKind::Unlikely, d, None)? {
        Model::Unlikely(p) => Ok(p),
        _ => unreachable!("decode keeps the model kind"),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HistfitOptions {
    pub max_evals: usize,
    pub ftol_rel: f64,
    /// Relative residual `Σ(d − f)² / Σd²` above which a fit is flagged.
    pub residual_ceiling: f64,
}

impl Default for HistfitOptions {
    fn default() -> Self {
        Self {
            max_evals: 10_000,
            ftol_rel: 1e-8,
            residual_ceiling: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistFit {
    pub model: Model,
    /// `Σ (density − pdf(midpoint))²`.
    pub residual: f64,
    pub relative_residual: f64,
    pub poor_fit: bool,
    pub evaluations: usize,
}

/// Least-squares fit of the model density to the bin densities at the bin
/// midpoints, starting from `init`.
pub fn histfit(hist: &Histogram, init: &Model, opts: &HistfitOptions) -> Result<HistFit> {
    let filled = hist.nonempty_bins();
    if filled < 4 {
        return Err(Error::NonIdentifiable(format!(
            "histogram fitting needs at least 4 nonempty bins, got {filled}"
        )));
    }
    let mids = hist.midpoints();
    let scale: f64 = hist.densities.iter().map(|d| d * d).sum();
    let residual = |m: &Model| -> f64 {
        mids.iter()
            .zip(&hist.densities)
            .map(|(&x, &d)| (d - ln_density(m, x).exp()).powi(2))
            .sum()
    };
    let objective = |z: &[f64]| match decode(init, z) {
        Ok(m) => residual(&m) / scale,
        Err(_) => f64::INFINITY,
    };
    let nm = NelderMeadOptions {
        max_evals: opts.max_evals,
        ftol_rel: opts.ftol_rel,
        ftol_abs: 1e-14,
        xtol: 1e-8,
        initial_step: 0.25,
        restarts: 1,
    };
    let min = nelder_mead(objective, &encode(init), &nm)?;
    if !min.converged {
        return Err(Error::Numeric(format!(
            "histogram fit of the {} model did not converge after {} evaluations \
             (relative residual {:e})",
            init.kind(),
            min.evaluations,
            min.value
        )));
    }
    let model = decode(init, &min.x)?;
    let r = residual(&model);
    Ok(HistFit {
        model,
        residual: r,
        relative_residual: r / scale,
        poor_fit: r / scale > opts.residual_ceiling,
        evaluations: min.evaluations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Closed,
    Mle,
    Histfit,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Closed, Method::Mle, Method::Histfit];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Mle => "mle",
            Method::Histfit => "histfit",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| domain(format!("unknown method '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FitOptions {
    pub u: Option<f64>,
    pub variance: VarianceConvention,
    pub binning: Binning,
    pub histfit: HistfitOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub model: Model,
    pub method: Method,
    pub count: usize,
    pub r_squared: f64,
    /// Histogram residual, for `histfit` only.
    pub residual: Option<f64>,
    pub poor_fit: bool,
    pub histogram: Histogram,
    pub pp: PpSeries,
}

/// Fits `kind` to `d` and scores the result with a PP series.
pub fn fit(kind: ModelKind, method: Method, d: &Dataset, opts: &FitOptions) -> Result<FitReport> {
    let (model, residual, poor_fit, histogram) = match method {
        Method::Closed => {
            let m = estimate_closed(kind, d, opts.u, opts.variance)?;
            (m, None, false, build_histogram(d.values(), opts.binning)?)
        }
        Method::Mle => {
            let m = mle(kind, d, opts.u)?;
            (m, None, false, build_histogram(d.values(), opts.binning)?)
        }
        Method::Histfit => {
            let hist = build_histogram(d.values(), opts.binning)?;
            let init = match estimate_closed(kind, d, opts.u, opts.variance) {
                Ok(m) => m,
                Err(Error::Unsupported { .. }) => rough_start(kind, d, opts.u)?,
                Err(e) => return Err(e),
            };
            let h = histfit(&hist, &init, &opts.histfit)?;
            (h.model, Some(h.residual), h.poor_fit, hist)
        }
    };
    let pp = pp_series(d.values(), &model)?;
    let r_squared = if pp.len() >= 3 {
        r_squared_pp(&pp)?
    } else {
        f64::NAN
    };
    Ok(FitReport {
        model,
        method,
        count: d.len(),
        r_squared,
        residual,
        poor_fit,
        histogram,
        pp,
    })
}

/// Density of `model` at each histogram midpoint.
pub fn pdf_at_midpoints(hist: &Histogram, model: &Model) -> Result<Vec<f64>> {
    hist.midpoints()
        .into_iter()
        .map(|x| {
            if model.in_open_support(x) {
                pdf(model, x)
            } else {
                Ok(0.0)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(v: &[f64]) -> Dataset {
        Dataset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unlikely_closed_example() {
        let p = estimate_unlikely_closed(&ds(&[1.0, 2.0, 4.0])).unwrap();
        assert!((p.mu() - 12.0 / 7.0).abs() < 1e-15);
        assert!((p.k() - 13.0 / 21.0).abs() < 1e-15);
        assert!(matches!(
            estimate_unlikely_closed(&ds(&[5.0, 5.0, 5.0])),
            Err(Error::DegenerateData(_))
        ));
        assert!(matches!(
            estimate_unlikely_closed(&ds(&[1.0, -2.0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn likely_closed_example() {
        let p = estimate_likely_closed(&ds(&[9.0, 8.0, 6.0]), 10.0).unwrap();
        assert!((p.mu() - (10.0 - 12.0 / 7.0)).abs() < 1e-14);
        assert!((p.k() - 13.0 / 21.0).abs() < 1e-14);
        assert!(estimate_likely_closed(&ds(&[9.0, 10.0]), 10.0).is_err());
    }

    #[test]
    fn homogeneous_conventions() {
        let d = ds(&[9.0, 10.0, 11.0]);
        let s = estimate_homogeneous(&d, VarianceConvention::Sample).unwrap();
        assert_eq!((s.mu(), s.k()), (10.0, 0.1));
        assert!(s.u().is_infinite());
        assert!((s.sigma_sq() - 1.0).abs() < 1e-15);
        let p = estimate_homogeneous(&d, VarianceConvention::Population).unwrap();
        assert!((p.k() - 2.0 / 30.0).abs() < 1e-15);
        assert!(estimate_homogeneous(&ds(&[3.0, 3.0]), VarianceConvention::Sample).is_err());
    }

    #[test]
    fn lognormal_examples() {
        let e = std::f64::consts::E;
        let p = estimate_lognormal(&ds(&[1.0, e * e])).unwrap();
        assert!((p.mu() - e).abs() < 1e-14 && (p.sigma() - 1.0).abs() < 1e-14);
        let m = estimate_mirrored_lognormal(&ds(&[9.0, 10.0 - e * e]), 10.0).unwrap();
        assert!((m.mu() - (10.0 - e)).abs() < 1e-13 && (m.sigma() - 1.0).abs() < 1e-13);
        assert!(matches!(
            estimate_lognormal(&ds(&[e, e, e])),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn mle_matches_closed_form() {
        let d = ds(&[1.0, 2.0, 4.0]);
        let closed = estimate_unlikely_closed(&d).unwrap();
        let m = mle_unlikely(&d).unwrap();
        assert!(((m.mu() - closed.mu()) / closed.mu()).abs() < 1e-6);
        assert!(((m.k() - closed.k()) / closed.k()).abs() < 1e-6);
        assert!(matches!(
            mle_unlikely(&ds(&[3.0])),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn mle_of_other_models_matches_their_closed_forms() {
        let d = ds(&[1.2, 2.5, 3.1, 4.8, 2.2, 7.5, 1.9, 3.3]);
        let ln = estimate_lognormal(&d).unwrap();
        let Model::LogNormal(m) = mle(ModelKind::LogNormal, &d, None).unwrap() else {
            panic!()
        };
        assert!(
            (m.mu() / ln.mu() - 1.0).abs() < 1e-6 && (m.sigma() / ln.sigma() - 1.0).abs() < 1e-6
        );
        let Model::Likely(l) = mle(ModelKind::Likely, &d, Some(10.0)).unwrap() else {
            panic!()
        };
        let c = estimate_likely_closed(&d, 10.0).unwrap();
        assert!((l.mu() / c.mu() - 1.0).abs() < 1e-6 && (l.k() / c.k() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn histfit_recovers_noiseless_parameters() {
        let truth: Model = UnlikelyParams::new(10.0, 2.0).unwrap().into();
        let edges: Vec<f64> = (0..=40).map(|i| 2.0 + i as f64 * 0.75).collect();
        let mids: Vec<f64> = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let hist = Histogram {
            densities: mids.iter().map(|&x| pdf(&truth, x).unwrap()).collect(),
            counts: vec![1; 40],
            edges,
        };
        let init: Model = UnlikelyParams::new(8.0, 3.0).unwrap().into();
        let fit = histfit(&hist, &init, &HistfitOptions::default()).unwrap();
        let Model::Unlikely(p) = fit.model else {
            panic!()
        };
        assert!(
            (p.mu() - 10.0).abs() < 1e-4 && (p.k() - 2.0).abs() < 1e-4,
            "{p:?}"
        );
        assert!(!fit.poor_fit);
    }

    #[test]
    fn histfit_rejects_sparse_histograms() {
        let hist = build_histogram(&[1.0, 1.0, 1.0, 9.0], Binning::Count(5)).unwrap();
        let init: Model = UnlikelyParams::new(2.0, 1.0).unwrap().into();
        assert!(matches!(
            histfit(&hist, &init, &HistfitOptions::default()),
            Err(Error::NonIdentifiable(_))
        ));
    }

    #[test]
    fn generic_has_no_closed_form_but_fits() {
        let d = ds(&[0.2, 0.35, 0.3, 0.5, 0.41, 0.27, 0.33, 0.6, 0.38, 0.45]);
        assert!(matches!(
            fit(
                ModelKind::Generic,
                Method::Closed,
                &d,
                &FitOptions {
                    u: Some(1.0),
                    ..Default::default()
                }
            ),
            Err(Error::Unsupported { .. })
        ));
        let r = fit(
            ModelKind::Generic,
            Method::Mle,
            &d,
            &FitOptions {
                u: Some(1.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.count, 10);
        assert!(r.r_squared > 0.8);
        assert!(fit(
            ModelKind::Likely,
            Method::Closed,
            &d,
            &FitOptions::default()
        )
        .is_err());
    }
}
