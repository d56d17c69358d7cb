//! Histograms, probability-probability series and their R² summaries.

use crate::distribution::{Model, QuadratureCdf};
use crate::error::{domain, Error, Result};

const MIN_BINS: usize = 5;
const MAX_BINS: usize = 200;

/// How many equal-width bins to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Binning {
    /// Freedman–Diaconis width `2·IQR·n^{-1/3}`, clamped to 5..=200 bins.
    #[default]
    FreedmanDiaconis,
    Count(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `count / (total · width)`, so that `Σ density·width = 1`.
    pub densities: Vec<f64>,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn nonempty_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Type-7 sample quantile of ascending data.
fn sorted_quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn freedman_diaconis(sorted: &[f64]) -> usize {
    let n = sorted.len() as f64;
    let iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    let range = sorted[sorted.len() - 1] - sorted[0];
    let width = 2.0 * iqr / n.cbrt();
    if !(width > 0.0) {
        return MIN_BINS;
    }
    ((range / width).ceil() as usize).clamp(MIN_BINS, MAX_BINS)
}

/// Equal-width histogram over `[min, max]`. Bins are half-open except the
/// last, which also holds the maximum.
pub fn build_histogram(data: &[f64], binning: Binning) -> Result<Histogram> {
    if data.is_empty() {
        return Err(domain("cannot build a histogram of no data"));
    }
    if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
        return Err(domain(format!("histogram data contains {bad}")));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
    if min == max {
        return Err(Error::DegenerateData(format!(
            "all {} values equal {min}; a histogram needs a nonzero range",
            data.len()
        )));
    }
    let bins = match binning {
        Binning::FreedmanDiaconis => freedman_diaconis(&sorted),
        Binning::Count(0) => return Err(domain("bin count must be at least 1")),
        Binning::Count(n) => n,
    };
    let width = (max - min) / bins as f64;
    let mut edges: Vec<f64> = (0..=bins).map(|i| min + i as f64 * width).collect();
    edges[bins] = max;
    let mut counts = vec![0u64; bins];
    for &x in &sorted {
        let mut i = (((x - min) / width) as usize).min(bins - 1);
        while i > 0 && x < edges[i] {
            i -= 1;
        }
        while i + 1 < bins && x >= edges[i + 1] {
            i += 1;
        }
        counts[i] += 1;
    }
    let total = data.len() as f64;
    let densities = counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| c as f64 / (total * (w[1] - w[0])))
        .collect();
    Ok(Histogram {
        edges,
        counts,
        densities,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PpPoint {
    pub x: f64,
    pub p_exp: f64,
    pub p_theo: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpSeries {
    pub points: Vec<PpPoint>,
}

impl PpSeries {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Pairs the plotting positions `(i − 0.5)/N` of the sorted data with the
/// model CDF at each datum.
pub fn pp_series(data: &[f64], model: &Model) -> Result<PpSeries> {
    if data.is_empty() {
        return Err(domain("PP series needs at least one value"));
    }
    if let Some(bad) = data
        .iter()
        .find(|&&x| !model.in_closed_support(x) || !x.is_finite())
    {
        let (lo, hi) = model.support();
        return Err(domain(format!(
            "value {bad} lies outside the support [{lo}, {hi}] of the {} model",
            model.kind()
        )));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let theo = QuadratureCdf::new(model)?.cdf_sorted(&sorted)?;
    let n = sorted.len() as f64;
    let points = sorted
        .into_iter()
        .zip(theo)
        .enumerate()
        .map(|(i, (x, p_theo))| PpPoint {
            x,
            p_exp: (i as f64 + 0.5) / n,
            p_theo,
        })
        .collect();
    Ok(PpSeries { points })
}

/// `1 − Σ(y − x)² / Σ(x − x̄)²`: agreement of `y` with the identity line.
pub fn r_squared_identity(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(domain(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(domain(format!(
            "R² needs at least 3 points, got {}",
            x.len()
        )));
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let total: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateData(
            "reference values have no spread".into(),
        ));
    }
    let resid: f64 = x.iter().zip(y).map(|(a, b)| (b - a).powi(2)).sum();
    Ok(1.0 - resid / total)
}

/// R² of a PP series against the diagonal.
pub fn r_squared_pp(series: &PpSeries) -> Result<f64> {
    let (e, t): (Vec<f64>, Vec<f64>) = series.points.iter().map(|p| (p.p_exp, p.p_theo)).unzip();
    r_squared_identity(&e, &t)
}
