//! Adaptive Gauss–Kronrod quadrature on finite intervals.
//!
//! Semi-infinite and infinite ranges are handled by the callers through a
//! change of variables (see `distribution::cdf`), so only the finite case is
//! needed here.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Number of integrand evaluations per Gauss–Kronrod panel.
pub const PANEL_EVALUATIONS: usize = 21;

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    /// Relative to the integral of `|f|`, so sign-changing integrands with a
    /// near-zero result still terminate.
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_evals: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    /// Estimate of the integral of `|f|`.
    pub abs_value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 21-point Gauss–Kronrod panel with the QUADPACK error heuristic.
pub fn gauss_kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Integral {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_kronrod = WGK[10] * f_center;
    let mut res_gauss = 0.0;
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let mut err = ((res_kronrod - res_gauss) * half).abs();
    res_asc *= scale;
    res_abs *= scale;
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let round_off = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(round_off);
    }
    Integral {
        value: res_kronrod * half,
        abs_error: err,
        abs_value: res_abs,
        evaluations: PANEL_EVALUATIONS,
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let r = gauss_kronrod21(f, a, b);
    Panel {
        a,
        b,
        value: r.value,
        error: r.abs_error,
        abs_value: r.abs_value,
    }
}

/// Integrates `f` over `[a, b]`, bisecting the panel with the largest error
/// estimate until the total error is below
/// `max(abs_tol, rel_tol * ∫|f|)` or the evaluation budget runs out.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "quadrature bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
            abs_value: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        let r = integrate(f, b, a, opts)?;
        return Ok(Integral {
            value: -r.value,
            ..r
        });
    }

    let first = panel(&f, a, b);
    let mut evaluations = PANEL_EVALUATIONS;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut total_abs = first.abs_value;
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    heap.push(first);

    let target = |abs: f64| opts.abs_tol.max(opts.rel_tol * abs);
    while total_err > target(total_abs) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            frozen.push(worst);
            continue;
        }
        if evaluations + 2 * PANEL_EVALUATIONS > opts.max_evals {
            return Err(Error::Numeric(format!(
                "quadrature on [{a:e}, {b:e}] did not converge: estimate {total:e}, \
                 error {total_err:e} after {evaluations} evaluations"
            )));
        }
        let left = panel(&f, worst.a, mid);
        let right = panel(&f, mid, worst.b);
        evaluations += 2 * PANEL_EVALUATIONS;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let abs_error: f64 = panels.iter().map(|p| p.error).sum();
    let abs_value: f64 = panels.iter().map(|p| p.abs_value).sum();
    let floor = 50.0 * f64::EPSILON * abs_value;
    if abs_error > target(abs_value).max(floor) {
        return Err(Error::Numeric(format!(
            "quadrature on [{a:e}, {b:e}] limited by round-off: estimate {value:e}, error {abs_error:e}"
        )));
    }
    Ok(Integral {
        value,
        abs_error,
        abs_value,
        evaluations,
    })
}
