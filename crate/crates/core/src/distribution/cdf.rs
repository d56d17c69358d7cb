//! Distribution functions and quantiles by quadrature in the chart
//! coordinate.
//!
//! [`QuadratureCdf`] splits the cut-off interval into panels, integrates each
//! one adaptively once, and answers every query with the stored prefix plus
//! one partial integral. [`CdfTable`] goes further and replaces the partial
//! integral with a monotone cubic Hermite spline, which is what the
//! inverse-transform sampler uses.

use super::chart::Chart;
use super::Model;
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadOptions};

const DEFAULT_PIECES: usize = 64;
const TABLE_NODES: usize = 4096;

fn piece_options() -> QuadOptions {
    QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_evals: 200_000,
    }
}

fn check_q(q: f64) -> Result<()> {
    if (0.0..=1.0).contains(&q) {
        Ok(())
    } else {
        Err(domain(format!("probability must lie in [0, 1], got {q}")))
    }
}

/// Quadrature-backed CDF of one model.
#[derive(Debug, Clone)]
pub struct QuadratureCdf {
    model: Model,
    chart: Chart,
    edges: Vec<f64>,
    /// `prefix[j]` is the unnormalized mass below `edges[j]`.
    prefix: Vec<f64>,
    total: f64,
}

impl QuadratureCdf {
    pub fn new(model: &Model) -> Result<Self> {
        Self::with_pieces(model, DEFAULT_PIECES)
    }

    pub fn with_pieces(model: &Model, pieces: usize) -> Result<Self> {
        let pieces = pieces.max(1);
        let chart = Chart::new(model);
        let (lo, hi) = chart.cutoffs();
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Numeric(format!(
                "could not bracket the mass of the {} model: [{lo}, {hi}]",
                model.kind()
            )));
        }
        let width = (hi - lo) / pieces as f64;
        let mut edges: Vec<f64> = (0..=pieces).map(|j| lo + j as f64 * width).collect();
        edges[pieces] = hi;
        let opts = piece_options();
        let mut prefix = Vec::with_capacity(pieces + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for w in edges.windows(2) {
            let part = integrate(|s| chart.density(s), w[0], w[1], &opts)?;
            acc += part.value;
            prefix.push(acc);
        }
        if !(acc.is_finite() && acc > 0.0) {
            return Err(Error::Numeric(format!(
                "total mass of the {} model is {acc}",
                model.kind()
            )));
        }
        Ok(Self {
            model: *model,
            chart,
            edges,
            prefix,
            total: acc,
        })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    /// Integral of the density over the whole support, before normalization.
    pub fn total_mass(&self) -> f64 {
        self.total
    }

    pub(crate) fn chart(&self) -> &Chart {
        &self.chart
    }

    pub(crate) fn edges(&self) -> &[f64] {
        &self.edges
    }

    /// Normalized mass below each edge.
    pub(crate) fn node_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.prefix.iter().map(|p| p / self.total).collect();
        *v.last_mut().unwrap() = 1.0;
        v
    }

    fn piece_of(&self, s: f64) -> usize {
        let n = self.edges.len() - 1;
        self.edges
            .partition_point(|&e| e <= s)
            .saturating_sub(1)
            .min(n - 1)
    }

    fn partial(&self, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        Ok(integrate(|s| self.chart.density(s), a, b, &piece_options())?.value)
    }

    /// CDF as a function of the chart coordinate.
    pub(crate) fn cdf_s(&self, s: f64) -> Result<f64> {
        let lo = self.edges[0];
        let hi = *self.edges.last().unwrap();
        if s <= lo {
            return Ok(0.0);
        }
        if s >= hi {
            return Ok(1.0);
        }
        let j = self.piece_of(s);
        let v = (self.prefix[j] + self.partial(self.edges[j], s)?) / self.total;
        Ok(v.clamp(0.0, 1.0))
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if self.model.in_closed_support(x) {
            Ok(())
        } else {
            let (lo, hi) = self.model.support();
            Err(domain(format!(
                "x = {x} lies outside the support [{lo}, {hi}] of the {} model",
                self.model.kind()
            )))
        }
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        let (lo, hi) = self.model.support();
        if x == lo {
            return Ok(0.0);
        }
        if x == hi {
            return Ok(1.0);
        }
        self.cdf_s(self.chart.s_of(x))
    }

    /// CDF at every point of an ascending slice, integrating only the gaps
    /// between neighbours.
    pub fn cdf_sorted(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(xs.len());
        let lo = self.edges[0];
        let hi = *self.edges.last().unwrap();
        // (s, unnormalized mass, piece) of the previous interior point
        let mut prev: Option<(f64, f64, usize)> = None;
        let mut last_x = f64::NEG_INFINITY;
        for &x in xs {
            self.check_x(x)?;
            if x < last_x {
                return Err(domain("cdf_sorted needs ascending input"));
            }
            last_x = x;
            let s = self.chart.s_of(x);
            if s <= lo {
                out.push(0.0);
                continue;
            }
            if s >= hi {
                out.push(1.0);
                continue;
            }
            let j = self.piece_of(s);
            let mass = match prev {
                Some((ps, pm, pj)) if pj == j && ps <= s => pm + self.partial(ps, s)?,
                _ => self.prefix[j] + self.partial(self.edges[j], s)?,
            };
            prev = Some((s, mass, j));
            out.push((mass / self.total).clamp(0.0, 1.0));
        }
        Ok(out)
    }

    /// Inverse CDF by safeguarded Newton iteration in the chart coordinate.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        check_q(q)?;
        let (lo_x, hi_x) = self.model.support();
        if q == 0.0 {
            return Ok(lo_x);
        }
        if q == 1.0 {
            return Ok(hi_x);
        }
        let target = q * self.total;
        let n = self.edges.len() - 1;
        let j = self.prefix.partition_point(|&p| p <= target).clamp(1, n) - 1;
        let (mut a, mut b) = (self.edges[j], self.edges[j + 1]);
        let base = self.prefix[j];
        let start = a;
        let mass = |s: f64| -> Result<f64> { Ok(base + self.partial(start, s)?) };
        let mut s = 0.5 * (a + b);
        for _ in 0..200 {
            let r = mass(s)? - target;
            if r.abs() <= 1e-15 * self.total {
                break;
            }
            if r < 0.0 {
                a = s;
            } else {
                b = s;
            }
            let g = self.chart.density(s);
            let newton = s - r / g;
            let next = if g > 0.0 && newton > a && newton < b {
                newton
            } else {
                0.5 * (a + b)
            };
            if (next - s).abs() <= 1e-15 * (1.0 + s.abs())
                || b - a <= 4.0 * f64::EPSILON * (1.0 + s.abs())
            {
                s = next;
                break;
            }
            s = next;
        }
        let x = self.chart.x_of(s);
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Numeric(format!(
                "quantile({q}) did not produce a finite value"
            )))
        }
    }
}

/// CDF of `model` at `x`.
pub fn cdf(model: &Model, x: f64) -> Result<f64> {
    QuadratureCdf::new(model)?.cdf(x)
}

/// Quantile of `model` at probability `q`.
pub fn quantile(model: &Model, q: f64) -> Result<f64> {
    check_q(q)?;
    QuadratureCdf::new(model)?.quantile(q)
}

/// Monotone cubic Hermite interpolant of the CDF in the chart coordinate.
#[derive(Debug, Clone)]
pub struct CdfTable {
    model: Model,
    chart: Chart,
    nodes: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl CdfTable {
    pub fn new(model: &Model) -> Result<Self> {
        Self::with_nodes(model, TABLE_NODES)
    }

    pub fn with_nodes(model: &Model, nodes: usize) -> Result<Self> {
        let exact = QuadratureCdf::with_pieces(model, nodes.max(2))?;
        let chart = *exact.chart();
        let nodes = exact.edges().to_vec();
        let values = exact.node_values();
        let total = exact.total_mass();
        let mut slopes: Vec<f64> = nodes.iter().map(|&s| chart.density(s) / total).collect();
        // Fritsch–Carlson limiter keeps every segment monotone.
        for i in 0..nodes.len() - 1 {
            let h = nodes[i + 1] - nodes[i];
            let delta = (values[i + 1] - values[i]) / h;
            if delta <= 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let alpha = slopes[i] / delta;
            let beta = slopes[i + 1] / delta;
            let r = alpha * alpha + beta * beta;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                slopes[i] = tau * alpha * delta;
                slopes[i + 1] = tau * beta * delta;
            }
        }
        Ok(Self {
            model: *model,
            chart,
            nodes,
            values,
            slopes,
        })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    fn eval_segment(&self, i: usize, s: f64) -> (f64, f64) {
        let h = self.nodes[i + 1] - self.nodes[i];
        let t = (s - self.nodes[i]) / h;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let v = h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
        let dv = ((6.0 * t2 - 6.0 * t) * y0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * y1
            + (3.0 * t2 - 2.0 * t) * m1)
            / h;
        (v, dv)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.model.support();
        if x.is_nan() || x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        let s = self.chart.s_of(x);
        let n = self.nodes.len() - 1;
        if s <= self.nodes[0] {
            return 0.0;
        }
        if s >= self.nodes[n] {
            return 1.0;
        }
        let i = self.nodes.partition_point(|&e| e <= s).clamp(1, n) - 1;
        self.eval_segment(i, s).0.clamp(0.0, 1.0)
    }

    /// Inverse of the interpolant; `q` outside `(0, 1)` maps to the support
    /// ends.
    pub fn quantile(&self, q: f64) -> f64 {
        let (lo, hi) = self.model.support();
        if !(q > 0.0) {
            return lo;
        }
        if !(q < 1.0) {
            return hi;
        }
        let n = self.nodes.len() - 1;
        let i = self.values.partition_point(|&v| v <= q).clamp(1, n) - 1;
        let (mut a, mut b) = (self.nodes[i], self.nodes[i + 1]);
        let (ya, yb) = (self.values[i], self.values[i + 1]);
        let mut s = if yb > ya {
            a + (q - ya) / (yb - ya) * (b - a)
        } else {
            0.5 * (a + b)
        };
        for _ in 0..60 {
            let (v, dv) = self.eval_segment(i, s);
            let r = v - q;
            if r == 0.0 {
                break;
            }
            if r < 0.0 {
                a = s;
            } else {
                b = s;
            }
            let newton = s - r / dv;
            let next = if dv > 0.0 && newton > a && newton < b {
                newton
            } else {
                0.5 * (a + b)
            };
            if (next - s).abs() <= 1e-15 * (1.0 + s.abs()) {
                s = next;
                break;
            }
            s = next;
        }
        self.chart.x_of(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::*;

    fn unlikely(mu: f64, k: f64) -> Model {
        UnlikelyParams::new(mu, k).unwrap().into()
    }

    #[test]
    fn unlikely_mass_is_one_on_a_grid() {
        for mu in [0.1, 1.0, 10.0, 100.0] {
            for f in [0.01, 0.1, 0.5] {
                let m = unlikely(mu, f * mu);
                let total = QuadratureCdf::new(&m).unwrap().total_mass();
                assert!(
                    (total - 1.0).abs() < 1e-8,
                    "mu={mu} k={} total={total}",
                    f * mu
                );
                let l: Model = LikelyParams::new(mu, f * mu, 3.0 * mu).unwrap().into();
                let total = QuadratureCdf::new(&l).unwrap().total_mass();
                assert!((total - 1.0).abs() < 1e-8, "likely mu={mu} total={total}");
            }
        }
    }

    #[test]
    fn unlikely_reference_values() {
        let c = QuadratureCdf::new(&unlikely(10.0, 2.0)).unwrap();
        let refs = [
            (5.0, 0.033_779_545_400_786_5),
            (10.0, 0.414_711_140_837_013_672),
            (12.0, 0.580_283_383_312_483_126),
            (20.0, 0.919_933_247_394_128_482),
        ];
        for (x, want) in refs {
            let got = c.cdf(x).unwrap();
            assert!((got - want).abs() < 1e-10, "cdf({x}) = {got}, want {want}");
        }
        assert_eq!(c.cdf(0.0).unwrap(), 0.0);
        assert_eq!(c.cdf(f64::INFINITY).unwrap(), 1.0);
        assert!(c.cdf(-1.0).is_err());
    }

    #[test]
    fn sorted_evaluation_matches_pointwise() {
        let c = QuadratureCdf::new(&unlikely(10.0, 2.0)).unwrap();
        let xs = [1.0, 4.0, 4.0, 4.5, 9.9, 10.0, 12.0, 30.0, 1e4];
        let batch = c.cdf_sorted(&xs).unwrap();
        for (x, b) in xs.iter().zip(batch) {
            assert!((c.cdf(*x).unwrap() - b).abs() < 1e-13);
        }
        assert!(c.cdf_sorted(&[2.0, 1.0]).is_err());
    }

    #[test]
    fn quantile_round_trip_and_order() {
        let m = unlikely(10.0, 2.0);
        let c = QuadratureCdf::new(&m).unwrap();
        for x in [5.0, 10.0, 12.0, 20.0] {
            let back = c.quantile(c.cdf(x).unwrap()).unwrap();
            assert!((back - x).abs() / x < 1e-9, "{x} -> {back}");
        }
        for q in [1e-9, 0.1, 0.5, 0.9, 1.0 - 1e-9] {
            let x = c.quantile(q).unwrap();
            assert!((c.cdf(x).unwrap() - q).abs() < 1e-9);
        }
        assert_eq!(quantile(&m, 0.0).unwrap(), 0.0);
        assert_eq!(quantile(&m, 1.0).unwrap(), f64::INFINITY);
        assert!(quantile(&m, 1.5).is_err());
    }

    #[test]
    fn every_model_is_monotone_and_inverts() {
        let models: Vec<Model> = vec![
            LikelyParams::new(25.0, 2.0, 30.0).unwrap().into(),
            GenericParams::new(9000.0, 0.1, 30000.0).unwrap().into(),
            HomogeneousParams::new(10.0, 0.01, 100.0).unwrap().into(),
            NormalParams::new(1.0, 2.0).unwrap().into(),
            LogNormalParams::new(3.0, 0.5).unwrap().into(),
            MirroredLogNormalParams::new(8.0, 0.2, 10.0).unwrap().into(),
        ];
        for m in models {
            let c = QuadratureCdf::new(&m).unwrap();
            let mut last = 0.0;
            for i in 1..100 {
                let x = c.quantile(i as f64 / 100.0).unwrap();
                assert!(x > last || i == 1 || m.support().0 < 0.0);
                let p = c.cdf(x).unwrap();
                assert!((p - i as f64 / 100.0).abs() < 1e-9, "{:?}", m.kind());
                assert!(p >= last);
                last = p;
            }
        }
    }

    #[test]
    fn normal_matches_erf_reference() {
        let m: Model = NormalParams::new(0.0, 1.0).unwrap().into();
        // Φ(1), Φ(−2)
        assert!((cdf(&m, 1.0).unwrap() - 0.841_344_746_068_542_9).abs() < 1e-13);
        assert!((cdf(&m, -2.0).unwrap() - 0.022_750_131_948_179_195).abs() < 1e-13);
    }

    #[test]
    fn table_tracks_the_quadrature() {
        let m = unlikely(10.0, 2.0);
        let c = QuadratureCdf::new(&m).unwrap();
        let t = CdfTable::new(&m).unwrap();
        for x in [0.5, 3.0, 7.0, 10.0, 12.0, 18.0, 40.0, 120.0] {
            assert!((t.cdf(x) - c.cdf(x).unwrap()).abs() < 1e-10, "x={x}");
        }
        for q in [1e-12, 0.01, 0.3, 0.5, 0.77, 0.999_999] {
            let x = t.quantile(q);
            assert!((c.cdf(x).unwrap() - q).abs() < 1e-10, "q={q}");
        }
    }
}
