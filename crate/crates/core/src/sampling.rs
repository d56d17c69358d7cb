//! Seeded random variates and Kolmogorov–Smirnov helpers.
//!
//! Every sampler owns a `ChaCha20Rng` seeded from a single `u64`, so a seed
//! and a request fully determine the output, bit for bit. The general route
//! is the inverse transform through a cached [`CdfTable`]. The unlikely law
//! also has an exact route: if `Y` is inverse Gaussian with mean `1/μ` and
//! shape `1/k`, then `1/Y` has the unlikely density.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::distribution::{pdf_unlikely, CdfTable, Model, UnlikelyParams};
use crate::error::{domain, Result};

/// The generator behind every sampler in the crate.
pub type SampleRng = ChaCha20Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Uniform on the open interval `(0, 1)`: 52 random bits at cell midpoints,
/// so both `2^-53` and `1 − 2^-53` are exact.
pub fn uniform_open<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRequest {
    pub model: Model,
    pub count: usize,
    pub seed: u64,
}

/// Draws `req.count` values by inverse transform.
pub fn sample(req: &SampleRequest) -> Result<Vec<f64>> {
    if req.count == 0 {
        return Ok(Vec::new());
    }
    Ok(InverseCdfSampler::new(&req.model)?.sample(req.count, req.seed))
}

/// Inverse-transform sampler over a monotone spline of the CDF.
#[derive(Debug, Clone)]
pub struct InverseCdfSampler {
    table: CdfTable,
}

impl InverseCdfSampler {
    pub fn new(model: &Model) -> Result<Self> {
        Ok(Self {
            table: CdfTable::new(model)?,
        })
    }

    pub fn table(&self) -> &CdfTable {
        &self.table
    }

    pub fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        self.table.quantile(uniform_open(rng))
    }

    pub fn sample(&self, count: usize, seed: u64) -> Vec<f64> {
        let mut rng = rng_from_seed(seed);
        (0..count).map(|_| self.draw(&mut rng)).collect()
    }
}

/// Inverse Gaussian density with the given mean and shape.
pub fn inverse_gaussian_pdf(mean: f64, shape: f64, y: f64) -> f64 {
    if !(y > 0.0) {
        return 0.0;
    }
    let d = y - mean;
    (shape / (2.0 * std::f64::consts::PI * y * y * y)).sqrt()
        * (-shape * d * d / (2.0 * mean * mean * y)).exp()
}

/// Largest relative gap between the unlikely density and the density of
/// `1/Y` on the given points, where `Y ~ IG(1/μ, 1/k)`.
pub fn reciprocal_identity_error(p: &UnlikelyParams, xs: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &x in xs {
        let direct = pdf_unlikely(p, x)?;
        let via = inverse_gaussian_pdf(1.0 / p.mu(), 1.0 / p.k(), 1.0 / x) / (x * x);
        if direct > 0.0 {
            worst = worst.max(((via - direct) / direct).abs());
        } else if via > 0.0 {
            return Ok(f64::INFINITY);
        }
    }
    Ok(worst)
}

/// Exact unlikely sampler through the reciprocal inverse Gaussian.
///
/// Uses the Michael–Schucany–Haas transformation with the smaller root
/// written as `1/(1 + w + √(w² + 2w))`, which does not cancel for large `w`.
pub fn sample_unlikely_reciprocal(p: &UnlikelyParams, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    let (mu, k) = (p.mu(), p.k());
    (0..count)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            let w = k * z * z / (2.0 * mu);
            let big = 1.0 + w + (w * (w + 2.0)).sqrt();
            // the root Y = big⁻¹/μ is kept with probability big/(1 + big)
            if uniform_open(&mut rng) * (1.0 + big) <= big {
                mu * big
            } else {
                mu / big
            }
        })
        .collect()
}

/// One-sample KS statistic `sup |F_n − F|`, given `F` at the sorted data.
pub fn ks_statistic_from_cdf(cdf_at_sorted: &[f64]) -> f64 {
    let n = cdf_at_sorted.len() as f64;
    cdf_at_sorted
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            (f - lo).max(hi - f)
        })
        .fold(0.0, f64::max)
}

/// One-sample KS statistic of `data` against `cdf`.
pub fn ks_statistic(data: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if data.is_empty() {
        return Err(domain("KS statistic needs at least one value"));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let f: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    Ok(ks_statistic_from_cdf(&f))
}

/// Two-sample KS statistic `sup |F_a − F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(domain("two-sample KS statistic needs two nonempty samples"));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Asymptotic one-sample critical value at level `alpha` with Stephens'
/// small-sample correction.
pub fn ks_critical_value(n: usize, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("KS critical value needs n ≥ 1"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let c = (-(0.5 * alpha).ln() / 2.0).sqrt();
    let rn = (n as f64).sqrt();
    Ok(c / (rn + 0.12 + 0.11 / rn))
}

/// Two-sample critical value at level `alpha`.
pub fn ks_two_sample_critical_value(n: usize, m: usize, alpha: f64) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(domain("two-sample KS critical value needs n, m ≥ 1"));
    }
    let eff = (n as f64 * m as f64 / (n + m) as f64).round().max(1.0) as usize;
    ks_critical_value(eff, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::QuadratureCdf;

    fn p() -> UnlikelyParams {
        UnlikelyParams::new(10.0, 2.0).unwrap()
    }

    struct Constant(u64);

    impl RngCore for Constant {
        fn next_u32(&mut self) -> u32 {
            self.0 as u32
        }

        fn next_u64(&mut self) -> u64 {
            self.0
        }

        fn fill_bytes(&mut self, dst: &mut [u8]) {
            dst.fill(self.0 as u8);
        }
    }

    #[test]
    fn uniform_stays_open() {
        assert!(uniform_open(&mut Constant(0)) > 0.0);
        assert!(uniform_open(&mut Constant(u64::MAX)) < 1.0);
    }

    #[test]
    fn reciprocal_identity_holds() {
        let xs: Vec<f64> = (1..=400).map(|i| 0.25 * i as f64).collect();
        for (mu, k) in [(10.0, 2.0), (1.0, 0.01), (100.0, 50.0), (0.1, 0.05)] {
            let q = UnlikelyParams::new(mu, k).unwrap();
            let grid: Vec<f64> = xs.iter().map(|x| x * mu / 10.0).collect();
            assert!(reciprocal_identity_error(&q, &grid).unwrap() < 1e-9);
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let m: Model = p().into();
        let req = SampleRequest {
            model: m,
            count: 50,
            seed: 7,
        };
        assert_eq!(sample(&req).unwrap(), sample(&req).unwrap());
        assert!(sample(&SampleRequest { count: 0, ..req })
            .unwrap()
            .is_empty());
        assert_eq!(
            sample_unlikely_reciprocal(&p(), 50, 7),
            sample_unlikely_reciprocal(&p(), 50, 7)
        );
        assert_ne!(
            sample_unlikely_reciprocal(&p(), 50, 7),
            sample_unlikely_reciprocal(&p(), 50, 8)
        );
    }

    #[test]
    fn both_unlikely_samplers_pass_ks() {
        let c = QuadratureCdf::new(&p().into()).unwrap();
        let n = 20_000;
        let crit = ks_critical_value(n, 0.01).unwrap();
        for xs in [
            sample(&SampleRequest {
                model: p().into(),
                count: n,
                seed: 11,
            })
            .unwrap(),
            sample_unlikely_reciprocal(&p(), n, 11),
        ] {
            assert!(xs.iter().all(|&x| x > 0.0));
            let mut s = xs.clone();
            s.sort_by(f64::total_cmp);
            let d = ks_statistic_from_cdf(&c.cdf_sorted(&s).unwrap());
            assert!(d < crit, "D = {d}, critical {crit}");
        }
    }

    #[test]
    fn ks_helpers() {
        assert!((ks_critical_value(1, 0.01).unwrap() - 1.627_624 / 1.23).abs() < 1e-5);
        let d = ks_statistic(&[0.5], |x| x).unwrap();
        assert_eq!(d, 0.5);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), 1.0);
        assert!(ks_statistic(&[], |x| x).is_err());
    }
}
