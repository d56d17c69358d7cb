//! Exact binomial and Poisson probabilities and their continuous
//! approximations.
//!
//! The exact mass functions use Loader's saddle-point form: Stirling
//! remainders plus a deviance term computed without cancellation, which
//! keeps about twelve significant digits even at `n = 10⁶`.

use std::f64::consts::PI;

use crate::distribution::{pdf_adimensional, AdimensionalParams};
use crate::error::{domain, Result};
use crate::special::{binomial_deviance, stirling_error};

/// A batch of `total` elemental units of which `successes` are favourable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchSpec {
    total: f64,
    successes: f64,
}

impl BatchSpec {
    pub fn new(total: f64, successes: f64) -> Result<Self> {
        if !(successes > 0.0 && successes < total && total.is_finite()) {
            return Err(domain(format!(
                "need 0 < M < N, got N = {total}, M = {successes}"
            )));
        }
        Ok(Self { total, successes })
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn successes(&self) -> f64 {
        self.successes
    }

    pub fn p(&self) -> f64 {
        self.successes / self.total
    }

    /// Trials of `n` units drawn from this batch.
    pub fn trial(&self, n: u64) -> Result<TrialSpec> {
        TrialSpec::new(n, self.p())
    }
}

/// `n` independent draws with success probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    n: u64,
    p: f64,
}

impl TrialSpec {
    pub fn new(n: u64, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("n must be at least 1"));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(domain(format!("p must lie in (0, 1), got {p}")));
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    pub fn mean(&self) -> f64 {
        self.n as f64 * self.p
    }

    /// Distance `np − m` of an outcome from the mean.
    pub fn lambda(&self, m: u64) -> f64 {
        self.mean() - m as f64
    }

    /// Most probable outcome, `⌊(n + 1)p⌋` capped at `n`.
    pub fn mode(&self) -> u64 {
        (((self.n + 1) as f64 * self.p).floor() as u64).min(self.n)
    }
}

pub fn binomial_pmf_exact(t: &TrialSpec, m: u64) -> Result<f64> {
    let n = t.n;
    if m > n {
        return Err(domain(format!("m = {m} exceeds n = {n}")));
    }
    let (p, q) = (t.p, t.q());
    if m == 0 {
        return Ok((n as f64 * (-p).ln_1p()).exp());
    }
    if m == n {
        return Ok((n as f64 * p.ln()).exp());
    }
    let (nf, mf) = (n as f64, m as f64);
    let rest = nf - mf;
    let lc = stirling_error(nf)
        - stirling_error(mf)
        - stirling_error(rest)
        - binomial_deviance(mf, nf * p)
        - binomial_deviance(rest, nf * q);
    Ok(lc.exp() * (nf / (2.0 * PI * mf * rest)).sqrt())
}

/// Continuous approximation of the binomial mass obtained by replacing the
/// factorials with Stirling's formula.
pub fn demoivre_approx(t: &TrialSpec, m: u64) -> Result<f64> {
    let n = t.n;
    if m == 0 || m >= n {
        return Err(domain(format!(
            "the approximation needs 0 < m < n, got m = {m}, n = {n}"
        )));
    }
    let (nf, mf) = (n as f64, m as f64);
    let spread = mf * (nf - mf);
    let l = t.lambda(m);
    Ok((nf / (2.0 * PI * spread)).sqrt() * (-l * l * nf / (2.0 * spread)).exp())
}

pub fn poisson_pmf_exact(lambda: f64, m: u64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(domain(format!(
            "lambda must be positive and finite, got {lambda}"
        )));
    }
    if m == 0 {
        return Ok((-lambda).exp());
    }
    let mf = m as f64;
    Ok((-stirling_error(mf) - binomial_deviance(mf, lambda)).exp() / (2.0 * PI * mf).sqrt())
}

/// Gaussian-type approximation of the Poisson mass with mean `np`.
pub fn poisson_approx(t: &TrialSpec, m: u64) -> Result<f64> {
    poisson_approx_mean(t.mean(), m)
}

pub fn poisson_approx_mean(mean: f64, m: u64) -> Result<f64> {
    if m == 0 {
        return Err(domain("the approximation needs m ≥ 1"));
    }
    let mf = m as f64;
    let l = mean - mf;
    Ok((-l * l / (2.0 * mf)).exp() / (2.0 * PI * mf).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuityRow {
    pub m: u64,
    pub chi: f64,
    /// `n · pmf(m)`: the mass spread over the lattice spacing `1/n`.
    pub n_pmf: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityTable {
    pub rows: Vec<ContinuityRow>,
    pub sup_rel_deviation: f64,
}

/// Compares `n·pmf(m)` with the continuous density at `χ = m/n` across
/// `np ± 6√(npq)`, clipped to `[1, n − 1]`.
pub fn continuity_check(t: &TrialSpec) -> Result<ContinuityTable> {
    let n = t.n;
    if n < 100 {
        return Err(domain(format!("continuity check needs n ≥ 100, got {n}")));
    }
    let sd = (t.mean() * t.q()).sqrt();
    let lo = (t.mean() - 6.0 * sd).ceil().max(1.0) as u64;
    let hi = ((t.mean() + 6.0 * sd).floor() as u64).min(n - 1);
    let a = AdimensionalParams::new(t.p, n)?;
    let mut rows = Vec::with_capacity((hi - lo + 1) as usize);
    let mut sup = 0.0f64;
    for m in lo..=hi {
        let chi = m as f64 / n as f64;
        let n_pmf = n as f64 * binomial_pmf_exact(t, m)?;
        let density = pdf_adimensional(&a, chi)?;
        sup = sup.max(((density - n_pmf) / n_pmf).abs());
        rows.push(ContinuityRow {
            m,
            chi,
            n_pmf,
            density,
        });
    }
    Ok(ContinuityTable {
        rows,
        sup_rel_deviation: sup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn binomial_reference_values() {
        let t = TrialSpec::new(1, 0.5).unwrap();
        assert_eq!(binomial_pmf_exact(&t, 0).unwrap(), 0.5);
        let t = TrialSpec::new(100, 0.5).unwrap();
        assert!(
            rel(
                binomial_pmf_exact(&t, 50).unwrap(),
                0.079_589_237_387_178_761_5
            ) < 1e-13
        );
        assert!(binomial_pmf_exact(&t, 101).is_err());
        let t = TrialSpec::new(1000, 0.3).unwrap();
        let total: f64 = (0..=1000).map(|m| binomial_pmf_exact(&t, m).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn binomial_matches_direct_product_for_small_n() {
        let t = TrialSpec::new(20, 0.37).unwrap();
        let mut c = 1.0f64;
        for m in 0..=20u64 {
            if m > 0 {
                c = c * (21 - m) as f64 / m as f64;
            }
            let direct = c * 0.37f64.powi(m as i32) * 0.63f64.powi(20 - m as i32);
            assert!(
                rel(binomial_pmf_exact(&t, m).unwrap(), direct) < 1e-13,
                "m = {m}"
            );
        }
    }

    #[test]
    fn demoivre_reference_and_symmetry() {
        let t = TrialSpec::new(100, 0.5).unwrap();
        assert!(
            rel(
                demoivre_approx(&t, 50).unwrap(),
                0.079_788_456_080_286_535_6
            ) < 1e-14
        );
        for m in 1..50 {
            assert_eq!(
                demoivre_approx(&t, m).unwrap(),
                demoivre_approx(&t, 100 - m).unwrap()
            );
        }
        assert!(demoivre_approx(&t, 0).is_err());
        assert!(demoivre_approx(&t, 100).is_err());
    }

    #[test]
    fn poisson_reference_values() {
        assert!(rel(poisson_pmf_exact(1.0, 0).unwrap(), (-1.0f64).exp()) < 1e-15);
        assert!(
            rel(
                poisson_pmf_exact(50.0, 50).unwrap(),
                0.056_325_006_325_190_825_4
            ) < 1e-13
        );
        let total: f64 = (0..=300).map(|m| poisson_pmf_exact(50.0, m).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let t = TrialSpec::new(1000, 0.05).unwrap();
        assert!(rel(poisson_approx(&t, 50).unwrap(), 0.056_418_958_354_775_628_7) < 1e-14);
        assert!(poisson_approx(&t, 0).is_err());
    }

    #[test]
    fn small_p_binomial_approaches_poisson() {
        let t = TrialSpec::new(10_000, 1e-3).unwrap();
        let m = t.mode();
        assert!(
            rel(
                binomial_pmf_exact(&t, m).unwrap(),
                poisson_pmf_exact(10.0, m).unwrap()
            ) < 0.01
        );
    }

    #[test]
    fn continuity_at_the_mode() {
        let t = TrialSpec::new(10_000, 0.3).unwrap();
        let table = continuity_check(&t).unwrap();
        let row = table.rows.iter().find(|r| r.m == 3000).unwrap();
        assert!(rel(row.n_pmf, 87.053_613_650_670_565_2) < 1e-12);
        assert!(rel(row.density, 87.056_342_755_136_330_7) < 1e-12);
        assert!(rel(row.n_pmf, row.density) < 1e-3);
        assert!(continuity_check(&TrialSpec::new(50, 0.3).unwrap()).is_err());
    }

    #[test]
    fn batch_spec() {
        let b = BatchSpec::new(1e12, 3e11).unwrap();
        assert_eq!(b.p(), 0.3);
        assert!(BatchSpec::new(10.0, 10.0).is_err());
        assert_eq!(b.trial(100).unwrap().lambda(25), 5.0);
    }
}
