use std::f64::consts::PI;

use super::{
    AdimensionalParams, GenericParams, HomogeneousParams, LikelyParams, Model, UnlikelyParams,
};
use crate::error::{domain, Result};

/// ln √(2π)
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[inline]
pub(crate) fn unlikely_kernel(mu: f64, k: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let d = mu - x;
    (-(d * d) / (2.0 * k * x)).exp() / (2.0 * PI * k * x).sqrt()
}

#[inline]
pub(crate) fn unlikely_ln_kernel(mu: f64, k: f64, x: f64) -> f64 {
    let d = mu - x;
    -(d * d) / (2.0 * k * x) - 0.5 * (2.0 * PI * k * x).ln()
}

#[inline]
fn generic_kernel(mu: f64, k: f64, u: f64, x: f64) -> f64 {
    // x·(u − x) is formed before scaling by k so that x ↦ u − x swaps the
    // two factors without changing the rounding.
    let w = k * (x * (u - x));
    let d = mu - x;
    (-(d * d) / (2.0 * w)).exp() / (2.0 * PI * w).sqrt()
}

#[inline]
fn generic_ln_kernel(mu: f64, k: f64, u: f64, x: f64) -> f64 {
    let w = k * (x * (u - x));
    let d = mu - x;
    -(d * d) / (2.0 * w) - 0.5 * (2.0 * PI * w).ln()
}

#[inline]
fn gaussian_ln(mu: f64, sigma: f64, x: f64) -> f64 {
    let z = (x - mu) / sigma;
    -0.5 * z * z - sigma.ln() - LN_SQRT_2PI
}

#[inline]
fn lognormal_ln(mu: f64, sigma: f64, x: f64) -> f64 {
    let z = (x.ln() - mu.ln()) / sigma;
    -0.5 * z * z - (sigma * x).ln() - LN_SQRT_2PI
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("x must be finite, got {x}")))
    }
}

/// Unlikely density; 0 at `x = 0`.
pub fn pdf_unlikely(p: &UnlikelyParams, x: f64) -> Result<f64> {
    check_finite(x)?;
    if x < 0.0 {
        return Err(domain(format!("unlikely density needs x >= 0, got {x}")));
    }
    Ok(unlikely_kernel(p.mu, p.k, x))
}

/// Likely density, evaluated as the unlikely density of `u − x` with
/// location `u − mu`; 0 at `x = u`.
pub fn pdf_likely(p: &LikelyParams, x: f64) -> Result<f64> {
    check_finite(x)?;
    if x > p.u {
        return Err(domain(format!(
            "likely density needs x <= u = {}, got {x}",
            p.u
        )));
    }
    Ok(unlikely_kernel(p.u - p.mu, p.k, p.u - x))
}

/// Generic density on `[0, u]`; 0 at both ends.
pub fn pdf_generic(p: &GenericParams, x: f64) -> Result<f64> {
    check_finite(x)?;
    if x < 0.0 || x > p.u {
        return Err(domain(format!(
            "generic density needs 0 <= x <= {}, got {x}",
            p.u
        )));
    }
    if x == 0.0 || x == p.u {
        return Ok(0.0);
    }
    Ok(generic_kernel(p.mu, p.k, p.u, x))
}

/// Untruncated Gaussian with variance `k·mu·(u − mu)`.
pub fn pdf_homogeneous(p: &HomogeneousParams, x: f64) -> Result<f64> {
    check_finite(x)?;
    let var = p.sigma_sq();
    let d = x - p.mu;
    Ok((-(d * d) / (2.0 * var)).exp() / (2.0 * PI * var).sqrt())
}

/// Density of the success ratio `χ` in samples of `n` units.
pub fn pdf_adimensional(a: &AdimensionalParams, chi: f64) -> Result<f64> {
    check_finite(chi)?;
    if !(0.0..=1.0).contains(&chi) {
        return Err(domain(format!(
            "success ratio must lie in [0, 1], got {chi}"
        )));
    }
    if chi == 0.0 || chi == 1.0 {
        return Ok(0.0);
    }
    let w = chi * (1.0 - chi) / a.n as f64;
    let d = a.p - chi;
    Ok((-(d * d) / (2.0 * w)).exp() / (2.0 * PI * w).sqrt())
}

/// Density of any model on its closed support (0 at finite endpoints).
pub fn pdf(model: &Model, x: f64) -> Result<f64> {
    match model {
        Model::Unlikely(p) => pdf_unlikely(p, x),
        Model::Likely(p) => pdf_likely(p, x),
        Model::Generic(p) => pdf_generic(p, x),
        Model::Homogeneous(p) => pdf_homogeneous(p, x),
        _ => {
            check_finite(x)?;
            if !model.in_closed_support(x) {
                return Err(domain(format!(
                    "x = {x} is outside the {} support",
                    model.kind()
                )));
            }
            Ok(ln_density(model, x).exp())
        }
    }
}

/// Natural log of the density in the open support, computed in closed form
/// so it stays finite where the density itself underflows.
pub fn log_pdf(model: &Model, x: f64) -> Result<f64> {
    if !model.in_open_support(x) {
        return Err(domain(format!(
            "log density needs x in the open {} support, got {x}",
            model.kind()
        )));
    }
    Ok(ln_density(model, x))
}

/// Log density without validation; −∞ outside the open support.
pub(crate) fn ln_density(model: &Model, x: f64) -> f64 {
    if !model.in_open_support(x) {
        return f64::NEG_INFINITY;
    }
    match *model {
        Model::Unlikely(p) => unlikely_ln_kernel(p.mu, p.k, x),
        Model::Likely(p) => unlikely_ln_kernel(p.u - p.mu, p.k, p.u - x),
        Model::Generic(p) => generic_ln_kernel(p.mu, p.k, p.u, x),
        Model::Homogeneous(p) => gaussian_ln(p.mu, p.sigma(), x),
        Model::Normal(p) => gaussian_ln(p.mu, p.sigma, x),
        Model::LogNormal(p) => lognormal_ln(p.mu, p.sigma, x),
        Model::MirroredLogNormal(p) => lognormal_ln(p.u - p.mu, p.sigma, p.u - x),
    }
}
