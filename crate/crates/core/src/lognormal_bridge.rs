//! How close the unlikely law is to a log-normal one.
//!
//! With `r = x/μ`, the unlikely exponent contains `(r − 1)/√r` where the
//! log-normal has `ln r`. The two agree through second order in `r − 1`, and
//! with `k = σ²μ` the densities merge as `σ → 0`.

use crate::distribution::{ln_density, LogNormalParams, Model, UnlikelyParams};
use crate::error::{domain, Result};
use crate::goodness_of_fit::r_squared_identity;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    /// `|gap| / |rhs|`; undefined at `r = 1`.
    pub rel_gap: Option<f64>,
}

pub fn gap(r: f64) -> Result<GapPoint> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain(format!("r must be positive and finite, got {r}")));
    }
    let lhs = (r - 1.0) / r.sqrt();
    let rhs = r.ln();
    let gap = lhs - rhs;
    Ok(GapPoint {
        r,
        lhs,
        rhs,
        gap,
        rel_gap: (rhs != 0.0).then(|| (gap / rhs).abs()),
    })
}

fn check_order(order: u32) -> Result<()> {
    if (1..=8).contains(&order) {
        Ok(())
    } else {
        Err(domain(format!("series order must be 1..8, got {order}")))
    }
}

/// Coefficients of `(r − 1)/√r` in powers of `r − 1`:
/// `(−1)^{j+1} (2j − 3)!! / (2j − 2)!!`.
pub fn lhs_coefficient(j: u32) -> f64 {
    let mut c = 1.0;
    for i in 2..=j {
        // ratio of consecutive terms: −(2i − 3)/(2i − 2)
        c *= -((2 * i - 3) as f64) / ((2 * i - 2) as f64);
    }
    c
}

/// Coefficients of `ln r` in powers of `r − 1`: `(−1)^{j+1}/j`.
pub fn rhs_coefficient(j: u32) -> f64 {
    let s = if j % 2 == 1 { 1.0 } else { -1.0 };
    s / j as f64
}

fn partial_sum(r: f64, order: u32, coef: fn(u32) -> f64) -> Result<f64> {
    check_order(order)?;
    let e = r - 1.0;
    let mut pow = 1.0;
    let mut sum = 0.0;
    for j in 1..=order {
        pow *= e;
        sum += coef(j) * pow;
    }
    Ok(sum)
}

pub fn series_lhs(r: f64, order: u32) -> Result<f64> {
    partial_sum(r, order, lhs_coefficient)
}

pub fn series_rhs(r: f64, order: u32) -> Result<f64> {
    partial_sum(r, order, rhs_coefficient)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosenessReport {
    pub sigma: f64,
    /// Largest `|lhs − rhs| / |rhs|` on the grid, and where it occurs.
    pub max_rel_gap: f64,
    pub argmax_r: f64,
    /// R² of `ln r` against `(r − 1)/√r` about the identity line.
    pub r_squared: f64,
    /// R² of the log-normal density against the unlikely density.
    pub pdf_r_squared: f64,
    /// `sup |f_unlikely − f_lognormal| / sup f_unlikely` on the grid.
    pub pdf_sup_rel_diff: f64,
    /// `sup |f_unlikely − f_lognormal| / f_unlikely`, pointwise.
    pub pdf_sup_pointwise_rel_diff: f64,
}

/// Compares both exponents and both densities (`μ = 1`, `k = σ²`) on a
/// uniform grid over `[r_lo, r_hi]`.
pub fn closeness_report(
    sigma: f64,
    r_lo: f64,
    r_hi: f64,
    points: usize,
) -> Result<ClosenessReport> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(domain(format!(
            "sigma must be positive and finite, got {sigma}"
        )));
    }
    if !(r_lo > 0.0 && r_lo < 1.0 && r_hi > 1.0 && r_hi.is_finite()) {
        return Err(domain(format!(
            "need 0 < r_lo < 1 < r_hi, got [{r_lo}, {r_hi}]"
        )));
    }
    if points < 11 {
        return Err(domain(format!("need at least 11 points, got {points}")));
    }
    let unl: Model = UnlikelyParams::new(1.0, sigma * sigma)?.into();
    let ln: Model = LogNormalParams::new(1.0, sigma)?.into();
    let step = (r_hi - r_lo) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points)
        .map(|i| {
            if i == points - 1 {
                r_hi
            } else {
                r_lo + i as f64 * step
            }
        })
        .collect();

    let mut lhs = Vec::with_capacity(points);
    let mut rhs = Vec::with_capacity(points);
    let (mut max_rel_gap, mut argmax_r) = (0.0f64, f64::NAN);
    for &r in &grid {
        let g = gap(r)?;
        if let Some(rel) = g.rel_gap {
            if rel > max_rel_gap {
                max_rel_gap = rel;
                argmax_r = r;
            }
        }
        lhs.push(g.lhs);
        rhs.push(g.rhs);
    }

    let fu: Vec<f64> = grid.iter().map(|&r| ln_density(&unl, r).exp()).collect();
    let fl: Vec<f64> = grid.iter().map(|&r| ln_density(&ln, r).exp()).collect();
    let peak = fu.iter().cloned().fold(0.0, f64::max);
    let mut sup_abs = 0.0f64;
    let mut sup_rel = 0.0f64;
    for (a, b) in fu.iter().zip(&fl) {
        let d = (a - b).abs();
        sup_abs = sup_abs.max(d);
        if *a > 0.0 {
            sup_rel = sup_rel.max(d / a);
        } else if *b > 0.0 {
            sup_rel = f64::INFINITY;
        }
    }

    Ok(ClosenessReport {
        sigma,
        max_rel_gap,
        argmax_r,
        r_squared: r_squared_identity(&lhs, &rhs)?,
        pdf_r_squared: r_squared_identity(&fu, &fl)?,
        pdf_sup_rel_diff: sup_abs / peak,
        pdf_sup_pointwise_rel_diff: sup_rel,
    })
}
