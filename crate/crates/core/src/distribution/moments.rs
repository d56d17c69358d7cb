use num_complex::Complex64;

use super::chart::Chart;
use super::{Model, UnlikelyParams};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadOptions};

const PIECES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Closed-form mean and variance. The generic law has none.
pub fn moments_closed(model: &Model) -> Result<Moments> {
    let m = match *model {
        Model::Unlikely(p) => Moments {
            mean: p.mu + p.k,
            variance: p.k * (2.0 * p.k + p.mu),
        },
        Model::Likely(p) => Moments {
            mean: p.mu - p.k,
            variance: p.k * (2.0 * p.k + p.u - p.mu),
        },
        Model::Homogeneous(p) => Moments {
            mean: p.mu,
            variance: p.sigma_sq(),
        },
        Model::Generic(_) => {
            return Err(Error::Unsupported {
                model: "generic",
                what: "closed-form moments",
            })
        }
        Model::Normal(p) => Moments {
            mean: p.mu,
            variance: p.sigma * p.sigma,
        },
        Model::LogNormal(p) => {
            let s2 = p.sigma * p.sigma;
            Moments {
                mean: p.mu * (0.5 * s2).exp(),
                variance: p.mu * p.mu * s2.exp() * s2.exp_m1(),
            }
        }
        Model::MirroredLogNormal(p) => {
            let s2 = p.sigma * p.sigma;
            let nu = p.u - p.mu;
            Moments {
                mean: p.u - nu * (0.5 * s2).exp(),
                variance: nu * nu * s2.exp() * s2.exp_m1(),
            }
        }
    };
    Ok(m)
}

/// `∫ h(x)·g(s) ds` over the cut-off interval, split into equal pieces.
fn chart_integral(chart: &Chart, h: &dyn Fn(f64) -> f64) -> Result<f64> {
    let (lo, hi) = chart.cutoffs();
    let width = (hi - lo) / PIECES as f64;
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_evals: 200_000,
    };
    let mut acc = 0.0;
    for j in 0..PIECES {
        let a = lo + j as f64 * width;
        let b = if j + 1 == PIECES { hi } else { a + width };
        acc += integrate(
            |s| {
                let g = chart.density(s);
                if g == 0.0 {
                    0.0
                } else {
                    h(chart.x_of(s)) * g
                }
            },
            a,
            b,
            &opts,
        )?
        .value;
    }
    Ok(acc)
}

/// `E[h(X)]` by quadrature, normalized by the numerical mass.
pub fn expectation(model: &Model, h: impl Fn(f64) -> f64) -> Result<f64> {
    let chart = Chart::new(model);
    let mass = chart_integral(&chart, &|_| 1.0)?;
    let v = chart_integral(&chart, &h)? / mass;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("expectation is not finite ({v})")))
    }
}

/// `E[(X − E X)^order]` for orders 2 to 4; order 1 returns `E X`.
pub fn central_moment_numeric(model: &Model, order: u32) -> Result<f64> {
    if !(1..=4).contains(&order) {
        return Err(domain(format!("moment order must be 1..4, got {order}")));
    }
    let mean = expectation(model, |x| x)?;
    if order == 1 {
        return Ok(mean);
    }
    expectation(model, |x| (x - mean).powi(order as i32))
}

/// Moment generating function of the unlikely law, defined for `t < 1/(2k)`.
pub fn mgf_unlikely(p: &UnlikelyParams, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(domain(format!("t must be finite, got {t}")));
    }
    let d = 1.0 - 2.0 * p.k * t;
    if !(d > 0.0) {
        return Err(domain(format!(
            "the moment generating function needs t < 1/(2k) = {}, got {t}",
            0.5 / p.k
        )));
    }
    let r = d.sqrt();
    // (μ/k)(1 − r) written without cancellation
    Ok((2.0 * p.mu * t / (1.0 + r)).exp() / r)
}

/// Characteristic function of the unlikely law (principal square root).
pub fn cf_unlikely(p: &UnlikelyParams, t: f64) -> Result<Complex64> {
    if !t.is_finite() {
        return Err(domain(format!("t must be finite, got {t}")));
    }
    let r = Complex64::new(1.0, -2.0 * p.k * t).sqrt();
    let i = Complex64::i();
    Ok((i * 2.0 * p.mu * t / (1.0 + r)).exp() / r)
}
