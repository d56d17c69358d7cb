//! Reparameterization of each model onto the whole real line.
//!
//! Every model is written as `x = x(s)` with `s ∈ ℝ` and `x` increasing in
//! `s`, and the transformed density `g(s) = f(x(s))·dx/ds` is evaluated in
//! log form. Semi-infinite and bounded supports become the same kind of
//! problem: a smooth, unimodal `g` that decays to zero on both sides, so one
//! finite cut-off interval holds all of the mass.
//!
//! * unlikely: `x = μ·e^s`
//! * likely: `x = u − (u − μ)·e^{−s}`
//! * generic: `x = u / (1 + e^{−s})`
//! * homogeneous, normal: `x = μ + σ·s`
//! * log-normal: `x = μ·e^{σs}`; mirrored log-normal: `x = u − (u − μ)·e^{−σs}`

use super::density::LN_SQRT_2PI;
use super::Model;

/// Log-density level beyond which the transformed density is treated as
/// zero.
pub(crate) const LN_CUTOFF: f64 = -745.0;

#[derive(Debug, Clone, Copy)]
enum Kind {
    Unlikely {
        mu: f64,
        k: f64,
        ln_norm: f64,
    },
    Likely {
        u: f64,
        nu: f64,
        k: f64,
        ln_norm: f64,
    },
    Generic {
        mu: f64,
        k: f64,
        u: f64,
        ln_norm: f64,
    },
    Affine {
        loc: f64,
        width: f64,
    },
    LogScale {
        mu: f64,
        sigma: f64,
    },
    MirrorLogScale {
        u: f64,
        nu: f64,
        sigma: f64,
    },
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Chart {
    kind: Kind,
    center: f64,
    scale: f64,
}

fn logistic(s: f64) -> f64 {
    if s >= 0.0 {
        1.0 / (1.0 + (-s).exp())
    } else {
        let e = s.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^z)
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

impl Chart {
    pub(crate) fn new(model: &Model) -> Self {
        use std::f64::consts::PI;
        match *model {
            Model::Unlikely(p) => Chart {
                kind: Kind::Unlikely {
                    mu: p.mu,
                    k: p.k,
                    ln_norm: -0.5 * (2.0 * PI * p.k / p.mu).ln(),
                },
                center: 0.0,
                scale: (p.k / p.mu).sqrt(),
            },
            Model::Likely(p) => {
                let nu = p.u - p.mu;
                Chart {
                    kind: Kind::Likely {
                        u: p.u,
                        nu,
                        k: p.k,
                        ln_norm: -0.5 * (2.0 * PI * p.k / nu).ln(),
                    },
                    center: 0.0,
                    scale: (p.k / nu).sqrt(),
                }
            }
            Model::Generic(p) => Chart {
                kind: Kind::Generic {
                    mu: p.mu,
                    k: p.k,
                    u: p.u,
                    ln_norm: -0.5 * (2.0 * PI * p.k).ln() - p.u.ln(),
                },
                center: (p.mu / (p.u - p.mu)).ln(),
                scale: p.u * (p.k / (p.mu * (p.u - p.mu))).sqrt(),
            },
            Model::Homogeneous(p) => Chart {
                kind: Kind::Affine {
                    loc: p.mu,
                    width: p.sigma(),
                },
                center: 0.0,
                scale: 1.0,
            },
            Model::Normal(p) => Chart {
                kind: Kind::Affine {
                    loc: p.mu,
                    width: p.sigma,
                },
                center: 0.0,
                scale: 1.0,
            },
            Model::LogNormal(p) => Chart {
                kind: Kind::LogScale {
                    mu: p.mu,
                    sigma: p.sigma,
                },
                center: 0.0,
                scale: 1.0,
            },
            Model::MirroredLogNormal(p) => Chart {
                kind: Kind::MirrorLogScale {
                    u: p.u,
                    nu: p.u - p.mu,
                    sigma: p.sigma,
                },
                center: 0.0,
                scale: 1.0,
            },
        }
    }

    pub(crate) fn x_of(&self, s: f64) -> f64 {
        match self.kind {
            Kind::Unlikely { mu, .. } => mu * s.exp(),
            Kind::Likely { u, nu, .. } => u - nu * (-s).exp(),
            Kind::Generic { u, .. } => u * logistic(s),
            Kind::Affine { loc, width } => loc + width * s,
            Kind::LogScale { mu, sigma } => mu * (sigma * s).exp(),
            Kind::MirrorLogScale { u, nu, sigma } => u - nu * (-sigma * s).exp(),
        }
    }

    /// Inverse of [`Chart::x_of`]; finite support ends map to ±∞.
    pub(crate) fn s_of(&self, x: f64) -> f64 {
        match self.kind {
            Kind::Unlikely { mu, .. } => (x / mu).ln(),
            Kind::Likely { u, nu, .. } => -((u - x) / nu).ln(),
            Kind::Generic { u, .. } => (x / (u - x)).ln(),
            Kind::Affine { loc, width } => (x - loc) / width,
            Kind::LogScale { mu, sigma } => (x / mu).ln() / sigma,
            Kind::MirrorLogScale { u, nu, sigma } => -((u - x) / nu).ln() / sigma,
        }
    }

    /// ln g(s) where g is the density of s.
    pub(crate) fn ln_density(&self, s: f64) -> f64 {
        let v = match self.kind {
            Kind::Unlikely { mu, k, ln_norm } => {
                let sh = (0.5 * s).sinh();
                -2.0 * mu / k * sh * sh + ln_norm + 0.5 * s
            }
            Kind::Likely { nu, k, ln_norm, .. } => {
                let sh = (0.5 * s).sinh();
                -2.0 * nu / k * sh * sh + ln_norm - 0.5 * s
            }
            Kind::Generic { mu, k, u, ln_norm } => {
                let x = u * logistic(s);
                let y = u * logistic(-s);
                let d = mu - x;
                let ln_xy = 2.0 * u.ln() - softplus(-s) - softplus(s);
                -(d * d) / (2.0 * k * (x * y)) + 0.5 * ln_xy + ln_norm
            }
            Kind::Affine { .. } | Kind::LogScale { .. } | Kind::MirrorLogScale { .. } => {
                -0.5 * s * s - LN_SQRT_2PI
            }
        };
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }

    #[inline]
    pub(crate) fn density(&self, s: f64) -> f64 {
        self.ln_density(s).exp()
    }

    /// Finite interval `[lo, hi]` in `s` outside of which ln g < −745.
    pub(crate) fn cutoffs(&self) -> (f64, f64) {
        (self.cutoff(-1.0), self.cutoff(1.0))
    }

    fn cutoff(&self, dir: f64) -> f64 {
        let c = self.center;
        let mut inside = c;
        let mut step = self.scale;
        let mut outside = c + dir * step;
        let mut guard = 0;
        while self.ln_density(outside) >= LN_CUTOFF && guard < 200 {
            inside = outside;
            step *= 2.0;
            outside = c + dir * step;
            guard += 1;
        }
        for _ in 0..80 {
            let mid = 0.5 * (inside + outside);
            if mid == inside || mid == outside {
                break;
            }
            if self.ln_density(mid) >= LN_CUTOFF {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        outside
    }
}
