//! Parameter records, densities, distribution functions and moments.
//!
//! The four intensive variants share one [`Model`] enum with the three
//! comparison laws used in fitting work (normal, log-normal and mirrored
//! log-normal), so that CDFs, quantiles, sampling and PP series are written
//! once.

mod cdf;
mod chart;
mod density;
mod moments;

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

pub use cdf::{cdf, quantile, CdfTable, QuadratureCdf};
pub(crate) use density::ln_density;
pub use density::{
    log_pdf, pdf, pdf_adimensional, pdf_generic, pdf_homogeneous, pdf_likely, pdf_unlikely,
};
pub use moments::{
    central_moment_numeric, cf_unlikely, expectation, mgf_unlikely, moments_closed, Moments,
};

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn check_below(name: &str, v: f64, u: f64) -> Result<()> {
    if v < u {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} must be below u = {u}")))
    }
}

/// Right skewed law on `(0, ∞)` with batch mean `mu` and dispersion `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnlikelyParams {
    mu: f64,
    k: f64,
}

impl UnlikelyParams {
    pub fn new(mu: f64, k: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        check_positive("k", k)?;
        Ok(Self { mu, k })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Left skewed mirror of [`UnlikelyParams`] on `(−∞, u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LikelyParams {
    mu: f64,
    k: f64,
    u: f64,
}

impl LikelyParams {
    pub fn new(mu: f64, k: f64, u: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        check_positive("k", k)?;
        check_positive("u", u)?;
        check_below("mu", mu, u)?;
        Ok(Self { mu, k, u })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// The unlikely law of `u − x`.
    pub fn mirror(&self) -> UnlikelyParams {
        UnlikelyParams {
            mu: self.u - self.mu,
            k: self.k,
        }
    }
}

/// Full density on `(0, u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericParams {
    mu: f64,
    k: f64,
    u: f64,
}

impl GenericParams {
    pub fn new(mu: f64, k: f64, u: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        check_positive("k", k)?;
        check_positive("u", u)?;
        check_below("mu", mu, u)?;
        Ok(Self { mu, k, u })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn u(&self) -> f64 {
        self.u
    }
}

/// Enhanced Gaussian: mean `mu`, variance `k·mu·(u − mu)`.
///
/// `u` may be `f64::INFINITY`, in which case `k` is read as already scaled
/// by `u` and the variance is `k·mu` (the homogeneous limit of the unlikely
/// law).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousParams {
    mu: f64,
    k: f64,
    u: f64,
}

impl HomogeneousParams {
    pub fn new(mu: f64, k: f64, u: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        check_positive("k", k)?;
        if !(u > 0.0) {
            return Err(domain(format!("u must be positive, got {u}")));
        }
        check_below("mu", mu, u)?;
        let p = Self { mu, k, u };
        let v = p.sigma_sq();
        if !(v.is_finite() && v > 0.0) {
            return Err(domain(format!(
                "variance k·mu·(u − mu) = {v} is not positive and finite"
            )));
        }
        Ok(p)
    }

    /// Homogeneous law with `u = ∞` (variance `k·mu`).
    pub fn unbounded(mu: f64, k: f64) -> Result<Self> {
        Self::new(mu, k, f64::INFINITY)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn sigma_sq(&self) -> f64 {
        if self.u.is_infinite() {
            self.k * self.mu
        } else {
            self.k * self.mu * (self.u - self.mu)
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma_sq().sqrt()
    }
}

/// Dimensionless Bernoulli form: success probability `p` in samples of `n`
/// elemental units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdimensionalParams {
    p: f64,
    n: u64,
}

impl AdimensionalParams {
    pub fn new(p: f64, n: u64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(domain(format!("p must lie in (0, 1), got {p}")));
        }
        if n == 0 {
            return Err(domain("n must be at least 1"));
        }
        Ok(Self { p, n })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Rescales to measurement units: `mu = u·p`, `k = 1/n`.
    pub fn to_generic(&self, u: f64) -> Result<GenericParams> {
        check_positive("u", u)?;
        GenericParams::new(u * self.p, 1.0 / self.n as f64, u)
    }
}

/// `mu = u·p`, `k = 1/n`; the density transforms as `f(x) = f(χ)/u`.
pub fn from_adimensional(a: &AdimensionalParams, u: f64) -> Result<GenericParams> {
    a.to_generic(u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalParams {
    mu: f64,
    sigma: f64,
}

impl NormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(domain(format!("mu must be finite, got {mu}")));
        }
        check_positive("sigma", sigma)?;
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Log-normal law with geometric mean `mu` and log-scale deviation `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormalParams {
    mu: f64,
    sigma: f64,
}

impl LogNormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        check_positive("sigma", sigma)?;
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Log-normal law of `u − x`; `mu` is reported on the `x` scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirroredLogNormalParams {
    mu: f64,
    sigma: f64,
    u: f64,
}

impl MirroredLogNormalParams {
    pub fn new(mu: f64, sigma: f64, u: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(domain(format!("mu must be finite, got {mu}")));
        }
        check_positive("sigma", sigma)?;
        if !u.is_finite() {
            return Err(domain(format!("u must be finite, got {u}")));
        }
        check_below("mu", mu, u)?;
        Ok(Self { mu, sigma, u })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn u(&self) -> f64 {
        self.u
    }
}

/// Model tag without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Unlikely,
    Likely,
    Generic,
    Homogeneous,
    Normal,
    LogNormal,
    MirroredLogNormal,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Unlikely,
        ModelKind::Likely,
        ModelKind::Generic,
        ModelKind::Homogeneous,
        ModelKind::Normal,
        ModelKind::LogNormal,
        ModelKind::MirroredLogNormal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Unlikely => "unlikely",
            ModelKind::Likely => "likely",
            ModelKind::Generic => "generic",
            ModelKind::Homogeneous => "homogeneous",
            ModelKind::Normal => "normal",
            ModelKind::LogNormal => "lognormal",
            ModelKind::MirroredLogNormal => "mirrored-lognormal",
        }
    }

    /// Whether the model needs an upper bound `u`.
    pub fn needs_u(self) -> bool {
        matches!(
            self,
            ModelKind::Likely | ModelKind::Generic | ModelKind::MirroredLogNormal
        )
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| domain(format!("unknown model '{s}'")))
    }
}

/// A fully parameterized law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Unlikely(UnlikelyParams),
    Likely(LikelyParams),
    Generic(GenericParams),
    Homogeneous(HomogeneousParams),
    Normal(NormalParams),
    LogNormal(LogNormalParams),
    MirroredLogNormal(MirroredLogNormalParams),
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Unlikely(_) => ModelKind::Unlikely,
            Model::Likely(_) => ModelKind::Likely,
            Model::Generic(_) => ModelKind::Generic,
            Model::Homogeneous(_) => ModelKind::Homogeneous,
            Model::Normal(_) => ModelKind::Normal,
            Model::LogNormal(_) => ModelKind::LogNormal,
            Model::MirroredLogNormal(_) => ModelKind::MirroredLogNormal,
        }
    }

    /// Closed support `[lower, upper]` (infinite ends allowed).
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Model::Unlikely(_) | Model::LogNormal(_) => (0.0, f64::INFINITY),
            Model::Likely(p) => (f64::NEG_INFINITY, p.u),
            Model::MirroredLogNormal(p) => (f64::NEG_INFINITY, p.u),
            Model::Generic(p) => (0.0, p.u),
            Model::Homogeneous(_) | Model::Normal(_) => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn in_closed_support(&self, x: f64) -> bool {
        let (lo, hi) = self.support();
        !x.is_nan() && x >= lo && x <= hi
    }

    /// Strict interior of the support, excluding infinities.
    pub fn in_open_support(&self, x: f64) -> bool {
        let (lo, hi) = self.support();
        x.is_finite() && x > lo && x < hi
    }

    /// Named parameters in a fixed order, for reports.
    pub fn parameters(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Model::Unlikely(p) => vec![("mu", p.mu), ("k", p.k)],
            Model::Likely(p) => vec![("mu", p.mu), ("k", p.k), ("u", p.u)],
            Model::Generic(p) => vec![("mu", p.mu), ("k", p.k), ("u", p.u)],
            Model::Homogeneous(p) => vec![("mu", p.mu), ("k", p.k), ("u", p.u)],
            Model::Normal(p) => vec![("mu", p.mu), ("sigma", p.sigma)],
            Model::LogNormal(p) => vec![("mu", p.mu), ("sigma", p.sigma)],
            Model::MirroredLogNormal(p) => vec![("mu", p.mu), ("sigma", p.sigma), ("u", p.u)],
        }
    }
}

impl From<UnlikelyParams> for Model {
    fn from(p: UnlikelyParams) -> Self {
        Model::Unlikely(p)
    }
}

impl From<LikelyParams> for Model {
    fn from(p: LikelyParams) -> Self {
        Model::Likely(p)
    }
}

impl From<GenericParams> for Model {
    fn from(p: GenericParams) -> Self {
        Model::Generic(p)
    }
}

impl From<HomogeneousParams> for Model {
    fn from(p: HomogeneousParams) -> Self {
        Model::Homogeneous(p)
    }
}

impl From<NormalParams> for Model {
    fn from(p: NormalParams) -> Self {
        Model::Normal(p)
    }
}

impl From<LogNormalParams> for Model {
    fn from(p: LogNormalParams) -> Self {
        Model::LogNormal(p)
    }
}

impl From<MirroredLogNormalParams> for Model {
    fn from(p: MirroredLogNormalParams) -> Self {
        Model::MirroredLogNormal(p)
    }
}
