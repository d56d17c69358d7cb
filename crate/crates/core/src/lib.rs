//! Intensive natural distributions.
//!
//! A family of densities for intensive measurements (concentrations, mass
//! fractions) obtained as the continuous limit of the Bernoulli success
//! ratio. The crate covers four variants:
//!
//! * **generic**: support `(0, u)`, density `(2πkx(u−x))^{-1/2} exp(−(μ−x)²/(2kx(u−x)))`
//! * **homogeneous** (enhanced Gaussian): a normal law with variance `kμ(u−μ)`
//! * **unlikely**: right skewed on `(0, ∞)`, `(2πkx)^{-1/2} exp(−(μ−x)²/(2kx))`
//! * **likely**: the left skewed mirror of the unlikely law about `u`
//!
//! together with closed-form and numerical estimators, seeded samplers,
//! PP-plot goodness of fit, exact binomial/Poisson references and the
//! Horwitz coefficient-of-variation model.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod discrete_oracle;
pub mod distribution;
mod error;
pub mod estimation;
pub mod goodness_of_fit;
pub mod horwitz;
pub mod lognormal_bridge;
pub mod optimize;
pub mod quadrature;
pub mod sampling;
pub mod special;

pub use distribution::{
    AdimensionalParams, GenericParams, HomogeneousParams, LikelyParams, LogNormalParams,
    MirroredLogNormalParams, Model, ModelKind, NormalParams, UnlikelyParams,
};
pub use error::{Error, Result};
