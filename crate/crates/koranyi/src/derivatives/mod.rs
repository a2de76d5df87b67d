//! Spherical derivatives (one-variable and directional in adapted frames),
//! the anisotropic ∇-functional, log-log growth fitting and Cauchy-estimate
//! checks.

mod cauchy;
mod growth;
pub(crate) mod spherical;

pub use cauchy::{cauchy_estimate_check, CauchyReport};
pub use growth::{growth_fit, log_spaced, trend_class, FitError, GrowthFit, TrendClass};
pub use spherical::{
    criterion_quantity, directional_spherical, directional_split, nabla_from_parts,
    nabla_functional, spherical_derivative_1d, splitting_equivalence_check,
    DirectionalSpherical, SphericalError, SplittingReport,
};
