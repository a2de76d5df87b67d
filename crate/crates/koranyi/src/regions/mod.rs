//! The five approach-region families at a boundary vertex: membership
//! predicates, approach paths, seeded rejection sampling and Monte-Carlo
//! inclusion reports.

mod inclusion;
mod paths;
mod sample;
mod spec;

pub use inclusion::{
    disc_cosine_law, equivalence_constants, literal_cosine_law_witness, run_inclusion,
    CosineLawReport, EquivalenceReport, InclusionCheck, InclusionReport,
};
pub use paths::{normal_ray, paper_parabola, ApproachPath, PathKind};
pub use sample::{sample_at_depths, sample_region, SampleReport};
pub use spec::{RegionFamily, RegionSpec};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegionError {
    #[error("invalid aperture {aperture} for {family}: {constraint}")]
    InvalidAperture {
        family: &'static str,
        aperture: f64,
        constraint: &'static str,
    },
    #[error("{family} requires {requirement}")]
    WrongDomain {
        family: &'static str,
        requirement: &'static str,
    },
    #[error("paper parabola needs j >= 4, got {0}")]
    ParabolaIndex(u64),
    #[error("sampling failed: acceptance rate {acceptance:.3e} below 1e-4 at d_target {d_target:.3e}")]
    SamplingFailed { acceptance: f64, d_target: f64 },
    #[error("path cannot descend: {0}")]
    PathExhausted(String),
    #[error("path point left the domain at scale {0:.3e}")]
    PathExitsDomain(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
