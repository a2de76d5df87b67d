//! Limit estimation along approach paths and executable verdicts for the
//! admissible-limit criteria: the ∇-criterion, the growth form, the refined
//! Lindelöf form (omitted value + K-caps) and the single-region form.

mod classify;
mod criterion;
mod estimate;
mod theorems;
mod verdict;

pub use classify::{
    admissible_verdict, classify, classify_with, ApertureStatus, ApertureVerdict, ClassifyOptions,
    PathEstimate,
};
pub use criterion::{criterion_t1_check, criterion_t1_multi, CriterionReport, PathCriterion};
pub use estimate::{estimate_limit, LimitEstimate};
pub use theorems::{
    admissible_bounded_check, growth_verdict, lindelof_refined_verdict, single_region_verdict,
    ApertureBound, BoundedReport, CapsReport, GrowthReport, LindelofReport, OmittedReport,
    PathGrowth, SingleRegionReport,
};
pub use verdict::{AdmissibleStatus, CriterionFlag, TheoremFlags, Verdict};

use crate::derivatives::{FitError, SphericalError};
use crate::expr::EvalError;
use crate::geometry::GeometryError;
use crate::regions::RegionError;
use crate::Real;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LimitError {
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Fit(#[from] FitError),
}

/// Every threshold a verdict depends on. Reports embed the config so each
/// number they contain is reproducible.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeConfig<R> {
    /// Chordal Cauchy tolerance for per-path convergence.
    pub tol: R,
    /// Paths agree when their values stay within `agreement_factor`·tol of
    /// the normal-ray value (converged estimates can straggle a few tol).
    pub agreement_factor: R,
    /// Threshold for the trailing-third criterion decision rule.
    pub epsilon_crit: R,
    /// Boundary-distance window for criterion and growth probes.
    pub window: (R, R),
    /// Log-spaced probes per path inside the window.
    pub probes_per_path: usize,
    /// Minimum probes before a limit estimate may declare convergence.
    pub min_probes: usize,
    pub max_probes: usize,
    /// Seeded random in-region paths per aperture.
    pub random_paths: usize,
    pub seed: u64,
}

impl<R: Real> Default for ProbeConfig<R> {
    fn default() -> Self {
        ProbeConfig {
            tol: R::of(1e-5),
            agreement_factor: R::of(8.0),
            epsilon_crit: R::of(0.05),
            window: (R::of(1e-8), R::of(1e-2)),
            probes_per_path: 12,
            min_probes: 16,
            max_probes: 36,
            random_paths: 3,
            seed: 42,
        }
    }
}

impl<R: Real> ProbeConfig<R> {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tol(mut self, tol: R) -> Self {
        self.tol = tol;
        self
    }

    pub(crate) fn agreement_tol(&self) -> R {
        self.tol * self.agreement_factor
    }

    /// Deterministic sub-seed per (aperture index, path index).
    pub(crate) fn path_seed(&self, aperture_index: usize, path_index: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(aperture_index as u64 * 1_000_003)
            .wrapping_add(path_index as u64 * 7_919)
    }
}
