//! Machine-readable verdict types.

use super::classify::ApertureVerdict;
use super::criterion::CriterionReport;
use super::estimate::LimitEstimate;
use super::theorems::{BoundedReport, GrowthReport, LindelofReport, SingleRegionReport};
use super::ProbeConfig;
use crate::{ExtComplex, Real};
use serde::Serialize;

pub const VERDICT_VERSION: &str = "koranyi-verdict/1";

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status")]
pub enum AdmissibleStatus<R> {
    /// Every probed aperture agrees on a single sphere value.
    Holds { value: ExtComplex<R> },
    /// A converged path disagrees with the normal-ray value.
    Fails {
        alpha: R,
        witness: String,
        expected: ExtComplex<R>,
        got: ExtComplex<R>,
        deviation: R,
    },
    Inconclusive { reason: String },
}

impl<R: Real> AdmissibleStatus<R> {
    pub fn holds_value(&self) -> Option<ExtComplex<R>> {
        match self {
            AdmissibleStatus::Holds { value } => Some(*value),
            _ => None,
        }
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, AdmissibleStatus::Fails { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "flag")]
pub enum CriterionFlag<R> {
    /// The ∇-quantity dies out along every probe path.
    Satisfied { trailing_max: R },
    /// The quantity stays above threshold without a clear downward trend;
    /// `liminf` is the trailing-third minimum along the witness path.
    Violated {
        liminf: R,
        alpha: R,
        witness: String,
    },
    Inconclusive { reason: String },
}

impl<R> CriterionFlag<R> {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, CriterionFlag::Satisfied { .. })
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, CriterionFlag::Violated { .. })
    }

    /// Same enum arm (values ignored): the shape of reciprocal invariance.
    pub fn same_arm(&self, other: &Self) -> bool {
        matches!(
            (self, other),
            (CriterionFlag::Satisfied { .. }, CriterionFlag::Satisfied { .. })
                | (CriterionFlag::Violated { .. }, CriterionFlag::Violated { .. })
                | (
                    CriterionFlag::Inconclusive { .. },
                    CriterionFlag::Inconclusive { .. }
                )
        )
    }
}

/// Cross-consistency of the verdict pieces, asserted as checks rather than
/// assumed from the theorems.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremFlags {
    /// admissible = holds ⇒ criterion ≠ violated.
    pub t1_forward_consistent: bool,
    /// criterion = violated ∧ normal limit converged ⇒ admissible ≠ holds.
    pub t1_reverse_consistent: bool,
    /// Growth o-verdict prediction matches the admissible outcome (None
    /// when either side is inconclusive).
    pub teor2_agrees: Option<bool>,
    /// Refined-Lindelöf prediction (omitted value + K-caps) matches the
    /// admissible outcome.
    pub t3_agrees: Option<bool>,
    /// Single-region prediction matches the admissible outcome.
    pub t4_agrees: Option<bool>,
    /// Bounded ∇-quantity with a finite normal limit did not co-occur with
    /// an unbounded |f| (the Proposition pairing).
    pub proposition_consistent: Option<bool>,
}

/// Full classification at one vertex.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict<R> {
    pub version: String,
    pub function: String,
    pub domain: String,
    pub vertex: String,
    pub apertures: Vec<R>,
    pub config: ProbeConfig<R>,
    pub normal_limit: LimitEstimate<R>,
    pub admissible: AdmissibleStatus<R>,
    pub per_aperture: Vec<ApertureVerdict<R>>,
    pub criterion_t1: CriterionFlag<R>,
    pub criterion_detail: Vec<CriterionReport<R>>,
    pub growth: GrowthReport<R>,
    pub lindelof: LindelofReport<R>,
    /// Present when a single probe aperture β was requested.
    pub single_region: Option<SingleRegionReport<R>>,
    pub boundedness: BoundedReport<R>,
    pub theorem_flags: TheoremFlags,
}
