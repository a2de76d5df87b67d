//! Chordal Cauchy limit estimation along an approach path.

use super::LimitError;
use crate::expr::FnHandle;
use crate::regions::ApproachPath;
use crate::{chordal_distance, ExtComplex, Real};
use serde::Serialize;

/// Outcome of probing a limit along one path.
#[derive(Debug, Clone, Serialize)]
pub struct LimitEstimate<R> {
    /// Final probe value on the sphere (snapped to ∞ when chordally within
    /// tol of it), so L = ∞ is a first-class outcome.
    pub value: ExtComplex<R>,
    pub converged: bool,
    /// Last chordal increment between consecutive probes.
    pub last_delta: R,
    pub probes: usize,
}

/// Probe f along the path until the last 4 chordal increments drop under
/// `tol`. Poles on the path are absorbed as the value ∞; non-convergence is
/// an inconclusive estimate, not an error.
pub fn estimate_limit<R: Real>(
    f: &FnHandle<R>,
    path: &ApproachPath<R>,
    tol: R,
    min_probes: usize,
    max_probes: usize,
) -> Result<LimitEstimate<R>, LimitError> {
    let points = path.emit(max_probes)?;
    let mut values: Vec<ExtComplex<R>> = Vec::with_capacity(points.len());
    for z in &points {
        values.push(f.eval_value_ext(z)?);
    }
    let deltas: Vec<R> = values
        .windows(2)
        .map(|w| chordal_distance(w[0], w[1]))
        .collect();

    let earliest = min_probes.max(5).min(values.len());
    let mut converged_at = None;
    for k in earliest..=values.len() {
        // increments between probes k-5..k-1 (the last 4 before probe k)
        let window = &deltas[k - 5..k - 1];
        if window.iter().all(|&d| d < tol) {
            converged_at = Some(k);
            break;
        }
    }
    let (probes, converged) = match converged_at {
        Some(k) => (k, true),
        None => (values.len(), false),
    };
    let mut value = values[probes - 1];
    if converged && chordal_distance(value, ExtComplex::Infinity) < tol {
        value = ExtComplex::Infinity;
    }
    Ok(LimitEstimate {
        value,
        converged,
        last_delta: deltas[probes - 2],
        probes,
    })
}
