//! The trailing-third decision rule for the ∇-criterion
//! (1 + |f|²)^{-1}·∇f → 0.

use super::verdict::CriterionFlag;
use super::{LimitError, ProbeConfig};
use crate::derivatives::log_spaced;
use crate::derivatives::spherical::criterion_quantity_in_chart;
use crate::expr::FnHandle;
use crate::geometry::DomainModel;
use crate::regions::{ApproachPath, RegionFamily, RegionSpec};
use crate::{CVec, Real};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PathFlag {
    Satisfied,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathCriterion<R> {
    pub label: String,
    /// (d, quantity) pairs, largest d first.
    pub probes: Vec<(R, R)>,
    pub trailing_max: R,
    pub trailing_min: R,
    pub lead_median: R,
    pub trail_median: R,
    pub flag: PathFlag,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport<R> {
    pub alpha: R,
    pub epsilon_crit: R,
    pub paths: Vec<PathCriterion<R>>,
    pub flag: CriterionFlag<R>,
}

/// The probe paths used by every verdict at aperture α: the normal ray, the
/// tangential parabolas, and the seeded random paths.
pub(crate) fn probe_paths<R: Real>(
    region: &RegionSpec<R>,
    aperture_index: usize,
    cfg: &ProbeConfig<R>,
) -> Vec<ApproachPath<R>> {
    let n = region.domain().dim();
    let mut paths = vec![ApproachPath::normal_ray(region)];
    for dir in 1..n {
        if let Ok(p) = ApproachPath::parabola(region, dir) {
            paths.push(p);
        }
    }
    for k in 0..cfg.random_paths {
        if let Ok(p) = ApproachPath::region_random(region, cfg.path_seed(aperture_index, k)) {
            paths.push(p);
        }
    }
    paths
}

pub(crate) type WindowProbes<R> = Option<Vec<(R, CVec<R>)>>;

/// In-region probe points of a path across the d-window, largest d first.
/// Returns None when the path's tail misses the region (e.g. the parabola
/// in a slim aperture).
pub(crate) fn window_probes<R: Real>(
    path: &ApproachPath<R>,
    cfg: &ProbeConfig<R>,
) -> Result<WindowProbes<R>, LimitError> {
    let region = path.region();
    let chart = region.chart();
    let depths = log_spaced(cfg.window.0, cfg.window.1, cfg.probes_per_path);
    let mut out = Vec::with_capacity(depths.len());
    let mut attempted = 0usize;
    for d in depths {
        let s = path.scale_for_depth(d);
        if s < path.min_scale() || s > path.start_scale() * R::of(2.0) {
            continue;
        }
        attempted += 1;
        let Ok(z) = path.point_at_scale(s) else {
            continue;
        };
        if !region.contains(&z) {
            continue;
        }
        let d_actual = chart.d_of(&z)?;
        if d_actual <= R::zero() {
            continue;
        }
        out.push((d_actual, z));
    }
    if attempted == 0 || out.len() * 3 < attempted * 2 {
        return Ok(None);
    }
    Ok(Some(out))
}

fn median<R: Real>(values: &[R]) -> R {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    if v.is_empty() {
        return R::zero();
    }
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) * R::of(0.5)
    }
}

/// Criterion decision at a single aperture.
pub fn criterion_t1_check<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    alpha: R,
    cfg: &ProbeConfig<R>,
) -> Result<CriterionReport<R>, LimitError> {
    criterion_at(f, domain, xi, alpha, 0, cfg)
}

fn criterion_at<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    alpha: R,
    aperture_index: usize,
    cfg: &ProbeConfig<R>,
) -> Result<CriterionReport<R>, LimitError> {
    let decades = (cfg.window.1 / cfg.window.0).log10();
    if decades < R::of(2.0) {
        return Err(crate::derivatives::FitError::SpanTooNarrow(decades.to_f64_lossy()).into());
    }
    let region = RegionSpec::new(RegionFamily::RealAdapted, alpha, xi.clone(), domain.clone())?;
    let chart = region.chart();
    let eps = cfg.epsilon_crit;
    let mut paths_out = Vec::new();
    for path in probe_paths(&region, aperture_index, cfg) {
        let Some(probes) = window_probes(&path, cfg)? else {
            continue;
        };
        let mut qs: Vec<(R, R)> = Vec::with_capacity(probes.len());
        for (d, z) in &probes {
            let q = criterion_quantity_in_chart(f, chart, z)?;
            qs.push((*d, q));
        }
        if qs.len() < 3 {
            continue;
        }
        let third = (qs.len() / 3).max(1);
        let lead: Vec<R> = qs[..third].iter().map(|&(_, q)| q).collect();
        let trail: Vec<R> = qs[qs.len() - third..].iter().map(|&(_, q)| q).collect();
        let trailing_max = trail.iter().cloned().fold(R::zero(), R::max);
        let trailing_min = trail.iter().cloned().fold(R::infinity(), R::min);
        let lead_median = median(&lead);
        let trail_median = median(&trail);
        let flag = if trailing_max < eps {
            PathFlag::Satisfied
        } else if trailing_min > eps && trail_median >= R::of(0.5) * lead_median {
            PathFlag::Violated
        } else {
            PathFlag::Inconclusive
        };
        paths_out.push(PathCriterion {
            label: path.label(),
            probes: qs,
            trailing_max,
            trailing_min,
            lead_median,
            trail_median,
            flag,
        });
    }
    let flag = combine_flags(alpha, &paths_out);
    Ok(CriterionReport {
        alpha,
        epsilon_crit: eps,
        paths: paths_out,
        flag,
    })
}

/// Deterministic paths are canonical witnesses; random paths come last.
fn witness_rank(label: &str) -> u8 {
    if label.starts_with("paper_parabola") {
        0
    } else if label.starts_with("normal_ray") {
        1
    } else {
        2
    }
}

fn combine_flags<R: Real>(alpha: R, paths: &[PathCriterion<R>]) -> CriterionFlag<R> {
    if paths.is_empty() {
        return CriterionFlag::Inconclusive {
            reason: "no usable probe path".into(),
        };
    }
    let violating = paths
        .iter()
        .filter(|p| p.flag == PathFlag::Violated)
        .min_by(|a, b| {
            (witness_rank(&a.label), -a.trailing_min.to_f64_lossy())
                .partial_cmp(&(witness_rank(&b.label), -b.trailing_min.to_f64_lossy()))
                .expect("finite")
        });
    if let Some(worst) = violating {
        return CriterionFlag::Violated {
            liminf: worst.trailing_min,
            alpha,
            witness: worst.label.clone(),
        };
    }
    if paths.iter().all(|p| p.flag == PathFlag::Satisfied) {
        let max = paths
            .iter()
            .map(|p| p.trailing_max)
            .fold(R::zero(), R::max);
        return CriterionFlag::Satisfied { trailing_max: max };
    }
    CriterionFlag::Inconclusive {
        reason: "mixed path flags without a violation".into(),
    }
}

/// Criterion across apertures: violated anywhere kills it; satisfied needs
/// every aperture.
pub fn criterion_t1_multi<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    apertures: &[R],
    cfg: &ProbeConfig<R>,
) -> Result<(CriterionFlag<R>, Vec<CriterionReport<R>>), LimitError> {
    let mut reports = Vec::with_capacity(apertures.len());
    for (idx, &alpha) in apertures.iter().enumerate() {
        reports.push(criterion_at(f, domain, xi, alpha, idx, cfg)?);
    }
    let mut worst_violation: Option<&CriterionReport<R>> = None;
    for rep in &reports {
        if let CriterionFlag::Violated { liminf, witness, .. } = &rep.flag {
            let better = match worst_violation {
                None => true,
                Some(prev) => match &prev.flag {
                    CriterionFlag::Violated {
                        liminf: pl,
                        witness: pw,
                        ..
                    } => {
                        (witness_rank(witness), -liminf.to_f64_lossy())
                            < (witness_rank(pw), -pl.to_f64_lossy())
                    }
                    _ => true,
                },
            };
            if better {
                worst_violation = Some(rep);
            }
        }
    }
    let combined = if let Some(rep) = worst_violation {
        rep.flag.clone()
    } else if reports.iter().all(|r| r.flag.is_satisfied()) {
        let max = reports
            .iter()
            .map(|r| match &r.flag {
                CriterionFlag::Satisfied { trailing_max } => *trailing_max,
                _ => R::zero(),
            })
            .fold(R::zero(), R::max);
        CriterionFlag::Satisfied { trailing_max: max }
    } else {
        CriterionFlag::Inconclusive {
            reason: "some apertures inconclusive".into(),
        }
    };
    Ok((combined, reports))
}
