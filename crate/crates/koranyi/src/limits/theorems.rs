//! Growth, refined-Lindelöf and single-region verdicts, plus the
//! admissible-boundedness report.

use super::criterion::{probe_paths, window_probes};
use super::estimate::{estimate_limit, LimitEstimate};
use super::{LimitError, ProbeConfig};
use crate::derivatives::{growth_fit, trend_class, GrowthFit, TrendClass};
use crate::derivatives::spherical::{directional_split, jet_or_reciprocal};
use crate::expr::FnHandle;
use crate::geometry::DomainModel;
use crate::regions::{sample_region, ApproachPath, RegionError, RegionFamily, RegionSpec};
use crate::{chordal_distance, CVec, ExtComplex, Real};
use serde::Serialize;

/// Growth of the directional spherical derivatives along one path.
#[derive(Debug, Clone, Serialize)]
pub struct PathGrowth<R> {
    pub label: String,
    /// None when the derivative vanishes identically along the path.
    pub normal_fit: Option<GrowthFit<R>>,
    pub tangential_fit: Option<GrowthFit<R>>,
    pub normal_trend: TrendClass,
    pub tangential_trend: TrendClass,
}

/// Theorem-style growth verdict: the function has an admissible limit iff
/// the normal/tangential spherical derivatives grow like o(1/d) and
/// o(1/√d). The o/O discrimination is an empirical trend test.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport<R> {
    pub alpha: R,
    pub label: &'static str,
    pub paths: Vec<PathGrowth<R>>,
    pub normal_little_o: bool,
    pub tangential_little_o: bool,
    pub pooled_normal_exponent: Option<R>,
    pub pooled_tangential_exponent: Option<R>,
    /// o-conditions + an existing normal limit predict the admissible
    /// outcome; None when the normal limit is inconclusive.
    pub predicts_admissible: Option<bool>,
}

/// Per-path (d, normal, tangential) spherical-derivative samples.
type LabeledSamples<R> = Vec<(String, Vec<(R, R, R)>)>;

/// Directional spherical-derivative samples (d, normal, tangential) along
/// the probe paths, moving-frame split.
fn directional_samples<R: Real>(
    f: &FnHandle<R>,
    region: &RegionSpec<R>,
    aperture_index: usize,
    cfg: &ProbeConfig<R>,
) -> Result<LabeledSamples<R>, LimitError> {
    let domain = region.domain();
    let mut out = Vec::new();
    for path in probe_paths(region, aperture_index, cfg) {
        let Some(probes) = window_probes(&path, cfg)? else {
            continue;
        };
        let mut samples = Vec::with_capacity(probes.len());
        for (d, z) in &probes {
            let (nearest, _) = domain.nearest_boundary_point(z)?;
            let frame = domain.boundary_frame(&nearest)?;
            let (jet, _) = jet_or_reciprocal(f, z).map_err(LimitError::Spherical)?;
            let denom = R::one() + jet.value.norm_sqr();
            let (n, t) = directional_split(&jet.grad, &frame);
            samples.push((*d, n / denom, t / denom));
        }
        out.push((path.label(), samples));
    }
    Ok(out)
}

const ZERO_FLOOR: f64 = 1e-250;

fn fit_direction<R: Real>(samples: &[(R, R)]) -> (Option<GrowthFit<R>>, TrendClass, bool) {
    let all_zero = samples.iter().all(|&(_, v)| v.to_f64_lossy() < ZERO_FLOOR);
    if all_zero {
        // Identically-zero derivatives satisfy every o-condition.
        return (None, TrendClass::LittleO, true);
    }
    let fit = growth_fit(samples).ok();
    (fit, TrendClass::BigO, false)
}

/// Growth verdict at aperture α.
pub fn growth_verdict<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    alpha: R,
    normal_limit: Option<&LimitEstimate<R>>,
    cfg: &ProbeConfig<R>,
) -> Result<GrowthReport<R>, LimitError> {
    let region = RegionSpec::new(RegionFamily::RealAdapted, alpha, xi.clone(), domain.clone())?;
    let per_path = directional_samples(f, &region, 0, cfg)?;
    let mut paths = Vec::new();
    let mut pooled_normal: Vec<(R, R)> = Vec::new();
    let mut pooled_tangential: Vec<(R, R)> = Vec::new();
    let mut normal_o = true;
    let mut tangential_o = true;
    for (label, samples) in &per_path {
        let normal: Vec<(R, R)> = samples.iter().map(|&(d, n, _)| (d, n)).collect();
        let tangential: Vec<(R, R)> = samples.iter().map(|&(d, _, t)| (d, t)).collect();
        let (normal_fit, mut normal_trend, nzero) = fit_direction(&normal);
        let (tangential_fit, mut tangential_trend, tzero) = fit_direction(&tangential);
        if !nzero {
            normal_trend = trend_class(&normal, R::one());
        }
        if !tzero {
            tangential_trend = trend_class(&tangential, R::of(0.5));
        }
        normal_o &= normal_trend == TrendClass::LittleO;
        tangential_o &= tangential_trend == TrendClass::LittleO;
        pooled_normal.extend(normal.iter().filter(|&&(_, v)| v.to_f64_lossy() >= ZERO_FLOOR));
        pooled_tangential.extend(
            tangential
                .iter()
                .filter(|&&(_, v)| v.to_f64_lossy() >= ZERO_FLOOR),
        );
        paths.push(PathGrowth {
            label: label.clone(),
            normal_fit,
            tangential_fit,
            normal_trend,
            tangential_trend,
        });
    }
    let predicts = normal_limit.and_then(|est| {
        est.converged
            .then_some(normal_o && tangential_o)
    });
    Ok(GrowthReport {
        alpha,
        label: "empirical",
        paths,
        normal_little_o: normal_o,
        tangential_little_o: tangential_o,
        pooled_normal_exponent: growth_fit(&pooled_normal).ok().map(|f| f.exponent),
        pooled_tangential_exponent: growth_fit(&pooled_tangential).ok().map(|f| f.exponent),
        predicts_admissible: predicts,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OmittedReport<R> {
    pub target: ExtComplex<R>,
    pub samples: usize,
    pub min_chordal: R,
    /// Sampling can only suggest omission; a local-search root upgrades
    /// "not omitted" to certain.
    pub attained: bool,
    pub witness: Option<String>,
    pub empirical: bool,
}

/// K-growth caps of the directional spherical derivatives.
#[derive(Debug, Clone, Serialize)]
pub struct CapsReport<R> {
    pub k: R,
    pub holds: bool,
    /// max over probes of value·d / K (normal direction).
    pub worst_normal: R,
    /// max over probes of value·√d / K (tangential directions).
    pub worst_tangential: R,
}

#[derive(Debug, Clone, Serialize)]
pub struct LindelofReport<R> {
    pub alpha: R,
    pub normal_limit: LimitEstimate<R>,
    pub omitted: OmittedReport<R>,
    pub caps: CapsReport<R>,
    /// Some(L): caps hold, L is (empirically) omitted and the normal limit
    /// exists, so the refined Lindelöf form predicts the admissible limit.
    pub predicts_admissible: Option<ExtComplex<R>>,
}

fn caps_report<R: Real>(
    f: &FnHandle<R>,
    region: &RegionSpec<R>,
    k_cap: R,
    cfg: &ProbeConfig<R>,
) -> Result<CapsReport<R>, LimitError> {
    let per_path = directional_samples(f, region, 1, cfg)?;
    let mut worst_normal = R::zero();
    let mut worst_tangential = R::zero();
    for (_, samples) in &per_path {
        for &(d, n, t) in samples {
            worst_normal = worst_normal.max(n * d / k_cap);
            worst_tangential = worst_tangential.max(t * d.sqrt() / k_cap);
        }
    }
    Ok(CapsReport {
        k: k_cap,
        holds: worst_normal <= R::one() + R::of(1e-9)
            && worst_tangential <= R::one() + R::of(1e-9),
        worst_normal,
        worst_tangential,
    })
}

/// Empirical omitted-value scan with a local-search attainment upgrade.
fn omitted_scan<R: Real>(
    f: &FnHandle<R>,
    region: &RegionSpec<R>,
    target: ExtComplex<R>,
    total_samples: usize,
    seed: u64,
) -> Result<OmittedReport<R>, LimitError> {
    let depths = [R::of(1e-2), R::of(1e-3), R::of(1e-4)];
    let per_depth = (total_samples / depths.len()).max(16);
    let mut best: Option<(R, CVec<R>)> = None;
    let mut count = 0usize;
    for (k, &d) in depths.iter().enumerate() {
        let rep = match sample_region(region, d, per_depth, seed.wrapping_add(k as u64)) {
            Ok(rep) => rep,
            Err(RegionError::SamplingFailed { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        for z in rep.points {
            count += 1;
            let value = f.eval_value_ext(&z)?;
            let dist = chordal_distance(value, target);
            if best.as_ref().map(|(b, _)| dist < *b).unwrap_or(true) {
                best = Some((dist, z));
            }
        }
    }
    let Some((min_chordal, start)) = best else {
        return Ok(OmittedReport {
            target,
            samples: 0,
            min_chordal: R::one(),
            attained: false,
            witness: None,
            empirical: true,
        });
    };

    // Local search: damped Gauss–Newton on g(z) = L (through 1/f when
    // L = ∞). The minimum-norm step conj(∇g)·(L − g)/|∇g|² halves the error
    // even on double zeros, where plain descent stalls on the quartic flat.
    let (g, finite_target) = match target {
        ExtComplex::Finite(l) => (f.clone(), l),
        ExtComplex::Infinity => (f.reciprocal(), crate::Complex::new(R::zero(), R::zero())),
    };
    let domain = region.domain().clone();
    let objective = |z: &CVec<R>| -> Option<R> {
        match g.eval_value(z) {
            Ok(v) => Some((v - finite_target).norm_sqr()),
            Err(_) => None,
        }
    };
    let mut z = start;
    let mut fz = objective(&z).unwrap_or(R::infinity());
    for _ in 0..120 {
        if fz < R::of(1e-26) {
            break;
        }
        let Ok(jet) = g.eval_jet(&z) else { break };
        let grad_sq = jet.grad.norm_sqr();
        if grad_sq < R::of(1e-30) {
            break;
        }
        let residual = finite_target - jet.value;
        let scale = residual / crate::Complex::new(grad_sq, R::zero());
        let step = CVec::new(jet.grad.entries().iter().map(|gj| gj.conj() * scale).collect());
        let mut lambda = R::one();
        let mut improved = false;
        for _ in 0..40 {
            let cand = z.add(&step.scale_real(lambda));
            if domain.contains(&cand) {
                if let Some(fc) = objective(&cand) {
                    if fc < fz {
                        z = cand;
                        fz = fc;
                        improved = true;
                        break;
                    }
                }
            }
            lambda = lambda * R::of(0.5);
        }
        if !improved {
            break;
        }
    }
    // Only an interior root is a certain witness: a value whose infimum is
    // approached at the boundary (like ∞ for 1/(1−z₁)) drives the search
    // against ∂D and must stay "empirically omitted".
    let interior = domain
        .boundary_distance(&z)
        .map(|delta| delta > R::of(1e-7))
        .unwrap_or(false);
    let resid = fz.sqrt();
    let attained = if !interior || resid >= R::of(1e-10) {
        false
    } else if resid > R::of(1e-100) {
        // Newton visibly converged onto a root: a certain witness.
        true
    } else {
        // Exact zero in floating point. Either g ≡ L near the vertex (a
        // constant-like attainment) or an underflow basin (e.g.
        // exp(-1/(1-z₁)) deep in the region, which attains nothing).
        // Re-probing at a moderate depth with the same tangential offset
        // separates the two.
        let chart = region.chart();
        let mut w = chart.to_chart(&z);
        w.entries_mut()[0] = crate::Complex::new(chart.radius() * R::of(0.6), R::zero());
        let companion = chart.from_chart(&w);
        domain.contains(&companion)
            && objective(&companion)
                .map(|v| v.sqrt() <= R::of(1e-100))
                .unwrap_or(false)
    };
    Ok(OmittedReport {
        target,
        samples: count,
        min_chordal,
        attained,
        witness: attained.then(|| z.to_string()),
        empirical: !attained,
    })
}

/// Refined Lindelöf verdict: normal limit + omitted value + K-caps.
pub fn lindelof_refined_verdict<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    alpha: R,
    k_cap: R,
    omitted_samples: usize,
    cfg: &ProbeConfig<R>,
) -> Result<LindelofReport<R>, LimitError> {
    let region = RegionSpec::new(RegionFamily::RealAdapted, alpha, xi.clone(), domain.clone())?;
    let ray = ApproachPath::normal_ray(&region);
    let normal_limit = estimate_limit(f, &ray, cfg.tol, cfg.min_probes, cfg.max_probes)?;
    let target = normal_limit.value;
    let omitted = omitted_scan(f, &region, target, omitted_samples, cfg.seed)?;
    let caps = caps_report(f, &region, k_cap, cfg)?;
    let predicts = (normal_limit.converged && caps.holds && !omitted.attained)
        .then_some(target);
    Ok(LindelofReport {
        alpha,
        normal_limit,
        omitted,
        caps,
        predicts_admissible: predicts,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SingleRegionReport<R> {
    pub beta: R,
    /// Common limit of all probe paths inside A_β, when they agree.
    pub limit_in_beta: Option<ExtComplex<R>>,
    pub converged_paths: usize,
    pub caps: CapsReport<R>,
    pub predicts_admissible: Option<ExtComplex<R>>,
    /// (aperture, limit there agrees with the β-limit).
    pub cross_checks: Vec<(R, bool)>,
}

/// Single-region verdict: a limit inside one A_β plus K-caps predicts the
/// admissible limit at every aperture; cross-checked at 2β and 4β.
pub fn single_region_verdict<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    beta: R,
    k_cap: R,
    cfg: &ProbeConfig<R>,
) -> Result<SingleRegionReport<R>, LimitError> {
    let region = RegionSpec::new(RegionFamily::RealAdapted, beta, xi.clone(), domain.clone())?;
    let caps = caps_report(f, &region, k_cap, cfg)?;

    let limit_at = |aperture: R,
                    aperture_index: usize|
     -> Result<(Option<ExtComplex<R>>, usize), LimitError> {
        let reg = region.with_aperture(aperture)?;
        let mut reference: Option<ExtComplex<R>> = None;
        let mut converged = 0usize;
        let mut agree = true;
        for path in probe_paths(&reg, aperture_index, cfg) {
            match path.tail_in_region(cfg.max_probes) {
                Ok(true) => {}
                Ok(false) => continue,
                Err(RegionError::PathExhausted(_)) => continue,
                Err(e) => return Err(e.into()),
            }
            let est = match estimate_limit(f, &path, cfg.tol, cfg.min_probes, cfg.max_probes) {
                Ok(est) => est,
                Err(LimitError::Region(RegionError::PathExhausted(_))) => continue,
                Err(e) => return Err(e),
            };
            if !est.converged {
                agree = false;
                continue;
            }
            converged += 1;
            match reference {
                None => reference = Some(est.value),
                Some(l) => {
                    if chordal_distance(l, est.value) >= cfg.agreement_tol() {
                        agree = false;
                    }
                }
            }
        }
        Ok(((agree && converged >= 2).then_some(reference).flatten(), converged))
    };

    let (limit_in_beta, converged_paths) = limit_at(beta, 10)?;
    let predicts = match (&limit_in_beta, caps.holds) {
        (Some(l), true) => Some(*l),
        _ => None,
    };
    let mut cross_checks = Vec::new();
    if let Some(expected) = predicts {
        for (i, factor) in [2.0, 4.0].iter().enumerate() {
            let aperture = beta * R::of(*factor);
            let (found, _) = limit_at(aperture, 20 + i)?;
            let ok = found
                .map(|l| chordal_distance(l, expected) < cfg.agreement_tol())
                .unwrap_or(false);
            cross_checks.push((aperture, ok));
        }
    }
    Ok(SingleRegionReport {
        beta,
        limit_in_beta,
        converged_paths,
        caps,
        predicts_admissible: predicts,
        cross_checks,
    })
}

/// Per-aperture sup report of |f| and the ∇-criterion quantity over sampled
/// region points at a ladder of depths.
#[derive(Debug, Clone, Serialize)]
pub struct ApertureBound<R> {
    pub alpha: R,
    /// None when a pole was hit (sup is unbounded).
    pub sup_f: Option<R>,
    /// (depth, sup |f| at that depth slice).
    pub slice_sups: Vec<(R, R)>,
    pub sup_criterion_quantity: R,
    /// Trailing slice sup grew to ≥ 4× the leading slice sup.
    pub growing: bool,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundedReport<R> {
    pub per_aperture: Vec<ApertureBound<R>>,
    /// The Proposition pairing observed on this data: bounded ∇-quantity
    /// with a finite normal limit never co-occurred with growing |f|.
    pub proposition_consistent: Option<bool>,
}

pub fn admissible_bounded_check<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    apertures: &[R],
    per_slice: usize,
    normal_limit: Option<&LimitEstimate<R>>,
    cfg: &ProbeConfig<R>,
) -> Result<BoundedReport<R>, LimitError> {
    let depths = [R::of(1e-2), R::of(1e-3), R::of(1e-4), R::of(1e-5)];
    let mut per_aperture = Vec::with_capacity(apertures.len());
    let mut any_inconsistent = false;
    let mut any_checked = false;
    for (idx, &alpha) in apertures.iter().enumerate() {
        let region =
            RegionSpec::new(RegionFamily::RealAdapted, alpha, xi.clone(), domain.clone())?;
        let chart = region.chart();
        let mut slice_sups = Vec::new();
        let mut sup_q = R::zero();
        let mut pole_hit = false;
        let mut samples = 0usize;
        for (k, &d) in depths.iter().enumerate() {
            let rep = match sample_region(
                &region,
                d,
                per_slice,
                cfg.path_seed(idx, 100 + k),
            ) {
                Ok(rep) => rep,
                Err(RegionError::SamplingFailed { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            let mut slice_sup = R::zero();
            for z in &rep.points {
                samples += 1;
                match f.eval_value_ext(z)? {
                    ExtComplex::Finite(v) => slice_sup = slice_sup.max(v.norm()),
                    ExtComplex::Infinity => pole_hit = true,
                }
                let q = crate::derivatives::spherical::criterion_quantity_in_chart(f, chart, z)
                    .map_err(LimitError::Spherical)?;
                sup_q = sup_q.max(q);
            }
            slice_sups.push((d, slice_sup));
        }
        let growing = match (slice_sups.first(), slice_sups.last()) {
            (Some(&(_, first)), Some(&(_, last))) if slice_sups.len() >= 2 => {
                last > first * R::of(4.0) && last > R::of(1.0)
            }
            _ => false,
        };
        let sup_f = if pole_hit {
            None
        } else {
            Some(
                slice_sups
                    .iter()
                    .map(|&(_, s)| s)
                    .fold(R::zero(), R::max),
            )
        };
        // Proposition pairing: bounded ∇-quantity + finite normal limit
        // should come with bounded |f|.
        if let Some(est) = normal_limit {
            let normal_finite = est.converged && !est.value.is_infinite();
            let nabla_bounded = sup_q < R::of(10.0);
            if normal_finite && nabla_bounded {
                any_checked = true;
                if growing || sup_f.is_none() {
                    any_inconsistent = true;
                }
            }
        }
        per_aperture.push(ApertureBound {
            alpha,
            sup_f,
            slice_sups,
            sup_criterion_quantity: sup_q,
            growing,
            samples,
        });
    }
    Ok(BoundedReport {
        per_aperture,
        proposition_consistent: any_checked.then_some(!any_inconsistent),
    })
}
