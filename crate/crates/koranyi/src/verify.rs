//! Named invariant suites: the property checks behind `koranyi verify`.
//!
//! Each check reports trial/violation counts so a summary line can be
//! printed per property. The hooks exist so a negative control can corrupt
//! an input and watch the suite catch it.

use crate::chains::{build_chain, Chain};
use crate::derivatives::{growth_fit, log_spaced, spherical_derivative_1d};
use crate::expr::{catalog, FnHandle};
use crate::geometry::DomainModel;
use crate::limits::{classify, ProbeConfig};
use crate::regions::{
    disc_cosine_law, paper_parabola, run_inclusion, InclusionCheck, RegionFamily,
};
use crate::{chordal_distance, CVec, Complex, ExtComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub violations: usize,
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn clean(name: &str, trials: usize) -> Self {
        CheckResult {
            name: name.into(),
            trials,
            violations: 0,
            detail: None,
        }
    }

    fn failed(name: &str, trials: usize, violations: usize, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            trials,
            violations,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Test hooks for negative controls.
#[derive(Debug, Clone, Copy, Default)]
pub struct Hooks {
    /// Add this to the frame's unitarity defect before the check; any
    /// nonzero value must be caught.
    pub corrupt_frame: Option<f64>,
}

pub fn suite_names() -> &'static [&'static str] {
    &["algebra", "geometry", "regions", "derivatives", "chains", "limits"]
}

/// Run the suites whose name contains `filter` (all when None).
pub fn run_suites(filter: Option<&str>, seed: u64) -> Vec<SuiteResult> {
    run_suites_with_hooks(filter, seed, Hooks::default())
}

pub fn run_suites_with_hooks(filter: Option<&str>, seed: u64, hooks: Hooks) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    for &name in suite_names() {
        if let Some(f) = filter {
            if !name.contains(f) {
                continue;
            }
        }
        let checks = match name {
            "algebra" => algebra_suite(seed),
            "geometry" => geometry_suite(seed, hooks),
            "regions" => regions_suite(seed),
            "derivatives" => derivatives_suite(seed),
            "chains" => chains_suite(),
            "limits" => limits_suite(seed),
            _ => unreachable!(),
        };
        out.push(SuiteResult {
            suite: name.into(),
            checks,
        });
    }
    out
}

type C = Complex<f64>;

fn rand_complex(rng: &mut ChaCha8Rng, scale: f64) -> C {
    C::new(
        (rng.gen::<f64>() * 2.0 - 1.0) * scale,
        (rng.gen::<f64>() * 2.0 - 1.0) * scale,
    )
}

fn rand_cvec(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> CVec<f64> {
    CVec::new((0..n).map(|_| rand_complex(rng, scale)).collect())
}

fn algebra_suite(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    // Conjugate symmetry and sesquilinearity of the Hermitian product.
    let trials = 10_000;
    let mut violations = 0;
    let mut detail = String::new();
    for _ in 0..trials {
        let u = rand_cvec(&mut rng, 3, 2.0);
        let v = rand_cvec(&mut rng, 3, 2.0);
        let w = rand_cvec(&mut rng, 3, 2.0);
        let a = rand_complex(&mut rng, 2.0);
        let uv = u.hermitian_inner(&v).unwrap();
        let vu = v.hermitian_inner(&u).unwrap();
        let sym = (uv - vu.conj()).norm();
        let lhs = u.scale(a).add(&w).hermitian_inner(&v).unwrap();
        let rhs = uv * a + w.hermitian_inner(&v).unwrap();
        let lin = (lhs - rhs).norm();
        if sym > 1e-12 || lin > 1e-12 {
            violations += 1;
            if detail.is_empty() {
                detail = format!("sym {sym:.2e} lin {lin:.2e}");
            }
        }
    }
    checks.push(if violations == 0 {
        CheckResult::clean("hermitian_inner conjugate symmetry + sesquilinearity", trials)
    } else {
        CheckResult::failed(
            "hermitian_inner conjugate symmetry + sesquilinearity",
            trials,
            violations,
            detail,
        )
    });

    // Chordal triangle inequality, including the point at infinity.
    let trials = 10_000;
    let mut violations = 0;
    for _ in 0..trials {
        let pick = |rng: &mut ChaCha8Rng| -> ExtComplex<f64> {
            if rng.gen::<f64>() < 0.07 {
                ExtComplex::Infinity
            } else {
                ExtComplex::Finite(rand_complex(rng, 5.0))
            }
        };
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let ab = chordal_distance(a, b);
        let bc = chordal_distance(b, c);
        let ac = chordal_distance(a, c);
        if ac > ab + bc + 1e-12 {
            violations += 1;
        }
    }
    checks.push(CheckResult {
        name: "chordal triangle inequality (with infinity)".into(),
        trials,
        violations,
        detail: None,
    });

    // Jet gradients against central finite differences.
    let trials = 100;
    let mut violations = 0;
    let mut detail = String::new();
    for k in 0..trials {
        let names = ["paper_counterexample", "tangential_cubed", "inv_normal"];
        let f: FnHandle<f64> = catalog(names[k % names.len()]).unwrap();
        let z = rand_cvec(&mut rng, f.arity(), 0.45);
        let jet = f.eval_jet(&z).unwrap();
        let fd = finite_difference_gradient(&f, &z, 1e-5);
        for (a, b) in jet.grad.entries().iter().zip(fd.entries()) {
            let rel = (a - b).norm() / a.norm().max(1.0);
            if rel > 1e-6 {
                violations += 1;
                if detail.is_empty() {
                    detail = format!("rel {rel:.2e} at {z}");
                }
            }
        }
    }
    checks.push(if violations == 0 {
        CheckResult::clean("jet gradients vs central finite differences", trials)
    } else {
        CheckResult::failed(
            "jet gradients vs central finite differences",
            trials,
            violations,
            detail,
        )
    });

    checks
}

/// Central-difference complex gradient via the Cauchy–Riemann assembly
/// (∂f/∂z = (∂x f − i ∂y f)/2), step h per real coordinate.
pub fn finite_difference_gradient(f: &FnHandle<f64>, z: &CVec<f64>, h: f64) -> CVec<f64> {
    let n = z.dim();
    let eval = |z: &CVec<f64>| f.eval_value(z).expect("away from poles");
    let mut grad = Vec::with_capacity(n);
    for j in 0..n {
        let mut zp = z.clone();
        let mut zm = z.clone();
        zp.entries_mut()[j] = z[j] + C::new(h, 0.0);
        zm.entries_mut()[j] = z[j] - C::new(h, 0.0);
        let dx = (eval(&zp) - eval(&zm)) / C::new(2.0 * h, 0.0);
        zp.entries_mut()[j] = z[j] + C::new(0.0, h);
        zm.entries_mut()[j] = z[j] - C::new(0.0, h);
        let dy = (eval(&zp) - eval(&zm)) / C::new(2.0 * h, 0.0);
        grad.push((dx - dy * C::new(0.0, 1.0)) * C::new(0.5, 0.0));
    }
    CVec::new(grad)
}

fn geometry_suite(seed: u64, hooks: Hooks) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e0);
    let mut checks = Vec::new();
    let ball = DomainModel::unit_ball(2);

    // Frame unitarity at random boundary points.
    let trials = 1_000;
    let mut violations = 0;
    let mut detail = String::new();
    for _ in 0..trials {
        let raw = rand_cvec(&mut rng, 2, 1.0);
        let Some(xi) = raw.normalized() else { continue };
        let frame = ball.boundary_frame(&xi).unwrap();
        let defect = match hooks.corrupt_frame {
            None => frame.unitarity_defect(),
            Some(bump) => frame.unitarity_defect() + bump.abs(),
        };
        if defect > 1e-12 {
            violations += 1;
            if detail.is_empty() {
                detail = format!("defect {defect:.2e} at {xi}");
            }
        }
    }
    checks.push(if violations == 0 {
        CheckResult::clean("frame unitarity |U U* - I| < 1e-12", trials)
    } else {
        CheckResult::failed("frame unitarity |U U* - I| < 1e-12", trials, violations, detail)
    });

    // Ball nearest point is the radial projection, exactly.
    let trials = 1_000;
    let mut violations = 0;
    for _ in 0..trials {
        let z = rand_cvec(&mut rng, 2, 0.6);
        if !ball.contains(&z) || z.norm() < 1e-3 {
            continue;
        }
        let (xi, delta) = ball.nearest_boundary_point(&z).unwrap();
        let exact = z.scale_real(1.0 / z.norm());
        if xi.dist(&exact) > 1e-14 || (delta - (1.0 - z.norm())).abs() > 1e-14 {
            violations += 1;
        }
    }
    checks.push(CheckResult {
        name: "ball nearest point = z/|z|".into(),
        trials,
        violations,
        detail: None,
    });

    // Graph-domain projection lands on the boundary.
    let psi = crate::geometry::PsiMap::poly("(z1^2+z2^2+z3^2)/4", 3).unwrap();
    let dom = DomainModel::graph(2, psi, 0.5).unwrap();
    let trials = 100;
    let mut violations = 0;
    let mut detail = String::new();
    for _ in 0..trials {
        let x1 = 0.02 + rng.gen::<f64>() * 0.3;
        let zeta: Vec<f64> = (0..3).map(|_| (rng.gen::<f64>() * 2.0 - 1.0) * 0.3).collect();
        let z = CVec::new(vec![C::new(x1, zeta[0]), C::new(zeta[1], zeta[2])]);
        if !dom.contains(&z) {
            continue;
        }
        match dom.nearest_boundary_point(&z) {
            Ok((xi, delta)) => {
                if !dom.on_boundary(&xi) || delta < 0.0 {
                    violations += 1;
                    if detail.is_empty() {
                        detail = format!("projection left the boundary at {z}");
                    }
                }
            }
            Err(e) => {
                violations += 1;
                if detail.is_empty() {
                    detail = format!("{e}");
                }
            }
        }
    }
    checks.push(if violations == 0 {
        CheckResult::clean("graph projection lands on the boundary", trials)
    } else {
        CheckResult::failed("graph projection lands on the boundary", trials, violations, detail)
    });

    // d(z) <= x1 and delta_xi <= delta.
    let e1 = CVec::new(vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);
    let chart = ball.vertex_chart(&e1).unwrap();
    let trials = 1_000;
    let mut violations = 0;
    for _ in 0..trials {
        let w = rand_cvec(&mut rng, 2, 0.3);
        let z = chart.from_chart(&w);
        if !ball.contains(&z) {
            continue;
        }
        let Ok(d) = chart.d_of(&z) else { continue };
        let x1 = chart.to_chart(&z)[0].re;
        if d > x1 + 1e-14 {
            violations += 1;
        }
        let delta = ball.boundary_distance(&z).unwrap();
        let dxi = crate::geometry::delta_xi(&ball, &e1, &z).unwrap();
        if dxi > delta + 1e-14 {
            violations += 1;
        }
    }
    checks.push(CheckResult {
        name: "d(z) <= x1 and delta_xi <= delta".into(),
        trials,
        violations,
        detail: None,
    });

    // Inside A_alpha the surrogate is comparable to the depth:
    // d(z) >= c1 x1 with c1 = min(1/2, 1/(2 K alpha)).
    let alpha = 3.0;
    let c1 = (0.5f64).min(1.0 / (2.0 * 1.0 * alpha));
    let region = crate::regions::RegionSpec::new(
        crate::regions::RegionFamily::RealAdapted,
        alpha,
        e1.clone(),
        ball.clone(),
    )
    .expect("region");
    let mut trials = 0;
    let mut violations = 0;
    for (k, d_target) in [1e-2, 1e-3, 1e-4, 1e-6].iter().enumerate() {
        let Ok(rep) = crate::regions::sample_region(&region, *d_target, 100, seed + k as u64)
        else {
            continue;
        };
        for z in &rep.points {
            trials += 1;
            let d = chart.d_of(z).expect("in chart");
            let x1 = chart.to_chart(z)[0].re;
            if d < c1 * x1 {
                violations += 1;
            }
        }
    }
    checks.push(CheckResult {
        name: "d(z) >= c1 x1 inside A_alpha (c1 = min(1/2, 1/(2 K alpha)))".into(),
        trials,
        violations,
        detail: None,
    });

    checks
}

fn regions_suite(seed: u64) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    let law = disc_cosine_law::<f64>(10_000, seed ^ 0xc05);
    checks.push(CheckResult {
        name: "disc law-of-cosines identity + two-sided bound".into(),
        trials: law.trials,
        violations: law.identity_violations + law.lower_violations + law.upper_violations,
        detail: None,
    });

    for alpha in [1.1, 2.0, 10.0] {
        let rep = run_inclusion::<f64>(
            InclusionCheck::StolzInsideAngular { alpha },
            10_000,
            seed ^ 0x51,
        )
        .unwrap();
        checks.push(CheckResult {
            name: rep.check.clone(),
            trials: rep.trials,
            violations: rep.violations,
            detail: rep.witness,
        });
    }

    for family in [
        RegionFamily::DiscStolz,
        RegionFamily::DiscAngular,
        RegionFamily::BallKoranyi,
        RegionFamily::Stein,
        RegionFamily::RealAdapted,
    ] {
        let rep = run_inclusion::<f64>(
            InclusionCheck::ApertureMonotone { family },
            10_000,
            seed ^ 0xa1,
        )
        .unwrap();
        checks.push(CheckResult {
            name: rep.check.clone(),
            trials: rep.trials,
            violations: rep.violations,
            detail: rep.witness,
        });
    }

    for theta in [0.5, 1.0, 1.4] {
        let rep = run_inclusion::<f64>(
            InclusionCheck::AngularCapInsideStolz { theta },
            10_000,
            seed ^ 0x7e,
        )
        .unwrap();
        checks.push(CheckResult {
            name: rep.check.clone(),
            trials: rep.trials,
            violations: rep.violations,
            detail: rep.witness,
        });
    }

    let rep = run_inclusion::<f64>(
        InclusionCheck::NormalRayInKoranyi { alpha: 1.5 },
        10_000,
        seed ^ 0x0b,
    )
    .unwrap();
    checks.push(CheckResult {
        name: rep.check.clone(),
        trials: rep.trials,
        violations: rep.violations,
        detail: rep.witness,
    });

    // Measured Stein-vs-adapted equivalence constants (informational:
    // no closed-form beta(alpha), gamma(alpha) exists for these).
    let ball2 = DomainModel::unit_ball(2);
    let e1b = CVec::new(vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);
    match crate::regions::equivalence_constants(&ball2, &e1b, 2.0, 60, seed ^ 0xe0) {
        Ok(eq) => checks.push(CheckResult {
            name: "equivalence constants measured (stein <-> adapted)".into(),
            trials: eq.trials_per_probe,
            violations: usize::from(!(eq.beta > 0.0 && eq.gamma >= eq.beta)),
            detail: Some(format!(
                "beta({}) = {:.3}, gamma({}) = {:.3}",
                eq.alpha, eq.beta, eq.alpha, eq.gamma
            )),
        }),
        Err(e) => checks.push(CheckResult::failed(
            "equivalence constants measured (stein <-> adapted)",
            0,
            1,
            e.to_string(),
        )),
    }

    // Parabola threshold: z^j enters D_alpha exactly past alpha/(alpha-2).
    let mut violations = 0;
    let mut trials = 0;
    let ball = DomainModel::unit_ball(2);
    let e1 = CVec::new(vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);
    for alpha in [2.5, 3.0, 6.0] {
        let region = crate::regions::RegionSpec::new(
            RegionFamily::BallKoranyi,
            alpha,
            e1.clone(),
            ball.clone(),
        )
        .unwrap();
        let threshold = alpha / (alpha - 2.0);
        for j in 4..200u64 {
            trials += 1;
            let z = paper_parabola::<f64>(j).unwrap();
            let inside = region.contains(&z);
            let expected = (j as f64) > threshold;
            if inside != expected {
                violations += 1;
            }
        }
    }
    checks.push(CheckResult {
        name: "paper parabola enters D_alpha exactly past alpha/(alpha-2)".into(),
        trials,
        violations,
        detail: None,
    });

    checks
}

fn derivatives_suite(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xde5);
    let mut checks = Vec::new();

    // Chordal invariance of the 1D spherical derivative.
    let f: FnHandle<f64> = catalog("inv_normal").unwrap().with_arity(1).unwrap();
    let g = f.reciprocal();
    let trials = 500;
    let mut violations = 0;
    for _ in 0..trials {
        let z = rand_complex(&mut rng, 0.7);
        if (C::new(1.0, 0.0) - z).norm() < 1e-2 || z.norm() < 1e-2 {
            continue;
        }
        let a = spherical_derivative_1d(&f, z).unwrap();
        let b = spherical_derivative_1d(&g, z).unwrap();
        if (a - b).abs() > 1e-9 * a.max(1.0) {
            violations += 1;
        }
    }
    checks.push(CheckResult {
        name: "spherical derivative chordal invariance f vs 1/f".into(),
        trials,
        violations,
        detail: None,
    });

    // Planted growth exponents under 1% noise.
    let mut violations = 0;
    for (k, p) in [-1.0, -0.5, 0.0].iter().enumerate() {
        let mut noise_rng = ChaCha8Rng::seed_from_u64(seed + k as u64);
        let data: Vec<(f64, f64)> = log_spaced(1e-8f64, 1e-2, 24)
            .into_iter()
            .map(|d| {
                let bump = 1.0 + 0.01 * (noise_rng.gen::<f64>() * 2.0 - 1.0);
                (d, d.powf(*p) * bump)
            })
            .collect();
        let fit = growth_fit(&data).unwrap();
        if (fit.exponent - p).abs() > 0.02 {
            violations += 1;
        }
    }
    checks.push(CheckResult {
        name: "growth fit recovers planted exponents {-1, -1/2, 0}".into(),
        trials: 3,
        violations,
        detail: None,
    });

    // Cauchy estimates on random catalog/point/c triples.
    let trials = 100;
    let mut violations = 0;
    let mut detail = String::new();
    let names = ["paper_counterexample", "tangential_cubed", "inv_normal"];
    for k in 0..trials {
        let f: FnHandle<f64> = catalog(names[k % names.len()]).unwrap();
        let c = [0.05, 0.1, 0.2][k % 3];
        let z = loop {
            let cand = rand_cvec(&mut rng, 2, 0.8);
            let n = cand.norm();
            if n > 0.3 && n < 0.93 {
                break cand;
            }
        };
        match crate::derivatives::cauchy_estimate_check(&f, &z, c) {
            Ok(rep) => {
                if !rep.holds(1e-6) {
                    violations += 1;
                    if detail.is_empty() {
                        detail = format!("violated at {z} c={c}");
                    }
                }
            }
            // Polydisc poked out of the ball: not a counted trial.
            Err(_) => continue,
        }
    }
    checks.push(if violations == 0 {
        CheckResult::clean("Cauchy estimates on sampled polydiscs", trials)
    } else {
        CheckResult::failed("Cauchy estimates on sampled polydiscs", trials, violations, detail)
    });

    checks
}

fn chains_suite() -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let ball = DomainModel::unit_ball(2);
    let e1 = CVec::new(vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);

    let mut violations = 0;
    let mut trials = 0;
    let mut detail = String::new();
    for j in [10u64, 100, 10_000] {
        trials += 1;
        let z = paper_parabola::<f64>(j).unwrap();
        match build_chain(&ball, &e1, &z, 0.25, 3.0) {
            Ok(chain) => {
                let bound = Chain::<f64>::length_bound(3.0, 0.25);
                if chain.len() > bound || chain.overlap_midpoints().len() + 1 != chain.len() {
                    violations += 1;
                    if detail.is_empty() {
                        detail = format!("j={j}: len {} bound {bound}", chain.len());
                    }
                }
            }
            Err(e) => {
                violations += 1;
                if detail.is_empty() {
                    detail = format!("j={j}: {e}");
                }
            }
        }
    }
    checks.push(if violations == 0 {
        CheckResult::clean("chains over the parabola: bound + overlaps + anchors", trials)
    } else {
        CheckResult::failed(
            "chains over the parabola: bound + overlaps + anchors",
            trials,
            violations,
            detail,
        )
    });

    // Rescaling round trips.
    let chart = ball.vertex_chart(&e1).unwrap();
    let b = chart.to_chart(&paper_parabola::<f64>(100).unwrap());
    let d = chart.d_of_chart(&b).unwrap();
    let p = crate::chains::Polydisc::new(b, 0.25, d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let trials = 1_000;
    let mut violations = 0;
    for _ in 0..trials {
        let w = rand_cvec(&mut rng, 2, 0.9);
        let err = p.forward(&p.inverse(&w)).dist(&w);
        if err > 1e-14 {
            violations += 1;
        }
    }
    checks.push(CheckResult {
        name: "rescale forward/inverse round trip < 1e-14".into(),
        trials,
        violations,
        detail: None,
    });

    checks
}

fn limits_suite(seed: u64) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let ball = DomainModel::unit_ball(2);
    let e1 = CVec::new(vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);
    let cfg = ProbeConfig::<f64>::default().with_seed(seed);
    let apertures = [1.5, 3.0, 6.0];

    // Cross-consistency of verdicts across the catalog.
    let mut violations = 0;
    let mut trials = 0;
    let mut detail = String::new();
    for name in [
        "paper_counterexample",
        "tangential_cubed",
        "inv_normal",
        "constant(0)",
        "constant(1+2*i)",
    ] {
        trials += 1;
        let f: FnHandle<f64> = catalog(name).unwrap().with_arity(2).unwrap();
        match classify(&f, &ball, &e1, &apertures, &cfg) {
            Ok(v) => {
                if !v.theorem_flags.t1_forward_consistent
                    || !v.theorem_flags.t1_reverse_consistent
                    || v.theorem_flags.teor2_agrees == Some(false)
                {
                    violations += 1;
                    if detail.is_empty() {
                        detail = format!("{name}: {:?}", v.theorem_flags);
                    }
                }
            }
            Err(e) => {
                violations += 1;
                if detail.is_empty() {
                    detail = format!("{name}: {e}");
                }
            }
        }
    }
    checks.push(if violations == 0 {
        CheckResult::clean("verdict cross-consistency over the catalog", trials)
    } else {
        CheckResult::failed(
            "verdict cross-consistency over the catalog",
            trials,
            violations,
            detail,
        )
    });

    // Determinism: identical runs produce identical verdict data (the CLI
    // additionally checks byte-identical JSON).
    let f: FnHandle<f64> = catalog("paper_counterexample").unwrap();
    let a = classify(&f, &ball, &e1, &apertures, &cfg).unwrap();
    let b = classify(&f, &ball, &e1, &apertures, &cfg).unwrap();
    let same = format!("{a:?}") == format!("{b:?}");
    checks.push(CheckResult {
        name: "verdict determinism (identical reports)".into(),
        trials: 1,
        violations: usize::from(!same),
        detail: None,
    });

    checks
}
