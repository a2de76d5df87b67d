//! Monte-Carlo inclusion relations between region families and the disc
//! law-of-cosines bounds they rest on.

use super::sample::sample_region;
use super::spec::{RegionFamily, RegionSpec};
use super::RegionError;
use crate::geometry::DomainModel;
use crate::{CVec, Complex, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, serde::Serialize)]
pub struct InclusionReport {
    pub check: String,
    pub trials: usize,
    pub violations: usize,
    pub witness: Option<String>,
}

impl InclusionReport {
    pub fn clean(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, Copy)]
pub enum InclusionCheck {
    /// Γ_α ⊂ A_{arccos(1/α)}: from the law of cosines, z ∈ Γ_α forces
    /// cos φ > 1/α.
    StolzInsideAngular { alpha: f64 },
    /// A_θ ∩ {|z−ξ| < cos θ} ⊂ Γ_{4/cos θ}.
    AngularCapInsideStolz { theta: f64 },
    /// Membership is monotone in the aperture.
    ApertureMonotone { family: RegionFamily },
    /// ξ − tξ ∈ D_α for t below 2(α−1)/α.
    NormalRayInKoranyi { alpha: f64 },
}

impl InclusionCheck {
    pub fn label(&self) -> String {
        match self {
            InclusionCheck::StolzInsideAngular { alpha } => {
                format!("stolz({alpha}) ⊂ angular(arccos(1/{alpha}))")
            }
            InclusionCheck::AngularCapInsideStolz { theta } => {
                format!("angular({theta}) ∩ disc ⊂ stolz(4/cos {theta})")
            }
            InclusionCheck::ApertureMonotone { family } => {
                format!("aperture monotonicity of {}", family.name())
            }
            InclusionCheck::NormalRayInKoranyi { alpha } => {
                format!("normal ray in koranyi({alpha}) below threshold")
            }
        }
    }
}

fn disc_vertex<R: Real>() -> (DomainModel<R>, CVec<R>) {
    (
        DomainModel::unit_ball(1),
        CVec::new(vec![Complex::new(R::one(), R::zero())]),
    )
}

fn random_disc_point<R: Real>(rng: &mut ChaCha8Rng) -> Complex<R> {
    loop {
        let re = rng.gen::<f64>() * 2.0 - 1.0;
        let im = rng.gen::<f64>() * 2.0 - 1.0;
        if re * re + im * im < 1.0 {
            return Complex::new(R::of(re), R::of(im));
        }
    }
}

/// Run one Monte-Carlo inclusion check.
pub fn run_inclusion<R: Real>(
    check: InclusionCheck,
    trials: usize,
    seed: u64,
) -> Result<InclusionReport, RegionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut witness = None;
    match check {
        InclusionCheck::StolzInsideAngular { alpha } => {
            let (disc, xi) = disc_vertex::<R>();
            let stolz =
                RegionSpec::new(RegionFamily::DiscStolz, R::of(alpha), xi.clone(), disc.clone())?;
            let theta = R::of((1.0 / alpha).acos());
            let angular = RegionSpec::new(RegionFamily::DiscAngular, theta, xi, disc)?;
            for _ in 0..trials {
                let z = CVec::new(vec![random_disc_point::<R>(&mut rng)]);
                if stolz.contains(&z) && !angular.contains(&z) {
                    violations += 1;
                    witness.get_or_insert_with(|| z.to_string());
                }
            }
        }
        InclusionCheck::AngularCapInsideStolz { theta } => {
            let (disc, xi) = disc_vertex::<R>();
            let angular =
                RegionSpec::new(RegionFamily::DiscAngular, R::of(theta), xi.clone(), disc.clone())?;
            let alpha = R::of(4.0 / theta.cos());
            let stolz = RegionSpec::new(RegionFamily::DiscStolz, alpha, xi.clone(), disc)?;
            let cap = R::of(theta.cos());
            for _ in 0..trials {
                let z = CVec::new(vec![random_disc_point::<R>(&mut rng)]);
                let in_cap = z.dist(&xi) < cap;
                if in_cap && angular.contains(&z) && !stolz.contains(&z) {
                    violations += 1;
                    witness.get_or_insert_with(|| z.to_string());
                }
            }
        }
        InclusionCheck::ApertureMonotone { family } => {
            let (domain, xi): (DomainModel<R>, CVec<R>) = match family {
                RegionFamily::DiscStolz | RegionFamily::DiscAngular => disc_vertex(),
                _ => (
                    DomainModel::unit_ball(2),
                    CVec::new(vec![
                        Complex::new(R::one(), R::zero()),
                        Complex::new(R::zero(), R::zero()),
                    ]),
                ),
            };
            for _ in 0..trials {
                let (lo, hi) = random_aperture_pair(family, &mut rng);
                let small = RegionSpec::new(family, R::of(lo), xi.clone(), domain.clone())?;
                let large = RegionSpec::new(family, R::of(hi), xi.clone(), domain.clone())?;
                let z = match family {
                    RegionFamily::DiscStolz | RegionFamily::DiscAngular => {
                        CVec::new(vec![random_disc_point::<R>(&mut rng)])
                    }
                    _ => {
                        // Bias toward the vertex so membership is non-trivial.
                        let t = rng.gen::<f64>() * 0.4;
                        let y1 = (rng.gen::<f64>() * 2.0 - 1.0) * 0.2;
                        let tangential = (rng.gen::<f64>() * 2.0 - 1.0) * 0.5;
                        let ti = (rng.gen::<f64>() * 2.0 - 1.0) * 0.5;
                        CVec::new(vec![
                            Complex::new(R::of(1.0 - t), R::of(y1)),
                            Complex::new(R::of(tangential), R::of(ti)),
                        ])
                    }
                };
                if small.contains(&z) && !large.contains(&z) {
                    violations += 1;
                    witness.get_or_insert_with(|| z.to_string());
                }
            }
        }
        InclusionCheck::NormalRayInKoranyi { alpha } => {
            let ball = DomainModel::unit_ball(2);
            let xi = CVec::new(vec![
                Complex::new(R::one(), R::zero()),
                Complex::new(R::zero(), R::zero()),
            ]);
            let region = RegionSpec::new(RegionFamily::BallKoranyi, R::of(alpha), xi, ball)?;
            // t < 2(α−1)/α makes |1 − (z,ξ)| = t < (α/2)(2t − t²).
            let threshold = 2.0 * (alpha - 1.0) / alpha;
            for _ in 0..trials {
                let t = rng.gen::<f64>() * threshold * (1.0 - 1e-9);
                if t <= 0.0 {
                    continue;
                }
                let z = CVec::new(vec![
                    Complex::new(R::of(1.0 - t), R::zero()),
                    Complex::new(R::zero(), R::zero()),
                ]);
                if !region.contains(&z) {
                    violations += 1;
                    witness.get_or_insert_with(|| z.to_string());
                }
            }
        }
    }
    Ok(InclusionReport {
        check: check.label(),
        trials,
        violations,
        witness,
    })
}

fn random_aperture_pair(family: RegionFamily, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let (lo, hi) = match family {
        RegionFamily::DiscStolz | RegionFamily::BallKoranyi => (1.0 + 1e-6, 16.0),
        RegionFamily::DiscAngular => (1e-3, std::f64::consts::FRAC_PI_2 - 1e-3),
        RegionFamily::Stein | RegionFamily::RealAdapted => (1e-3, 16.0),
    };
    let a = lo + rng.gen::<f64>() * (hi - lo);
    let b = lo + rng.gen::<f64>() * (hi - lo);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CosineLawReport {
    pub trials: usize,
    pub identity_violations: usize,
    pub lower_violations: usize,
    /// Upper bound ratio ≤ 2/cos φ, checked under the corrected hypothesis
    /// |z − ξ| ≤ (3/2)·cos φ (the form the inclusion argument uses).
    pub upper_violations: usize,
    pub upper_checked: usize,
}

/// The law-of-cosines identity and the two-sided Stolz/angular comparison
/// at ξ = 1: with r = |1 − z| and φ = π − arg(z − 1),
///
/// * |z|² = 1 − 2·cos φ·r + r² (identity, 1e−12),
/// * 1/(2 cos φ) ≤ r/(1 − |z|²) for every z ∈ U,
/// * r/(1 − |z|²) ≤ 2/cos φ whenever r ≤ (3/2)·cos φ.
///
/// The upper bound needs the stronger hypothesis: inside the full unit disc
/// around ξ it admits counterexamples (see
/// [`literal_cosine_law_witness`]).
pub fn disc_cosine_law<R: Real>(trials: usize, seed: u64) -> CosineLawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut identity_violations = 0;
    let mut lower_violations = 0;
    let mut upper_violations = 0;
    let mut upper_checked = 0;
    for _ in 0..trials {
        let z = random_disc_point::<R>(&mut rng);
        let one = Complex::new(R::one(), R::zero());
        let diff = z - one;
        let r = diff.norm();
        if r == R::zero() {
            continue;
        }
        // cos φ with φ = π − arg(z−ξ): cos(π − arg) = −Re(diff)/|diff|.
        let cos_phi = -diff.re / r;
        let lhs = z.norm_sqr();
        let rhs = R::one() - R::of(2.0) * cos_phi * r + r * r;
        if (lhs - rhs).abs() > R::of(1e-12) {
            identity_violations += 1;
        }
        let one_minus = R::one() - z.norm_sqr();
        let ratio = r / one_minus;
        // Lower bound, multiplied out to avoid dividing by cos φ ≤ 0.
        if cos_phi > R::zero() && R::of(2.0) * ratio * cos_phi < R::one() - R::of(1e-12) {
            lower_violations += 1;
        }
        if cos_phi > R::zero() && r <= R::of(1.5) * cos_phi {
            upper_checked += 1;
            if ratio * cos_phi > R::of(2.0) + R::of(1e-9) {
                upper_violations += 1;
            }
        }
    }
    CosineLawReport {
        trials,
        identity_violations,
        lower_violations,
        upper_violations,
        upper_checked,
    }
}

/// A point of U ∩ {|z − 1| < 1} violating the upper bound with its literal
/// "unit disc around ξ" hypothesis: the bound genuinely needs
/// r ≤ (3/2)·cos φ. Returns (z, ratio, 2/cos φ).
pub fn literal_cosine_law_witness<R: Real>() -> (Complex<R>, R, R) {
    let z = Complex::new(R::of(0.9), R::of(0.4));
    let diff = z - Complex::new(R::one(), R::zero());
    let r = diff.norm();
    let cos_phi = -diff.re / r;
    let ratio = r / (R::one() - z.norm_sqr());
    (z, ratio, R::of(2.0) / cos_phi)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EquivalenceReport {
    pub alpha: f64,
    /// Largest sampled β with 𝒜_β ⊆ A_α.
    pub beta: f64,
    /// Smallest sampled γ with A_α ⊆ 𝒜_γ.
    pub gamma: f64,
    pub trials_per_probe: usize,
}

/// Empirical equivalence constants between the Stein regions 𝒜 and the
/// vertex-coordinate regions A at a common vertex: bisection on sampled
/// inclusion failures. The constants are measured, not derived.
pub fn equivalence_constants<R: Real>(
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport, RegionError> {
    let adapted = RegionSpec::new(RegionFamily::RealAdapted, R::of(alpha), xi.clone(), domain.clone())?;
    let scales = [1e-2, 1e-3, 1e-4];
    let per_probe = (trials / scales.len()).max(8);

    let stein_inside_adapted = |beta: f64, seed: u64| -> Result<bool, RegionError> {
        let stein = RegionSpec::new(RegionFamily::Stein, R::of(beta), xi.clone(), domain.clone())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for &d in &scales {
            let rep = match sample_region(&stein, R::of(d), per_probe, rng.gen()) {
                Ok(rep) => rep,
                Err(RegionError::SamplingFailed { .. }) => continue,
                Err(e) => return Err(e),
            };
            if rep.points.iter().any(|z| !adapted.contains(z)) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    // Grow beta until inclusion fails, then bisect.
    let (mut lo, mut hi) = (0.0f64, alpha.min(0.5));
    while stein_inside_adapted(hi, seed ^ 0x5151)? && hi < 64.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        if stein_inside_adapted(mid, seed ^ 0x5151)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let beta = lo;

    let adapted_inside_stein = |gamma: f64, seed: u64| -> Result<bool, RegionError> {
        let stein = RegionSpec::new(RegionFamily::Stein, R::of(gamma), xi.clone(), domain.clone())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for &d in &scales {
            let rep = match sample_region(&adapted, R::of(d), per_probe, rng.gen()) {
                Ok(rep) => rep,
                Err(RegionError::SamplingFailed { .. }) => continue,
                Err(e) => return Err(e),
            };
            if rep.points.iter().any(|z| !stein.contains(z)) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let (mut lo, mut hi) = (alpha.max(0.1), alpha.max(0.1) * 2.0);
    while !adapted_inside_stein(hi, seed ^ 0xa0a0)? && hi < 1024.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        if adapted_inside_stein(mid, seed ^ 0xa0a0)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let gamma = hi;

    Ok(EquivalenceReport {
        alpha,
        beta,
        gamma,
        trials_per_probe: per_probe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stolz_inside_angular_clean() {
        let rep = run_inclusion::<f64>(InclusionCheck::StolzInsideAngular { alpha: 2.0 }, 5_000, 1)
            .unwrap();
        assert!(rep.clean(), "witness: {:?}", rep.witness);
    }

    #[test]
    fn angular_cap_inside_stolz_clean() {
        let rep = run_inclusion::<f64>(
            InclusionCheck::AngularCapInsideStolz { theta: 1.0 },
            5_000,
            2,
        )
        .unwrap();
        assert!(rep.clean(), "witness: {:?}", rep.witness);
    }

    #[test]
    fn koranyi_monotone_clean() {
        let rep = run_inclusion::<f64>(
            InclusionCheck::ApertureMonotone {
                family: RegionFamily::BallKoranyi,
            },
            2_000,
            3,
        )
        .unwrap();
        assert!(rep.clean(), "witness: {:?}", rep.witness);
    }

    #[test]
    fn cosine_law_clean_and_literal_witness_fails() {
        let rep = disc_cosine_law::<f64>(10_000, 4);
        assert_eq!(rep.identity_violations, 0);
        assert_eq!(rep.lower_violations, 0);
        assert_eq!(rep.upper_violations, 0);
        assert!(rep.upper_checked > 100);

        let (z, ratio, bound) = literal_cosine_law_witness::<f64>();
        assert!((z - num_complex::Complex::new(1.0, 0.0)).norm() < 1.0);
        assert!(z.norm() < 1.0);
        assert!(ratio > bound, "the literal unit-disc hypothesis is too weak");
    }

    #[test]
    fn equivalence_constants_are_ordered() {
        let ball = crate::geometry::DomainModel::unit_ball(2);
        let xi = crate::CVec::new(vec![
            num_complex::Complex::new(1.0, 0.0),
            num_complex::Complex::new(0.0, 0.0),
        ]);
        let rep = equivalence_constants(&ball, &xi, 2.0, 60, 5).unwrap();
        assert!(rep.beta > 0.0);
        assert!(rep.gamma >= rep.alpha * 0.5);
    }
}
