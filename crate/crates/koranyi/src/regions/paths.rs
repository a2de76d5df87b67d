//! Approach paths: the inner normal ray, the tangential parabola sequence
//! z^j = (1 − 1/j, 1/√j), and seeded random in-region paths. Every emitted
//! point lies in the domain and the vertex distances halve from point to
//! point.
//!
//! Random paths are *self-similar*: a tangential direction, a parabolic
//! magnitude and a normal-plane tilt are drawn once from the seed and then
//! scaled toward the vertex, so function values along the path converge
//! whenever a regional limit exists. Fresh randomness at every scale would
//! keep the values fluctuating forever.

use super::spec::RegionSpec;
use super::RegionError;
use crate::geometry::{DomainModel, GeometryError};
use crate::{CVec, Complex, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// ξ − t·ν_ξ for 0 < t < chart radius.
pub fn normal_ray<R: Real>(
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    t: R,
) -> Result<CVec<R>, GeometryError> {
    let radius = domain.chart_radius();
    if !(t > R::zero() && t < radius) {
        return Err(GeometryError::RayParameter {
            t: t.to_f64_lossy(),
            max: radius.to_f64_lossy(),
        });
    }
    let nu = domain.outward_normal(xi)?;
    let z = xi.sub(&nu.scale_real(t));
    if !domain.contains(&z) {
        return Err(GeometryError::OutsideDomain(z.to_string()));
    }
    Ok(z)
}

/// The sequence z^j = (1 − 1/j, 1/√j) in B², defined for j ≥ 4.
///
/// |z^j|² = 1 − 1/j + 1/j² < 1, and z^j → (1, 0) tangentially to the
/// boundary: the points eventually enter every D_α with α > 2 but approach
/// no cone.
pub fn paper_parabola<R: Real>(j: u64) -> Result<CVec<R>, RegionError> {
    if j < 4 {
        return Err(RegionError::ParabolaIndex(j));
    }
    let jr = R::from_u64(j).expect("index fits the scalar type");
    let t = R::one() / jr;
    Ok(CVec::new(vec![
        Complex::new(R::one() - t, R::zero()),
        Complex::new(t.sqrt(), R::zero()),
    ]))
}

/// Frozen shape of a random self-similar path.
#[derive(Debug, Clone)]
struct RandomShape<R> {
    /// Unit tangential direction (dimension n, first entry zero).
    tau: CVec<R>,
    /// Parabolic tangential magnitude: |tangential part| = m·√t.
    m: R,
    /// Tilt inside the normal plane: y₁ = κ·t.
    kappa: R,
}

#[derive(Debug, Clone)]
pub enum PathKind {
    NormalRay,
    /// Chart-coordinate parabola (t, √t·e_dir): the z^j sequence generalized
    /// to any domain and tangential direction.
    PaperParabola { direction: usize },
    /// Seeded self-similar in-region path.
    RegionRandom { seed: u64 },
}

/// A path approaching the vertex with geometrically decreasing (ratio 1/2)
/// vertex distance.
#[derive(Debug, Clone)]
pub struct ApproachPath<R> {
    kind: PathKind,
    region: RegionSpec<R>,
    start_scale: R,
    shape: Option<RandomShape<R>>,
}

impl<R: Real> ApproachPath<R> {
    /// The inner normal ray of the region's vertex.
    pub fn normal_ray(region: &RegionSpec<R>) -> Self {
        let start = region.chart().radius() * R::of(0.5);
        ApproachPath {
            kind: PathKind::NormalRay,
            region: region.clone(),
            start_scale: start,
            shape: None,
        }
    }

    /// Tangential parabola along the `direction`-th complex tangent
    /// (1 ≤ direction < n).
    pub fn parabola(region: &RegionSpec<R>, direction: usize) -> Result<Self, RegionError> {
        let n = region.domain().dim();
        if direction == 0 || direction >= n {
            return Err(RegionError::PathExhausted(format!(
                "tangential direction {direction} out of range 1..{n}"
            )));
        }
        let start = region.chart().radius() * R::of(0.5);
        Ok(ApproachPath {
            kind: PathKind::PaperParabola { direction },
            region: region.clone(),
            start_scale: start,
            shape: None,
        })
    }

    /// Seeded self-similar in-region path: the shape is drawn once, then
    /// calibrated (by shrinking) until a scale sweep passes membership.
    pub fn region_random(region: &RegionSpec<R>, seed: u64) -> Result<Self, RegionError> {
        let n = region.domain().dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tau = CVec::zeros(n);
        if n > 1 {
            loop {
                for k in 1..n {
                    tau.entries_mut()[k] = Complex::new(
                        R::of(rng.gen::<f64>() * 2.0 - 1.0),
                        R::of(rng.gen::<f64>() * 2.0 - 1.0),
                    );
                }
                if tau.norm() > R::of(1e-3) {
                    break;
                }
            }
            tau = tau.normalized().expect("nonzero direction");
        }
        let aperture = region.aperture().to_f64_lossy();
        let m0 = (0.2 + 0.7 * rng.gen::<f64>()) * (2.0 * aperture.min(4.0)).sqrt();
        let kappa0 = (rng.gen::<f64>() * 2.0 - 1.0) * 0.5 * aperture.min(8.0);
        let start = region.chart().radius() * R::of(0.25);

        // Calibrate: shrink the shape until three reference scales pass.
        let mut m = R::of(m0);
        let mut kappa = R::of(kappa0);
        let mut calibrated = None;
        for _ in 0..24 {
            let shape = RandomShape {
                tau: tau.clone(),
                m,
                kappa,
            };
            let ok = [1.0, 2f64.powi(-10), 2f64.powi(-20)].iter().all(|&frac| {
                let s = start * R::of(frac);
                match random_point(region, &shape, s) {
                    Ok(z) => region.contains(&z),
                    Err(_) => false,
                }
            });
            if ok {
                calibrated = Some(shape);
                break;
            }
            m = m * R::of(0.7);
            kappa = kappa * R::of(0.7);
        }
        let shape = calibrated.ok_or_else(|| {
            RegionError::PathExhausted(format!(
                "could not calibrate a random path for {}",
                region.to_flag()
            ))
        })?;
        Ok(ApproachPath {
            kind: PathKind::RegionRandom { seed },
            region: region.clone(),
            start_scale: start,
            shape: Some(shape),
        })
    }

    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn region(&self) -> &RegionSpec<R> {
        &self.region
    }

    pub fn start_scale(&self) -> R {
        self.start_scale
    }

    pub fn label(&self) -> String {
        match &self.kind {
            PathKind::NormalRay => "normal_ray".into(),
            PathKind::PaperParabola { direction } => format!("paper_parabola[{direction}]"),
            PathKind::RegionRandom { seed } => format!("region_random[{seed}]"),
        }
    }

    /// Smallest vertex-distance scale before 1 − t loses too many bits.
    pub fn min_scale(&self) -> R {
        match self.kind {
            PathKind::NormalRay => R::of(1e-12),
            // t ≈ s² must stay well above ulp(1)
            PathKind::PaperParabola { .. } | PathKind::RegionRandom { .. } => R::of(3e-7),
        }
    }

    /// A point at vertex distance ≈ `s` (exact for ray and parabola).
    pub fn point_at_scale(&self, s: R) -> Result<CVec<R>, RegionError> {
        let chart = self.region.chart();
        let z = match &self.kind {
            PathKind::NormalRay => {
                let w = CVec::basis(chart.dim(), 0).scale_real(s);
                chart.from_chart(&w)
            }
            PathKind::PaperParabola { direction } => {
                // t solving t² + t = s², so |w| = s exactly; stable form of
                // (√(1+4s²) − 1)/2.
                let s2 = s * s;
                let t = R::of(2.0) * s2 / (R::one() + (R::one() + R::of(4.0) * s2).sqrt());
                let mut w = CVec::zeros(chart.dim());
                w.entries_mut()[0] = Complex::new(t, R::zero());
                w.entries_mut()[*direction] =
                    Complex::new((s2 - t * t).max(R::zero()).sqrt(), R::zero());
                chart.from_chart(&w)
            }
            PathKind::RegionRandom { .. } => {
                let shape = self.shape.as_ref().expect("random paths carry a shape");
                random_point(&self.region, shape, s)?
            }
        };
        if !self.region.domain().contains(&z) {
            return Err(RegionError::PathExitsDomain(s.to_f64_lossy()));
        }
        Ok(z)
    }

    /// Scale whose emitted point has boundary-surrogate depth ≈ `d`.
    pub fn scale_for_depth(&self, d: R) -> R {
        match &self.kind {
            PathKind::NormalRay => d,
            PathKind::PaperParabola { .. } => {
                // d(point(s)) ≈ t/2 with t ≈ s².
                (d * R::of(2.0)).sqrt()
            }
            PathKind::RegionRandom { .. } => (d * R::of(2.0)).sqrt(),
        }
    }

    /// True when the deeper half of the emitted points lies inside the
    /// region: the membership that matters for a regional limit.
    pub fn tail_in_region(&self, count: usize) -> Result<bool, RegionError> {
        let pts = self.emit(count)?;
        let tail = &pts[pts.len() / 2..];
        Ok(tail.iter().all(|z| self.region.contains(z)))
    }

    /// Emit up to `count` points; stops early at the representable floor.
    /// Guarantees strictly decreasing vertex distance.
    pub fn emit(&self, count: usize) -> Result<Vec<CVec<R>>, RegionError> {
        let floor = self.min_scale();
        let mut out = Vec::with_capacity(count);
        let mut s = self.start_scale;
        for _ in 0..count {
            if s < floor {
                break;
            }
            out.push(self.point_at_scale(s)?);
            s = s * R::of(0.5);
        }
        if out.len() < 2 {
            return Err(RegionError::PathExhausted(self.label()));
        }
        Ok(out)
    }
}

/// Self-similar in-region point: w = (t·(1 + iκ), m·√t·τ).
fn random_point<R: Real>(
    region: &RegionSpec<R>,
    shape: &RandomShape<R>,
    s: R,
) -> Result<CVec<R>, RegionError> {
    let chart = region.chart();
    let s2 = s * s;
    let t = R::of(2.0) * s2 / (R::one() + (R::one() + R::of(4.0) * s2).sqrt());
    let mut w = shape.tau.scale_real(shape.m * t.sqrt());
    w.entries_mut()[0] = Complex::new(t, shape.kappa * t);
    let z = chart.from_chart(&w);
    if !region.domain().contains(&z) {
        return Err(RegionError::PathExitsDomain(s.to_f64_lossy()));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::RegionFamily;
    use crate::C64;

    fn ball2() -> DomainModel<f64> {
        DomainModel::unit_ball(2)
    }

    fn e1() -> CVec<f64> {
        CVec::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
    }

    #[test]
    fn normal_ray_examples() {
        let z = normal_ray(&ball2(), &e1(), 0.25).unwrap();
        assert!(z.dist(&CVec::new(vec![C64::new(0.75, 0.0), C64::new(0.0, 0.0)])) < 1e-14);

        let disc = DomainModel::unit_ball(1);
        let xi = CVec::new(vec![C64::new(1.0, 0.0)]);
        let z = normal_ray(&disc, &xi, 0.1).unwrap();
        assert!((z[0] - C64::new(0.9, 0.0)).norm() < 1e-14);

        assert!(normal_ray(&ball2(), &e1(), 0.6).is_err());
        assert!(normal_ray(&ball2(), &e1(), 0.0).is_err());
    }

    #[test]
    fn normal_ray_stays_in_graph_domain() {
        let (psi, k) = crate::geometry::builtin_psi::<f64>("paraboloid", 3).unwrap();
        let dom = DomainModel::graph(2, psi, k).unwrap();
        let origin = CVec::new(vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
        for t in [0.01, 0.1, 0.4] {
            let z = normal_ray(&dom, &origin, t).unwrap();
            assert!(dom.contains(&z));
        }
    }

    #[test]
    fn parabola_exact_points() {
        let z4 = paper_parabola::<f64>(4).unwrap();
        assert_eq!(z4[0], C64::new(0.75, 0.0));
        assert_eq!(z4[1], C64::new(0.5, 0.0));
        let z100 = paper_parabola::<f64>(100).unwrap();
        assert!((z100[0] - C64::new(0.99, 0.0)).norm() < 1e-15);
        assert!((z100[1] - C64::new(0.1, 0.0)).norm() < 1e-15);
        assert!(paper_parabola::<f64>(3).is_err());
    }

    #[test]
    fn parabola_points_are_inside_the_ball() {
        for j in [4u64, 7, 100, 10_000, 1 << 20] {
            let z = paper_parabola::<f64>(j).unwrap();
            assert!(z.norm() < 1.0, "|z^{j}| = {}", z.norm());
        }
    }

    #[test]
    fn path_scales_halve_and_stay_inside() {
        let region = RegionSpec::new(RegionFamily::RealAdapted, 3.0, e1(), ball2()).unwrap();
        for path in [
            ApproachPath::normal_ray(&region),
            ApproachPath::parabola(&region, 1).unwrap(),
        ] {
            let pts = path.emit(16).unwrap();
            assert!(pts.len() >= 16);
            let mut prev = f64::INFINITY;
            for z in &pts {
                assert!(ball2().contains(z));
                let d = z.dist(&e1());
                assert!(d < prev);
                if prev.is_finite() {
                    assert!((d / prev - 0.5).abs() < 0.05, "ratio {}", d / prev);
                }
                prev = d;
            }
        }
    }

    #[test]
    fn parabola_path_matches_sequence_in_chart() {
        // The chart parabola at the e1 vertex of B² reproduces (1-t, √t).
        let region = RegionSpec::new(RegionFamily::RealAdapted, 3.0, e1(), ball2()).unwrap();
        let path = ApproachPath::parabola(&region, 1).unwrap();
        let z = path.point_at_scale(0.1).unwrap();
        let t = (1.0f64 + 4.0 * 0.01).sqrt().mul_add(0.5, -0.5);
        assert!((z[0].re - (1.0 - t)).abs() < 1e-12);
        assert!((z[1].re - (0.01 - t * t).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn random_path_is_deterministic_in_region_and_decreasing() {
        let region = RegionSpec::new(RegionFamily::RealAdapted, 3.0, e1(), ball2()).unwrap();
        let a = ApproachPath::region_random(&region, 42).unwrap().emit(20).unwrap();
        let b = ApproachPath::region_random(&region, 42).unwrap().emit(20).unwrap();
        assert_eq!(a, b);
        let c = ApproachPath::region_random(&region, 43).unwrap().emit(20).unwrap();
        assert_ne!(a, c, "different seeds give different shapes");
        let mut prev = f64::INFINITY;
        for z in &a {
            assert!(region.contains(z), "random path point must be in-region");
            let d = z.dist(&e1());
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn random_paths_work_on_the_disc_families() {
        let disc = DomainModel::unit_ball(1);
        let xi = CVec::new(vec![C64::new(1.0, 0.0)]);
        for family in [RegionFamily::DiscStolz, RegionFamily::DiscAngular] {
            let aperture = match family {
                RegionFamily::DiscAngular => 0.8,
                _ => 2.0,
            };
            let region = RegionSpec::new(family, aperture, xi.clone(), disc.clone()).unwrap();
            let pts = ApproachPath::region_random(&region, 7)
                .unwrap()
                .emit(12)
                .unwrap();
            for z in &pts {
                assert!(region.contains(z), "{family:?} point {z}");
            }
        }
    }

    #[test]
    fn scale_for_depth_inverts_approximately() {
        let region = RegionSpec::new(RegionFamily::RealAdapted, 3.0, e1(), ball2()).unwrap();
        let path = ApproachPath::parabola(&region, 1).unwrap();
        for d in [1e-3, 1e-5, 1e-7] {
            let s = path.scale_for_depth(d);
            let z = path.point_at_scale(s).unwrap();
            let actual = region.chart().d_of(&z).unwrap();
            assert!(
                (actual / d - 1.0).abs() < 0.2,
                "depth {d}: actual {actual}"
            );
        }
    }
}
