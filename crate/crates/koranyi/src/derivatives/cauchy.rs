//! One-variable Cauchy estimates over anisotropic polydiscs in the ball:
//!
//! ```text
//! |∂f/∂z̃₁(z)|  ≤ sup_{P_c(z)} |f| / (c·(1−|z|))
//! |∂f/∂z̃_μ(z)| ≤ sup_{P_c(z)} |f| / (c·√(1−|z|))
//! ```
//!
//! where P_c(z) has radius c(1−|z|) along the complex normal at ζ(z) and
//! c√(1−|z|) along the complex tangents. The sup is estimated by sampling
//! the distinguished torus, which under-estimates it: the reported slack is
//! conservative in the direction that validates the inequality.

use super::spherical::SphericalError;
use crate::expr::FnHandle;
use crate::geometry::{DomainModel, GeometryError};
use crate::{CVec, Complex, Real};

#[derive(Debug, Clone, serde::Serialize)]
pub struct CauchyReport {
    pub c: f64,
    pub sup_sampled: f64,
    pub lhs_normal: f64,
    pub rhs_normal: f64,
    pub lhs_tangential: Vec<f64>,
    pub rhs_tangential: f64,
    pub grid_per_angle: usize,
}

impl CauchyReport {
    /// Both inequalities up to a relative tolerance (sampling slack).
    pub fn holds(&self, tol: f64) -> bool {
        let ok = |lhs: f64, rhs: f64| lhs <= rhs * (1.0 + tol) + tol;
        ok(self.lhs_normal, self.rhs_normal)
            && self
                .lhs_tangential
                .iter()
                .all(|&lhs| ok(lhs, self.rhs_tangential))
    }
}

/// Check the Cauchy estimates at z ∈ Bⁿ for polydisc parameter c.
///
/// Errors if the polydisc is not verifiably inside the ball.
pub fn cauchy_estimate_check<R: Real>(
    f: &FnHandle<R>,
    z: &CVec<R>,
    c: R,
) -> Result<CauchyReport, SphericalError> {
    let n = z.dim();
    let ball = DomainModel::unit_ball(n);
    if !ball.contains(z) {
        return Err(GeometryError::OutsideDomain(z.to_string()).into());
    }
    let (xi, delta) = ball.nearest_boundary_point(z)?;
    let frame = ball.boundary_frame(&xi)?;
    let r_normal = c * delta;
    let r_tangential = c * delta.sqrt();
    let mut radii = vec![r_normal];
    radii.extend(std::iter::repeat_n(r_tangential, n - 1));

    // Containment: |z| + ‖radii‖₂ < 1 is rigorous; otherwise scan the
    // distinguished torus (the extreme points of the polydisc).
    let radius_norm = radii
        .iter()
        .fold(R::zero(), |acc, &r| acc + r * r)
        .sqrt();
    let grid_per_angle = 64usize;
    if z.norm() + radius_norm >= R::one() {
        let mut max_norm = R::zero();
        for_each_torus_point(&radii, grid_per_angle, |w| {
            let p = ambient_point(z, &frame, w);
            max_norm = max_norm.max(p.norm());
        });
        if max_norm >= R::one() - R::of(1e-9) {
            return Err(GeometryError::OutsideDomain(format!(
                "polydisc P_{}({z}) reaches |w| = {max_norm}",
                c.to_f64_lossy()
            ))
            .into());
        }
    }

    let mut sup = R::zero();
    let mut failure: Option<SphericalError> = None;
    for_each_torus_point(&radii, grid_per_angle, |w| {
        if failure.is_some() {
            return;
        }
        let p = ambient_point(z, &frame, w);
        match f.eval_value(&p) {
            Ok(v) => sup = sup.max(v.norm()),
            Err(e) => failure = Some(e.into()),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }

    let jet = f.eval_jet(z)?;
    let rotated = frame.apply_transpose(&jet.grad);
    let lhs_normal = rotated[0].norm();
    let lhs_tangential: Vec<f64> = (1..n).map(|k| rotated[k].norm().to_f64_lossy()).collect();

    Ok(CauchyReport {
        c: c.to_f64_lossy(),
        sup_sampled: sup.to_f64_lossy(),
        lhs_normal: lhs_normal.to_f64_lossy(),
        rhs_normal: (sup / r_normal).to_f64_lossy(),
        lhs_tangential,
        rhs_tangential: (sup / r_tangential).to_f64_lossy(),
        grid_per_angle,
    })
}

fn ambient_point<R: Real>(
    z: &CVec<R>,
    frame: &crate::geometry::BoundaryFrame<R>,
    w: &CVec<R>,
) -> CVec<R> {
    z.add(&frame.apply(w))
}

/// Visit the distinguished torus |w_j| = r_j on a per-angle grid.
#[allow(clippy::needless_range_loop)]
fn for_each_torus_point<R: Real>(radii: &[R], per_angle: usize, mut visit: impl FnMut(&CVec<R>)) {
    let n = radii.len();
    let total = per_angle.pow(n as u32);
    let two_pi = R::PI() * R::of(2.0);
    let per = R::from_usize(per_angle).expect("grid size");
    let mut w = CVec::zeros(n);
    for idx in 0..total {
        let mut rest = idx;
        for j in 0..n {
            let step = rest % per_angle;
            rest /= per_angle;
            let angle = two_pi * R::from_usize(step).expect("step") / per;
            w.entries_mut()[j] = Complex::new(radii[j] * angle.cos(), radii[j] * angle.sin());
        }
        visit(&w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{catalog, parse};

    fn pt(entries: &[(f64, f64)]) -> CVec<f64> {
        CVec::new(
            entries
                .iter()
                .map(|&(re, im)| Complex::new(re, im))
                .collect(),
        )
    }

    #[test]
    fn constant_is_trivial() {
        let f = catalog::<f64>("constant(4)").unwrap().with_arity(2).unwrap();
        let rep = cauchy_estimate_check(&f, &pt(&[(0.9, 0.0), (0.0, 0.0)]), 0.1).unwrap();
        assert_eq!(rep.lhs_normal, 0.0);
        assert!(rep.holds(1e-6));
    }

    #[test]
    fn counterexample_at_09() {
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let rep = cauchy_estimate_check(&f, &pt(&[(0.9, 0.0), (0.0, 0.0)]), 0.1).unwrap();
        assert!(rep.holds(1e-6), "{rep:?}");
        assert!(rep.rhs_normal > rep.lhs_normal);
    }

    #[test]
    fn coordinate_function_has_unit_derivative() {
        let f = FnHandle::new(parse("z1", 2).unwrap(), 2).unwrap();
        let rep = cauchy_estimate_check(&f, &pt(&[(0.9, 0.0), (0.0, 0.0)]), 0.1).unwrap();
        assert!((rep.lhs_normal - 1.0).abs() < 1e-12);
        assert!(rep.rhs_normal >= 1.0 - 1e-9);
        assert!(rep.holds(1e-6));
    }

    #[test]
    fn exploding_polydisc_is_rejected() {
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let err = cauchy_estimate_check(&f, &pt(&[(0.9, 0.0), (0.0, 0.0)]), 5.0);
        assert!(err.is_err());
    }
}
