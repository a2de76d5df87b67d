//! Spherical derivatives and the anisotropic ∇-functional.
//!
//! The ∇-functional weights the normal derivative by d(z) and the
//! tangential ones by √d(z):
//!
//! ```text
//! (∇f)² = d²(z)·|∇₁f|² + d(z)·|∇_{2,n}f|²
//! ```
//!
//! `∇₁` is taken in the fixed vertex chart; the moving-frame variant (split
//! at the nearest boundary point of each sample) is comparable to it inside
//! any approach region, which [`splitting_equivalence_check`] measures.

use crate::expr::{EvalError, FnHandle};
use crate::geometry::{BoundaryFrame, DomainModel, GeometryError, VertexChart};
use crate::{CVec, Complex, Jet, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SphericalError {
    #[error("spherical derivative needs a function of one variable, got arity {0}")]
    NotOneVariable(usize),
    #[error("both f and 1/f break down at {0}")]
    EssentialPole(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Jet of f at z, falling back to the jet of 1/f at poles and at overflow
/// points (chordally invariant quantities cannot tell the difference). The
/// boolean is true when the reciprocal was used.
pub(crate) fn jet_or_reciprocal<R: Real>(
    f: &FnHandle<R>,
    z: &CVec<R>,
) -> Result<(Jet<R>, bool), SphericalError> {
    // Values past this magnitude would overflow |f|² and the weighted
    // gradient squares downstream; the reciprocal side of the sphere
    // computes the same chordal quantities safely.
    let huge = R::of(1e60);
    match f.eval_jet(z) {
        Ok(jet) if jet.value.norm() <= huge => Ok((jet, false)),
        Ok(_) | Err(EvalError::Pole { .. } | EvalError::NonFinite { .. }) => {
            match f.reciprocal().eval_jet(z) {
                Ok(jet) => Ok((jet, true)),
                Err(EvalError::Pole { .. } | EvalError::NonFinite { .. }) => {
                    Err(SphericalError::EssentialPole(z.to_string()))
                }
                Err(e) => Err(e.into()),
            }
        }
        Err(e) => Err(e.into()),
    }
}

/// |f′(z)| / (1 + |f(z)|²) for a function of one variable.
///
/// At a pole the value of the reciprocal's spherical derivative is returned;
/// the two agree identically away from poles and zeros (chordal invariance).
pub fn spherical_derivative_1d<R: Real>(
    f: &FnHandle<R>,
    z: Complex<R>,
) -> Result<R, SphericalError> {
    if f.arity() != 1 {
        return Err(SphericalError::NotOneVariable(f.arity()));
    }
    let point = CVec::new(vec![z]);
    let (jet, _) = jet_or_reciprocal(f, &point)?;
    Ok(jet.grad[0].norm() / (R::one() + jet.value.norm_sqr()))
}

/// Normal and tangential magnitudes of a gradient in a boundary frame.
pub fn directional_split<R: Real>(grad: &CVec<R>, frame: &BoundaryFrame<R>) -> (R, R) {
    let rotated = frame.apply_transpose(grad);
    let normal = rotated[0].norm();
    let mut tang_sq = R::zero();
    for k in 1..rotated.dim() {
        tang_sq = tang_sq + rotated[k].norm_sqr();
    }
    (normal, tang_sq.sqrt())
}

/// Directional spherical derivative at z, split in the frame adapted to the
/// nearest boundary point ζ(z).
#[derive(Debug, Clone)]
pub struct DirectionalSpherical<R> {
    pub normal: R,
    pub tangential: R,
    pub at: CVec<R>,
    pub frame: BoundaryFrame<R>,
}

pub fn directional_spherical<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    z: &CVec<R>,
) -> Result<DirectionalSpherical<R>, SphericalError> {
    let (xi, _delta) = domain.nearest_boundary_point(z)?;
    let frame = domain.boundary_frame(&xi)?;
    let (jet, _) = jet_or_reciprocal(f, z)?;
    let denom = R::one() + jet.value.norm_sqr();
    let (n, t) = directional_split(&jet.grad, &frame);
    Ok(DirectionalSpherical {
        normal: n / denom,
        tangential: t / denom,
        at: z.clone(),
        frame,
    })
}

/// √(d²·normal² + d·tangential²).
pub fn nabla_from_parts<R: Real>(d: R, normal: R, tangential: R) -> R {
    (d * d * normal * normal + d * tangential * tangential).sqrt()
}

/// The raw ∇-functional √(d²(z)|∇₁f|² + d(z)|∇_{2,n}f|²) in the vertex
/// chart at ξ.
pub fn nabla_functional<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    z: &CVec<R>,
) -> Result<R, SphericalError> {
    let chart = domain.vertex_chart(xi)?;
    nabla_in_chart(f, &chart, z).map(|(raw, _)| raw)
}

/// The Theorem-style criterion quantity (1 + |f(z)|²)^{-1}·∇f(z).
/// Chordally invariant: poles of f are evaluated through 1/f.
pub fn criterion_quantity<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    z: &CVec<R>,
) -> Result<R, SphericalError> {
    let chart = domain.vertex_chart(xi)?;
    criterion_quantity_in_chart(f, &chart, z)
}

pub(crate) fn criterion_quantity_in_chart<R: Real>(
    f: &FnHandle<R>,
    chart: &VertexChart<R>,
    z: &CVec<R>,
) -> Result<R, SphericalError> {
    let (raw, denom) = nabla_in_chart(f, chart, z)?;
    Ok(raw / denom)
}

fn nabla_in_chart<R: Real>(
    f: &FnHandle<R>,
    chart: &VertexChart<R>,
    z: &CVec<R>,
) -> Result<(R, R), SphericalError> {
    let d = chart.d_of(z)?;
    let (jet, _) = jet_or_reciprocal(f, z)?;
    let g = chart.grad_to_chart(&jet.grad);
    let normal = g[0].norm();
    let mut tang_sq = R::zero();
    for k in 1..g.dim() {
        tang_sq = tang_sq + g[k].norm_sqr();
    }
    let raw = (d * d * normal * normal + d * tang_sq).sqrt();
    Ok((raw, R::one() + jet.value.norm_sqr()))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SplittingReport {
    pub samples: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

/// Ratio of the vertex-chart ∇-functional to the moving-frame one at each
/// sample. Equal frames give ratio 1 exactly; inside an approach region the
/// ratios stay in a fixed positive interval.
pub fn splitting_equivalence_check<R: Real>(
    f: &FnHandle<R>,
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    samples: &[CVec<R>],
) -> Result<SplittingReport, SphericalError> {
    let chart = domain.vertex_chart(xi)?;
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = 0.0f64;
    let mut used = 0usize;
    for z in samples {
        let d = chart.d_of(z)?;
        let (jet, _) = jet_or_reciprocal(f, z)?;
        let fixed = {
            let g = chart.grad_to_chart(&jet.grad);
            let mut tang_sq = R::zero();
            for k in 1..g.dim() {
                tang_sq = tang_sq + g[k].norm_sqr();
            }
            nabla_from_parts(d, g[0].norm(), tang_sq.sqrt())
        };
        let moving = {
            let (bxi, _) = domain.nearest_boundary_point(z)?;
            let frame = domain.boundary_frame(&bxi)?;
            let (n, t) = directional_split(&jet.grad, &frame);
            nabla_from_parts(d, n, t)
        };
        if moving == R::zero() && fixed == R::zero() {
            continue;
        }
        if moving == R::zero() {
            return Err(SphericalError::EssentialPole(format!(
                "degenerate splitting ratio at {z}"
            )));
        }
        let ratio = (fixed / moving).to_f64_lossy();
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
        used += 1;
    }
    Ok(SplittingReport {
        samples: used,
        min_ratio,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{catalog, parse};
    use crate::C64;

    fn handle(src: &str, n: usize) -> FnHandle<f64> {
        FnHandle::new(parse(src, n).unwrap(), n).unwrap()
    }

    fn pt(entries: &[(f64, f64)]) -> CVec<f64> {
        CVec::new(entries.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }

    #[test]
    fn identity_at_zero() {
        let f = handle("z1", 1);
        let s = spherical_derivative_1d(&f, C64::new(0.0, 0.0)).unwrap();
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constant_is_flat() {
        let f = handle("5", 1);
        let s = spherical_derivative_1d(&f, C64::new(0.3, 0.1)).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn inv_normal_at_09() {
        // |f'| = 100, |f| = 10: 100/101.
        let f = handle("1/(1-z1)", 1);
        let s = spherical_derivative_1d(&f, C64::new(0.9, 0.0)).unwrap();
        assert!((s - 100.0 / 101.0).abs() < 1e-12);
    }

    #[test]
    fn pole_goes_through_reciprocal() {
        let f = handle("1/(1-z1)", 1);
        let s = spherical_derivative_1d(&f, C64::new(1.0, 0.0)).unwrap();
        // 1/f = 1-z has |g'| = 1, |g| = 0 there.
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chordal_invariance_under_reciprocal() {
        let f = handle("1/(1-z1)", 1);
        let g = f.reciprocal();
        for z in [
            C64::new(0.5, 0.1),
            C64::new(-0.3, 0.4),
            C64::new(0.9, -0.2),
        ] {
            let a = spherical_derivative_1d(&f, z).unwrap();
            let b = spherical_derivative_1d(&g, z).unwrap();
            assert!((a - b).abs() < 1e-9 * a.max(1.0), "at {z}: {a} vs {b}");
        }
    }

    #[test]
    fn directional_on_the_normal_ray() {
        // Gradient vanishes identically on z2 = 0 for the counterexample.
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let ball = DomainModel::unit_ball(2);
        let z = pt(&[(0.9, 0.0), (0.0, 0.0)]);
        let ds = directional_spherical(&f, &ball, &z).unwrap();
        assert_eq!(ds.normal, 0.0);
        assert_eq!(ds.tangential, 0.0);
    }

    #[test]
    fn directional_constant_is_zero() {
        let f = catalog::<f64>("constant(3)").unwrap().with_arity(2).unwrap();
        let ball = DomainModel::unit_ball(2);
        let z = pt(&[(0.7, 0.1), (0.1, 0.0)]);
        let ds = directional_spherical(&f, &ball, &z).unwrap();
        assert_eq!((ds.normal, ds.tangential), (0.0, 0.0));
    }

    #[test]
    fn directional_at_parabola_point_grows_like_sqrt_j() {
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let ball = DomainModel::unit_ball(2);
        for j in [100u64, 10_000] {
            let z = crate::regions::paper_parabola::<f64>(j).unwrap();
            let ds = directional_spherical(&f, &ball, &z).unwrap();
            let sqrt_j = (j as f64).sqrt();
            // |f| = 1 and the frame mixes ∂₁f = j into the tangential slot;
            // the value lands at √j/2 up to O(1/√j).
            assert!(
                (ds.tangential / sqrt_j - 0.5).abs() < 0.2,
                "j = {j}: tangential {} vs √j {}",
                ds.tangential,
                sqrt_j
            );
        }
    }

    #[test]
    fn criterion_quantity_along_parabola_is_three_quarters() {
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        for j in [100u64, 1_000, 100_000] {
            let z = crate::regions::paper_parabola::<f64>(j).unwrap();
            let q = criterion_quantity(&f, &ball, &xi, &z).unwrap();
            // d ≈ 1/(2j), |∂₁f| = j, |∂₂f| = 2√j, 1+|f|² = 2:
            // √(1/4 + 2)/2 = 0.75.
            assert!((q - 0.75).abs() < 0.05, "j = {j}: {q}");
        }
    }

    #[test]
    fn nabla_constant_is_zero() {
        let f = catalog::<f64>("constant(2)").unwrap().with_arity(2).unwrap();
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let z = pt(&[(0.9, 0.0), (0.1, 0.0)]);
        assert_eq!(nabla_functional(&f, &ball, &xi, &z).unwrap(), 0.0);
    }

    #[test]
    fn splitting_ratio_is_one_on_the_normal_ray() {
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        // Slightly off-axis tangentially so gradients don't vanish, but still
        // on the normal in the first coordinate.
        let samples: Vec<_> = [0.9, 0.95, 0.99]
            .iter()
            .map(|&t| pt(&[(t, 0.0), (0.02, 0.0)]))
            .collect();
        let rep = splitting_equivalence_check(&f, &ball, &xi, &samples).unwrap();
        // Frames at ζ(z) differ slightly from the vertex frame here, so the
        // ratio is near but not exactly 1.
        assert!(rep.min_ratio > 0.8 && rep.max_ratio < 1.25, "{rep:?}");
    }

    #[test]
    fn splitting_exact_on_axis() {
        // On the exact normal ray ζ(z) = ξ: identical frames, ratio 1.
        let f = handle("z1+z2^2", 2);
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let samples: Vec<_> = [0.9, 0.99].iter().map(|&t| pt(&[(t, 0.0), (0.0, 0.0)])).collect();
        let rep = splitting_equivalence_check(&f, &ball, &xi, &samples).unwrap();
        assert!((rep.min_ratio - 1.0).abs() < 1e-12);
        assert!((rep.max_ratio - 1.0).abs() < 1e-12);
    }
}
