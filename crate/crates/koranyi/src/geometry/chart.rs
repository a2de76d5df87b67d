//! Vertex charts: unitary coordinates at a boundary point ξ in which the
//! inner normal is the positive x₁ direction and the boundary is locally the
//! graph x₁ = ψ(ζ), ζ = (y₁, x₂, y₂, …, xₙ, yₙ).

use super::frame::BoundaryFrame;
use super::psi::{split_real, PsiMap};
use super::GeometryError;
use crate::{CVec, Real};

/// Real coordinates (x₁, ζ) of a chart point.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCoords<R> {
    pub x1: R,
    pub zeta: Vec<R>,
}

impl<R: Real> RealCoords<R> {
    pub fn of(w: &CVec<R>) -> Self {
        let (x1, zeta) = split_real(w);
        RealCoords { x1, zeta }
    }

    pub fn to_cvec(&self) -> CVec<R> {
        super::psi::join_real(self.x1, &self.zeta)
    }
}

/// Graph function seen by a chart.
#[derive(Debug, Clone)]
pub enum ChartPsi<R> {
    /// The sphere as a graph: ψ(ζ) = 1 − √(1 − |ζ|²).
    Ball,
    /// A graph domain's own ψ (vertex at the origin).
    Graph(PsiMap<R>),
}

impl<R: Real> ChartPsi<R> {
    pub fn value(&self, zeta: &[R]) -> R {
        match self {
            ChartPsi::Ball => {
                let s = zeta.iter().fold(R::zero(), |a, &x| a + x * x);
                R::one() - (R::one() - s).max(R::zero()).sqrt()
            }
            ChartPsi::Graph(psi) => psi.value(zeta),
        }
    }
}

/// Chart data at a vertex ξ: w = W*(z − ξ) where W is unitary with first
/// column the *inner* normal. `from_chart(t·e₁)` walks down the inner
/// normal; depth into the domain is x₁ = Re w₁.
#[derive(Debug, Clone)]
pub struct VertexChart<R> {
    frame: BoundaryFrame<R>,
    psi: ChartPsi<R>,
    radius: R,
}

impl<R: Real> VertexChart<R> {
    pub fn new(frame: BoundaryFrame<R>, psi: ChartPsi<R>, radius: R) -> Self {
        VertexChart { frame, psi, radius }
    }

    pub fn vertex(&self) -> &CVec<R> {
        self.frame.vertex()
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// The outward-normal frame the chart is built on.
    pub fn frame(&self) -> &BoundaryFrame<R> {
        &self.frame
    }

    /// Chart validity radius 0.5/K.
    pub fn radius(&self) -> R {
        self.radius
    }

    pub fn psi(&self) -> &ChartPsi<R> {
        &self.psi
    }

    pub fn to_chart(&self, z: &CVec<R>) -> CVec<R> {
        let mut w = self.frame.apply_adjoint(&z.sub(self.frame.vertex()));
        w.entries_mut()[0] = -w.entries()[0];
        w
    }

    pub fn from_chart(&self, w: &CVec<R>) -> CVec<R> {
        let mut v = w.clone();
        v.entries_mut()[0] = -v.entries()[0];
        self.frame.vertex().add(&self.frame.apply(&v))
    }

    /// Holomorphic gradient of f∘(chart⁻¹) from the ambient gradient.
    pub fn grad_to_chart(&self, grad: &CVec<R>) -> CVec<R> {
        let mut g = self.frame.apply_transpose(grad);
        g.entries_mut()[0] = -g.entries()[0];
        g
    }

    pub fn in_chart(&self, w: &CVec<R>) -> bool {
        w.norm() < self.radius
    }

    fn require_in_chart(&self, w: &CVec<R>) -> Result<(), GeometryError> {
        if !self.in_chart(w) {
            return Err(GeometryError::OutsideChart {
                norm: w.norm().to_f64_lossy(),
                radius: self.radius.to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// d(z) = min(x₁, x₁ − ψ(ζ)) at a chart point. Positive exactly when the
    /// point lies in the domain side of both the tangent plane and the graph.
    pub fn d_of_chart(&self, w: &CVec<R>) -> Result<R, GeometryError> {
        self.require_in_chart(w)?;
        let rc = RealCoords::of(w);
        Ok(rc.x1.min(rc.x1 - self.psi.value(&rc.zeta)))
    }

    /// d(z) for an ambient point.
    pub fn d_of(&self, z: &CVec<R>) -> Result<R, GeometryError> {
        self.d_of_chart(&self.to_chart(z))
    }

    /// Chart coordinates of π(z) = (w₁, 0, …, 0).
    pub fn project_normal_chart(&self, w: &CVec<R>) -> CVec<R> {
        let mut p = CVec::zeros(w.dim());
        p.entries_mut()[0] = w[0];
        p
    }
}

#[cfg(test)]
mod tests {
    use super::super::domain::DomainModel;
    use super::*;
    use crate::{C64, CVec64};

    fn pt(entries: &[(f64, f64)]) -> CVec64 {
        CVec::new(entries.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }

    #[test]
    fn chart_at_e1_flips_depth() {
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let chart = ball.vertex_chart(&xi).unwrap();
        let z = pt(&[(0.9, 0.0), (0.0, 0.0)]);
        let w = chart.to_chart(&z);
        assert!(w.dist(&pt(&[(0.1, 0.0), (0.0, 0.0)])) < 1e-14);
        assert!(chart.from_chart(&w).dist(&z) < 1e-14);
    }

    #[test]
    fn ball_d_matches_one_minus_norm_on_normal() {
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let chart = ball.vertex_chart(&xi).unwrap();
        let z = pt(&[(0.9, 0.0), (0.0, 0.0)]);
        let d = chart.d_of(&z).unwrap();
        assert!((d - 0.1).abs() < 1e-9);
    }

    #[test]
    fn flat_model_d_is_height() {
        let (psi, k) = super::super::psi::builtin_psi::<f64>("flat", 3).unwrap();
        let dom = DomainModel::graph(2, psi, k).unwrap();
        let origin = pt(&[(0.0, 0.0), (0.0, 0.0)]);
        let chart = dom.vertex_chart(&origin).unwrap();
        let z = pt(&[(0.2, 0.1), (0.05, -0.1)]);
        let w = chart.to_chart(&z);
        assert!(w.dist(&z) < 1e-12, "flat chart at origin is the identity");
        assert!((chart.d_of(&z).unwrap() - 0.2).abs() < 1e-13);
    }

    #[test]
    fn paraboloid_d_takes_the_min() {
        let psi = PsiMap::poly("(z1^2+z2^2+z3^2)/4", 3).unwrap();
        let dom = DomainModel::graph(2, psi, 0.5).unwrap();
        let origin = pt(&[(0.0, 0.0), (0.0, 0.0)]);
        let chart = dom.vertex_chart(&origin).unwrap();
        // x1 = 0.2, |zeta|^2 = 0.4 -> psi = 0.1 -> d = min(0.2, 0.1) = 0.1
        let zeta = (0.4f64 / 3.0).sqrt();
        let z = pt(&[(0.2, zeta), (zeta, zeta)]);
        let d = chart.d_of(&z).unwrap();
        assert!((d - 0.1).abs() < 1e-12, "got {d}");
    }

    #[test]
    fn outside_chart_radius_errors() {
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let chart = ball.vertex_chart(&xi).unwrap();
        let z = pt(&[(0.2, 0.0), (0.0, 0.0)]); // |w| = 0.8 > 0.5
        assert!(matches!(
            chart.d_of(&z),
            Err(GeometryError::OutsideChart { .. })
        ));
    }

    #[test]
    fn real_coords_round_trip() {
        let w = pt(&[(0.1, -0.2), (0.3, 0.4)]);
        let rc = RealCoords::of(&w);
        assert_eq!(rc.x1, 0.1);
        assert_eq!(rc.zeta, vec![-0.2, 0.3, 0.4]);
        assert_eq!(rc.to_cvec(), w);
    }

    #[test]
    fn ball_chart_depth_equals_one_minus_norm_to_first_order() {
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let chart = ball.vertex_chart(&xi).unwrap();
        // Off-normal point: d(z) is within O(|w|²) of 1 − |z| but not equal.
        let z = pt(&[(0.9, 0.0), (0.1, 0.0)]);
        let d = chart.d_of(&z).unwrap();
        let delta = 1.0 - z.norm();
        assert!((d - delta).abs() < 0.01);
    }
}
