//! Domain models: the unit ball and local graph domains x₁ > ψ(ζ).

use super::chart::{ChartPsi, VertexChart};
use super::frame::BoundaryFrame;
use super::psi::{join_real, split_real, PsiMap};
use super::GeometryError;
use crate::{CVec, Complex, Real};

/// A bounded domain given as the unit ball or a local graph x₁ > ψ(ζ) with
/// ψ(0) = 0, ∇ψ(0) = 0 and curvature bound K.
#[derive(Debug, Clone)]
pub enum DomainModel<R> {
    UnitBall { dim: usize },
    Graph(GraphDomain<R>),
}

#[derive(Debug, Clone)]
pub struct GraphDomain<R> {
    dim: usize,
    psi: PsiMap<R>,
    curvature: R,
}

impl<R: Real> GraphDomain<R> {
    pub fn new(dim: usize, psi: PsiMap<R>, curvature: R) -> Result<Self, GeometryError> {
        if psi.vars() != 2 * dim - 1 {
            return Err(GeometryError::Dimension {
                expected: 2 * dim - 1,
                got: psi.vars(),
            });
        }
        if curvature <= R::zero() || !curvature.is_finite() {
            return Err(GeometryError::InvalidPsi(
                "curvature bound must be positive and finite".into(),
            ));
        }
        let origin = vec![R::zero(); psi.vars()];
        let tol = R::of(1e-10);
        if psi.value(&origin).abs() > tol {
            return Err(GeometryError::InvalidPsi("psi(0) != 0".into()));
        }
        let g = psi.gradient(&origin);
        let gnorm = g.iter().fold(R::zero(), |a, &x| a + x * x).sqrt();
        if gnorm > tol {
            return Err(GeometryError::InvalidPsi("grad psi(0) != 0".into()));
        }
        Ok(GraphDomain {
            dim,
            psi,
            curvature,
        })
    }

    pub fn psi(&self) -> &PsiMap<R> {
        &self.psi
    }

    pub fn curvature(&self) -> R {
        self.curvature
    }
}

impl<R: Real> DomainModel<R> {
    pub fn unit_ball(dim: usize) -> Self {
        assert!(dim >= 1);
        DomainModel::UnitBall { dim }
    }

    pub fn graph(dim: usize, psi: PsiMap<R>, curvature: R) -> Result<Self, GeometryError> {
        Ok(DomainModel::Graph(GraphDomain::new(dim, psi, curvature)?))
    }

    /// Complex dimension n.
    pub fn dim(&self) -> usize {
        match self {
            DomainModel::UnitBall { dim } => *dim,
            DomainModel::Graph(g) => g.dim,
        }
    }

    /// Curvature bound used to fix the chart validity radius 0.5/K.
    pub fn curvature_bound(&self) -> R {
        match self {
            // Principal curvatures of the unit sphere are exactly 1.
            DomainModel::UnitBall { .. } => R::one(),
            DomainModel::Graph(g) => g.curvature,
        }
    }

    pub fn chart_radius(&self) -> R {
        R::of(0.5) / self.curvature_bound()
    }

    pub fn contains(&self, z: &CVec<R>) -> bool {
        if z.dim() != self.dim() {
            return false;
        }
        match self {
            DomainModel::UnitBall { .. } => z.norm_sqr() < R::one(),
            DomainModel::Graph(g) => {
                let (x1, zeta) = split_real(z);
                x1 > g.psi.value(&zeta)
            }
        }
    }

    fn check_dim(&self, z: &CVec<R>) -> Result<(), GeometryError> {
        if z.dim() != self.dim() {
            return Err(GeometryError::Dimension {
                expected: self.dim(),
                got: z.dim(),
            });
        }
        Ok(())
    }

    /// Euclidean distance from an interior point to the boundary.
    pub fn boundary_distance(&self, z: &CVec<R>) -> Result<R, GeometryError> {
        self.check_dim(z)?;
        if !self.contains(z) {
            return Err(GeometryError::OutsideDomain(z.to_string()));
        }
        match self {
            DomainModel::UnitBall { .. } => Ok(R::one() - z.norm()),
            DomainModel::Graph(_) => Ok(self.nearest_boundary_point(z)?.1),
        }
    }

    /// The boundary point closest to `z` and its distance δ(z).
    ///
    /// Ball: the radial projection z/|z| (undefined at the center). Graph:
    /// damped Newton on the first-order optimality system, initialized from
    /// the vertical drop, with a steepest-descent fallback.
    pub fn nearest_boundary_point(&self, z: &CVec<R>) -> Result<(CVec<R>, R), GeometryError> {
        self.check_dim(z)?;
        if !self.contains(z) {
            return Err(GeometryError::OutsideDomain(z.to_string()));
        }
        match self {
            DomainModel::UnitBall { .. } => {
                let n = z.norm();
                if n == R::zero() {
                    return Err(GeometryError::CenterSingularity);
                }
                let xi = z.scale_real(R::one() / n);
                Ok((xi, R::one() - n))
            }
            DomainModel::Graph(g) => project_to_graph(g, z),
        }
    }

    /// True when ξ lies on ∂D (up to 1e−9).
    pub fn on_boundary(&self, xi: &CVec<R>) -> bool {
        if xi.dim() != self.dim() {
            return false;
        }
        let tol = R::of(1e-9);
        match self {
            DomainModel::UnitBall { .. } => (xi.norm() - R::one()).abs() < tol,
            DomainModel::Graph(g) => {
                let (x1, zeta) = split_real(xi);
                (x1 - g.psi.value(&zeta)).abs() < tol
            }
        }
    }

    /// Unit outward normal at a boundary point.
    pub fn outward_normal(&self, xi: &CVec<R>) -> Result<CVec<R>, GeometryError> {
        self.check_dim(xi)?;
        if !self.on_boundary(xi) {
            return Err(GeometryError::NotOnBoundary(xi.to_string()));
        }
        match self {
            DomainModel::UnitBall { .. } => Ok(xi
                .normalized()
                .ok_or(GeometryError::DegenerateNormal(0.0))?),
            DomainModel::Graph(g) => {
                // Defining function rho = psi(zeta) - x1 (negative inside);
                // the real gradient packaged as a complex vector.
                let (_, zeta) = split_real(xi);
                let grad = g.psi.gradient(&zeta);
                let mut entries = Vec::with_capacity(g.dim);
                entries.push(Complex::new(-R::one(), grad[0]));
                for k in 0..g.dim - 1 {
                    entries.push(Complex::new(grad[1 + 2 * k], grad[2 + 2 * k]));
                }
                let nu = CVec::new(entries);
                let norm = nu.norm();
                if norm < R::of(1e-12) {
                    return Err(GeometryError::DegenerateNormal(norm.to_f64_lossy()));
                }
                Ok(nu.scale_real(R::one() / norm))
            }
        }
    }

    /// Deterministic unitary frame at ξ whose first column is the outward
    /// complex normal; the remaining columns span T^c_ξ.
    pub fn boundary_frame(&self, xi: &CVec<R>) -> Result<BoundaryFrame<R>, GeometryError> {
        let nu = self.outward_normal(xi)?;
        Ok(BoundaryFrame::from_normal(xi.clone(), nu))
    }

    /// Chart at a vertex: unitary coordinates in which the inner normal is
    /// the positive x₁ axis and ∂D is the graph x₁ = ψ_ξ(ζ).
    pub fn vertex_chart(&self, xi: &CVec<R>) -> Result<VertexChart<R>, GeometryError> {
        let frame = self.boundary_frame(xi)?;
        let psi = match self {
            DomainModel::UnitBall { .. } => ChartPsi::Ball,
            DomainModel::Graph(g) => {
                if xi.norm() > R::of(1e-9) {
                    return Err(GeometryError::UnsupportedVertex(xi.to_string()));
                }
                ChartPsi::Graph(g.psi.clone())
            }
        };
        Ok(VertexChart::new(frame, psi, self.chart_radius()))
    }
}

/// Newton projection onto the boundary graph.
fn project_to_graph<R: Real>(
    g: &GraphDomain<R>,
    z: &CVec<R>,
) -> Result<(CVec<R>, R), GeometryError> {
    let (x1, zeta0) = split_real(z);
    let m = zeta0.len();
    let objective = |zeta: &[R]| -> R {
        let dpsi = g.psi.value(zeta) - x1;
        let mut s = dpsi * dpsi;
        for k in 0..m {
            let d = zeta[k] - zeta0[k];
            s = s + d * d;
        }
        s
    };
    // Optimality system F(zeta) = (psi - x1) grad psi + (zeta - zeta0).
    let residual = |zeta: &[R]| -> Vec<R> {
        let v = g.psi.value(zeta) - x1;
        let grad = g.psi.gradient(zeta);
        (0..m).map(|k| v * grad[k] + (zeta[k] - zeta0[k])).collect()
    };
    let norm = |v: &[R]| v.iter().fold(R::zero(), |a, &x| a + x * x).sqrt();

    let mut zeta = zeta0.clone(); // vertical drop as initial guess
    let tol = R::of(1e-12) * (R::one() + norm(&zeta0));
    let mut converged = false;
    for _ in 0..50 {
        let f = residual(&zeta);
        if norm(&f) < tol {
            converged = true;
            break;
        }
        let v = g.psi.value(&zeta) - x1;
        let grad = g.psi.gradient(&zeta);
        let hess = g.psi.hessian_fd(&zeta);
        // Jacobian of F: I + grad gradᵀ + (psi − x1)·H
        let mut jac = vec![vec![R::zero(); m]; m];
        for r in 0..m {
            for c in 0..m {
                let mut e = grad[r] * grad[c] + v * hess[r][c];
                if r == c {
                    e = e + R::one();
                }
                jac[r][c] = e;
            }
        }
        let rhs: Vec<R> = f.iter().map(|&x| -x).collect();
        let Some(step) = solve_dense(jac, rhs) else {
            break;
        };
        // Damped update on the residual norm.
        let f0 = norm(&f);
        let mut lambda = R::one();
        let mut accepted = false;
        for _ in 0..20 {
            let trial: Vec<R> = (0..m).map(|k| zeta[k] + lambda * step[k]).collect();
            if norm(&residual(&trial)) < f0 {
                zeta = trial;
                accepted = true;
                break;
            }
            lambda = lambda * R::of(0.5);
        }
        if !accepted {
            break;
        }
    }
    if !converged && norm(&residual(&zeta)) >= tol {
        // Fallback: steepest descent on the true objective with a
        // golden-section line search.
        for _ in 0..200 {
            let f = residual(&zeta);
            if norm(&f) < tol {
                break;
            }
            let dir: Vec<R> = f.iter().map(|&x| -x).collect();
            let t = golden_section(
                |t| {
                    let trial: Vec<R> = (0..m).map(|k| zeta[k] + t * dir[k]).collect();
                    objective(&trial)
                },
                R::zero(),
                R::one(),
            );
            let next: Vec<R> = (0..m).map(|k| zeta[k] + t * dir[k]).collect();
            if objective(&next) >= objective(&zeta) {
                break;
            }
            zeta = next;
        }
        let res = norm(&residual(&zeta));
        if res >= R::of(1e-8) {
            return Err(GeometryError::ProjectionDiverged {
                iterations: 250,
                residual: res.to_f64_lossy(),
            });
        }
    }
    let xi = join_real(g.psi.value(&zeta), &zeta);
    let delta = z.dist(&xi);
    Ok((xi, delta))
}

/// Gaussian elimination with partial pivoting for the small Newton systems.
#[allow(clippy::needless_range_loop)]
fn solve_dense<R: Real>(mut a: Vec<Vec<R>>, mut b: Vec<R>) -> Option<Vec<R>> {
    let n = b.len();
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[pivot][col].abs() {
                pivot = r;
            }
        }
        if a[pivot][col].abs() < R::of(1e-14) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] = a[r][c] - factor * a[col][c];
            }
            b[r] = b[r] - factor * b[col];
        }
    }
    let mut x = vec![R::zero(); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s = s - a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

fn golden_section<R: Real>(f: impl Fn(R) -> R, mut lo: R, mut hi: R) -> R {
    let phi = R::of(0.618_033_988_749_894_9);
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..60 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d);
        }
    }
    (lo + hi) * R::of(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn pt(entries: &[(f64, f64)]) -> CVec<f64> {
        CVec::new(entries.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }

    fn paraboloid_domain() -> DomainModel<f64> {
        let psi = PsiMap::poly("(z1^2+z2^2+z3^2)/4", 3).unwrap();
        DomainModel::graph(2, psi, 0.5).unwrap()
    }

    #[test]
    fn ball_radial_projection() {
        let ball = DomainModel::unit_ball(2);
        let z = pt(&[(0.5, 0.0), (0.0, 0.0)]);
        let (xi, delta) = ball.nearest_boundary_point(&z).unwrap();
        assert!(xi.dist(&pt(&[(1.0, 0.0), (0.0, 0.0)])) < 1e-15);
        assert!((delta - 0.5).abs() < 1e-15);

        let z = pt(&[(0.54, 0.0), (0.72, 0.0)]);
        let (xi, delta) = ball.nearest_boundary_point(&z).unwrap();
        assert!(xi.dist(&pt(&[(0.6, 0.0), (0.8, 0.0)])) < 1e-12);
        assert!((delta - 0.1).abs() < 1e-12);
    }

    #[test]
    fn ball_center_is_singular() {
        let ball = DomainModel::unit_ball(2);
        let z = pt(&[(0.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            ball.nearest_boundary_point(&z),
            Err(GeometryError::CenterSingularity)
        ));
    }

    #[test]
    fn graph_projection_beats_vertical_drop() {
        let dom = paraboloid_domain();
        let z = pt(&[(0.1, 0.0), (0.0, 0.0)]);
        let (xi, delta) = dom.nearest_boundary_point(&z).unwrap();
        assert!(dom.on_boundary(&xi));
        // The projected distance can only improve on the vertical drop.
        assert!(delta <= 0.1 + 1e-12);
        // Optimality: residual of the first-order system is tiny.
        let (x1, zeta) = split_real(&xi);
        assert!((x1 - (zeta.iter().map(|z| z * z).sum::<f64>()) / 4.0).abs() < 1e-10);
    }

    #[test]
    fn graph_projection_off_axis() {
        let dom = paraboloid_domain();
        let z = pt(&[(0.3, 0.05), (0.1, -0.05)]);
        assert!(dom.contains(&z));
        let (xi, delta) = dom.nearest_boundary_point(&z).unwrap();
        assert!(dom.on_boundary(&xi));
        assert!(delta > 0.0 && delta < z.dist(&pt(&[(0.0, 0.05), (0.1, -0.05)])) + 1e-9);
    }

    #[test]
    fn flat_graph_distance_is_height() {
        let (psi, k) = super::super::psi::builtin_psi::<f64>("flat", 3).unwrap();
        let dom = DomainModel::graph(2, psi, k).unwrap();
        let z = pt(&[(0.2, 0.7), (0.4, -0.3)]);
        let (xi, delta) = dom.nearest_boundary_point(&z).unwrap();
        assert!((delta - 0.2).abs() < 1e-12);
        assert!(xi.dist(&pt(&[(0.0, 0.7), (0.4, -0.3)])) < 1e-10);
    }

    #[test]
    fn outward_normals() {
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(0.0, 0.0), (0.0, 1.0)]);
        let nu = ball.outward_normal(&xi).unwrap();
        assert!(nu.dist(&xi) < 1e-14);

        let dom = paraboloid_domain();
        let origin = pt(&[(0.0, 0.0), (0.0, 0.0)]);
        let nu = dom.outward_normal(&origin).unwrap();
        assert!(nu.dist(&pt(&[(-1.0, 0.0), (0.0, 0.0)])) < 1e-12);
    }
}
