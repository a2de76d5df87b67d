//! C²-smooth bounded domains: boundary distances, nearest-point projection,
//! adapted unitary frames at boundary points and vertex charts in which the
//! domain is the region above a graph x₁ > ψ(ζ).

mod chart;
mod domain;
mod frame;
mod psi;

pub use chart::{ChartPsi, RealCoords, VertexChart};
pub use domain::{DomainModel, GraphDomain};
pub use frame::BoundaryFrame;
pub use psi::{builtin_psi, PsiMap};

use crate::{CVec, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("point is not inside the domain: {0}")]
    OutsideDomain(String),
    #[error("point is not on the boundary: {0}")]
    NotOnBoundary(String),
    #[error("projection at the center singularity (z = 0)")]
    CenterSingularity,
    #[error("projection iteration failed to converge after {iterations} iterations (residual {residual})")]
    ProjectionDiverged { iterations: usize, residual: f64 },
    #[error("degenerate normal: defining-function gradient has norm {0}")]
    DegenerateNormal(f64),
    #[error("point outside the chart validity radius: |w| = {norm} > {radius}")]
    OutsideChart { norm: f64, radius: f64 },
    #[error("vertex charts on graph domains are anchored at the origin; got vertex {0}")]
    UnsupportedVertex(String),
    #[error("normal-ray parameter t = {t} outside (0, {max})")]
    RayParameter { t: f64, max: f64 },
    #[error("invalid graph function: {0}")]
    InvalidPsi(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// δ_ξ(z) = min( δ(z, ∂D), p(z, T_ξ(∂D)) ): the lesser of the boundary
/// distance and the distance to the real tangent plane at ξ.
pub fn delta_xi<R: Real>(
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    z: &CVec<R>,
) -> Result<R, GeometryError> {
    let delta = domain.boundary_distance(z)?;
    let nu = domain.outward_normal(xi)?;
    let diff = z.sub(xi);
    let p = diff
        .hermitian_inner(&nu)
        .map_err(|e| GeometryError::Dimension {
            expected: e.left,
            got: e.right,
        })?
        .re
        .abs();
    Ok(delta.min(p))
}

/// π(z): the component of z − ξ along the complex normal line, re-anchored
/// at ξ. Idempotent; on the normal line it is the identity.
pub fn project_complex_normal<R: Real>(frame: &BoundaryFrame<R>, z: &CVec<R>) -> CVec<R> {
    let diff = z.sub(frame.vertex());
    let t = diff
        .hermitian_inner(frame.normal())
        .expect("frame and point dimensions agree");
    frame.vertex().add(&frame.normal().scale(t))
}
