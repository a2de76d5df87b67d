//! Numerical laboratory for boundary behavior of holomorphic functions of
//! several complex variables.
//!
//! The crate models the classical approach regions at a boundary point of the
//! disc, the unit ball and C²-graph domains (Stolz, angular, Korányi,
//! admissible and their real-adapted form), computes directional spherical
//! derivatives and the anisotropic ∇-functional that weights normal
//! derivatives by the boundary distance `d(z)` and tangential ones by
//! `√d(z)`, builds the polydisc rescaling chains behind the Marty/normality
//! argument, and renders executable verdicts for the admissible-limit
//! criteria, including the bounded function on `B²` with a normal limit but
//! no admissible limit.
//!
//! All core math is generic over the scalar type through [`Real`]; the
//! concrete `f64` aliases below are what the CLI and most tests use.

pub mod algebra;
pub mod chains;
pub mod derivatives;
pub mod expr;
pub mod geometry;
pub mod limits;
pub mod regions;
pub mod verify;

use std::fmt;

/// Scalar type the whole crate is generic over: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Default
    + serde::Serialize
    + for<'de> serde::Deserialize<'de>
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` literal; panics on values the type cannot hold.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal convertible to scalar type")
    }

    /// Lossy widening back to `f64` (exact for `f32` and `f64`).
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub use algebra::{chordal_distance, CVec, ExtComplex, Jet};
pub use expr::{catalog, parse, Expr, FnHandle};
pub use geometry::{BoundaryFrame, DomainModel, RealCoords, VertexChart};
pub use limits::Verdict;
pub use regions::{paper_parabola, RegionFamily, RegionSpec};

/// Complex scalar over the generic real type.
pub type Complex<R> = num_complex::Complex<R>;

pub type C64 = Complex<f64>;
pub type CVec64 = CVec<f64>;
pub type Jet64 = Jet<f64>;
pub type ExtComplex64 = ExtComplex<f64>;
pub type Expr64 = Expr<f64>;
pub type FnHandle64 = FnHandle<f64>;
pub type Domain64 = DomainModel<f64>;
pub type Region64 = RegionSpec<f64>;
pub type Verdict64 = Verdict<f64>;

/// Any error the library can surface, for callers that do not care which
/// subsystem failed. The CLI maps these onto its exit-code contract.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Dimension(#[from] algebra::DimensionError),
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error(transparent)]
    Eval(#[from] expr::EvalError),
    #[error(transparent)]
    Catalog(#[from] expr::CatalogError),
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Region(#[from] regions::RegionError),
    #[error(transparent)]
    Fit(#[from] derivatives::FitError),
    #[error(transparent)]
    Spherical(#[from] derivatives::SphericalError),
    #[error(transparent)]
    Chain(#[from] chains::ChainError),
    #[error(transparent)]
    Limit(#[from] limits::LimitError),
}

pub type Result<T> = std::result::Result<T, Error>;
