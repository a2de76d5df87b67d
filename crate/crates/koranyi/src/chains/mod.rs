//! Anisotropic polydiscs P(b,c), the biholomorphic rescaling onto the unit
//! polydisc, chain coverings of the segment [z, π(z)] and the Marty
//! normality functional.

mod chain;
mod marty;
mod polydisc;
mod rescale;

pub use chain::{build_chain, Chain};
pub use marty::{default_c, marty_functional, normality_score, CalibrationReport};
pub use polydisc::Polydisc;
pub use rescale::RescaledFn;

use crate::expr::EvalError;
use crate::geometry::GeometryError;
use crate::regions::RegionError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChainError {
    #[error("chain base point is outside A_alpha: {0}")]
    OutsideRegion(String),
    #[error("chain anchor left A_{{2 alpha}}: {0}")]
    AnchorOutsideRegion(String),
    #[error("consecutive half-radius polydiscs fail to overlap at anchor {index}")]
    OverlapFailed { index: usize },
    #[error("chain length {len} exceeds the aperture bound {bound}")]
    TooLong { len: usize, bound: usize },
    #[error("d(b) = {0} is not positive")]
    NonPositiveDepth(f64),
    #[error("probe point outside the unit polydisc: {0}")]
    ProbeOutsidePolydisc(String),
    #[error("direction vector must be unit length, |v| = {0}")]
    NotUnit(f64),
    #[error("both g and 1/g break down at {0}")]
    EssentialPole(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
