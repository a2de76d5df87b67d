//! Complex vectors, Hermitian geometry, the extended plane and first-order
//! jets for holomorphic differentiation.

mod cvec;
mod ext;
mod jet;

pub use cvec::{CVec, DimensionError};
pub use ext::{chordal_distance, ExtComplex};
pub use jet::{Jet, PoleSignal};
