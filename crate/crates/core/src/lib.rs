//! Differential quadrature elements for sixth-order strain-gradient beams and plates.

// Index loops mirror the matrix algebra; `!(x > t)` is used on purpose so NaN is rejected.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod beam;
pub mod bench;
pub mod error;
pub mod export;
pub mod grid;
pub mod hermite;
pub mod linalg;
pub mod oracle;
pub mod plate;
pub mod system;
pub mod weights;

pub use error::{Error, Result};
