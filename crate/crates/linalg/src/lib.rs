//! Exact rational linear algebra over sparse vectors and matrices.
//!
//! Everything here is exact: there is no tolerance parameter anywhere. The
//! elimination routines pick, for every row, its first nonzero column as the
//! pivot, so results (kernel bases, particular solutions) are reproducible
//! across runs.

mod error;
mod matrix;
mod scalar;
mod span;
mod vector;

pub use error::LinalgError;
pub use matrix::{flip, SparseMat};
pub use scalar::{format_scalar, int, parse_scalar, Scalar};
pub use span::Span;
pub use vector::SparseVec;
