//! Classical polylogarithms on the twice-punctured plane.
//!
//! The crate computes branches of `Li_k` by transporting the fundamental
//! solution of the polylogarithm connection along explicit contours, and
//! builds the surrounding machinery on top of that: exact monodromy, the
//! single-valued functions `D2`/`D3`, Chen iterated integrals, tame symbols
//! and the dilogarithm regulator, Bloch group algebra over `Q`, and limit
//! period matrices.

pub mod bloch;
pub mod error;
pub mod hopf;
pub mod itint;
pub mod monodromy;
pub mod numerics;
pub mod paths;
pub mod polylog;
pub mod regulator;
pub mod suites;

pub use error::{Error, Result};
pub use numerics::complex::Complex;
pub use numerics::matrix::CMatrix;
pub use numerics::real::Real;
pub use numerics::PrecisionConfig;
pub use paths::{Letter, MonodromyWord, Path, PathSegment};
