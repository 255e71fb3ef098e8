//! Dilation extensions `G_{p,B} = H^n ⋊ ℝ²` of the Heisenberg group.
//!
//! The crate covers four layers:
//!
//! - [`heisenberg`] and [`extension`]: group laws, the matrix realization of
//!   the extension and validation of the parameters `(p, B1, B2)`.
//! - [`lie`]: the Lie algebra, its structure constants and the isomorphism
//!   hypotheses acting on parameters.
//! - [`classification`]: invariants separating isomorphism classes, the
//!   catalog of class representatives and certificate checking.
//! - [`repr`]: the wavelet and metaplectic representations as weighted
//!   composition operators on test functions, with pointwise and quadrature
//!   checks of homomorphism, intertwining, unitarity and support invariance.
//!
//! Data-parallel loops go through [`Exec`]; with the `parallel` feature
//! disabled every [`Exec`] runs sequentially.

// `!(x > 0.0)` deliberately rejects NaN; index loops mirror matrix formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod classification;
pub mod error;
pub mod exec;
pub mod extension;
pub mod heisenberg;
pub mod lie;
pub mod matrix;
pub mod repr;
pub mod sampling;
pub mod tolerance;

pub use error::{Error, Result};
pub use exec::Exec;
pub use extension::{DilationParams, GroupElement, ValidationReport};
pub use matrix::RealMatrix;
pub use tolerance::Tolerances;
