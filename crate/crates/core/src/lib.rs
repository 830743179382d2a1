//! Exact subresultants of univariate polynomials given by roots with
//! multiplicities, and their multivariate analogues.
//!
//! Everything is computed over the rationals, optionally extended by named
//! parameters, so results are exact and comparable with `==`.

pub mod confluent;
pub mod error;
pub mod matrix;
pub mod mv;
pub mod roots;
pub mod roots_formulas;
pub mod scalar;
pub mod serial;
pub mod uni_subres;
pub mod upoly;

pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use roots::{pairing_r, poly_from_roots, MultiRootSet};
pub use scalar::{Scalar, VAR_X};
pub use uni_subres::{resultant, sres_coeff, sylv_double_sum};
pub use upoly::UniPoly;
