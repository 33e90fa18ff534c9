//! Numerical toolkit for anisotropic grand Herz-type norms with variable
//! exponents.
//!
//! Functions live on uniform grids over `[-R, R]^n` (`n ∈ {1, 2}`) and are
//! measured against the ball family `B_k = A^k Δ` of an expansive matrix `A`.
//!
//! * [`dilation`]: expansive matrices, the volume-one ellipsoid, `ρ`, `b`, `w`.
//! * [`grid`]: grid functions, synthetic test functions, annulus tables.
//! * [`exponent`], [`varlebesgue`]: exponent functions, modulars, Luxemburg norms.
//! * [`grandseq`]: grand Lebesgue sequence norms.
//! * [`herz`]: grand Herz and Herz-Morrey norms, block decompositions.
//! * [`operators`]: Hardy, truncated Riesz and maximal operators.
//! * [`atoms`]: atoms, the mollifier and the radial maximal function.
//! * [`oracle`]: closed-form and dense-grid references.
//!
//! The `parallel` feature (default) runs the hot loops on rayon;
//! [`par::set_sequential`] switches to the sequential path at runtime.

// parameter checks are written to reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atoms;
pub mod dilation;
pub mod error;
pub mod exponent;
pub mod grandseq;
pub mod grid;
pub mod herz;
pub mod numeric;
pub mod operators;
pub mod oracle;
pub mod par;
pub mod varlebesgue;

pub use error::{Error, Result};
