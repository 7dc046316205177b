//! Numerical laboratory for bound states of the free radial Schrödinger
//! equation continued onto winding contours around the branch point at the
//! origin.
//!
//! Modules, bottom-up:
//!
//! - [`riemann`]: points on the logarithmic Riemann surface (modulus plus
//!   unwrapped angle) and the asymptotic sectors `S_k`.
//! - [`contour`]: the knotted integration paths `C^(N)`.
//! - [`hankel`]: `H1`/`H2` of real order anywhere on the surface, with the
//!   winding continuation rule.
//! - [`spectrum`]: exact-rational quantization rules.
//! - [`shoot`]: ODE shooting along a contour as an independent check of
//!   admissibility.
//! - [`metric`]: finite-dimensional quasi-Hermitian metric demo.
//! - [`cli`]: the `knotlab` command-line surface.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod contour;
pub mod error;
pub mod hankel;
pub mod metric;
pub mod output;
pub mod riemann;
pub mod shoot;
pub mod special;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
