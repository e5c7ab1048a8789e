//! The g-function `g_m(z) = ∫_0^∞ y^m exp(-y² - z/y) dy` on `Re z >= 0`,
//! its exact identities, and the dielectric response of freely rotating
//! symmetric-top molecules that reduces to it.
//!
//! The crate is `no_std` (with `alloc`) when built without the default
//! `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod gfunc;
pub mod quadrature;
pub mod rotor;
pub mod special;

pub use error::{Error, Result};
pub use gfunc::{
    g, g_derivative, g_gamma_special, g_inverse_form, g_polar_parts, ode_residual, phi,
    recurrence_residual, taylor_truncated, GOrder, PolarArg, M_MAX,
};
pub use num_complex::Complex64;
pub use quadrature::{EvalResult, OscillationPolicy, QuadratureConfig};

/// A complex argument or value.
pub type ComplexValue = Complex64;
