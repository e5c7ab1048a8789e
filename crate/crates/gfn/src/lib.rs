//! Parameter sweeps, record files and the self-test suite for the `gfn`
//! command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod number;
pub mod selftest;
pub mod sweep;

use gfn_core::QuadratureConfig;

pub use error::{exit, Error, Result};
pub use sweep::{run_sweep, SweepKind, SweepRecord, SweepSpec};

/// Environment variable holding a global tolerance override.
pub const TOL_ENV: &str = "GFN_TOL";

/// Quadrature settings from defaults, then `GFN_TOL`, then an explicit
/// flag. A tolerance `t` means `abs_tol = t`, `rel_tol = 100 t`.
pub fn resolve_config(flag: Option<f64>, env: Option<&str>) -> Result<QuadratureConfig> {
    let tol = match (flag, env) {
        (Some(t), _) => Some(t),
        (None, Some(text)) => Some(
            text.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("{TOL_ENV} = `{text}` is not a number")))?,
        ),
        (None, None) => None,
    };
    let cfg = match tol {
        Some(t) => QuadratureConfig::with_tolerance(t),
        None => QuadratureConfig::default(),
    };
    cfg.validate().map_err(|e| Error::invalid(e.to_string()))?;
    Ok(cfg)
}
