use alloc::format;

use crate::error::{Error, Result};

/// How the engine treats integrands that keep oscillating out to the
/// truncation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillationPolicy {
    /// Integrate straight through to the cutoff.
    None,
    /// Integrate half-period cells and extrapolate the partial sums.
    CellSumAccelerated,
}

/// Tolerances and budgets for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Panel budget for one call (cells count against it too).
    pub max_subdivisions: usize,
    /// Where the g-function integral is split between the direct form and
    /// the inverted form.
    pub split_point: f64,
    /// Multiplies the distance from the lower limit to the computed
    /// truncation point. Values above 1 only make the truncation safer.
    pub tail_cutoff_factor: f64,
    pub oscillation_policy: OscillationPolicy,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            split_point: 1.0,
            tail_cutoff_factor: 1.0,
            oscillation_policy: OscillationPolicy::CellSumAccelerated,
        }
    }
}

impl QuadratureConfig {
    /// Default configuration with `abs_tol = tol` and `rel_tol = 100 * tol`,
    /// the same ratio the defaults use.
    pub fn with_tolerance(tol: f64) -> Self {
        QuadratureConfig {
            abs_tol: tol,
            rel_tol: 100.0 * tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.abs_tol) || !positive(self.rel_tol) {
            return Err(Error::domain(format!(
                "tolerances must be positive and finite (abs_tol={}, rel_tol={})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        if !positive(self.split_point) {
            return Err(Error::domain(format!(
                "split_point must be positive (got {})",
                self.split_point
            )));
        }
        if !positive(self.tail_cutoff_factor) {
            return Err(Error::domain(format!(
                "tail_cutoff_factor must be positive (got {})",
                self.tail_cutoff_factor
            )));
        }
        Ok(())
    }

    /// Error target for a result of magnitude `magnitude`.
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol + self.rel_tol * magnitude
    }
}
