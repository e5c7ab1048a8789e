//! Uniform-grid parameter sweeps evaluated in parallel, returned in grid order.

use gfn_core::rotor::{susceptibility_ratio, ResponseParams, RotorSpec};
use gfn_core::{g, GOrder, PolarArg, QuadratureConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// `g_m(r e^{-iθ})` over `r` at fixed `θ`.
    Radial,
    /// `g_m(r e^{-iθ})` over `θ` at fixed `r`.
    Phase,
    /// Susceptibility ratio over `ω`.
    ChiSpectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub kind: SweepKind,
    /// Order for radial and phase sweeps.
    pub m: Option<GOrder>,
    /// `θ` for radial sweeps, `r` for phase sweeps; unused for spectra.
    pub fixed: f64,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub rotor: Option<RotorSpec>,
    /// `β` and `τ` for spectra; its `ω` is replaced by the grid value.
    pub params: Option<ResponseParams>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub abscissa: f64,
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl SweepSpec {
    pub fn radial(m: GOrder, theta: f64, lo: f64, hi: f64, steps: usize) -> Self {
        SweepSpec {
            kind: SweepKind::Radial,
            m: Some(m),
            fixed: theta,
            lo,
            hi,
            steps,
            rotor: None,
            params: None,
        }
    }

    pub fn phase(m: GOrder, r: f64, lo: f64, hi: f64, steps: usize) -> Self {
        SweepSpec {
            kind: SweepKind::Phase,
            m: Some(m),
            fixed: r,
            lo,
            hi,
            steps,
            rotor: None,
            params: None,
        }
    }

    pub fn chi(rotor: RotorSpec, params: ResponseParams, lo: f64, hi: f64, steps: usize) -> Self {
        SweepSpec {
            kind: SweepKind::ChiSpectrum,
            m: None,
            fixed: 0.0,
            lo,
            hi,
            steps,
            rotor: Some(rotor),
            params: Some(params),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() || !self.fixed.is_finite() {
            return Err(Error::invalid("sweep bounds must be finite"));
        }
        if !(self.lo < self.hi) {
            return Err(Error::invalid(format!(
                "need lo < hi (got lo = {}, hi = {})",
                self.lo, self.hi
            )));
        }
        if self.steps < 2 {
            return Err(Error::invalid(format!(
                "need steps >= 2 (got {})",
                self.steps
            )));
        }
        match self.kind {
            SweepKind::Radial | SweepKind::Phase => {
                if self.m.is_none() {
                    return Err(Error::invalid("radial and phase sweeps need an order m"));
                }
                let (r_range, theta_range) = match self.kind {
                    SweepKind::Radial => ((self.lo, self.hi), (self.fixed, self.fixed)),
                    _ => ((self.fixed, self.fixed), (self.lo, self.hi)),
                };
                PolarArg::new(r_range.0, theta_range.0)?;
                PolarArg::new(r_range.1, theta_range.1)?;
            }
            SweepKind::ChiSpectrum => {
                let rotor = self
                    .rotor
                    .ok_or_else(|| Error::invalid("a spectrum needs a rotor"))?;
                let params = self
                    .params
                    .ok_or_else(|| Error::invalid("a spectrum needs β and τ"))?;
                rotor.validate()?;
                params.validate()?;
                if self.lo < 0.0 {
                    return Err(Error::invalid(format!(
                        "need omega-lo >= 0 (got {})",
                        self.lo
                    )));
                }
            }
        }
        Ok(())
    }

    /// Grid point `k`: `lo + k (hi - lo) / (steps - 1)`, the last one exactly `hi`.
    pub fn abscissa(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * k as f64 / (self.steps - 1) as f64
        }
    }

    fn point(&self, x: f64, cfg: &QuadratureConfig) -> gfn_core::Result<SweepRecord> {
        let r = match self.kind {
            SweepKind::Radial | SweepKind::Phase => {
                let arg = if self.kind == SweepKind::Radial {
                    PolarArg::new(x, self.fixed)?
                } else {
                    PolarArg::new(self.fixed, x)?
                };
                g(self.m.expect("validated"), arg.to_complex(), cfg)?
            }
            SweepKind::ChiSpectrum => {
                let p = self.params.expect("validated");
                let p = ResponseParams::new(p.beta, p.tau, x)?;
                susceptibility_ratio(&self.rotor.expect("validated"), &p, cfg)?
            }
        };
        Ok(SweepRecord {
            abscissa: x,
            re: r.value.re,
            im: r.value.im,
            err: r.abs_error_estimate,
        })
    }
}

/// Evaluates the sweep on its grid. Points run concurrently; the output is
/// in grid order and does not depend on the thread count.
pub fn run_sweep(spec: &SweepSpec, cfg: &QuadratureConfig) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    cfg.validate()?;
    let points: Vec<gfn_core::Result<SweepRecord>> = (0..spec.steps)
        .into_par_iter()
        .map(|k| spec.point(spec.abscissa(k), cfg))
        .collect();
    // first failure in grid order, whatever order the threads finished in
    points
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            p.map_err(|source| Error::Eval {
                context: format!("sweep point at abscissa {}", spec.abscissa(k)),
                source,
            })
        })
        .collect()
}
