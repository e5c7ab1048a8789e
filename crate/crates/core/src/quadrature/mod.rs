//! Adaptive integration of complex-valued integrands over `[lower, ∞)`.
//!
//! The integrand declares a decay class: an envelope `|f(x)| <= env(x)` with
//! a closed-form tail bound, plus the angular frequency of any oscillating
//! factor. The engine truncates where the analytic tail bound drops below
//! `abs_tol * 1e-6`, adds that bound to the error estimate, and integrates
//! the finite part by adaptive Gauss–Kronrod bisection. Slowly damped
//! oscillatory integrands are summed in half-period cells whose partial
//! sums are extrapolated with iterated Aitken Δ².

mod accel;
mod config;
mod kronrod;
pub mod legendre;
pub mod oracle;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

pub use accel::{iterated_aitken, iterated_aitken_complex};
pub use config::{OscillationPolicy, QuadratureConfig};

use crate::error::{Error, Result};

/// A value together with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub subdivisions_used: usize,
}

impl EvalResult {
    pub(crate) fn combine(self, other: EvalResult) -> EvalResult {
        EvalResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            subdivisions_used: self.subdivisions_used + other.subdivisions_used,
        }
    }

    pub(crate) fn scale(self, c: Complex64) -> EvalResult {
        EvalResult {
            value: self.value * c,
            abs_error_estimate: self.abs_error_estimate * c.norm(),
            subdivisions_used: self.subdivisions_used,
        }
    }
}

/// Envelope of an integrand on the semi-infinite range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// `|f(x)| <= coeff * x^power * exp(-rate * x^2)`.
    GaussianTail { coeff: f64, power: f64, rate: f64 },
    /// `|f(x)| <= coeff * x^power * exp(-rate * x)`, the integrand carrying
    /// an oscillating factor of angular frequency `frequency` (0 if none).
    ExponentialTail {
        coeff: f64,
        power: f64,
        rate: f64,
        frequency: f64,
    },
    /// `|f(x)| <= coeff * x^power` with `power < -1`, oscillating with
    /// angular frequency `frequency > 0`.
    BoundedOscillatory {
        coeff: f64,
        power: f64,
        frequency: f64,
    },
}

impl DecayClass {
    pub fn frequency(&self) -> f64 {
        match *self {
            DecayClass::GaussianTail { .. } => 0.0,
            DecayClass::ExponentialTail { frequency, .. }
            | DecayClass::BoundedOscillatory { frequency, .. } => frequency,
        }
    }

    /// The envelope itself.
    pub fn envelope(&self, x: f64) -> f64 {
        match *self {
            DecayClass::GaussianTail { coeff, power, rate } => {
                coeff * (power * x.ln() - rate * x * x).exp()
            }
            DecayClass::ExponentialTail {
                coeff, power, rate, ..
            } => coeff * (power * x.ln() - rate * x).exp(),
            DecayClass::BoundedOscillatory { coeff, power, .. } => coeff * x.powf(power),
        }
    }

    /// Upper bound on `∫_x^∞ env(t) dt`, or `None` when the closed form is
    /// not yet valid at `x`.
    pub fn tail_bound(&self, x: f64) -> Option<f64> {
        if !(x > 0.0) {
            return None;
        }
        let lx = x.ln();
        match *self {
            DecayClass::GaussianTail { coeff, power, rate } => {
                if !(rate > 0.0) {
                    return None;
                }
                // x^p e^{-rx^2} = -(1/2r) d/dx[x^{p-1} e^{-rx^2}] + ((p-1)/2r) x^{p-2} e^{-rx^2}
                let head = coeff * ((power - 1.0) * lx - rate * x * x).exp() / (2.0 * rate);
                if power <= 1.0 {
                    Some(head)
                } else {
                    let shrink = 1.0 - (power - 1.0) / (2.0 * rate * x * x);
                    (shrink > 0.0).then(|| head / shrink)
                }
            }
            DecayClass::ExponentialTail {
                coeff, power, rate, ..
            } => {
                let algebraic =
                    (power < -1.0).then(|| coeff * ((power + 1.0) * lx).exp() / (-power - 1.0));
                let exponential = if rate > 0.0 {
                    let head = coeff * (power * lx - rate * x).exp() / rate;
                    if power <= 0.0 {
                        Some(head)
                    } else {
                        let shrink = 1.0 - power / (rate * x);
                        (shrink > 0.0).then(|| head / shrink)
                    }
                } else {
                    None
                };
                match (algebraic, exponential) {
                    (Some(a), Some(e)) => Some(a.min(e)),
                    (a, e) => a.or(e),
                }
            }
            DecayClass::BoundedOscillatory { coeff, power, .. } => {
                (power < -1.0).then(|| coeff * ((power + 1.0) * lx).exp() / (-power - 1.0))
            }
        }
    }
}

/// A complex-valued function on `(lower, ∞)` with a declared decay class.
pub trait Integrand {
    fn eval(&self, x: f64) -> Complex64;
    fn decay(&self) -> DecayClass;
}

/// Adapter pairing a closure with its decay class.
pub struct FnIntegrand<F> {
    pub f: F,
    pub decay: DecayClass,
}

impl<F: Fn(f64) -> Complex64> FnIntegrand<F> {
    pub fn new(f: F, decay: DecayClass) -> Self {
        FnIntegrand { f, decay }
    }
}

impl<F: Fn(f64) -> Complex64> Integrand for FnIntegrand<F> {
    fn eval(&self, x: f64) -> Complex64 {
        (self.f)(x)
    }
    fn decay(&self) -> DecayClass {
        self.decay
    }
}

/// Fraction of `abs_tol` granted to the truncated tail.
const TAIL_SHARE: f64 = 1e-6;
/// Below this many half-period cells between the lower limit and the
/// cutoff, plain adaptive integration is used even for oscillatory input.
const CELL_THRESHOLD: f64 = 24.0;
/// Partial sums fed to one extrapolation.
const AITKEN_WINDOW: usize = 13;
const MIN_CELLS: usize = 8;
/// Extrapolants must move by less than this share of the target...
const ACCEPT_FRACTION: f64 = 1e-2;
/// ...on this many consecutive cells.
const STABLE_STEPS: usize = 3;
/// Reported error per unit of the largest accepted step.
const EXTRAPOLATION_SAFETY: f64 = 10.0;

/// Truncation point `X` and the bound on `∫_X^∞ |f|`.
pub fn cutoff(decay: &DecayClass, lower: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let target = cfg.abs_tol * TAIL_SHARE;
    let ok = |span: f64| matches!(decay.tail_bound(lower + span), Some(b) if b <= target);
    let mut hi = 1.0;
    let mut doublings = 0;
    while !ok(hi) {
        hi *= 2.0;
        doublings += 1;
        if doublings > 1000 || !(lower + hi).is_finite() {
            return Err(Error::Convergence {
                subdivisions: 0,
                estimate: decay.tail_bound(lower + hi).unwrap_or(f64::INFINITY),
                target,
            });
        }
    }
    let mut lo = hi * 0.5;
    if doublings > 0 {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    let x = lower + hi * cfg.tail_cutoff_factor;
    match decay.tail_bound(x) {
        Some(b) => Ok((x, b)),
        None => Err(Error::domain(format!(
            "tail bound is not valid at the scaled cutoff {x}"
        ))),
    }
}

/// Breakpoints `lower, lower+1, lower+2, lower+4, ...` up to `upper`.
fn geometric_breaks(lower: f64, upper: f64) -> Vec<f64> {
    let mut breaks = alloc::vec![lower];
    let mut w = 1.0;
    while lower + w < upper {
        breaks.push(lower + w);
        w *= 2.0;
    }
    breaks.push(upper);
    breaks
}

/// `∫_lower^∞ f(x) dx`.
pub fn integrate_semi_infinite<I: Integrand + ?Sized>(
    f: &I,
    lower: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    cfg.validate()?;
    if !(lower >= 0.0) || !lower.is_finite() {
        return Err(Error::domain(format!(
            "lower limit must be finite and non-negative (got {lower})"
        )));
    }
    let decay = f.decay();
    let eval = |x: f64| f.eval(x);
    let frequency = decay.frequency();
    let (upper, tail) = match cutoff(&decay, lower, cfg) {
        Ok(c) => c,
        // A slowly damped oscillation can still be summed cell by cell
        // even when its envelope tail bound is useless.
        Err(_)
            if frequency > 0.0
                && cfg.oscillation_policy == OscillationPolicy::CellSumAccelerated =>
        {
            (f64::INFINITY, f64::INFINITY)
        }
        Err(e) => return Err(e),
    };

    let cells = (upper - lower) * frequency / PI;
    if frequency > 0.0
        && cfg.oscillation_policy == OscillationPolicy::CellSumAccelerated
        && cells > CELL_THRESHOLD
    {
        return cell_sum(&eval, lower, PI / frequency, upper, tail, cfg);
    }

    let breaks = geometric_breaks(lower, upper);
    let budget = cfg.max_subdivisions.max(breaks.len() - 1);
    let mut r = kronrod::adaptive(
        &eval,
        &breaks,
        cfg.abs_tol * (1.0 - TAIL_SHARE),
        cfg.rel_tol,
        budget,
    )?;
    r.abs_error_estimate += tail;
    Ok(r)
}

/// `∫_a^b f(x) dx` by adaptive Gauss–Kronrod bisection.
pub fn integrate_finite<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    cfg.validate()?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "limits must be finite (got [{a}, {b}])"
        )));
    }
    if a == b {
        return Ok(EvalResult {
            value: Complex64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            subdivisions_used: 1,
        });
    }
    kronrod::adaptive(&f, &[a, b], cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
}

/// `∫_a^b f` with the interval pre-split into `pieces` equal panels.
pub fn integrate_finite_split<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    pieces: usize,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    cfg.validate()?;
    let pieces = pieces.max(1);
    let breaks: Vec<f64> = (0..=pieces)
        .map(|k| {
            if k == pieces {
                b
            } else {
                a + (b - a) * k as f64 / pieces as f64
            }
        })
        .collect();
    kronrod::adaptive(
        &f,
        &breaks,
        cfg.abs_tol,
        cfg.rel_tol,
        cfg.max_subdivisions.max(pieces),
    )
}

fn cell_sum<F: Fn(f64) -> Complex64>(
    f: &F,
    lower: f64,
    width: f64,
    upper: f64,
    tail: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let mut sums: Vec<Complex64> = Vec::new();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut cell_err = 0.0;
    let mut used = 0usize;
    let mut previous: Option<Complex64> = None;
    let mut stable = 0;
    let mut worst_change: f64 = 0.0;
    let mut k = 0usize;
    loop {
        let a = lower + width * k as f64;
        if a >= upper {
            // envelope tail already below target: no extrapolation needed
            return Ok(EvalResult {
                value: sum,
                abs_error_estimate: cell_err + tail,
                subdivisions_used: used.max(1),
            });
        }
        let b = (lower + width * (k + 1) as f64).min(upper);
        if used >= cfg.max_subdivisions {
            return Err(Error::Convergence {
                subdivisions: used,
                estimate: previous.map(|p| (p - sum).norm()).unwrap_or(f64::INFINITY),
                target: cfg.target(sum.norm()),
            });
        }
        let cell = kronrod::adaptive(
            f,
            &[a, b],
            cfg.abs_tol * 1e-2,
            cfg.rel_tol * 1e-2,
            cfg.max_subdivisions - used,
        )?;
        used += cell.subdivisions_used;
        sum += cell.value;
        cell_err += cell.abs_error_estimate;
        sums.push(sum);
        k += 1;

        if sums.len() >= MIN_CELLS {
            let window = &sums[sums.len().saturating_sub(AITKEN_WINDOW)..];
            let estimate = iterated_aitken_complex(window);
            if let Some(prev) = previous {
                let change = (estimate - prev).norm();
                // deep Aitken tables wander; demand a run of small steps
                if change <= ACCEPT_FRACTION * cfg.target(estimate.norm()) {
                    stable += 1;
                    worst_change = worst_change.max(change);
                    if stable >= STABLE_STEPS {
                        return Ok(EvalResult {
                            value: estimate,
                            abs_error_estimate: EXTRAPOLATION_SAFETY * worst_change + cell_err,
                            subdivisions_used: used,
                        });
                    }
                } else {
                    stable = 0;
                    worst_change = 0.0;
                }
            }
            previous = Some(estimate);
        }
    }
}
