//! Brute-force reference integrator for golden values and test oracles.
//!
//! Composite Simpson on a truncated range with step halving until two
//! successive refinements agree to `1e-12` absolute. Shares nothing with the
//! adaptive engine apart from the [`Integrand`] interface, and uses its own
//! (log-slope) truncation rule. Slow on purpose.

use num_complex::Complex64;

use super::{DecayClass, Integrand};
use crate::error::{Error, Result};

pub const AGREEMENT: f64 = 1e-12;
pub const TRUNCATION: f64 = 1e-14;
const START_INTERVALS: usize = 1024;
const MAX_INTERVALS: usize = 1 << 26;

/// Bound on `∫_x^∞ env` from the log-derivative of the envelope: beyond
/// `x` the envelope lies below `env(x) * exp(-s (t - x))`.
fn log_slope_tail(decay: &DecayClass, x: f64) -> Option<f64> {
    let env = decay.envelope(x);
    let slope_bound = |s: f64| (s > 0.0).then(|| env / s);
    let oscillation =
        |freq: f64, monotone: bool| (freq > 0.0 && monotone).then(|| 3.0 * env / freq);
    match *decay {
        DecayClass::GaussianTail { power, rate, .. } => {
            slope_bound(2.0 * rate * x - power.max(0.0) / x)
        }
        DecayClass::ExponentialTail {
            power,
            rate,
            frequency,
            ..
        } => {
            let a = slope_bound(rate - power.max(0.0) / x);
            let b = oscillation(frequency, power <= 0.0 || rate * x > power);
            match (a, b) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            }
        }
        DecayClass::BoundedOscillatory {
            power, frequency, ..
        } => oscillation(frequency, power < 0.0),
    }
}

/// Truncation point used by the oracle.
pub fn oracle_cutoff(decay: &DecayClass, lower: f64) -> Result<f64> {
    let mut x = lower.max(0.0) + 1.0;
    for _ in 0..200 {
        if matches!(log_slope_tail(decay, x), Some(t) if t < TRUNCATION) {
            return Ok(x);
        }
        x = lower + 2.0 * (x - lower);
    }
    Err(Error::domain("oracle found no usable truncation point"))
}

/// `∫_lower^∞ f` by brute force.
pub fn oracle_integrate<I: Integrand + ?Sized>(f: &I, lower: f64) -> Result<Complex64> {
    let upper = oracle_cutoff(&f.decay(), lower)?;
    oracle_integrate_finite(|x| f.eval(x), lower, upper)
}

/// `∫_a^b f` by composite Simpson with step halving.
pub fn oracle_integrate_finite<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64) -> Result<Complex64> {
    let mut n = START_INTERVALS;
    let ends = f(a) + f(b);
    let mut even = Complex64::new(0.0, 0.0);
    let mut odd = Complex64::new(0.0, 0.0);
    let h0 = (b - a) / n as f64;
    for k in 1..n {
        let v = f(a + h0 * k as f64);
        if k % 2 == 0 {
            even += v;
        } else {
            odd += v;
        }
    }
    let simpson = |n: usize, ends: Complex64, even: Complex64, odd: Complex64| {
        (ends + even * 2.0 + odd * 4.0) * ((b - a) / n as f64 / 3.0)
    };
    let mut last = simpson(n, ends, even, odd);
    if !(last.re.is_finite() && last.im.is_finite()) {
        return Err(Error::domain(
            "oracle integrand produced a non-finite value",
        ));
    }
    while n < MAX_INTERVALS {
        n *= 2;
        even += odd;
        odd = Complex64::new(0.0, 0.0);
        let h = (b - a) / n as f64;
        for k in (1..n).step_by(2) {
            odd += f(a + h * k as f64);
        }
        let next = simpson(n, ends, even, odd);
        if (next - last).norm() <= AGREEMENT {
            return Ok(next);
        }
        last = next;
    }
    Err(Error::Convergence {
        subdivisions: n,
        estimate: f64::NAN,
        target: AGREEMENT,
    })
}
