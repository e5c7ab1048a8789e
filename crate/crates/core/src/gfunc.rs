//! The g-function family `g_m(z) = ∫_0^∞ y^m exp(-y² - z/y) dy`.
//!
//! Every evaluation splits the integral at `y = s` (the configured split
//! point). On `[s, ∞)` the integrand is used as written and decays like a
//! Gaussian. On `(0, s]` the substitution `y = 1/x` turns the essential
//! singularity at the origin into `x^{-(m+2)} exp(-1/x² - z x)` on
//! `[1/s, ∞)`, which decays exponentially when `Re z > 0` and is a bounded
//! oscillation when `Re z = 0`.
//!
//! Sign convention for polar arguments: `z = r e^{-iθ}` with
//! `0 <= θ <= π/2`, so `Im z <= 0` and the imaginary part of `g_m` carries
//! `+sin(r sinθ / y)` in its integrand.

use alloc::format;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_finite, integrate_semi_infinite, DecayClass, EvalResult, FnIntegrand,
    QuadratureConfig,
};
use crate::special::{factorial, gamma_half_integer};

/// Largest supported order.
pub const M_MAX: u32 = 20;

/// Order `m` of the family, `0 <= m <= M_MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GOrder(u32);

impl GOrder {
    pub fn new(m: u32) -> Result<Self> {
        if m > M_MAX {
            return Err(Error::domain(format!(
                "order m = {m} exceeds M_MAX = {M_MAX}"
            )));
        }
        Ok(GOrder(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for GOrder {
    type Error = Error;
    fn try_from(m: u32) -> Result<Self> {
        GOrder::new(m)
    }
}

/// Polar form `z = r e^{-iθ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarArg {
    r: f64,
    theta: f64,
}

impl PolarArg {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::domain(format!(
                "modulus r must be finite and >= 0 (got {r})"
            )));
        }
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::domain(format!(
                "phase θ must lie in [0, π/2] (got {theta})"
            )));
        }
        Ok(PolarArg { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(r cosθ, r sinθ)`, with the endpoints of the phase range exact.
    pub fn components(&self) -> (f64, f64) {
        if self.theta == FRAC_PI_2 {
            (0.0, self.r)
        } else {
            (self.r * self.theta.cos(), self.r * self.theta.sin())
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let (a, b) = self.components();
        Complex64::new(a, -b)
    }
}

fn check_argument(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("argument z = {z} is not finite")));
    }
    if z.re < 0.0 {
        return Err(Error::domain(format!(
            "Re z = {} < 0: the integral diverges at y -> 0",
            z.re
        )));
    }
    Ok(())
}

/// `y^k exp(-y² - a/y)` for `y > 0`, with `y²` split exactly so the
/// exponential sees no rounding in its largest term.
fn direct_amplitude(k: i32, a: f64, y: f64) -> f64 {
    let y2 = y * y;
    let low = y.mul_add(y, -y2);
    y.powi(k) * (-y2 - a / y).exp() * (1.0 - low)
}

/// `y^k exp(-y² - z/y)` for `y >= s`; bounded by `y^k e^{-y²}` since Re z >= 0.
fn direct_piece(k: i32, z: Complex64, s: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    let decay = DecayClass::GaussianTail {
        coeff: 1.0,
        power: k as f64,
        rate: 1.0,
    };
    if z.im == 0.0 {
        let f = move |y: f64| Complex64::new(direct_amplitude(k, z.re, y), 0.0);
        integrate_semi_infinite(&FnIntegrand::new(f, decay), s, cfg)
    } else {
        let f = move |y: f64| {
            let amp = direct_amplitude(k, z.re, y);
            let phase = z.im / y;
            Complex64::new(amp * phase.cos(), -amp * phase.sin())
        };
        integrate_semi_infinite(&FnIntegrand::new(f, decay), s, cfg)
    }
}

fn inverted_decay(k: i32, z: Complex64) -> DecayClass {
    let power = -(k as f64 + 2.0);
    if z.re == 0.0 && z.im != 0.0 {
        DecayClass::BoundedOscillatory {
            coeff: 1.0,
            power,
            frequency: z.im.abs(),
        }
    } else {
        DecayClass::ExponentialTail {
            coeff: 1.0,
            power,
            rate: z.re,
            frequency: z.im.abs(),
        }
    }
}

/// `x^{-(k+2)} exp(-1/x² - z x)`, the integrand after `y = 1/x`.
fn inverted_integrand(k: i32, z: Complex64) -> impl Fn(f64) -> Complex64 + Copy {
    move |x: f64| {
        if x <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let amp = (-(k as f64 + 2.0) * x.ln() - 1.0 / (x * x) - z.re * x).exp();
        if z.im == 0.0 {
            Complex64::new(amp, 0.0)
        } else {
            let phase = z.im * x;
            Complex64::new(amp * phase.cos(), -amp * phase.sin())
        }
    }
}

/// `∫_0^s y^k exp(-y² - z/y) dy` through the inverted form.
fn inverted_piece(k: i32, z: Complex64, s: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if z == Complex64::new(0.0, 0.0) {
        // no singularity to tame: integrate y^k e^{-y²} directly
        let f = move |y: f64| Complex64::new(y.powi(k) * (-y * y).exp(), 0.0);
        return integrate_finite(f, 0.0, s, cfg);
    }
    let f = FnIntegrand::new(inverted_integrand(k, z), inverted_decay(k, z));
    integrate_semi_infinite(&f, 1.0 / s, cfg)
}

/// Adds two independently computed pieces, re-running them with a shared
/// absolute budget when cancellation leaves the sum short of its target.
fn two_pieces<F>(cfg: &QuadratureConfig, piece: F) -> Result<EvalResult>
where
    F: Fn(&QuadratureConfig, bool) -> Result<EvalResult>,
{
    let half = QuadratureConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        ..*cfg
    };
    let total = piece(&half, false)?.combine(piece(&half, true)?);
    let target = cfg.target(total.value.norm());
    if total.abs_error_estimate <= target {
        return Ok(total);
    }
    let strict = QuadratureConfig {
        abs_tol: 0.45 * target,
        rel_tol: 1e-3 * cfg.rel_tol,
        ..*cfg
    };
    let total = piece(&strict, false)?.combine(piece(&strict, true)?);
    let target = cfg.target(total.value.norm());
    if total.abs_error_estimate <= target {
        Ok(total)
    } else {
        Err(Error::Convergence {
            subdivisions: total.subdivisions_used,
            estimate: total.abs_error_estimate,
            target,
        })
    }
}

/// `∫_0^∞ y^k exp(-y² - z/y) dy` for any integer `k`; negative `k` needs
/// `Re z > 0`.
pub(crate) fn order_integral(k: i32, z: Complex64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    cfg.validate()?;
    check_argument(z)?;
    if k < 0 && z.re == 0.0 {
        return Err(Error::domain(format!(
            "exponent {k} < 0 with Re z = 0: the integral diverges at y -> 0"
        )));
    }
    let s = cfg.split_point;
    let mut r = two_pieces(cfg, |c, inverted| {
        if inverted {
            inverted_piece(k, z, s, c)
        } else {
            direct_piece(k, z, s, c)
        }
    })?;
    if z.im == 0.0 {
        r.value.im = 0.0;
    }
    Ok(r)
}

/// `g_m(z)`.
pub fn g(m: GOrder, z: Complex64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    order_integral(m.get() as i32, z, cfg)
}

/// `g_m(z)` evaluated entirely through the inverted representation
/// `∫_0^∞ exp(-1/x² - z x) / x^{m+2} dx`, broken at `x = 2/s` so that its
/// panels never coincide with those of [`g`].
pub fn g_inverse_form(m: GOrder, z: Complex64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    cfg.validate()?;
    check_argument(z)?;
    let k = m.get() as i32;
    let xs = 2.0 / cfg.split_point;
    let f = inverted_integrand(k, z);
    let mut r = two_pieces(cfg, |c, tail| {
        if tail {
            integrate_semi_infinite(&FnIntegrand::new(f, inverted_decay(k, z)), xs, c)
        } else {
            integrate_finite(f, 0.0, xs, c)
        }
    })?;
    if z.im == 0.0 {
        r.value.im = 0.0;
    }
    Ok(r)
}

/// `g_m(0) = Γ((m+1)/2) / 2` in closed form.
///
/// For odd orders `m = 2n + 1` this is `n!/2`. (The classical statement of
/// that case writes the left side with `2m+1` and the right side with `n`;
/// the index is read as `n` throughout, which is what the Gamma form gives.)
pub fn g_gamma_special(m: GOrder) -> f64 {
    let m = m.get();
    if m % 2 == 1 {
        0.5 * factorial((m - 1) / 2)
    } else {
        0.5 * gamma_half_integer(m + 1)
    }
}

/// `φ_m(x) = ∫_0^∞ y^m exp(-y - x/√y) dy`, through `φ_m(x) = 2 g_{2m+1}(x)`
/// (substitute `y = w²`).
pub fn phi(m: u32, x: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if 2 * m + 1 > M_MAX {
        return Err(Error::domain(format!(
            "φ_m needs 2m+1 <= {M_MAX} (got m = {m})"
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "φ_m needs a finite x >= 0 (got {x})"
        )));
    }
    let r = g(GOrder(2 * m + 1), Complex64::new(x, 0.0), cfg)?;
    Ok(r.scale(Complex64::new(2.0, 0.0)))
}

/// `d^n g_m / dz^n = (-1)^n ∫_0^∞ exp(-1/x² - z x) / x^{m-n+2} dx`.
///
/// For `n <= m` the limit at the origin is finite; for `n > m` it diverges,
/// so `Re z > 0` is required.
pub fn g_derivative(m: GOrder, z: Complex64, n: u32, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if n == 0 {
        return Err(Error::domain("derivative order n must be at least 1"));
    }
    check_argument(z)?;
    if n > m.get() && z.re == 0.0 {
        return Err(Error::domain(format!(
            "d^{n} g_{} diverges at Re z = 0 (n > m)",
            m.get()
        )));
    }
    let r = order_integral(m.get() as i32 - n as i32, z, cfg)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(r.scale(Complex64::new(sign, 0.0)))
}

/// `(Re g_m, Im g_m)` at `z = r e^{-iθ}`, each part integrated on its own
/// as a real integral with a `cos(r sinθ / y)` or `sin(r sinθ / y)` factor.
pub fn g_polar_parts(m: GOrder, arg: PolarArg, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let (a, b) = arg.components();
    if arg.r() == 0.0 {
        return Ok((g_gamma_special(m), 0.0));
    }
    let k = m.get() as i32;
    let s = cfg.split_point;
    let part = |sine: bool| -> Result<f64> {
        let trig = move |t: f64| if sine { t.sin() } else { t.cos() };
        if sine && b == 0.0 {
            return Ok(0.0);
        }
        let direct_decay = DecayClass::GaussianTail {
            coeff: 1.0,
            power: k as f64,
            rate: 1.0,
        };
        let direct = move |y: f64| Complex64::new(direct_amplitude(k, a, y) * trig(b / y), 0.0);
        let inverted = move |x: f64| {
            if x <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let amp = (-(k as f64 + 2.0) * x.ln() - 1.0 / (x * x) - a * x).exp();
            Complex64::new(amp * trig(b * x), 0.0)
        };
        let z = Complex64::new(a, -b);
        let r = two_pieces(cfg, |c, inv| {
            if inv {
                integrate_semi_infinite(
                    &FnIntegrand::new(inverted, inverted_decay(k, z)),
                    1.0 / s,
                    c,
                )
            } else {
                integrate_semi_infinite(&FnIntegrand::new(direct, direct_decay), s, c)
            }
        })?;
        Ok(r.value.re)
    };
    Ok((part(false)?, part(true)?))
}

/// `|2 g_m(z) - (m-1) g_{m-2}(z) - z g_{m-3}(z)|`, zero up to quadrature
/// error for every `m >= 3`.
pub fn recurrence_residual(m: GOrder, z: Complex64, cfg: &QuadratureConfig) -> Result<f64> {
    let m = m.get();
    if m < 3 {
        return Err(Error::domain(format!("recurrence needs m >= 3 (got {m})")));
    }
    let gm = g(GOrder(m), z, cfg)?.value;
    let gm2 = g(GOrder(m - 2), z, cfg)?.value;
    let gm3 = g(GOrder(m - 3), z, cfg)?.value;
    Ok((gm * 2.0 - gm2 * (m as f64 - 1.0) - z * gm3).norm())
}

/// `|x g_m''' - (m-1) g_m'' + 2 g_m|` on the positive real axis, with the
/// derivatives taken from their integral representation.
pub fn ode_residual(m: GOrder, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "ODE residual needs a finite x > 0 (got {x})"
        )));
    }
    let z = Complex64::new(x, 0.0);
    let g0 = g(m, z, cfg)?.value;
    let g2 = g_derivative(m, z, 2, cfg)?.value;
    let g3 = g_derivative(m, z, 3, cfg)?.value;
    Ok((g3 * x - g2 * (m.get() as f64 - 1.0) + g0 * 2.0).norm())
}

/// Order-`m` Taylor polynomial of `g_m` at the origin,
/// `Σ_{k=0..m} (-z)^k / k! · g_{m-k}(0)`. Only the first `m` derivatives
/// exist at `z = 0`, so this is where the expansion stops.
pub fn taylor_truncated(m: GOrder, z: Complex64) -> Complex64 {
    let m = m.get();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..=m {
        if k > 0 {
            term = term * (-z) / k as f64;
        }
        sum += term * g_gamma_special(GOrder(m - k));
    }
    sum
}
