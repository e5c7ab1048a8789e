//! Dipole autocorrelation and self susceptibility of a fluid of freely
//! rotating rigid symmetric tops (`I₁ = I₂`), in reduced units.
//!
//! A top with angular momentum `L` has kinetic energy `f(θ) L² / 2I₃`,
//! where `θ` is the tilt of the symmetry axis (which carries the dipole)
//! away from `L`. Torque-free, the axis precesses about the fixed `L` at
//! rate `L/I₁`, so in the dimensionless time `u = L t / I₃`
//!
//! ```text
//! cos γ(θ, u) = cos²θ + sin²θ cos((I₃/I₁) u).
//! ```
//!
//! Ensemble averages use the measure `sinθ dθ dψ L e^{-β f L² / 2I₃} dL`;
//! the partition function `Z` is the same measure without `cos γ`, so the
//! correlation is 1 at time zero. The θ integral is a 64-point
//! Gauss–Legendre rule in `cosθ`; the ψ integral is a factor `2π` because
//! nothing depends on ψ for a symmetric top.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gfunc::{g, GOrder};
use crate::quadrature::legendre::gauss_legendre;
use crate::quadrature::{
    integrate_finite_split, integrate_semi_infinite, DecayClass, EvalResult, FnIntegrand,
    QuadratureConfig,
};
use crate::special::dawson;

/// Order of the Gauss–Legendre rule in `cosθ`.
pub const ANGULAR_ORDER: usize = 64;

/// A symmetric top: `I₁ = I₂ = i1`, `I₃ = i3`. The dipole lies along the
/// symmetry axis and only normalizes, so it cancels from every output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorSpec {
    pub i1: f64,
    pub i3: f64,
    pub dipole: f64,
}

impl RotorSpec {
    pub fn new(i1: f64, i3: f64, dipole: f64) -> Result<Self> {
        let r = RotorSpec { i1, i3, dipole };
        r.validate()?;
        Ok(r)
    }

    /// Spherical top in reduced units.
    pub fn spherical() -> Self {
        RotorSpec {
            i1: 1.0,
            i3: 1.0,
            dipole: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("i1", self.i1), ("i3", self.i3), ("dipole", self.dipole)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite (got {v})"
                )));
            }
        }
        Ok(())
    }

    /// `I₃ / I₁`.
    pub fn ratio(&self) -> f64 {
        self.i3 / self.i1
    }
}

/// Inverse temperature, collision time and driving frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseParams {
    pub beta: f64,
    pub tau: f64,
    pub omega: f64,
}

impl ResponseParams {
    pub fn new(beta: f64, tau: f64, omega: f64) -> Result<Self> {
        let p = ResponseParams { beta, tau, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::domain(format!(
                "beta must be positive (got {})",
                self.beta
            )));
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::domain(format!(
                "tau must be positive (got {}); the time integral needs damping",
                self.tau
            )));
        }
        if !(self.omega >= 0.0) || !self.omega.is_finite() {
            return Err(Error::domain(format!(
                "omega must be >= 0 (got {})",
                self.omega
            )));
        }
        Ok(())
    }

    /// Complex frequency `ω + i/τ`.
    pub fn complex_frequency(&self) -> Complex64 {
        Complex64::new(self.omega, 1.0 / self.tau)
    }

    /// `1/τ - iω`, the coefficient multiplying `I₃ u / L` in the kernel.
    pub fn damping(&self) -> Complex64 {
        Complex64::new(1.0 / self.tau, -self.omega)
    }
}

/// `C(u)` at dimensionless time `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationPoint {
    pub u: f64,
    pub value: f64,
}

/// `f(θ, ψ)`, relating rotational energy to `L²/2I₃`.
pub fn angular_factor(theta: f64, psi: f64, rotor: &RotorSpec) -> f64 {
    let (s, c) = theta.sin_cos();
    let (sp, cp) = psi.sin_cos();
    let i2 = rotor.i1;
    (rotor.i3 / rotor.i1) * s * s * sp * sp + (rotor.i3 / i2) * s * s * cp * cp + c * c
}

/// `f` as a function of `cosθ` alone (symmetric top).
fn factor_from_cos(c: f64, rotor: &RotorSpec) -> f64 {
    rotor.ratio() * (1.0 - c * c) + c * c
}

/// Rotational kinetic energy `f(θ,ψ) L² / 2I₃`; the translational part is a
/// constant factor in every average and is left out.
pub fn rotational_energy(l: f64, theta: f64, psi: f64, rotor: &RotorSpec) -> f64 {
    angular_factor(theta, psi, rotor) * l * l / (2.0 * rotor.i3)
}

/// `μ(0)·μ(u)/μ²` for a top whose axis is tilted by `θ` from `L`.
pub fn cos_gamma(theta: f64, u: f64, rotor: &RotorSpec) -> f64 {
    let (s, c) = theta.sin_cos();
    c * c + s * s * (rotor.ratio() * u).cos()
}

fn cos_gamma_from_cos(c: f64, u: f64, rotor: &RotorSpec) -> f64 {
    c * c + (1.0 - c * c) * (rotor.ratio() * u).cos()
}

/// `∫_0^∞ L exp(-(βf/2I₃) L² - (1/τ - iω) I₃ u / L) dL` through
/// `L = y √(2I₃/βf)`: the kernel equals `(2I₃/βf) g₁(z)` with
/// `z = (1/τ - iω) u √(β f I₃ / 2)`, which has `Re z >= 0` and `Im z <= 0`.
pub fn g_kernel(
    theta: f64,
    u: f64,
    rotor: &RotorSpec,
    params: &ResponseParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    rotor.validate()?;
    params.validate()?;
    check_u(u)?;
    let f = angular_factor(theta, 0.0, rotor);
    let z = params.damping() * (u * (params.beta * f * rotor.i3 / 2.0).sqrt());
    let prefactor = 2.0 * rotor.i3 / (params.beta * f);
    Ok(g(GOrder::new(1)?, z, cfg)?.scale(Complex64::new(prefactor, 0.0)))
}

/// The same kernel by direct quadrature in `L`.
pub fn g_kernel_direct(
    theta: f64,
    u: f64,
    rotor: &RotorSpec,
    params: &ResponseParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    rotor.validate()?;
    params.validate()?;
    check_u(u)?;
    let a = params.beta * angular_factor(theta, 0.0, rotor) / (2.0 * rotor.i3);
    let b = params.damping() * (rotor.i3 * u);
    let integrand = move |l: f64| {
        if l <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let amp = (l.ln() - a * l * l - b.re / l).exp();
        let phase = -b.im / l;
        Complex64::new(amp * phase.cos(), amp * phase.sin())
    };
    let decay = DecayClass::GaussianTail {
        coeff: 1.0,
        power: 1.0,
        rate: a,
    };
    integrate_semi_infinite(&FnIntegrand::new(integrand, decay), 0.0, cfg)
}

fn check_u(u: f64) -> Result<()> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::domain(format!(
            "time u must be finite and >= 0 (got {u})"
        )));
    }
    Ok(())
}

/// Gauss–Legendre nodes in `cosθ` with their Boltzmann weights
/// `2π w_k I₃ / (β f_k)` folded in.
struct AngularGrid {
    cos: Vec<f64>,
    weight: Vec<f64>,
    factor: Vec<f64>,
    z: f64,
}

impl AngularGrid {
    fn new(rotor: &RotorSpec, params: &ResponseParams) -> Self {
        let (cos, w) = gauss_legendre(ANGULAR_ORDER);
        let factor: Vec<f64> = cos.iter().map(|&c| factor_from_cos(c, rotor)).collect();
        let weight: Vec<f64> = w
            .iter()
            .zip(&factor)
            .map(|(w, f)| 2.0 * PI * w * rotor.i3 / (params.beta * f))
            .collect();
        let z = weight.iter().sum();
        AngularGrid {
            cos,
            weight,
            factor,
            z,
        }
    }
}

/// `Z = ∫ sinθ dθ ∫ dψ ∫ L exp(-βf L²/2I₃) dL`, the L integral done in
/// closed form (`I₃/βf`).
pub fn partition_normalizer(rotor: &RotorSpec, params: &ResponseParams) -> Result<f64> {
    rotor.validate()?;
    params.validate()?;
    Ok(AngularGrid::new(rotor, params).z)
}

/// `C(u) = ⟨cos γ(θ, u)⟩`, averaged with weight `sinθ / f(θ)`.
pub fn dipole_correlation(
    u: f64,
    rotor: &RotorSpec,
    params: &ResponseParams,
) -> Result<CorrelationPoint> {
    rotor.validate()?;
    params.validate()?;
    check_u(u)?;
    let grid = AngularGrid::new(rotor, params);
    let sum: f64 = grid
        .cos
        .iter()
        .zip(&grid.weight)
        .map(|(&c, w)| w * cos_gamma_from_cos(c, u, rotor))
        .sum();
    Ok(CorrelationPoint {
        u,
        value: sum / grid.z,
    })
}

/// `2a ∫_0^∞ L e^{-aL²} cos(bL) dL = 1 - 2y F(y)` with `y = b / 2√a` and
/// `F` Dawson's integral.
fn boltzmann_cos_average(a: f64, b: f64) -> f64 {
    let y = b / (2.0 * a.sqrt());
    1.0 - 2.0 * y * dawson(y)
}

/// `⟨μ(0)·μ(t)⟩/μ²` in physical time: for each tilt the angular momentum
/// magnitude is averaged against its Boltzmann weight, giving the
/// precession factor in closed form.
pub fn time_correlation(t: f64, rotor: &RotorSpec, params: &ResponseParams) -> Result<f64> {
    rotor.validate()?;
    params.validate()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!(
            "time t must be finite and >= 0 (got {t})"
        )));
    }
    let grid = AngularGrid::new(rotor, params);
    Ok(time_correlation_on(&grid, t, rotor, params))
}

fn time_correlation_on(
    grid: &AngularGrid,
    t: f64,
    rotor: &RotorSpec,
    params: &ResponseParams,
) -> f64 {
    let b = t / rotor.i1;
    let sum: f64 = grid
        .cos
        .iter()
        .zip(&grid.weight)
        .zip(&grid.factor)
        .map(|((&c, w), &f)| {
            let a = params.beta * f / (2.0 * rotor.i3);
            w * (c * c + (1.0 - c * c) * boltzmann_cos_average(a, b))
        })
        .sum();
    sum / grid.z
}

/// `χ_s(ω + i/τ)/χ_s(0) = 1 + i(ω + i/τ) ∫_0^∞ e^{i(ω+i/τ)t} C(t) dt`,
/// integrated in physical time. The integrand is bounded by `e^{-t/τ}`.
pub fn susceptibility_ratio(
    rotor: &RotorSpec,
    params: &ResponseParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    rotor.validate()?;
    params.validate()?;
    let grid = AngularGrid::new(rotor, params);
    let w = params.complex_frequency();
    let iw = Complex64::new(0.0, 1.0) * w;
    let real_path = params.omega == 0.0;
    let integrand = |t: f64| {
        let c = time_correlation_on(&grid, t, rotor, params);
        if real_path {
            Complex64::new((-t / params.tau).exp() * c, 0.0)
        } else {
            (iw * t).exp() * c
        }
    };
    let decay = DecayClass::ExponentialTail {
        coeff: 1.0,
        power: 0.0,
        rate: 1.0 / params.tau,
        frequency: params.omega,
    };
    let integral = integrate_semi_infinite(&FnIntegrand::new(integrand, decay), 0.0, cfg)?;
    let r = integral.scale(iw);
    Ok(EvalResult {
        value: Complex64::new(1.0, 0.0) + r.value,
        ..r
    })
}

/// The `L` integral left after trading `t` for `u = L t / I₃` at fixed `L`:
/// `I₃ ∫_0^∞ exp(-aL² - (1/τ - iω) I₃ u / L) dL = (I₃/√a) g₀(z)` with
/// `z = (1/τ - iω) I₃ √a u`. The Jacobian `dt = (I₃/L) du` cancels the
/// `L` of the Boltzmann measure, which is why `g₀` appears here where the
/// bare kernel [`g_kernel`] has `g₁`.
pub fn reconciled_kernel(
    theta: f64,
    u: f64,
    rotor: &RotorSpec,
    params: &ResponseParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    rotor.validate()?;
    params.validate()?;
    check_u(u)?;
    let a = params.beta * angular_factor(theta, 0.0, rotor) / (2.0 * rotor.i3);
    reconciled_kernel_at(a, u, rotor, params, cfg)
}

fn reconciled_kernel_at(
    a: f64,
    u: f64,
    rotor: &RotorSpec,
    params: &ResponseParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let sa = a.sqrt();
    let z = params.damping() * (rotor.i3 * sa * u);
    Ok(g(GOrder::new(0)?, z, cfg)?.scale(Complex64::new(rotor.i3 / sa, 0.0)))
}

/// The susceptibility ratio as a triple integral over `u`, `θ`, `ψ` of
/// `cos γ(θ, u)` against the reconciled kernel. Must agree with
/// [`susceptibility_ratio`].
pub fn susceptibility_ratio_u_domain(
    rotor: &RotorSpec,
    params: &ResponseParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    rotor.validate()?;
    params.validate()?;
    let grid = AngularGrid::new(rotor, params);
    let slopes: Vec<f64> = grid
        .factor
        .iter()
        .map(|&f| params.beta * f / (2.0 * rotor.i3))
        .collect();
    // The u-integrand is the angular sum of `2π w_k cosγ K_k(u)`; with the
    // Boltzmann weight `2π w_k I₃/(βf_k) = 2π w_k / (2 a_k)` already in
    // `grid.weight`, the remaining factor is `2 a_k K_k(u)`.
    let inner = QuadratureConfig {
        abs_tol: cfg.abs_tol * 1e-2,
        ..*cfg
    };
    let point = |u: f64| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&c, &w), &a) in grid.cos.iter().zip(&grid.weight).zip(&slopes) {
            let k = reconciled_kernel_at(a, u, rotor, params, &inner)?.value;
            acc += k * (w * 2.0 * a * cos_gamma_from_cos(c, u, rotor));
        }
        Ok(acc / grid.z)
    };

    let upper = u_cutoff(&grid, &slopes, rotor, params, cfg)?;
    let pieces = ((upper * (rotor.ratio() + params.omega)) / PI)
        .ceil()
        .max(16.0) as usize;
    // The quadrature rule needs an infallible integrand; the first failure is
    // kept and reported after the sweep.
    let failure = core::cell::RefCell::new(None);
    let integrand = |u: f64| match point(u) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let integral = integrate_finite_split(integrand, 0.0, upper, pieces, cfg);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let integral = integral?;
    let iw = Complex64::new(0.0, 1.0) * params.complex_frequency();
    let r = integral.scale(iw);
    Ok(EvalResult {
        value: Complex64::new(1.0, 0.0) + r.value,
        ..r
    })
}

/// Smallest doubling `U` with `∫_U^∞ |integrand| du` below the tail share of
/// `abs_tol`. Uses `|g₀(z)| <= g₀(Re z)` and `∫_U^∞ g₀(c u) du = g₁(c U)/c`.
fn u_cutoff(
    grid: &AngularGrid,
    slopes: &[f64],
    rotor: &RotorSpec,
    params: &ResponseParams,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let bound_cfg = QuadratureConfig {
        abs_tol: 1e-300,
        rel_tol: 1e-6,
        ..*cfg
    };
    let target = cfg.abs_tol * 1e-3;
    let g1 = GOrder::new(1)?;
    let mut upper = 1.0;
    for _ in 0..64 {
        let mut tail = 0.0;
        for (&w, &a) in grid.weight.iter().zip(slopes) {
            let sa = a.sqrt();
            let c = rotor.i3 * sa / params.tau;
            let g1_val = g(g1, Complex64::new(c * upper, 0.0), &bound_cfg)?.value.re;
            tail += w * 2.0 * a * (rotor.i3 / sa) * g1_val / c;
        }
        // |1 + i w I| error scales with |w|
        if tail / grid.z * params.complex_frequency().norm() * 1.01 <= target {
            return Ok(upper * cfg.tail_cutoff_factor);
        }
        upper *= 2.0;
    }
    Err(Error::Convergence {
        subdivisions: 0,
        estimate: f64::INFINITY,
        target,
    })
}
