//! The identity suite behind `gfn selftest`.
//!
//! Thresholds are stated for the default absolute tolerance `1e-12` and
//! scale linearly with the configured one, so tightening the tolerance
//! past what double precision can deliver makes the suite fail.

use std::f64::consts::PI;
use std::fmt::Write;

use gfn_core::special::factorial;
use gfn_core::{
    g, g_derivative, g_gamma_special, g_inverse_form, g_polar_parts, ode_residual,
    recurrence_residual, Complex64, GOrder, PolarArg, QuadratureConfig, M_MAX,
};
use rayon::prelude::*;

const REFERENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub name: &'static str,
    pub points: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub families: Vec<FamilyReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.failures.is_empty())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for f in &self.families {
            let verdict = if f.failures.is_empty() {
                "PASS"
            } else {
                "FAIL"
            };
            let _ = writeln!(
                out,
                "{verdict} {:<16} {:>3} points  max residual {:.3e}  threshold {:.1e}",
                f.name, f.points, f.max_residual, f.threshold
            );
            for line in &f.failures {
                let _ = writeln!(out, "    {line}");
            }
        }
        let total: usize = self.families.iter().map(|f| f.points).sum();
        let failed: usize = self.families.iter().map(|f| f.failures.len()).sum();
        let _ = writeln!(
            out,
            "{} ({failed} of {total} points failed)",
            if failed == 0 { "ok" } else { "FAILED" }
        );
        out
    }
}

fn ord(m: u32) -> GOrder {
    GOrder::new(m).expect("order within range")
}

fn grid() -> Vec<Complex64> {
    let mut zs = Vec::with_capacity(12);
    for re in [0.0, 0.5, 1.0, 3.0] {
        for im in [0.0, -1.0, -3.0] {
            zs.push(Complex64::new(re, im));
        }
    }
    zs
}

fn show(z: Complex64) -> String {
    format!("({}, {})", z.re, z.im)
}

/// A residual check at one point: `Ok((residual, bound))` or an evaluation error.
type Check = Box<dyn Fn(&QuadratureConfig) -> gfn_core::Result<(f64, f64)> + Send + Sync>;

fn family(
    name: &'static str,
    threshold: f64,
    cases: Vec<(String, Check)>,
    cfg: &QuadratureConfig,
) -> FamilyReport {
    let outcomes: Vec<_> = cases.par_iter().map(|(_, check)| check(cfg)).collect();
    let mut max_residual: f64 = 0.0;
    let mut failures = Vec::new();
    for ((label, _), outcome) in cases.iter().zip(outcomes) {
        match outcome {
            Ok((res, bound)) => {
                max_residual = max_residual.max(res);
                if !(res <= bound) {
                    failures.push(format!("{label}: residual {res:.3e} > {bound:.3e}"));
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    FamilyReport {
        name,
        points: cases.len(),
        max_residual,
        threshold,
        failures,
    }
}

pub fn run_selftest(cfg: &QuadratureConfig) -> Report {
    let s = cfg.abs_tol / REFERENCE_TOL;
    let mut families = Vec::new();

    let t = 1e-10 * s;
    let cases: Vec<(String, Check)> = (0..=M_MAX)
        .map(|m| {
            let check: Check = Box::new(move |c| {
                let v = g(ord(m), Complex64::new(0.0, 0.0), c)?.value;
                let mut res = (v - g_gamma_special(ord(m))).norm();
                if m % 2 == 1 && g_gamma_special(ord(m)) != factorial((m - 1) / 2) / 2.0 {
                    res = f64::INFINITY;
                }
                Ok((res, t))
            });
            (format!("m = {m}, z = (0, 0)"), check)
        })
        .collect();
    families.push(family("gamma-anchor", t, cases, cfg));

    let t = 1e-9 * s;
    let mut cases: Vec<(String, Check)> = Vec::new();
    for m in [0, 1, 2, 3, 5, 8] {
        for z in grid() {
            let check: Check = Box::new(move |c| {
                let a = g(ord(m), z, c)?.value;
                let b = g_inverse_form(ord(m), z, c)?.value;
                Ok(((a - b).norm(), t))
            });
            cases.push((format!("m = {m}, z = {}", show(z)), check));
        }
    }
    families.push(family("representation", t, cases, cfg));

    let t = 1e-9 * s;
    let mut cases: Vec<(String, Check)> = Vec::new();
    for m in [3, 4, 5, 8] {
        for z in grid() {
            let check: Check = Box::new(move |c| {
                let res = recurrence_residual(ord(m), z, c)?;
                Ok((res, t * (1.0 + g(ord(m), z, c)?.value.norm())))
            });
            cases.push((format!("m = {m}, z = {}", show(z)), check));
        }
    }
    families.push(family("recurrence", t, cases, cfg));

    // central difference with h = 1e-5, relative to |g_{m-1}|
    let t = 1e-6;
    let mut cases: Vec<(String, Check)> = Vec::new();
    for m in [1, 2, 5] {
        for z in [
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, -1.0),
        ] {
            let check: Check = Box::new(move |c| {
                let h = 1e-5;
                let fd = (g(ord(m), z + h, c)?.value - g(ord(m), z - h, c)?.value) / (2.0 * h);
                let exact = -g(ord(m - 1), z, c)?.value;
                let analytic = g_derivative(ord(m), z, 1, c)?.value;
                let res = ((fd - exact).norm() / exact.norm())
                    .max((analytic - exact).norm() / exact.norm());
                Ok((res, t))
            });
            cases.push((format!("m = {m}, z = {}", show(z)), check));
        }
    }
    families.push(family("derivative", t, cases, cfg));

    let t = 1e-8 * s;
    let mut cases: Vec<(String, Check)> = Vec::new();
    for m in [0, 3, 4] {
        for x in [0.5, 1.0, 2.0] {
            let check: Check = Box::new(move |c| Ok((ode_residual(ord(m), x, c)?, t)));
            cases.push((format!("m = {m}, z = ({x}, 0)"), check));
        }
    }
    families.push(family("ode", t, cases, cfg));

    let t = 1e-8 * s;
    let mut cases: Vec<(String, Check)> = Vec::new();
    for r in [0.5, 1.0, 3.0, 6.0] {
        for theta in [0.0, PI / 6.0, PI / 3.0, PI / 2.0] {
            let arg = PolarArg::new(r, theta).expect("valid polar grid");
            let z = arg.to_complex();
            let check: Check = Box::new(move |c| {
                let (re, im) = g_polar_parts(ord(1), arg, c)?;
                let v = g(ord(1), z, c)?.value;
                Ok(((re - v.re).abs().max((im - v.im).abs()), t))
            });
            cases.push((format!("m = 1, z = {}", show(z)), check));
        }
    }
    families.push(family("polar-parts", t, cases, cfg));

    // n <= m stays finite at the origin, n = m + 1 blows up
    let cases: Vec<(String, Check)> = vec![(
        "m = 1, z = (1e-1 .. 1e-3, 0)".into(),
        Box::new(|c| {
            let d = |n: u32, x: f64| -> gfn_core::Result<f64> {
                Ok(g_derivative(ord(1), Complex64::new(x, 0.0), n, c)?
                    .value
                    .norm())
            };
            let xs = [1e-1, 1e-2, 1e-3];
            let mut ok = true;
            for w in xs.windows(2) {
                let (a, b) = (d(1, w[0])?, d(1, w[1])?);
                ok &= a / b < 2.0 && b / a < 2.0 && d(2, w[1])? > d(2, w[0])?;
            }
            Ok((if ok { 0.0 } else { 1.0 }, 0.0))
        }),
    )];
    families.push(family("origin-derivative", 0.0, cases, cfg));

    Report { families }
}
