use std::f64::consts::PI;

use gfn_core::quadrature::oracle::oracle_integrate_finite;
use gfn_core::rotor::*;
use gfn_core::{Complex64, QuadratureConfig};
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn rotor(ratio: f64) -> RotorSpec {
    RotorSpec::new(1.0 / ratio, 1.0, 1.0).unwrap()
}

fn params(beta: f64, tau: f64, omega: f64) -> ResponseParams {
    ResponseParams::new(beta, tau, omega).unwrap()
}

/// `√2 ln(1 + √2)`: `∫_{-1}^{1} dc / (2 - c²)`.
fn closed_a() -> f64 {
    2f64.sqrt() * (1.0 + 2f64.sqrt()).ln()
}

// Torque-free rigid body: Euler's equations plus the attitude matrix,
// integrated with classical RK4.
fn simulated_cos_gamma(theta: f64, l: f64, t_end: f64, rot: &RotorSpec) -> f64 {
    let inertia = [rot.i1, rot.i1, rot.i3];
    type State = ([f64; 3], [[f64; 3]; 3]);
    let deriv = |(lb, r): &State| -> State {
        let w = [lb[0] / inertia[0], lb[1] / inertia[1], lb[2] / inertia[2]];
        let dl = [
            lb[1] * w[2] - lb[2] * w[1],
            lb[2] * w[0] - lb[0] * w[2],
            lb[0] * w[1] - lb[1] * w[0],
        ];
        let mut dr = [[0.0; 3]; 3];
        for i in 0..3 {
            dr[i][0] = r[i][1] * w[2] - r[i][2] * w[1];
            dr[i][1] = r[i][2] * w[0] - r[i][0] * w[2];
            dr[i][2] = r[i][0] * w[1] - r[i][1] * w[0];
        }
        (dl, dr)
    };
    let axpy = |s: &State, k: &State, h: f64| -> State {
        let mut out = *s;
        for i in 0..3 {
            out.0[i] += h * k.0[i];
            for j in 0..3 {
                out.1[i][j] += h * k.1[i][j];
            }
        }
        out
    };
    let mut s: State = (
        [l * theta.sin(), 0.0, l * theta.cos()],
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    );
    let steps = 20_000;
    let h = t_end / steps as f64;
    for _ in 0..steps {
        let k1 = deriv(&s);
        let k2 = deriv(&axpy(&s, &k1, h / 2.0));
        let k3 = deriv(&axpy(&s, &k2, h / 2.0));
        let k4 = deriv(&axpy(&s, &k3, h));
        for i in 0..3 {
            s.0[i] += h / 6.0 * (k1.0[i] + 2.0 * k2.0[i] + 2.0 * k3.0[i] + k4.0[i]);
            for j in 0..3 {
                s.1[i][j] +=
                    h / 6.0 * (k1.1[i][j] + 2.0 * k2.1[i][j] + 2.0 * k3.1[i][j] + k4.1[i][j]);
            }
        }
    }
    s.1[2][2]
}

#[test]
fn precession_matches_rigid_body_simulation() {
    for ratio in [0.5, 2.0] {
        let rot = rotor(ratio);
        for theta in [0.3, 1.0, 2.2] {
            let (l, t) = (1.3, 4.0);
            let u = l * t / rot.i3;
            let sim = simulated_cos_gamma(theta, l, t, &rot);
            assert!(
                (cos_gamma(theta, u, &rot) - sim).abs() < 1e-9,
                "ratio {ratio}, θ {theta}"
            );
        }
    }
}

#[test]
fn kernel_reduces_to_g1() {
    for ratio in [0.5, 2.0] {
        let rot = rotor(ratio);
        let p = params(1.0, 2.0, 1.5);
        for theta in [0.0, PI / 6.0, PI / 3.0, PI / 2.0] {
            for u in [0.1, 1.0, 5.0] {
                let a = g_kernel(theta, u, &rot, &p, &cfg()).unwrap().value;
                let b = g_kernel_direct(theta, u, &rot, &p, &cfg()).unwrap().value;
                assert!((a - b).norm() <= 1e-8 * b.norm(), "θ {theta}, u {u}");
            }
        }
    }
    // oracle-generated: θ = 0, u = 1, τ = 2, ω = 1
    let k = g_kernel(
        0.0,
        1.0,
        &RotorSpec::spherical(),
        &params(1.0, 2.0, 1.0),
        &cfg(),
    )
    .unwrap();
    assert!(
        (k.value - Complex64::new(0.362_645_580_974_303_7, 0.400_718_555_257_870_9)).norm() < 1e-12
    );
}

#[test]
fn kernel_depends_on_beta_through_root_beta_u() {
    // K(θ, u; cβ) = K(θ, u√c; β) / c
    let rot = rotor(2.0);
    for c in [0.25, 4.0] {
        for (theta, u) in [(0.4, 0.7), (1.2, 2.0)] {
            let scaled = g_kernel(theta, u, &rot, &params(c, 1.5, 0.8), &cfg())
                .unwrap()
                .value;
            let base = g_kernel(theta, u * c.sqrt(), &rot, &params(1.0, 1.5, 0.8), &cfg())
                .unwrap()
                .value
                / c;
            assert!((scaled - base).norm() <= 1e-12 * base.norm());
        }
    }
}

#[test]
fn partition_function_closed_form() {
    let z = partition_normalizer(&rotor(2.0), &params(1.0, 1.0, 0.0)).unwrap();
    assert!((z - 2.0 * PI * closed_a()).abs() < 1e-12);
    assert!((z - 7.831_679_343_825_131).abs() < 1e-12);
}

#[test]
fn correlation_closed_form_for_prolate_ratio_two() {
    let a = closed_a();
    let rot = rotor(2.0);
    for u in [0.0, 0.5, 1.0, 3.7] {
        let c = dipole_correlation(u, &rot, &params(1.0, 1.0, 0.0))
            .unwrap()
            .value;
        let exact = (2.0 * a - 2.0 + (2.0 - a) * (2.0 * u).cos()) / a;
        assert!((c - exact).abs() < 1e-12, "u = {u}");
    }
    let c1 = dipole_correlation(1.0, &rot, &params(1.0, 1.0, 0.0))
        .unwrap()
        .value;
    assert!((c1 - 0.143_859_475_033_192_2).abs() < 1e-12);
}

#[test]
fn correlation_starts_at_one_and_stays_bounded() {
    for ratio in [0.5, 1.0, 2.0] {
        for beta in [0.5, 1.0, 2.0] {
            let rot = rotor(ratio);
            let p = params(beta, 1.0, 0.0);
            assert!((dipole_correlation(0.0, &rot, &p).unwrap().value - 1.0).abs() < 1e-8);
            for k in 0..200 {
                let c = dipole_correlation(0.37 * k as f64, &rot, &p).unwrap().value;
                assert!(c.abs() <= 1.0 + 1e-12);
            }
        }
    }
}

#[test]
fn spherical_plateau() {
    let rot = RotorSpec::spherical();
    let p = params(1.0, 1.0, 0.0);
    let n = 2001;
    let mean: f64 = (0..n)
        .map(|k| {
            dipole_correlation(40.0 + 20.0 * k as f64 / (n - 1) as f64, &rot, &p)
                .unwrap()
                .value
        })
        .sum::<f64>()
        / n as f64;
    assert!((mean - 1.0 / 3.0).abs() < 0.05, "{mean}");
}

#[test]
fn time_correlation_against_direct_integral() {
    let rot = rotor(0.5);
    let p = params(1.0, 1.0, 0.0);
    let grid = gfn_core::quadrature::legendre::gauss_legendre(ANGULAR_ORDER);
    for t in [0.0, 0.4, 2.0, 7.5] {
        let mut num = 0.0;
        let mut den = 0.0;
        for (&c, &w) in grid.0.iter().zip(&grid.1) {
            let theta = c.acos();
            let f = angular_factor(theta, 0.0, &rot);
            let a = p.beta * f / (2.0 * rot.i3);
            let avg = oracle_integrate_finite(
                |l: f64| {
                    Complex64::new(
                        l * (-a * l * l).exp() * cos_gamma(theta, l * t / rot.i3, &rot),
                        0.0,
                    )
                },
                0.0,
                (40.0 / a).sqrt(),
            )
            .unwrap()
            .re;
            num += w * avg;
            den += w / (2.0 * a);
        }
        assert!(
            (time_correlation(t, &rot, &p).unwrap() - num / den).abs() < 1e-10,
            "t = {t}"
        );
    }
}

#[test]
fn susceptibility_golden_spherical() {
    // oracle: nested composite Simpson over t and L (slow, frozen here)
    let r = susceptibility_ratio(&RotorSpec::spherical(), &params(1.0, 1.0, 0.0), &cfg()).unwrap();
    assert!((r.value.re - 0.359_029_789_172_119_9).abs() < 1e-10);
    assert_eq!(r.value.im, 0.0);
}

#[test]
fn susceptibility_limits() {
    let sph = RotorSpec::spherical();
    let high = susceptibility_ratio(&sph, &params(1.0, 1.0, 1e4), &cfg()).unwrap();
    assert!(high.value.norm() < 0.05);
    let slow = susceptibility_ratio(&sph, &params(1.0, 1e3, 0.0), &cfg()).unwrap();
    assert!((slow.value.re - 2.0 / 3.0).abs() < 0.05);
    for ratio in [0.5, 2.0] {
        let r = susceptibility_ratio(&rotor(ratio), &params(1.3, 0.8, 0.0), &cfg()).unwrap();
        assert!(r.value.im.abs() <= 1e-9);
    }
}

#[test]
fn time_and_u_domain_paths_agree() {
    for (ratio, beta, tau, omega) in [
        (0.5, 1.0, 1.0, 0.7),
        (2.0, 2.0, 0.5, 2.0),
        (1.0, 1.0, 1.0, 1.0),
    ] {
        let rot = rotor(ratio);
        let p = params(beta, tau, omega);
        let t = susceptibility_ratio(&rot, &p, &cfg()).unwrap().value;
        let u = susceptibility_ratio_u_domain(&rot, &p, &cfg())
            .unwrap()
            .value;
        assert!((t - u).norm() <= 1e-6 * t.norm(), "{t} vs {u}");
    }
}

#[test]
fn reconciled_kernel_is_the_jacobian_weighted_integral() {
    let rot = rotor(2.0);
    let p = params(1.0, 1.5, 0.6);
    let theta = 0.8;
    let a = p.beta * angular_factor(theta, 0.0, &rot) / (2.0 * rot.i3);
    let s = p.damping();
    for u in [0.2, 1.0, 4.0] {
        let direct = oracle_integrate_finite(
            |l: f64| {
                if l <= 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                (Complex64::new(-a * l * l, 0.0) - s * (rot.i3 * u / l)).exp() * rot.i3
            },
            0.0,
            (40.0 / a).sqrt(),
        )
        .unwrap();
        let k = reconciled_kernel(theta, u, &rot, &p, &cfg()).unwrap().value;
        assert!((k - direct).norm() < 1e-10, "u = {u}");
    }
}

#[test]
fn invalid_parameters_are_domain_errors() {
    assert!(ResponseParams::new(1.0, 0.0, 0.0).unwrap_err().is_domain());
    assert!(ResponseParams::new(-1.0, 1.0, 0.0).unwrap_err().is_domain());
    assert!(RotorSpec::new(0.0, 1.0, 1.0).unwrap_err().is_domain());
    let p = params(1.0, 1.0, 0.0);
    assert!(g_kernel(0.0, -1.0, &RotorSpec::spherical(), &p, &cfg())
        .unwrap_err()
        .is_domain());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn angular_factor_bounds(theta in 0.0..PI, psi in 0.0..2.0 * PI, ratio in prop::sample::select(vec![0.5, 1.0, 2.0])) {
        let f = angular_factor(theta, psi, &rotor(ratio));
        prop_assert!(f >= ratio.min(1.0) - 1e-15 && f <= ratio.max(1.0) + 1e-15);
    }
}
