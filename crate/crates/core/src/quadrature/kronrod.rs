//! Adaptive 7/15-point Gauss–Kronrod integration on finite intervals.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use super::EvalResult;
use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1); odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: Complex64,
    pub error: f64,
}

fn sample<F: Fn(f64) -> Complex64>(f: &F, x: f64) -> Result<Complex64> {
    let v = f(x);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(format!(
            "non-finite integrand sample at x = {x}"
        )))
    }
}

/// Compensated (Neumaier) sum.
pub(crate) fn neumaier(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for x in xs {
        let t = sum + x;
        carry += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    sum + carry
}

/// One 15-point Kronrod estimate with the embedded 7-point Gauss estimate;
/// the panel error is the magnitude of their difference.
pub(crate) fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = sample(f, center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = sample(f, center - dx)? + sample(f, center + dx)?;
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    })
}

struct Worst(Panel);

impl PartialEq for Worst {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Worst {}
impl PartialOrd for Worst {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Worst {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

fn splittable(p: &Panel) -> bool {
    let mid = 0.5 * (p.a + p.b);
    mid > p.a && mid < p.b && (p.b - p.a) > 1e3 * f64::EPSILON * p.a.abs().max(p.b.abs())
}

/// Adaptive bisection starting from the given breakpoints. The panel with
/// the largest local error is always split first, so the sequence of
/// operations (and the result) depends only on the inputs.
pub(crate) fn adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    breaks: &[f64],
    abs_target: f64,
    rel_tol: f64,
    budget: usize,
) -> Result<EvalResult> {
    debug_assert!(breaks.len() >= 2);
    let mut heap = BinaryHeap::with_capacity(budget.min(4096));
    let mut frozen: Vec<Panel> = Vec::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for w in breaks.windows(2) {
        let p = gk15(f, w[0], w[1])?;
        total += p.value;
        err += p.error;
        heap.push(Worst(p));
    }
    let mut count = breaks.len() - 1;

    loop {
        if err <= abs_target + rel_tol * total.norm() {
            break;
        }
        let Some(Worst(worst)) = heap.pop() else {
            break;
        };
        if !splittable(&worst) {
            frozen.push(worst);
            continue;
        }
        if count >= budget {
            heap.push(Worst(worst));
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(Worst(left));
        heap.push(Worst(right));
        count += 1;
    }

    let mut panels: Vec<Panel> = heap.into_iter().map(|w| w.0).collect();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = Complex64::new(
        neumaier(panels.iter().map(|p| p.value.re)),
        neumaier(panels.iter().map(|p| p.value.im)),
    );
    let error: f64 = panels.iter().map(|p| p.error).sum();
    let target = abs_target + rel_tol * value.norm();
    if error > target {
        return Err(Error::Convergence {
            subdivisions: count,
            estimate: error,
            target,
        });
    }
    Ok(EvalResult {
        value,
        abs_error_estimate: error,
        subdivisions_used: count,
    })
}
