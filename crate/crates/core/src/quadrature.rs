//! Adaptive Gauss-Legendre quadrature.

use alloc::vec::Vec;
use crate::error::{Error, Result};
use crate::fmath;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on the Legendre recurrence; accurate to
/// machine precision for the orders used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess.
        let mut x = fmath::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed-order rule on [a, b].
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (&x, &w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    /// |refined - coarse| on this segment.
    defect: f64,
}

fn make_segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> Segment {
    let coarse = panel(f, a, b, nodes, weights);
    let mid = 0.5 * (a + b);
    let refined = panel(f, a, mid, nodes, weights) + panel(f, mid, b, nodes, weights);
    Segment {
        a,
        b,
        value: refined,
        defect: (refined - coarse).abs(),
    }
}

const INITIAL_SEGMENTS: usize = 8;
const MAX_SEGMENTS: usize = 8192;

/// Adaptively integrate `f` over [a, b] to the given relative tolerance.
///
/// Globally budgeted: the segment with the largest defect is bisected until
/// the summed defects drop below `rel_tol` times the integral's magnitude.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature> {
    integrate_with_order(f, a, b, rel_tol, 16)
}

pub fn integrate_with_order<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    order: usize,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let (nodes, weights) = gauss_legendre(order.max(8));
    let mut segments: Vec<Segment> = Vec::with_capacity(64);
    let step = (b - a) / INITIAL_SEGMENTS as f64;
    for k in 0..INITIAL_SEGMENTS {
        let lo = a + step * k as f64;
        let hi = if k + 1 == INITIAL_SEGMENTS { b } else { lo + step };
        segments.push(make_segment(f, lo, hi, &nodes, &weights));
    }
    let mut previous_total = f64::NAN;
    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.defect).sum();
        let scale: f64 = segments.iter().map(|s| s.value.abs()).sum();
        if error <= rel_tol * scale.max(1e-300) || error <= 1e-16 * scale {
            return Ok(Quadrature {
                value: total,
                error_estimate: error,
            });
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::QuadratureNonConvergent {
                last: total,
                previous: previous_total,
            });
        }
        previous_total = total;
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|(_, s), (_, t)| s.defect.total_cmp(&t.defect))
            .map(|(i, _)| i)
            .unwrap();
        let Segment { a: lo, b: hi, .. } = segments[worst];
        let mid = 0.5 * (lo + hi);
        segments[worst] = make_segment(f, lo, mid, &nodes, &weights);
        segments.push(make_segment(f, mid, hi, &nodes, &weights));
    }
}
