//! Small special-function and summation helpers.

use crate::fmath;

/// Neumaier-compensated accumulator.
///
/// Keeps a running correction term so that long sums of terms with very
/// different magnitudes stay accurate to close to one ulp of the result.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    correction: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.correction += (self.sum - t) + term;
        } else {
            self.correction += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    fmath::ln_gamma(x)
}

/// ln n!
pub fn ln_factorial(n: u64) -> f64 {
    fmath::ln_gamma(n as f64 + 1.0)
}

/// n! as f64 (exact up to n = 170 in range, exact integer up to n = 20).
pub fn factorial(n: u64) -> f64 {
    let mut acc = 1.0;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// Exact binomial coefficient C(n, k).
///
/// The running product is kept integral at every step: after multiplying by
/// `n - k + i` the product is divisible by `i`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}

/// ln C(n, k) for real-valued arguments via log-gamma.
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}
