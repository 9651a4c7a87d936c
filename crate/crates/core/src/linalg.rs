//! Dense helpers: determinants, permanents, tridiagonal solves, line fits.
//!
//! Matrices are row-major `&[Complex64]` slices; every routine here works on
//! the small systems this crate produces (N up to 20), so no external linear
//! algebra stack is pulled in.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Determinant by LU decomposition with partial pivoting.
pub fn determinant(matrix: &[Complex64], n: usize) -> Complex64 {
    assert_eq!(matrix.len(), n * n);
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut a = matrix.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        // Pivot on the largest remaining entry in this column.
        let mut pivot = col;
        let mut best = a[col * n + col].norm_sqr();
        for row in col + 1..n {
            let mag = a[row * n + col].norm_sqr();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        let diag = a[col * n + col];
        det *= diag;
        for row in col + 1..n {
            let factor = a[row * n + col] / diag;
            for k in col..n {
                let sub = factor * a[col * n + k];
                a[row * n + k] -= sub;
            }
        }
    }
    det
}

/// Permanent by Ryser's formula with Gray-code subset updates, O(2^n · n).
///
/// perm(A) = (-1)^n Σ_{S ≠ ∅} (-1)^{|S|} Π_i Σ_{j ∈ S} A_ij
pub fn permanent(matrix: &[Complex64], n: usize) -> Complex64 {
    assert_eq!(matrix.len(), n * n);
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    assert!(n < 64, "permanent subset mask is a u64");
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let next_gray = k ^ (k >> 1);
        let flipped = (gray ^ next_gray).trailing_zeros() as usize;
        if next_gray & (1 << flipped) != 0 {
            for (i, sums) in row_sums.iter_mut().enumerate() {
                *sums += matrix[i * n + flipped];
            }
        } else {
            for (i, sums) in row_sums.iter_mut().enumerate() {
                *sums -= matrix[i * n + flipped];
            }
        }
        gray = next_gray;
        let mut product = Complex64::new(1.0, 0.0);
        for sums in &row_sums {
            product *= *sums;
        }
        if next_gray.count_ones() % 2 == 0 {
            total -= product;
        } else {
            total += product;
        }
    }
    if n % 2 == 0 {
        -total
    } else {
        total
    }
}

/// Thomas algorithm for a tridiagonal system.
///
/// `lower[i]` multiplies x[i-1] in row i (lower[0] unused), `upper[i]`
/// multiplies x[i+1] (upper[n-1] unused).
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(lower.len() == n && upper.len() == n && rhs.len() == n);
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i] * c[i - 1];
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Ordinary least squares for y = slope · x + intercept.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual_rms: f64,
}

pub fn fit_line(x: &[f64], y: &[f64]) -> LineFit {
    assert!(x.len() == y.len() && x.len() >= 2);
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let r = yi - slope * xi - intercept;
        ss += r * r;
    }
    LineFit {
        slope,
        intercept,
        residual_rms: crate::fmath::sqrt(ss / n),
    }
}
