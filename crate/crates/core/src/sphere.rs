//! SU(2) coherent states on a sphere threaded by 2j flux quanta.
//!
//! The sphere regularizes the system size: the lowest level has 2j+1 states
//! and single-particle phase-space volume A = 2j·h. Coordinates are
//! stereographic, z = −tan(θ/2) e^{−iφ}; the planar formulas are recovered at
//! large j after rescaling z → z/sqrt(2j).
//!
//! Normalizations are permanents/determinants of (1 + z̄_i z_j)^{2j}. They are
//! evaluated through the bounded overlap kernel times a log-domain prefactor
//! so large flux numbers stay in floating range.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fmath;
use crate::geometry::{BerryConnection, KahlerField};
use crate::linalg;
use crate::special;
use crate::statistics::Statistics;

/// Sphere with `two_j` flux quanta through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereGeometry {
    two_j: u32,
    /// Whether coordinates handed to state constructors are already in the
    /// rescaled chart z/sqrt(2j) that matches the planar formulas.
    pub rescaled_chart: bool,
}

impl SphereGeometry {
    pub fn new(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::InvalidParameter {
                name: "two_j",
                message: "sphere needs at least one flux quantum",
            });
        }
        Ok(Self {
            two_j,
            rescaled_chart: false,
        })
    }

    pub fn with_rescaled_chart(mut self) -> Self {
        self.rescaled_chart = true;
        self
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Number of lowest-level states, 2j + 1.
    pub fn degeneracy(&self) -> u32 {
        self.two_j + 1
    }

    /// Single-particle phase-space volume A = 2j · h.
    pub fn single_particle_volume(&self, hbar: f64) -> f64 {
        self.two_j as f64 * 2.0 * core::f64::consts::PI * hbar
    }
}

/// Overlap of two SU(2) coherent states:
/// ⟨z|w⟩ = [(1+z̄z)(1+w̄w)]^{−j} (1+z̄w)^{2j}.
pub fn su2_overlap(z: Complex64, w: Complex64, two_j: u32) -> Complex64 {
    let j = two_j as f64 / 2.0;
    let exponent = (Complex64::new(1.0, 0.0) + z.conj() * w).ln() * (2.0 * j)
        - Complex64::new(
            j * (fmath::ln_1p(z.norm_sqr()) + fmath::ln_1p(w.norm_sqr())),
            0.0,
        );
    exponent.exp()
}

/// N particles on the sphere with a choice of statistics.
#[derive(Debug, Clone)]
pub struct SphereNParticleState {
    /// Coordinates in the unrescaled stereographic chart.
    coords: Vec<Complex64>,
    pub statistics: Statistics,
    pub geometry: SphereGeometry,
}

impl SphereNParticleState {
    pub fn new(
        coords: Vec<Complex64>,
        statistics: Statistics,
        geometry: SphereGeometry,
    ) -> Result<Self> {
        if coords.len() > crate::planar::PARTICLE_CAP {
            return Err(Error::ParticleCap {
                n: coords.len(),
                cap: crate::planar::PARTICLE_CAP,
            });
        }
        if statistics.is_fermion() && coords.len() > geometry.degeneracy() as usize {
            // More fermions than lowest-level states: the state vanishes.
            return Err(Error::Overfilled {
                base: geometry.degeneracy() as f64 - coords.len() as f64,
            });
        }
        let coords = if geometry.rescaled_chart {
            let scale = fmath::sqrt(geometry.two_j as f64);
            coords.into_iter().map(|z| z / scale).collect()
        } else {
            coords
        };
        Ok(Self {
            coords,
            statistics,
            geometry,
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// |N|⁻² = Σ_P η_P Π_i (1 + z̄_{P(i)} z_i)^{2j}: permanent for bosons,
    /// determinant for fermions.
    pub fn norm_sq_inverse(&self) -> Result<f64> {
        let (reduced, ln_prefactor) = self.reduced_norm()?;
        let ln_scale = ln_prefactor;
        if ln_scale > 700.0 {
            return Err(Error::RangeOverflow { ln_value: ln_scale });
        }
        Ok(reduced * fmath::exp(ln_prefactor))
    }

    /// ln |N|⁻² for configurations whose plain value would overflow.
    pub fn ln_norm_sq_inverse(&self) -> Result<f64> {
        let (reduced, ln_prefactor) = self.reduced_norm()?;
        if reduced <= 0.0 {
            return Err(Error::ZeroNormalization);
        }
        Ok(fmath::ln(reduced) + ln_prefactor)
    }

    fn reduced_norm(&self) -> Result<(f64, f64)> {
        if matches!(self.statistics, Statistics::Anyon(_)) {
            return Err(Error::UnsupportedStatistics {
                reason: "the sphere anyon normalization has no permutation-sum form; \
                         only the coinciding-point potential and volume law are available",
            });
        }
        let n = self.coords.len();
        let two_j = self.geometry.two_j;
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        let mut ln_prefactor = 0.0;
        for (i, zi) in self.coords.iter().enumerate() {
            ln_prefactor += two_j as f64 * fmath::ln_1p(zi.norm_sqr());
            for (j, zj) in self.coords.iter().enumerate() {
                matrix[i * n + j] = su2_overlap(*zi, *zj, two_j);
            }
        }
        let value = match self.statistics {
            Statistics::Boson => linalg::permanent(&matrix, n),
            Statistics::Fermion => linalg::determinant(&matrix, n),
            Statistics::Anyon(_) => unreachable!(),
        };
        debug_assert!(value.im.abs() <= 1e-9 * value.re.abs().max(1.0));
        Ok((value.re, ln_prefactor))
    }
}

/// Potential of N coinciding bosons in the rescaled chart:
/// K = N ħ 2j ln(1 + z̄z/2j). Its metric is N times the round sphere's.
pub fn coinciding_boson_kahler(z: Complex64, geometry: &SphereGeometry, n: u32, hbar: f64) -> f64 {
    let two_j = geometry.two_j as f64;
    n as f64 * hbar * two_j * fmath::ln_1p(z.norm_sqr() / two_j)
}

/// Kähler field of the coinciding-boson configuration (rescaled chart),
/// with analytic connection and tensor.
pub fn coinciding_boson_field(geometry: &SphereGeometry, n: u32, hbar: f64) -> KahlerField {
    let two_j = geometry.two_j as f64;
    let nf = n as f64;
    let g1 = *geometry;
    KahlerField::from_potential(1, hbar, move |z: &[Complex64]| {
        Ok(coinciding_boson_kahler(z[0], &g1, n, hbar))
    })
    .with_connection(move |z: &[Complex64]| {
        let denom = 1.0 + z[0].norm_sqr() / two_j;
        let a = Complex64::new(0.0, 0.5 * nf * hbar) * z[0].conj() / denom;
        Ok(BerryConnection {
            a: vec![a],
            a_bar: vec![a.conj()],
        })
    })
    .with_tensor(move |z: &[Complex64]| {
        let denom = 1.0 + z[0].norm_sqr() / two_j;
        Ok(vec![Complex64::new(0.0, nf * hbar / (denom * denom))])
    })
}

/// Result of the near-coincidence fermion fit.
#[derive(Debug, Clone, Copy)]
pub struct ReductionFit {
    /// Fitted coefficient of ln(1 + z̄z/2j); 2jN(1 − (N−1)/2j) for fermions.
    pub coefficient: f64,
    /// RMS residual of the linear fit.
    pub residual: f64,
}

const REDUCTION_RESIDUAL_LIMIT: f64 = 1e-3;

/// Extract the coefficient of ln(1 + z̄z/2j) in the fermion potential at
/// near-coincident positions z_i = z + δ_i (rescaled chart).
///
/// The determinant of (1 + z̄_i z_j)^{2j} vanishes like Π|δ_i − δ_j|² as the
/// offsets shrink. That factor is removed exactly by a divided-difference
/// factorization of the determinant, which stays well conditioned where a
/// direct determinant would lose every significant digit. What remains is a
/// function of z̄z alone, fitted linearly in ln(1 + z̄z/2j) over an internal
/// radial grid bracketing |z|, with the offsets Richardson-extrapolated to
/// zero. For N fermions the coefficient is 2jN(1 − (N−1)/2j): one for a
/// single particle, zero for a filled level.
pub fn fermion_reduction_exponent(
    geometry: &SphereGeometry,
    n: usize,
    z: Complex64,
    deltas: &[Complex64],
) -> Result<ReductionFit> {
    if n == 0 || n > geometry.degeneracy() as usize {
        return Err(Error::InvalidParameter {
            name: "n",
            message: "need 1 <= N <= 2j + 1 fermions",
        });
    }
    if deltas.len() != n {
        return Err(Error::InvalidParameter {
            name: "deltas",
            message: "need one offset per particle",
        });
    }
    for (i, di) in deltas.iter().enumerate() {
        if di.norm() > 1e-2 {
            return Err(Error::InvalidParameter {
                name: "deltas",
                message: "offsets must satisfy |delta| <= 1e-2",
            });
        }
        for dj in deltas.iter().skip(i + 1) {
            if (di - dj).norm() == 0.0 {
                return Err(Error::InvalidParameter {
                    name: "deltas",
                    message: "offsets must be pairwise distinct",
                });
            }
        }
    }
    if z.norm() == 0.0 {
        return Err(Error::InvalidParameter {
            name: "z",
            message: "the fit needs a nonzero base point",
        });
    }
    let two_j = geometry.two_j;
    let radial_factors = [0.55, 0.7, 0.85, 1.0, 1.15, 1.3, 1.45];
    let mut xs = Vec::with_capacity(radial_factors.len());
    let mut ys = Vec::with_capacity(radial_factors.len());
    for factor in radial_factors {
        let center = z * factor;
        // Offsets scaled to zero by one Richardson step.
        let y_full = ln_reduced_determinant(two_j, n, center, deltas, 1.0)?;
        let y_half = ln_reduced_determinant(two_j, n, center, deltas, 0.5)?;
        let y = 2.0 * y_half - y_full;
        let u = center.norm_sqr();
        xs.push(fmath::ln_1p(u / two_j as f64));
        ys.push(y);
    }
    let fit = linalg::fit_line(&xs, &ys);
    if fit.residual_rms > REDUCTION_RESIDUAL_LIMIT {
        return Err(Error::FitResidual {
            residual: fit.residual_rms,
            threshold: REDUCTION_RESIDUAL_LIMIT,
        });
    }
    Ok(ReductionFit {
        coefficient: fit.slope,
        residual: fit.residual_rms,
    })
}

/// ln [ det (1 + w̄_i w_j)^{2j} / Π_{i<j} |w_i − w_j|² ] at w = (z + s·δ)/sqrt(2j),
/// evaluated through divided differences.
///
/// det F(x_i, y_j) = Π_{i<k}(x_k − x_i) Π_{j<l}(y_l − y_j) det B with
/// B_{ab} = Σ_k c_k h_{k−a}(x_0..x_a) h_{k−b}(y_0..y_b) for the polynomial
/// kernel F(x, y) = Σ_k c_k x^k y^k; here c_k = C(2j, k). The h_m are
/// complete homogeneous symmetric polynomials of the node prefixes.
fn ln_reduced_determinant(
    two_j: u32,
    n: usize,
    center: Complex64,
    deltas: &[Complex64],
    delta_scale: f64,
) -> Result<f64> {
    let chart_scale = fmath::sqrt(two_j as f64);
    let nodes: Vec<Complex64> = deltas
        .iter()
        .map(|d| (center + d * delta_scale) / chart_scale)
        .collect();
    let xs: Vec<Complex64> = nodes.iter().map(|w| w.conj()).collect();
    let ys = nodes;
    let degree = two_j as usize;
    let coeff: Vec<f64> = (0..=degree)
        .map(|k| special::binomial_u128(two_j as u64, k as u64) as f64)
        .collect();
    let hx = homogeneous_table(&xs, degree);
    let hy = homogeneous_table(&ys, degree);
    let mut b = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for c in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in a.max(c)..=degree {
                acc += coeff[k] * hx[a][k - a] * hy[c][k - c];
            }
            b[a * n + c] = acc;
        }
    }
    let det = linalg::determinant(&b, n);
    // The full determinant is a positive Gram determinant and the removed
    // Vandermonde factor is |·|², so det B is positive up to roundoff.
    debug_assert!(det.im.abs() <= 1e-8 * det.re.abs().max(1e-300));
    if det.re <= 0.0 {
        return Err(Error::ZeroNormalization);
    }
    Ok(fmath::ln(det.re))
}

/// h_table[p][m] = h_m(nodes[0..=p]) for m = 0..=degree.
fn homogeneous_table(nodes: &[Complex64], degree: usize) -> Vec<Vec<Complex64>> {
    let mut table = Vec::with_capacity(nodes.len());
    let mut prev = vec![Complex64::new(0.0, 0.0); degree + 1];
    prev[0] = Complex64::new(1.0, 0.0);
    for (p, &node) in nodes.iter().enumerate() {
        let mut row = vec![Complex64::new(0.0, 0.0); degree + 1];
        row[0] = Complex64::new(1.0, 0.0);
        for m in 1..=degree {
            let lower = if p == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                prev[m]
            };
            row[m] = lower + node * row[m - 1];
        }
        table.push(row.clone());
        prev = row;
    }
    table
}

/// N-particle phase-space volume with the statistics parameter ν:
/// V = (A − ν (N−1) h)^N / N!.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceVolume {
    pub value: f64,
    /// True when the exclusion has used up the whole volume (base ≤ 0); the
    /// value is reported as 0.
    pub saturated: bool,
}

pub fn nparticle_volume(a: f64, n: u32, nu: f64, h: f64) -> Result<PhaseSpaceVolume> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            message: "need at least one particle",
        });
    }
    if !(0.0..=f64::INFINITY).contains(&nu) {
        return Err(Error::InvalidParameter {
            name: "nu",
            message: "statistics parameter must be nonnegative",
        });
    }
    let base = a - nu * (n as f64 - 1.0) * h;
    if base <= 0.0 {
        return Ok(PhaseSpaceVolume {
            value: 0.0,
            saturated: true,
        });
    }
    Ok(PhaseSpaceVolume {
        value: fmath::powi(base, n as i32) / special::factorial(n as u64),
        saturated: false,
    })
}

/// ln(V_N / h^N) = N ln((A − ν(N−1)h)/h) − ln N!, for volumes too large to
/// hold in an f64.
pub fn nparticle_volume_ln_over_h(a: f64, n: u32, nu: f64, h: f64) -> Result<f64> {
    let base = a - nu * (n as f64 - 1.0) * h;
    if base <= 0.0 {
        return Err(Error::Overfilled { base });
    }
    Ok(n as f64 * fmath::ln(base / h) - special::ln_factorial(n as u64))
}
