//! Coherent states of identical particles in the plane.
//!
//! The single-particle states are harmonic-oscillator coherent states, or
//! equivalently maximally localized states of the lowest Landau level; `z` is
//! the dimensionless complex coordinate. Symmetrized N-particle states give a
//! normalization factor that is a permanent (bosons) or determinant
//! (fermions) of pairwise exponentials. The two-body sector also has closed
//! forms for anyons, built from a generalized hypergeometric series.
//!
//! The relative coordinate of an identified pair lives on a half-turn cone:
//! angular integrals over it run over an interval of π.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fmath;
use crate::geometry::{BerryConnection, KahlerField};
use crate::linalg;
use crate::special::CompensatedSum;
use crate::statistics::Statistics;

const PI: f64 = core::f64::consts::PI;

/// Hard cap on the particle number for permanent evaluation.
pub const PARTICLE_CAP: usize = 20;

/// Overlap of two normalized coherent states:
/// ⟨z₁|z₂⟩ = exp(−(|z₁|² + |z₂|²)/2 + z̄₁ z₂).
pub fn coherent_overlap(z1: Complex64, z2: Complex64) -> Complex64 {
    let exponent = Complex64::new(-0.5 * (z1.norm_sqr() + z2.norm_sqr()), 0.0) + z1.conj() * z2;
    exponent.exp()
}

/// N coherent-state coordinates with a choice of exchange statistics.
#[derive(Debug, Clone)]
pub struct PlanarNParticleState {
    pub coords: Vec<Complex64>,
    pub statistics: Statistics,
}

impl PlanarNParticleState {
    pub fn new(coords: Vec<Complex64>, statistics: Statistics) -> Result<Self> {
        if coords.len() > PARTICLE_CAP {
            return Err(Error::ParticleCap {
                n: coords.len(),
                cap: PARTICLE_CAP,
            });
        }
        Ok(Self { coords, statistics })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// |N|⁻² = Σ_P η_P exp(z̄_{P(i)} z_i): the permanent (bosons) or
    /// determinant (fermions) of the matrix exp(z̄_i z_j).
    ///
    /// Evaluated as perm/det of the bounded overlap matrix ⟨z_i|z_j⟩ times
    /// exp(Σ|z_i|²), so intermediate products stay in range.
    pub fn norm_sq_inverse(&self) -> Result<f64> {
        let (reduced, ln_prefactor) = self.reduced_norm()?;
        Ok(reduced * fmath::exp(ln_prefactor))
    }

    /// ln |N|⁻², usable when the plain value would overflow.
    pub fn ln_norm_sq_inverse(&self) -> Result<f64> {
        let (reduced, ln_prefactor) = self.reduced_norm()?;
        if reduced <= 0.0 {
            return Err(Error::ZeroNormalization);
        }
        Ok(fmath::ln(reduced) + ln_prefactor)
    }

    fn reduced_norm(&self) -> Result<(f64, f64)> {
        if self.coords.len() > PARTICLE_CAP {
            return Err(Error::ParticleCap {
                n: self.coords.len(),
                cap: PARTICLE_CAP,
            });
        }
        if matches!(self.statistics, Statistics::Anyon(_)) {
            return Err(Error::UnsupportedStatistics {
                reason: "planar anyon normalization has no permutation-sum form; \
                         use the two-body closed forms",
            });
        }
        let n = self.coords.len();
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        let mut ln_prefactor = 0.0;
        for (i, zi) in self.coords.iter().enumerate() {
            ln_prefactor += zi.norm_sqr();
            for (j, zj) in self.coords.iter().enumerate() {
                matrix[i * n + j] = coherent_overlap(*zi, *zj);
            }
        }
        let value = match self.statistics {
            Statistics::Boson => linalg::permanent(&matrix, n),
            Statistics::Fermion => linalg::determinant(&matrix, n),
            Statistics::Anyon(_) => unreachable!(),
        };
        // Hermitian positive kernel: the result is real.
        debug_assert!(value.im.abs() <= 1e-10 * value.re.abs().max(1.0));
        Ok((value.re, ln_prefactor))
    }
}

// --- two-body closed forms -------------------------------------------------
//
// Everything radial is written in x = z̄z/2. The symplectic tensor of the
// relative coordinate is f = (iħ/2) g(x) with
//     g_B(x) = tanh x + x / cosh² x        = d/dx [x tanh x]
//     g_F(x) = coth x − x / sinh² x        = d/dx [x coth x]
// and the harmonic energy is ħω t(x) with t_B = x tanh x, t_F = x coth x − 1
// (the fermion branch is shifted to its gauge-regular form).

pub(crate) fn boson_g(x: f64) -> f64 {
    let c = fmath::cosh(x);
    fmath::tanh(x) + x / (c * c)
}

pub(crate) fn fermion_g(x: f64) -> f64 {
    if x < 0.04 {
        // Taylor series of d/dx [x coth x]; avoids the 1/x cancellations.
        let x2 = x * x;
        x * (2.0 / 3.0
            + x2 * (-4.0 / 45.0 + x2 * (4.0 / 315.0 + x2 * (-8.0 / 4725.0 + x2 * 20.0 / 93555.0))))
    } else {
        let em = fmath::exp(-2.0 * x);
        let coth = 1.0 + 2.0 * em / (1.0 - em);
        let x_over_sinh_sq = 4.0 * x * em / ((1.0 - em) * (1.0 - em));
        coth - x_over_sinh_sq
    }
}

pub(crate) fn boson_euler(x: f64) -> f64 {
    x * fmath::tanh(x)
}

/// x coth x − 1, regular at the origin.
pub(crate) fn fermion_euler_regular(x: f64) -> f64 {
    if x < 0.1 {
        let x2 = x * x;
        x2 * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 - x2 / 4725.0)))
    } else {
        let em = fmath::exp(-2.0 * x);
        x * (1.0 + 2.0 * em / (1.0 - em)) - 1.0
    }
}

/// ln(2 cosh x), stable for large x.
fn kappa_boson(x: f64) -> f64 {
    x + fmath::ln_1p(fmath::exp(-2.0 * x))
}

/// ln(2 sinh x); diverges logarithmically at x = 0.
fn kappa_fermion(x: f64) -> f64 {
    x + fmath::ln_1p(-fmath::exp(-2.0 * x))
}

/// ln(sinh x / x): the fermion potential with its ln z̄z gauge term removed.
fn kappa_fermion_regular(x: f64) -> f64 {
    if x < 0.2 {
        let x2 = x * x;
        x2 * (1.0 / 6.0 + x2 * (-1.0 / 180.0 + x2 / 2835.0))
    } else {
        kappa_fermion(x) - fmath::ln(2.0 * x)
    }
}

/// dκ/du for the regular gauge, u = z̄z = 2x.
fn kappa_prime(statistics: &Statistics, u: f64) -> Result<f64> {
    let x = 0.5 * u;
    match statistics {
        Statistics::Boson => Ok(0.5 * fmath::tanh(x)),
        Statistics::Fermion => {
            // (coth x − 1/x)/2
            if x < 0.1 {
                let x2 = x * x;
                Ok(0.5 * x * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * 2.0 / 945.0)))
            } else {
                let em = fmath::exp(-2.0 * x);
                Ok(0.5 * (1.0 + 2.0 * em / (1.0 - em) - 1.0 / x))
            }
        }
        Statistics::Anyon(nu) => {
            let series = anyon_norm_series(*nu, u)?;
            Ok(series.kappa_prime())
        }
    }
}

/// Two-body Kähler potential in center-of-mass and relative coordinates:
/// K = ħ [2 Z̄Z + ln(exp(z̄z/2) ± exp(−z̄z/2))].
///
/// Singular for fermions at z = 0; the symplectic tensor stays finite there,
/// see [`two_body_symplectic`].
pub fn two_body_kahler(
    z_cm: Complex64,
    z_rel: Complex64,
    statistics: &Statistics,
    hbar: f64,
) -> Result<f64> {
    let x = 0.5 * z_rel.norm_sqr();
    let relative = match statistics {
        Statistics::Boson => kappa_boson(x),
        Statistics::Fermion => {
            if x == 0.0 {
                return Err(Error::SingularPotential {
                    first: 0,
                    second: 1,
                });
            }
            kappa_fermion(x)
        }
        Statistics::Anyon(_) => {
            return Err(Error::UnsupportedStatistics {
                reason: "use anyon_two_body_kahler for the anyon pair potential",
            })
        }
    };
    Ok(hbar * (2.0 * z_cm.norm_sqr() + relative))
}

/// Two-body potential in the gauge that is regular at coincidence: for
/// fermions the ħ ln z̄z term is absorbed into the normalization phase.
pub fn two_body_kahler_regular(
    z_cm: Complex64,
    z_rel: Complex64,
    statistics: &Statistics,
    hbar: f64,
) -> Result<f64> {
    let x = 0.5 * z_rel.norm_sqr();
    let relative = match statistics {
        Statistics::Boson => kappa_boson(x),
        Statistics::Fermion => kappa_fermion_regular(x),
        Statistics::Anyon(nu) => anyon_norm_series(*nu, z_rel.norm_sqr())?.ln_w() - fmath::ln(PI),
    };
    Ok(hbar * (2.0 * z_cm.norm_sqr() + relative))
}

/// Relative-coordinate symplectic tensor f_{z̄z} for bosons and fermions.
///
/// Both branches tend to iħ/2 at large separation; the boson branch vanishes
/// at r = 0 and the fermion branch vanishes like r²/3.
pub fn two_body_symplectic(r: f64, statistics: &Statistics, hbar: f64) -> Result<Complex64> {
    let x = 0.5 * r * r;
    let g = match statistics {
        Statistics::Boson => boson_g(x),
        Statistics::Fermion => fermion_g(x),
        Statistics::Anyon(nu) => {
            return anyon_two_body_symplectic(r, *nu, hbar);
        }
    };
    Ok(Complex64::new(0.0, 0.5 * hbar * g))
}

/// Coefficient of [ρ² dθ² + dρ²] (ρ = r²/2, θ = 2φ) in the small-r metric:
/// ħ for bosons, ħ/3 for fermions, 2ħ/((1+ν)(2+ν)) for anyons.
pub fn small_r_metric_coefficient(statistics: &Statistics, hbar: f64) -> f64 {
    match statistics {
        Statistics::Boson => hbar,
        Statistics::Fermion => hbar / 3.0,
        Statistics::Anyon(nu) => 2.0 * hbar / ((1.0 + nu) * (2.0 + nu)),
    }
}

/// Metric coefficient of [ρ² dθ² + dρ²] at finite r: ħ g(u) / u.
pub fn radial_metric_coefficient(r: f64, statistics: &Statistics, hbar: f64) -> Result<f64> {
    let u = r * r;
    if u == 0.0 {
        return Ok(small_r_metric_coefficient(statistics, hbar));
    }
    let f = two_body_symplectic(r, statistics, hbar)?;
    Ok(2.0 * f.im / u)
}

// --- anyon pair ------------------------------------------------------------

/// The series W(u) = Σ_m u^{2m} / (4^m Γ(2m+1+ν)) behind the two-anyon
/// normalization, together with its first two u-derivatives.
///
/// In terms of t = u², W = S0, W' = 2u S1, W'' = 2 S1 + 4t S2 with
/// S_k = Σ_m m!/(m−k)! a_m t^{m−k}. All terms are positive, so compensated
/// summation gives near-ulp accuracy; terms grow and then decay, with the
/// turnover near 2m ≈ u.
#[derive(Debug, Clone, Copy)]
pub struct AnyonNormSeries {
    u: f64,
    s0: f64,
    s1: f64,
    s2: f64,
}

impl AnyonNormSeries {
    pub fn w(&self) -> f64 {
        self.s0
    }

    pub fn w_prime(&self) -> f64 {
        2.0 * self.u * self.s1
    }

    pub fn ln_w(&self) -> f64 {
        fmath::ln(self.s0)
    }

    /// d ln W / du.
    pub fn kappa_prime(&self) -> f64 {
        2.0 * self.u * self.s1 / self.s0
    }

    /// g(u) with f = (iħ/2) g: g = 2 d/du [u d ln W/du].
    pub fn g(&self) -> f64 {
        let t = self.u * self.u;
        8.0 * self.u * (self.s1 * self.s0 + t * (self.s2 * self.s0 - self.s1 * self.s1))
            / (self.s0 * self.s0)
    }

    /// Metric coefficient ħ g(u)/u, finite at u = 0.
    pub fn metric_coefficient(&self, hbar: f64) -> f64 {
        let t = self.u * self.u;
        8.0 * hbar * (self.s1 * self.s0 + t * (self.s2 * self.s0 - self.s1 * self.s1))
            / (self.s0 * self.s0)
    }
}

const SERIES_TERM_CAP: usize = 100_000;
const SERIES_REL_EPS: f64 = 1e-16;

/// Evaluate the anyon normalization series at u = z̄z ≥ 0.
pub fn anyon_norm_series(nu: f64, u: f64) -> Result<AnyonNormSeries> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::InvalidParameter {
            name: "nu",
            message: "anyon statistics parameter must lie in [0, 1]",
        });
    }
    if u < 0.0 {
        return Err(Error::InvalidParameter {
            name: "u",
            message: "squared separation must be nonnegative",
        });
    }
    let t = u * u;
    let mut s0 = CompensatedSum::new();
    let mut s1 = CompensatedSum::new();
    let mut s2 = CompensatedSum::new();
    // a_0 = 1/Γ(1+ν); successive ratios a_{m+1}/a_m = 1/(4(2m+1+ν)(2m+2+ν)).
    let mut a_term = fmath::exp(-fmath::ln_gamma(1.0 + nu));
    let mut m = 0usize;
    loop {
        let mf = m as f64;
        s0.add(a_term);
        if m >= 1 {
            s1.add(mf * a_term / t.max(f64::MIN_POSITIVE));
        }
        if m >= 2 {
            s2.add(mf * (mf - 1.0) * a_term / (t * t).max(f64::MIN_POSITIVE));
        }
        let ratio = t / (4.0 * (2.0 * mf + 1.0 + nu) * (2.0 * mf + 2.0 + nu));
        let next = a_term * ratio;
        let decaying = ratio < 1.0;
        if decaying && next * (mf + 1.0) * (mf + 1.0) < SERIES_REL_EPS * a_term.max(s0.value()) {
            break;
        }
        if m + 1 >= SERIES_TERM_CAP {
            return Err(Error::SeriesDivergence {
                terms: SERIES_TERM_CAP,
                partial: s0.value(),
            });
        }
        a_term = next;
        m += 1;
    }
    // S1 and S2 were accumulated as a_m m t^{m-1} = (a_m t^m) m / t; recover
    // the t-power bookkeeping for u = 0 where only the lowest terms survive.
    if u == 0.0 {
        let a0 = fmath::exp(-fmath::ln_gamma(1.0 + nu));
        let a1 = a0 / (4.0 * (1.0 + nu) * (2.0 + nu));
        let a2 = a1 / (4.0 * (3.0 + nu) * (4.0 + nu));
        return Ok(AnyonNormSeries {
            u,
            s0: a0,
            s1: a1,
            s2: 2.0 * a2,
        });
    }
    Ok(AnyonNormSeries {
        u,
        s0: s0.value(),
        s1: s1.value(),
        s2: s2.value(),
    })
}

/// Two-anyon Kähler potential K = ħ ln[W(z̄z)/π] in the gauge without the
/// ν ln z̄z term, regular at coincidence.
///
/// At ν = 0 this is ħ ln[cosh(z̄z/2)/π]; at ν = 1 it is
/// ħ ln[(2/z̄z) sinh(z̄z/2)/π], whose metric equals the fermion metric.
pub fn anyon_two_body_kahler(r: f64, nu: f64, hbar: f64) -> Result<f64> {
    let series = anyon_norm_series(nu, r * r)?;
    Ok(hbar * (series.ln_w() - fmath::ln(PI)))
}

/// Relative-coordinate symplectic tensor of the anyon pair.
pub fn anyon_two_body_symplectic(r: f64, nu: f64, hbar: f64) -> Result<Complex64> {
    let series = anyon_norm_series(nu, r * r)?;
    Ok(Complex64::new(0.0, 0.5 * hbar * series.g()))
}

/// Relative-coordinate basis amplitude of the anyon pair:
/// S_m(z) = z^{2m+ν} / sqrt(π 4^m Γ(2m+1+ν)), principal branch of z^ν.
///
/// Only |S_m|² enters physical results, so the branch cut is unobservable.
pub fn anyon_basis_amplitude(m: u32, z: Complex64, nu: f64) -> Complex64 {
    let power = 2.0 * m as f64 + nu;
    let ln_norm_sq = fmath::ln(PI) + m as f64 * fmath::ln(4.0) + fmath::ln_gamma(2.0 * m as f64 + 1.0 + nu);
    if z.norm_sqr() == 0.0 {
        return if power == 0.0 {
            Complex64::new(fmath::exp(-0.5 * ln_norm_sq), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    (z.ln() * power - 0.5 * ln_norm_sq).exp()
}

/// Center-of-mass potential of N coinciding planar particles: N ħ Z̄Z,
/// a single particle of charge N.
pub fn cm_kahler(n: u32, z_cm: Complex64, hbar: f64) -> f64 {
    n as f64 * hbar * z_cm.norm_sqr()
}

// --- equations of motion ---------------------------------------------------

/// Result of integrating the two-body relative motion.
#[derive(Debug, Clone)]
pub struct EomTrajectory {
    pub times: Vec<f64>,
    pub positions: Vec<Complex64>,
    /// max_t |z(t) − z₀ e^{−iωt}|
    pub max_deviation: f64,
}

/// Integrate f_{z̄z} ż = ∂_z̄ V for the harmonic two-body system and compare
/// with the free-oscillator orbit z(t) = z₀ e^{−iωt}.
///
/// The statistics enters both f and V but cancels in the trajectory; the
/// integration evaluates the two sides independently (the force by finite
/// differences of the energy), so the cancellation is checked rather than
/// assumed.
pub fn two_body_eom_check(
    z0: Complex64,
    statistics: &Statistics,
    omega: f64,
    t_final: f64,
    steps: usize,
    hbar: f64,
) -> Result<EomTrajectory> {
    if statistics.is_fermion() && z0.norm_sqr() == 0.0 {
        return Err(Error::SingularPotential {
            first: 0,
            second: 1,
        });
    }
    let energy = |z: Complex64| -> Result<f64> {
        let x = 0.5 * z.norm_sqr();
        let t = match statistics {
            Statistics::Boson => boson_euler(x),
            Statistics::Fermion => fermion_euler_regular(x),
            Statistics::Anyon(_) => {
                return Err(Error::UnsupportedStatistics {
                    reason: "equation-of-motion check covers bosons and fermions",
                })
            }
        };
        Ok(hbar * omega * t)
    };
    let velocity = |z: Complex64| -> Result<Complex64> {
        let h = 1e-6 * z.norm().max(1.0);
        let vx = (energy(z + h)? - energy(z - h)?) / (2.0 * h);
        let vy = (energy(z + Complex64::new(0.0, h))? - energy(z - Complex64::new(0.0, h))?)
            / (2.0 * h);
        let dv_dzbar = Complex64::new(vx, vy) * 0.5;
        let f = two_body_symplectic(z.norm(), statistics, hbar)?;
        Ok(dv_dzbar / f)
    };
    let dt = t_final / steps as f64;
    let mut z = z0;
    let mut times = Vec::with_capacity(steps + 1);
    let mut positions = Vec::with_capacity(steps + 1);
    let mut max_deviation = 0.0f64;
    for step in 0..=steps {
        let t = step as f64 * dt;
        times.push(t);
        positions.push(z);
        let reference = z0 * Complex64::new(0.0, -omega * t).exp();
        max_deviation = max_deviation.max((z - reference).norm());
        if step == steps {
            break;
        }
        let k1 = velocity(z)?;
        let k2 = velocity(z + k1 * (0.5 * dt))?;
        let k3 = velocity(z + k2 * (0.5 * dt))?;
        let k4 = velocity(z + k3 * dt)?;
        z += (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0);
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::IntegratorFailure { step });
        }
    }
    Ok(EomTrajectory {
        times,
        positions,
        max_deviation,
    })
}

// --- Kähler field builders -------------------------------------------------

/// One-complex-dimensional field for the relative coordinate of a pair, in
/// the gauge that is regular at coincidence. Carries analytic connection and
/// tensor callbacks.
pub fn two_body_relative_field(statistics: &Statistics, hbar: f64) -> Result<KahlerField> {
    if let Statistics::Anyon(nu) = statistics {
        // Validate the parameter once, up front.
        let _ = anyon_norm_series(*nu, 0.0)?;
    }
    let s_pot = *statistics;
    let s_conn = *statistics;
    let s_tens = *statistics;
    let field = KahlerField::from_potential(1, hbar, move |z: &[Complex64]| {
        two_body_kahler_regular(Complex64::new(0.0, 0.0), z[0], &s_pot, hbar)
    })
    .with_connection(move |z: &[Complex64]| {
        let kp = kappa_prime(&s_conn, z[0].norm_sqr())?;
        let a = Complex64::new(0.0, 0.5 * hbar) * kp * z[0].conj();
        Ok(BerryConnection {
            a: vec![a],
            a_bar: vec![a.conj()],
        })
    })
    .with_tensor(move |z: &[Complex64]| Ok(vec![two_body_symplectic(z[0].norm(), &s_tens, hbar)?]));
    Ok(field)
}

/// Relative-coordinate field in the unreduced gauge, where the fermion
/// potential keeps its ln z̄z singularity at coincidence.
pub fn two_body_relative_field_unreduced(statistics: &Statistics, hbar: f64) -> Result<KahlerField> {
    match statistics {
        Statistics::Anyon(_) => Err(Error::UnsupportedStatistics {
            reason: "unreduced gauge is only built for bosons and fermions",
        }),
        s => {
            let s_pot = *s;
            let s_conn = *s;
            let s_tens = *s;
            let field = KahlerField::from_potential(1, hbar, move |z: &[Complex64]| {
                two_body_kahler(Complex64::new(0.0, 0.0), z[0], &s_pot, hbar)
            })
            .with_connection(move |z: &[Complex64]| {
                let u = z[0].norm_sqr();
                if u == 0.0 && s_conn.is_fermion() {
                    return Err(Error::ZeroNormalization);
                }
                let mut kp = kappa_prime(&s_conn, u)?;
                if s_conn.is_fermion() {
                    kp += 1.0 / u; // the gauge term put back
                }
                let a = Complex64::new(0.0, 0.5 * hbar) * kp * z[0].conj();
                Ok(BerryConnection {
                    a: vec![a],
                    a_bar: vec![a.conj()],
                })
            })
            .with_tensor(move |z: &[Complex64]| {
                // The ln z̄z gauge term drops out of the tensor.
                Ok(vec![two_body_symplectic(z[0].norm(), &s_tens, hbar)?])
            });
            Ok(field)
        }
    }
}

/// Full two-body field in particle coordinates (z₁, z₂):
/// K = ħ [2 Z̄Z + κ(z̄z)], Z = (z₁+z₂)/2, z = z₁−z₂.
///
/// f_{z̄i zj} = iħ [1/2 + s_i s_j (u κ')'] with s = (+1, −1).
pub fn two_body_field(statistics: &Statistics, hbar: f64) -> Result<KahlerField> {
    if let Statistics::Anyon(nu) = statistics {
        let _ = anyon_norm_series(*nu, 0.0)?;
    }
    let s_pot = *statistics;
    let s_tens = *statistics;
    let field = KahlerField::from_potential(2, hbar, move |z: &[Complex64]| {
        let z_cm = 0.5 * (z[0] + z[1]);
        let z_rel = z[0] - z[1];
        match s_pot {
            Statistics::Anyon(_) => two_body_kahler_regular(z_cm, z_rel, &s_pot, hbar),
            _ => two_body_kahler(z_cm, z_rel, &s_pot, hbar),
        }
    })
    .with_tensor(move |z: &[Complex64]| {
        let r = (z[0] - z[1]).norm();
        // f_rel = iħ (u κ')' is exactly the coupling between the particles.
        let cross = two_body_symplectic(r, &s_tens, hbar)?;
        let half = Complex64::new(0.0, 0.5 * hbar);
        Ok(vec![half + cross, half - cross, half - cross, half + cross])
    });
    Ok(field)
}
