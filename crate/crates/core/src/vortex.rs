//! Vortices of the self-dual Chern-Simons Ginzburg-Landau model.
//!
//! At the self-dual coupling λ̃ = 1 the static N-vortex sector is governed by
//! the first-order equations B + (ρ−1)/2 = 0 and D₊φ = 0, which combine into
//! ∇² ln ρ = ρ − 1 for the density ρ = |φ|². For an axially symmetric vortex
//! of winding N this is a radial two-point boundary problem solved here by
//! damped Newton relaxation on a logarithmic mesh. The flux quantizes to 2πN
//! and the energy saturates its bound Nπ.
//!
//! The vortex moduli space is a phase space; its volume obeys the same
//! exclusion law as for identical particles, with statistics parameter
//! α = 4πμh set by the Chern-Simons coupling.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::linalg;
use crate::sphere::PhaseSpaceVolume;
use crate::special;

const PI: f64 = core::f64::consts::PI;

/// Parameters of the radial solver and of the vortex statistics formulas.
#[derive(Debug, Clone, Copy)]
pub struct VortexParams {
    /// Chern-Simons coupling μ > 0. The Laughlin sequence is μ = 1/(4π(2k+1)).
    pub mu: f64,
    /// Winding / particle number N ≥ 1.
    pub winding: u32,
    /// Self-dual value is 1; the first-order equations hold only there.
    pub lambda_tilde: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    /// Newton stop: max |Δv| below this.
    pub tol: f64,
    pub max_iterations: usize,
    /// Damping factor of the first Newton step.
    pub damping: f64,
}

impl VortexParams {
    pub fn new(mu: f64, winding: u32) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::InvalidParameter {
                name: "mu",
                message: "Chern-Simons coupling must be positive",
            });
        }
        if winding == 0 {
            return Err(Error::InvalidParameter {
                name: "winding",
                message: "winding number must be at least 1",
            });
        }
        Ok(Self {
            mu,
            winding,
            lambda_tilde: 1.0,
            r_min: 1e-3,
            r_max: 20.0,
            points: 2000,
            tol: 1e-10,
            max_iterations: 60,
            damping: 0.5,
        })
    }

    pub fn with_mesh(mut self, r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        if !(r_max > r_min && r_min > 0.0) || points < 16 {
            return Err(Error::InvalidParameter {
                name: "mesh",
                message: "need 0 < r_min < r_max and at least 16 points",
            });
        }
        self.r_min = r_min;
        self.r_max = r_max;
        self.points = points;
        Ok(self)
    }
}

/// Solved radial vortex profile on a logarithmic mesh.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub r: Vec<f64>,
    /// ρ(r) = |φ|²; vanishes like r^{2N} at the core, tends to 1 outside.
    pub rho: Vec<f64>,
    /// Magnetic field B = (1 − ρ)/2 ≥ 0.
    pub b: Vec<f64>,
    pub winding: u32,
    flux: f64,
    energy_functional: f64,
    /// max |F| of the discretized equation at the solution.
    pub residual_norm: f64,
    pub iterations: usize,
}

impl RadialProfile {
    /// Total magnetic flux ∫ B d²x; 2πN in the continuum.
    pub fn flux(&self) -> f64 {
        self.flux
    }

    /// Energy through the saturated bound E = ∫ (B/2) d²x = flux/2.
    pub fn energy_bound(&self) -> f64 {
        0.5 * self.flux
    }

    /// Energy from the full functional ∫ [|D⃗φ|²/2 + (1−ρ)²/4] d²x, evaluated
    /// with the gauge field reconstructed from the flux integral. Independent
    /// of the flux bookkeeping; equals Nπ when the bound is saturated.
    pub fn energy_functional(&self) -> f64 {
        self.energy_functional
    }

    /// max_r |B + (ρ−1)/2|: the Chern-Simons constraint, identically enforced
    /// by construction and asserted anyway.
    pub fn max_constraint_residual(&self) -> f64 {
        self.rho
            .iter()
            .zip(&self.b)
            .map(|(rho, b)| (b + 0.5 * (rho - 1.0)).abs())
            .fold(0.0f64, f64::max)
    }
}

/// Solve u'' + u'/r = e^u − 1 for u = ln ρ with u ~ 2N ln r at the core and
/// u → 0 at r_max.
///
/// The substitution u = 2N ln r + v removes the core singularity exactly
/// (the log is harmonic); on the mesh s = ln r the equation becomes
/// v_ss = e^{2s}(e^{2Ns+v} − 1), discretized to second order with a
/// tridiagonal Newton iteration.
pub fn solve_radial_vortex(params: &VortexParams) -> Result<RadialProfile> {
    if params.lambda_tilde != 1.0 {
        return Err(Error::NotSelfDual {
            lambda: params.lambda_tilde,
        });
    }
    let n_pts = params.points;
    let nf = params.winding as f64;
    let s_min = fmath::ln(params.r_min);
    let s_max = fmath::ln(params.r_max);
    let ds = (s_max - s_min) / (n_pts - 1) as f64;
    let s: Vec<f64> = (0..n_pts).map(|i| s_min + ds * i as f64).collect();
    let r: Vec<f64> = s.iter().map(|&si| fmath::exp(si)).collect();

    // Initial guess ρ = (r²/(r² + 2N))^N: right core exponent, right tail.
    let mut v: Vec<f64> = r.iter().map(|&ri| -nf * fmath::ln(ri * ri + 2.0 * nf)).collect();

    let residual = |v: &[f64]| -> Vec<f64> {
        let mut f = vec![0.0; n_pts];
        f[0] = v[0] - v[1] - (r[1] * r[1] - r[0] * r[0]) / 4.0;
        for i in 1..n_pts - 1 {
            let source = fmath::exp(2.0 * s[i]) * (fmath::exp(2.0 * nf * s[i] + v[i]) - 1.0);
            f[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (ds * ds) - source;
        }
        f[n_pts - 1] = v[n_pts - 1] + 2.0 * nf * fmath::ln(params.r_max);
        f
    };

    let mut residual_history = Vec::new();
    let mut iterations = 0;
    loop {
        let f = residual(&v);
        let max_f = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        residual_history.push(max_f);

        let mut lower = vec![0.0; n_pts];
        let mut diag = vec![0.0; n_pts];
        let mut upper = vec![0.0; n_pts];
        diag[0] = 1.0;
        upper[0] = -1.0;
        for i in 1..n_pts - 1 {
            lower[i] = 1.0 / (ds * ds);
            upper[i] = 1.0 / (ds * ds);
            diag[i] =
                -2.0 / (ds * ds) - fmath::exp(2.0 * s[i]) * fmath::exp(2.0 * nf * s[i] + v[i]);
        }
        diag[n_pts - 1] = 1.0;
        let rhs: Vec<f64> = f.iter().map(|x| -x).collect();
        let dv = linalg::solve_tridiagonal(&lower, &diag, &upper, &rhs);
        let step = if iterations == 0 { params.damping } else { 1.0 };
        let mut max_dv = 0.0f64;
        for i in 0..n_pts {
            v[i] += step * dv[i];
            max_dv = max_dv.max((step * dv[i]).abs());
        }
        iterations += 1;
        if max_dv < params.tol {
            break;
        }
        if iterations >= params.max_iterations {
            let last = *residual_history.last().unwrap();
            return Err(Error::NonConvergence {
                iterations,
                last_residual: last,
                residuals: residual_history,
            });
        }
    }

    let u: Vec<f64> = (0..n_pts).map(|i| 2.0 * nf * s[i] + v[i]).collect();
    // Tail check: with the Dirichlet condition pinning u(r_max) = 0, the
    // point just inside measures whether the tail has actually decayed.
    let tail = u[n_pts - 2].abs();
    if tail > 1e-6 {
        return Err(Error::DomainTooSmall {
            boundary_value: tail,
            limit: 1e-6,
        });
    }

    let rho: Vec<f64> = u.iter().map(|&ui| fmath::exp(ui)).collect();
    let b: Vec<f64> = rho.iter().map(|&rhoi| 0.5 * (1.0 - rhoi)).collect();

    // Flux 2π ∫ B r dr by trapezoid in s (r dr = e^{2s} ds), plus the inner
    // disk where B = 1/2 up to O(r_min^{2N}).
    let mut flux = PI * params.r_min * params.r_min / 2.0;
    for i in 0..n_pts - 1 {
        let gi = b[i] * r[i] * r[i];
        let gj = b[i + 1] * r[i + 1] * r[i + 1];
        flux += 2.0 * PI * 0.5 * (gi + gj) * ds;
    }

    let f = residual(&v);
    let residual_norm = f
        .iter()
        .take(n_pts - 1)
        .skip(1)
        .fold(0.0f64, |m, x| m.max(x.abs()));

    let energy_functional = energy_from_profile(&r, &rho, &b, params.winding, ds);

    Ok(RadialProfile {
        r,
        rho,
        b,
        winding: params.winding,
        flux,
        energy_functional,
        residual_norm,
        iterations,
    })
}

/// E = ∫ 2πr dr [ ((√ρ)')²/2 + ρ(N/r − A_θ)²/2 + (1−ρ)²/4 ] with A_θ
/// reconstructed from the accumulated flux, Φ(r) = ∫ B d²x, A_θ = Φ/(2πr).
fn energy_from_profile(r: &[f64], rho: &[f64], b: &[f64], winding: u32, ds: f64) -> f64 {
    let n_pts = r.len();
    let nf = winding as f64;
    let sqrt_rho: Vec<f64> = rho.iter().map(|&x| fmath::sqrt(x)).collect();
    // Cumulative flux on the mesh, starting from the inner disk.
    let mut phi = vec![0.0; n_pts];
    phi[0] = PI * r[0] * r[0] * 2.0 * b[0] / 2.0;
    for i in 1..n_pts {
        let gi = b[i - 1] * r[i - 1] * r[i - 1];
        let gj = b[i] * r[i] * r[i];
        phi[i] = phi[i - 1] + 2.0 * PI * 0.5 * (gi + gj) * ds;
    }
    let mut total = PI * r[0] * r[0] / 4.0; // (1−ρ)²/4 over the inner disk
    for i in 0..n_pts - 1 {
        let density = |k: usize| -> f64 {
            // d√ρ/dr by centered differences in s.
            let dsqrt_ds = if k == 0 {
                (sqrt_rho[1] - sqrt_rho[0]) / ds
            } else if k == n_pts - 1 {
                (sqrt_rho[k] - sqrt_rho[k - 1]) / ds
            } else {
                (sqrt_rho[k + 1] - sqrt_rho[k - 1]) / (2.0 * ds)
            };
            let dsqrt_dr = dsqrt_ds / r[k];
            let a_theta = phi[k] / (2.0 * PI * r[k]);
            let angular = nf / r[k] - a_theta;
            0.5 * (dsqrt_dr * dsqrt_dr + rho[k] * angular * angular)
                + 0.25 * (1.0 - rho[k]) * (1.0 - rho[k])
        };
        let gi = density(i) * r[i] * r[i];
        let gj = density(i + 1) * r[i + 1] * r[i + 1];
        total += 2.0 * PI * 0.5 * (gi + gj) * ds;
    }
    total
}

/// Moduli-space volume of N vortices: V = (A − 4πμh(N−1))^N / N!.
pub fn vortex_volume(a: f64, n: u32, mu: f64, h: f64) -> Result<PhaseSpaceVolume> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            message: "need at least one vortex",
        });
    }
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter {
            name: "mu",
            message: "Chern-Simons coupling must be positive",
        });
    }
    let g = 4.0 * PI * mu;
    // Same arithmetic, in the same order, as the particle volume law keeps
    // the two exactly equal at g = 4πμ.
    let base = a - g * (n as f64 - 1.0) * h;
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

/// Volume law in the fully dimensionless units μħ = 1 where the reduction
/// per vortex is 8π².
pub fn vortex_volume_dimensionless(a: f64, n: u32) -> Result<PhaseSpaceVolume> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            message: "need at least one vortex",
        });
    }
    let base = a - 8.0 * PI * PI * (n as f64 - 1.0);
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

/// Classical and dimensionless statistics parameters of the vortices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexStatistics {
    /// α = 4πμh: phase-space volume excluded per vortex.
    pub alpha: f64,
    /// g = α/h = 4πμ: the dimensionless exclusion parameter.
    pub g: f64,
}

pub fn statistics_parameter(mu: f64, h: f64) -> Result<VortexStatistics> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter {
            name: "mu",
            message: "Chern-Simons coupling must be positive",
        });
    }
    Ok(VortexStatistics {
        alpha: 4.0 * PI * mu * h,
        g: 4.0 * PI * mu,
    })
}

/// Unit restoration for the rescaled model: lengths, times, fields and
/// phase-space volumes scale with (μ, ρ₀, m, ħ).
#[derive(Debug, Clone, Copy)]
pub struct PhysicalScales {
    pub mu: f64,
    pub rho0: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl PhysicalScales {
    pub fn new(mu: f64, rho0: f64, mass: f64, hbar: f64) -> Result<Self> {
        if !(mu > 0.0 && rho0 > 0.0 && mass > 0.0 && hbar > 0.0) {
            return Err(Error::InvalidParameter {
                name: "scales",
                message: "all scale parameters must be positive",
            });
        }
        Ok(Self {
            mu,
            rho0,
            mass,
            hbar,
        })
    }

    pub fn length_to_physical(&self, r: f64) -> f64 {
        r * fmath::sqrt(self.mu / self.rho0)
    }

    pub fn length_to_dimensionless(&self, r: f64) -> f64 {
        r / fmath::sqrt(self.mu / self.rho0)
    }

    pub fn time_to_physical(&self, t: f64) -> f64 {
        t * self.mu * self.mass / (self.hbar * self.rho0)
    }

    pub fn time_to_dimensionless(&self, t: f64) -> f64 {
        t * self.hbar * self.rho0 / (self.mu * self.mass)
    }

    pub fn density_to_physical(&self, rho: f64) -> f64 {
        rho * self.rho0
    }

    pub fn coupling_to_dimensionless(&self, lambda: f64) -> f64 {
        lambda * self.mu * self.mass / (self.hbar * self.hbar)
    }

    /// Phase-space areas pick up one factor of μħ.
    pub fn phase_space_area_to_physical(&self, a: f64) -> f64 {
        a * self.mu * self.hbar
    }

    pub fn phase_space_area_to_dimensionless(&self, a: f64) -> f64 {
        a / (self.mu * self.hbar)
    }

    /// N-vortex phase-space volumes scale by (μħ)^N.
    pub fn phase_space_volume_to_physical(&self, v: f64, n: u32) -> f64 {
        v * fmath::powi(self.mu * self.hbar, n as i32)
    }

    pub fn phase_space_volume_to_dimensionless(&self, v: f64, n: u32) -> f64 {
        v / fmath::powi(self.mu * self.hbar, n as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn solve(winding: u32) -> RadialProfile {
        let params = VortexParams::new(1.0 / (4.0 * PI), winding).unwrap();
        solve_radial_vortex(&params).unwrap()
    }

    #[test]
    fn single_vortex_flux_and_energy() {
        let profile = solve(1);
        assert_relative_eq!(profile.flux(), 2.0 * PI, max_relative = 1e-4);
        assert_relative_eq!(profile.energy_bound(), PI, max_relative = 1e-4);
        assert_relative_eq!(profile.energy_functional(), PI, max_relative = 1e-3);
        assert!(profile.residual_norm < 1e-7);
    }

    #[test]
    fn profiles_are_physical() {
        for winding in [1u32, 2, 3] {
            let profile = solve(winding);
            // ρ(r_min) ~ r_min^{2N}
            assert!(profile.rho[0] < 1e-5, "core density");
            assert!((profile.rho.last().unwrap() - 1.0).abs() < 1e-6, "tail");
            assert!(profile.b.iter().all(|&b| b >= -1e-14), "B >= 0");
            assert!(profile.max_constraint_residual() < 1e-14);
        }
    }

    #[test]
    fn triple_vortex_flux_and_core_exponent() {
        let profile = solve(3);
        assert_relative_eq!(profile.flux(), 6.0 * PI, max_relative = 1e-4);
        // log-log slope of ρ over the inner decade: 2N = 6.
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, &ri) in profile.r.iter().enumerate() {
            if ri < 1e-2 {
                xs.push(ri.ln());
                ys.push(profile.rho[i].ln());
            }
        }
        let fit = crate::linalg::fit_line(&xs, &ys);
        assert!((fit.slope - 6.0).abs() < 0.05, "slope {}", fit.slope);
    }

    #[test]
    fn flux_error_is_second_order_in_mesh() {
        // r_max = 30 keeps the (mesh-independent) tail truncation well below
        // the discretization error being measured.
        let error = |points: usize| -> f64 {
            let params = VortexParams::new(1.0, 2)
                .unwrap()
                .with_mesh(1e-3, 30.0, points)
                .unwrap();
            let profile = solve_radial_vortex(&params).unwrap();
            (profile.flux() - 4.0 * PI).abs()
        };
        let ratio = error(150) / error(300);
        assert!((3.2..=4.8).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn solver_rejects_bad_inputs() {
        let mut params = VortexParams::new(1.0, 1).unwrap();
        params.lambda_tilde = 1.2;
        assert!(matches!(
            solve_radial_vortex(&params),
            Err(Error::NotSelfDual { .. })
        ));

        // A short domain cannot hold the N = 1 tail to 1e-6.
        let params = VortexParams::new(1.0, 1)
            .unwrap()
            .with_mesh(1e-3, 8.0, 1200)
            .unwrap();
        assert!(matches!(
            solve_radial_vortex(&params),
            Err(Error::DomainTooSmall { .. })
        ));

        let mut params = VortexParams::new(1.0, 1).unwrap();
        params.max_iterations = 2;
        match solve_radial_vortex(&params) {
            Err(Error::NonConvergence { residuals, .. }) => assert_eq!(residuals.len(), 2),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn volume_matches_particle_law_exactly() {
        let h = 2.0 * PI;
        for (mu, n, a_over_h) in [
            (1.0 / (4.0 * PI), 3u32, 12.0),
            (1.0 / (12.0 * PI), 4, 10.0),
            (0.021, 2, 5.5),
        ] {
            let a = a_over_h * h;
            let g = 4.0 * PI * mu;
            let vortex = vortex_volume(a, n, mu, h).unwrap();
            let particle = crate::sphere::nparticle_volume(a, n, g, h).unwrap();
            assert_eq!(vortex.value, particle.value);
            assert_eq!(vortex.saturated, particle.saturated);
        }
    }

    #[test]
    fn volume_examples() {
        let h = 2.0 * PI;
        // One vortex: A regardless of the coupling.
        let v = vortex_volume(7.5 * h, 1, 0.123, h).unwrap();
        assert_relative_eq!(v.value, 7.5 * h);
        // Laughlin k = 1: g = 1/3, so A = 10h and N = 4 give (9h)^4 / 24.
        let v = vortex_volume(10.0 * h, 4, 1.0 / (12.0 * PI), h).unwrap();
        assert_relative_eq!(v.value, (9.0 * h).powi(4) / 24.0, max_relative = 1e-12);
    }

    #[test]
    fn statistics_parameter_values() {
        let h = 2.0 * PI;
        let s = statistics_parameter(1.0 / (4.0 * PI), h).unwrap();
        assert_relative_eq!(s.g, 1.0, max_relative = 1e-14);
        assert_relative_eq!(s.alpha / h, s.g);
        let s = statistics_parameter(1.0 / (12.0 * PI), h).unwrap();
        assert_relative_eq!(s.g, 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn rescaling_round_trips_and_matches_dimensional_law() {
        let scales = PhysicalScales::new(0.3, 2.0, 1.5, 0.7).unwrap();
        let r = 1.234;
        assert_relative_eq!(
            scales.length_to_dimensionless(scales.length_to_physical(r)),
            r,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            scales.time_to_dimensionless(scales.time_to_physical(r)),
            r,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            scales.phase_space_volume_to_dimensionless(
                scales.phase_space_volume_to_physical(r, 3),
                3
            ),
            r,
            max_relative = 1e-12
        );
        // μħ = 1 makes the rescaling the identity on phase space.
        let unit = PhysicalScales::new(2.0, 1.0, 1.0, 0.5).unwrap();
        assert_relative_eq!(unit.phase_space_area_to_physical(5.0), 5.0);

        // Dimensionless volume law scaled up equals the dimensional law at
        // A_dim = μħ A.
        let (mu, hbar) = (0.11, 1.7);
        let h = 2.0 * PI * hbar;
        let scales = PhysicalScales::new(mu, 1.0, 1.0, hbar).unwrap();
        let a_dimensionless = 60.0 * PI;
        let n = 3;
        let lhs = scales.phase_space_volume_to_physical(
            vortex_volume_dimensionless(a_dimensionless, n).unwrap().value,
            n,
        );
        let rhs = vortex_volume(mu * hbar * a_dimensionless, n, mu, h)
            .unwrap()
            .value;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }
}
