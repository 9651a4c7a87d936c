//! Generic Kähler machinery.
//!
//! A [`KahlerField`] bundles a real potential K(z, z̄) with optional analytic
//! callbacks for the connection and the symplectic tensor. Everything else —
//! finite differences, hermiticity control, phase-space volumes by area or
//! boundary integration — is derived from it here.
//!
//! Conventions: the symplectic tensor is f_{z̄i zj} = i ∂_{z̄i} ∂_{zj} K, the
//! two-form is ω = −f_{z̄i zj} dz̄_i ∧ dz_j, the connection components are
//! A_i = (i/2) ∂_{z_i} K and A_ī = −(i/2) ∂_{z̄_i} K, and the metric is
//! ds² = −2i f_{z̄i zj} dz̄_i dz_j. The orientation is fixed so that volumes
//! of valid regions come out positive.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fmath;
use crate::quadrature::{self, Quadrature};

/// Which surface a configuration lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Plane,
    /// Sphere threaded by `two_j` flux quanta.
    Sphere { two_j: u32 },
}

/// N complex particle coordinates plus the surface they live on.
#[derive(Debug, Clone)]
pub struct ParticleConfig {
    pub coords: Vec<Complex64>,
    pub geometry: Geometry,
}

impl ParticleConfig {
    pub fn planar(coords: Vec<Complex64>) -> Self {
        Self {
            coords,
            geometry: Geometry::Plane,
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

type PotentialFn = dyn Fn(&[Complex64]) -> Result<f64> + Send + Sync;
type ConnectionFn = dyn Fn(&[Complex64]) -> Result<BerryConnection> + Send + Sync;
type TensorFn = dyn Fn(&[Complex64]) -> Result<Vec<Complex64>> + Send + Sync;

/// A Kähler potential together with whatever analytic structure is known.
///
/// The potential carries its own factor of ħ; `hbar` is stored so derived
/// quantities can state their units.
pub struct KahlerField {
    dim: usize,
    hbar: f64,
    potential: Box<PotentialFn>,
    connection: Option<Box<ConnectionFn>>,
    tensor: Option<Box<TensorFn>>,
}

impl KahlerField {
    pub fn from_potential<F>(dim: usize, hbar: f64, potential: F) -> Self
    where
        F: Fn(&[Complex64]) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            dim,
            hbar,
            potential: Box::new(potential),
            connection: None,
            tensor: None,
        }
    }

    pub fn with_connection<F>(mut self, connection: F) -> Self
    where
        F: Fn(&[Complex64]) -> Result<BerryConnection> + Send + Sync + 'static,
    {
        self.connection = Some(Box::new(connection));
        self
    }

    pub fn with_tensor<F>(mut self, tensor: F) -> Self
    where
        F: Fn(&[Complex64]) -> Result<Vec<Complex64>> + Send + Sync + 'static,
    {
        self.tensor = Some(Box::new(tensor));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn has_analytic_tensor(&self) -> bool {
        self.tensor.is_some()
    }

    /// K at the given coordinates.
    pub fn potential_at(&self, coords: &[Complex64]) -> Result<f64> {
        debug_assert_eq!(coords.len(), self.dim);
        (self.potential)(coords)
    }
}

/// How derivatives of K are taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    /// Use the field's analytic callbacks; error if absent.
    Analytic,
    /// Central differences with step `scale · max(1, |z_i|)` separately along
    /// the real and imaginary directions; one optional Richardson level.
    FiniteDifference { scale: f64, richardson: bool },
}

impl DerivativeMode {
    pub fn finite_difference() -> Self {
        DerivativeMode::FiniteDifference {
            scale: 1e-4,
            richardson: false,
        }
    }
}

/// Berry connection components (A_i, A_ī).
///
/// For a real potential the two are complex conjugates, which makes the
/// connection one-form real-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct BerryConnection {
    pub a: Vec<Complex64>,
    pub a_bar: Vec<Complex64>,
}

/// Hermitized symplectic tensor plus the defect found before symmetrization.
#[derive(Debug, Clone)]
pub struct SymplecticTensor {
    dim: usize,
    matrix: Vec<Complex64>,
    /// max_ij |h_ij - conj(h_ji)| of h = f/i before symmetrization.
    pub hermiticity_defect: f64,
}

impl SymplecticTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.matrix
    }

    /// det(f / i), the density of ω^N/N! relative to Π 2 dx_i dy_i.
    pub fn density(&self) -> f64 {
        let n = self.dim;
        let scaled: Vec<Complex64> = self
            .matrix
            .iter()
            .map(|f| f / Complex64::new(0.0, 1.0))
            .collect();
        crate::linalg::determinant(&scaled, n).re
    }
}

fn hermitize(raw: &[Complex64], dim: usize) -> SymplecticTensor {
    // The hermitian object is h = f/i = ∂∂̄K (h_ij = conj(h_ji)); f itself
    // picks up a sign under conjugate transposition because of the i.
    let i_unit = Complex64::new(0.0, 1.0);
    let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut defect = 0.0f64;
    for row in 0..dim {
        for col in 0..dim {
            let a = raw[row * dim + col] / i_unit;
            let b = (raw[col * dim + row] / i_unit).conj();
            defect = defect.max((a - b).norm());
            matrix[row * dim + col] = i_unit * 0.5 * (a + b);
        }
    }
    SymplecticTensor {
        dim,
        matrix,
        hermiticity_defect: defect,
    }
}

/// f_{z̄i zj} = i ∂_{z̄i} ∂_{zj} K at `config`, hermitized.
///
/// The pre-symmetrization defect is reported rather than silently dropped.
pub fn symplectic_tensor(
    field: &KahlerField,
    config: &ParticleConfig,
    mode: DerivativeMode,
) -> Result<SymplecticTensor> {
    if config.len() != field.dim() {
        return Err(Error::InvalidParameter {
            name: "config",
            message: "configuration dimension does not match the field",
        });
    }
    let z = &config.coords;
    match mode {
        DerivativeMode::Analytic => {
            let tensor = field.tensor.as_ref().ok_or(Error::InvalidParameter {
                name: "mode",
                message: "field carries no analytic tensor callback",
            })?;
            let raw = tensor(z)?;
            Ok(hermitize(&raw, field.dim()))
        }
        DerivativeMode::FiniteDifference { scale, richardson } => {
            let raw = if richardson {
                let coarse = fd_tensor(field, z, scale)?;
                let fine = fd_tensor(field, z, scale * 0.5)?;
                fine.iter()
                    .zip(&coarse)
                    .map(|(f, c)| (4.0 * f - c) / 3.0)
                    .collect()
            } else {
                fd_tensor(field, z, scale)?
            };
            Ok(hermitize(&raw, field.dim()))
        }
    }
}

fn fd_step(scale: f64, z: Complex64) -> f64 {
    scale * z.norm().max(1.0)
}

/// Raw finite-difference tensor, not yet hermitized.
///
/// f_{z̄i zj} = (i/4) [K_{x_i x_j} + K_{y_i y_j} + i (K_{y_i x_j} - K_{x_i y_j})]
fn fd_tensor(field: &KahlerField, z: &[Complex64], scale: f64) -> Result<Vec<Complex64>> {
    let n = z.len();
    let mut shifted = z.to_vec();
    let mut eval = |i: usize, di: Complex64, j: usize, dj: Complex64| -> Result<f64> {
        shifted.copy_from_slice(z);
        shifted[i] += di;
        shifted[j] += dj;
        field.potential_at(&shifted)
    };
    let mut raw = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let hi = fd_step(scale, z[i]);
        let dx_i = Complex64::new(hi, 0.0);
        let dy_i = Complex64::new(0.0, hi);
        for j in 0..n {
            let hj = fd_step(scale, z[j]);
            let dx_j = Complex64::new(hj, 0.0);
            let dy_j = Complex64::new(0.0, hj);
            let (kxx, kyy, kyx, kxy);
            if i == j {
                let center = eval(i, Complex64::new(0.0, 0.0), i, Complex64::new(0.0, 0.0))?;
                kxx = (eval(i, dx_i, i, dx_i * 0.0)? - 2.0 * center
                    + eval(i, -dx_i, i, dx_i * 0.0)?)
                    / (hi * hi);
                kyy = (eval(i, dy_i, i, dy_i * 0.0)? - 2.0 * center
                    + eval(i, -dy_i, i, dy_i * 0.0)?)
                    / (hi * hi);
                // Mixed partials in the same coordinate commute exactly.
                kyx = 0.0;
                kxy = 0.0;
            } else {
                let mut cross = |da: Complex64, db: Complex64| -> Result<f64> {
                    Ok((eval(i, da, j, db)? - eval(i, da, j, -db)? - eval(i, -da, j, db)?
                        + eval(i, -da, j, -db)?)
                        / (4.0 * hi * hj))
                };
                kxx = cross(dx_i, dx_j)?;
                kyy = cross(dy_i, dy_j)?;
                kyx = cross(dy_i, dx_j)?;
                kxy = cross(dx_i, dy_j)?;
            }
            let second = Complex64::new(kxx + kyy, kyx - kxy);
            raw[i * n + j] = Complex64::new(0.0, 0.25) * second;
        }
    }
    Ok(raw)
}

/// Berry connection at `config`, analytic when available, otherwise by
/// central differences of K.
pub fn berry_connection(field: &KahlerField, config: &ParticleConfig) -> Result<BerryConnection> {
    if config.len() != field.dim() {
        return Err(Error::InvalidParameter {
            name: "config",
            message: "configuration dimension does not match the field",
        });
    }
    let z = &config.coords;
    if let Some(connection) = field.connection.as_ref() {
        return connection(z);
    }
    finite_difference_connection(field, z, 1e-6)
}

/// A_i = (i/2) ∂_{z_i} K and A_ī = −(i/2) ∂_{z̄_i} K by central differences.
pub fn finite_difference_connection(
    field: &KahlerField,
    z: &[Complex64],
    scale: f64,
) -> Result<BerryConnection> {
    let n = z.len();
    let mut shifted = z.to_vec();
    let mut a = Vec::with_capacity(n);
    let mut a_bar = Vec::with_capacity(n);
    for i in 0..n {
        let h = fd_step(scale, z[i]);
        let mut partial = |d: Complex64| -> Result<f64> {
            shifted.copy_from_slice(z);
            shifted[i] += d;
            let plus = field.potential_at(&shifted)?;
            shifted.copy_from_slice(z);
            shifted[i] -= d;
            let minus = field.potential_at(&shifted)?;
            Ok((plus - minus) / (2.0 * h))
        };
        let kx = partial(Complex64::new(h, 0.0))?;
        let ky = partial(Complex64::new(0.0, h))?;
        // ∂_z = (∂_x - i ∂_y)/2, ∂_z̄ = (∂_x + i ∂_y)/2
        let dz = Complex64::new(kx, -ky) * 0.5;
        let dzbar = Complex64::new(kx, ky) * 0.5;
        a.push(Complex64::new(0.0, 0.5) * dz);
        a_bar.push(Complex64::new(0.0, -0.5) * dzbar);
    }
    Ok(BerryConnection { a, a_bar })
}

/// Angular extent of a two-dimensional integration region.
///
/// Relative-coordinate spaces of an identified pair use a half turn; a
/// single-particle coordinate uses the full turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularRange {
    HalfTurn,
    FullTurn,
}

impl AngularRange {
    pub fn span(&self) -> f64 {
        match self {
            AngularRange::HalfTurn => core::f64::consts::PI,
            AngularRange::FullTurn => 2.0 * core::f64::consts::PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionKind {
    Disk { radius: f64 },
    Annulus { r_inner: f64, r_outer: f64 },
    /// Whole sphere with `two_j` flux quanta, integrated on the stereographic
    /// chart of the rescaled coordinate.
    FullSphere { two_j: u32 },
}

/// Integration domain for one complex degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region2D {
    pub kind: RegionKind,
    pub angular: AngularRange,
    /// Number of angular quadrature nodes (at least 16).
    pub resolution: usize,
}

impl Region2D {
    pub fn disk(radius: f64, angular: AngularRange) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter {
                name: "radius",
                message: "disk radius must be positive",
            });
        }
        Ok(Self {
            kind: RegionKind::Disk { radius },
            angular,
            resolution: 32,
        })
    }

    pub fn annulus(r_inner: f64, r_outer: f64, angular: AngularRange) -> Result<Self> {
        if !(r_outer > r_inner && r_inner >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "annulus",
                message: "need r_outer > r_inner >= 0",
            });
        }
        Ok(Self {
            kind: RegionKind::Annulus { r_inner, r_outer },
            angular,
            resolution: 32,
        })
    }

    pub fn full_sphere(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::InvalidParameter {
                name: "two_j",
                message: "sphere needs at least one flux quantum",
            });
        }
        Ok(Self {
            kind: RegionKind::FullSphere { two_j },
            angular: AngularRange::FullTurn,
            resolution: 32,
        })
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self> {
        if resolution < 16 {
            return Err(Error::InvalidParameter {
                name: "resolution",
                message: "boundary resolution must be at least 16",
            });
        }
        self.resolution = resolution;
        Ok(self)
    }
}

const VOLUME_REL_TOL: f64 = 1e-10;
// Finite-difference densities carry O(1e-8) noise; do not chase it.
const VOLUME_REL_TOL_FD: f64 = 3e-7;

/// Phase-space volume of `region` as the area integral of the two-form:
/// V = −∫ f_{z̄z} dz̄ ∧ dz = ∫ 2 Im f dx dy.
pub fn volume_area_integral(field: &KahlerField, region: &Region2D) -> Result<Quadrature> {
    if field.dim() != 1 {
        return Err(Error::InvalidParameter {
            name: "field",
            message: "volume integrals need one complex degree of freedom",
        });
    }
    let rel_tol = if field.has_analytic_tensor() {
        VOLUME_REL_TOL
    } else {
        VOLUME_REL_TOL_FD
    };
    let density = |z: Complex64| -> Result<f64> {
        let f = match field.tensor.as_ref() {
            Some(tensor) => tensor(&[z])?[0],
            None => {
                let raw = fd_tensor(field, &[z], 1e-5)?;
                raw[0]
            }
        };
        Ok(2.0 * f.im)
    };
    let (phi_nodes, phi_weights) = quadrature::gauss_legendre(region.resolution.max(16));
    let span = region.angular.span();
    // Angular average at fixed radius, times the angular span.
    let ring = |r: f64| -> f64 {
        let mut acc = 0.0;
        for (&x, &w) in phi_nodes.iter().zip(&phi_weights) {
            let phi = 0.5 * span * (x + 1.0);
            let z = Complex64::from_polar(r, phi);
            // Propagating errors out of the quadrature closure is not worth
            // the plumbing; singularities surface as NaN in the result.
            acc += w * density(z).unwrap_or(f64::NAN);
        }
        acc * 0.5 * span
    };
    match region.kind {
        RegionKind::Disk { radius } => {
            let f = |r: f64| ring(r) * r;
            quadrature::integrate(&f, 0.0, radius, rel_tol)
        }
        RegionKind::Annulus { r_inner, r_outer } => {
            let f = |r: f64| ring(r) * r;
            quadrature::integrate(&f, r_inner, r_outer, rel_tol)
        }
        RegionKind::FullSphere { two_j } => {
            let scale = fmath::sqrt(two_j as f64);
            // r = sqrt(2j) tan(θ/2) maps the chart onto θ ∈ [0, π].
            let f = |theta: f64| {
                let half = 0.5 * theta;
                let c = fmath::cos(half);
                let r = scale * fmath::tan(half);
                let dr_dtheta = scale / (2.0 * c * c);
                ring(r) * r * dr_dtheta
            };
            quadrature::integrate(&f, 0.0, core::f64::consts::PI, rel_tol)
        }
    }
}

/// Phase-space volume from the connection on the boundary alone:
/// V = −[∮ A_z dz + ∮ A_z̄ dz̄].
///
/// Must agree with [`volume_area_integral`] when the connection is regular
/// throughout the region (Stokes). The full sphere has no boundary.
pub fn volume_boundary_integral(field: &KahlerField, region: &Region2D) -> Result<Quadrature> {
    if field.dim() != 1 {
        return Err(Error::InvalidParameter {
            name: "field",
            message: "volume integrals need one complex degree of freedom",
        });
    }
    let rel_tol = if field.connection.is_some() {
        VOLUME_REL_TOL
    } else {
        // Differenced connections carry O(1e-9) relative noise.
        1e-8
    };
    let arc = |radius: f64| -> Result<Quadrature> {
        let integrand = |phi: f64| -> f64 {
            let z = Complex64::from_polar(radius, phi);
            let conn = match field.connection.as_ref() {
                Some(connection) => connection(&[z]),
                None => finite_difference_connection(field, &[z], 1e-6),
            };
            match conn {
                Ok(c) => {
                    let dz_dphi = Complex64::new(0.0, 1.0) * z;
                    let term = c.a[0] * dz_dphi + c.a_bar[0] * dz_dphi.conj();
                    -term.re
                }
                Err(_) => f64::NAN,
            }
        };
        quadrature::integrate_with_order(
            &integrand,
            0.0,
            region.angular.span(),
            rel_tol,
            region.resolution.max(16),
        )
    };
    match region.kind {
        RegionKind::Disk { radius } => arc(radius),
        RegionKind::Annulus { r_inner, r_outer } => {
            let outer = arc(r_outer)?;
            let inner = arc(r_inner)?;
            Ok(Quadrature {
                value: outer.value - inner.value,
                error_estimate: outer.error_estimate + inner.error_estimate,
            })
        }
        RegionKind::FullSphere { .. } => Err(Error::InvalidParameter {
            name: "region",
            message: "a closed surface has no boundary to integrate over",
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn single_particle_field(hbar: f64) -> KahlerField {
        KahlerField::from_potential(1, hbar, move |z: &[Complex64]| Ok(hbar * z[0].norm_sqr()))
    }

    #[test]
    fn gaussian_potential_tensor_is_i_hbar() {
        let field = single_particle_field(1.0);
        let config = ParticleConfig::planar(vec![Complex64::new(0.7, -0.3)]);
        let t = symplectic_tensor(&field, &config, DerivativeMode::finite_difference()).unwrap();
        assert_relative_eq!(t.entry(0, 0).im, 1.0, max_relative = 1e-7);
        assert!(t.entry(0, 0).re.abs() < 1e-9);
        // And with an explicit ħ.
        let field = single_particle_field(0.25);
        let t = symplectic_tensor(&field, &config, DerivativeMode::finite_difference()).unwrap();
        assert_relative_eq!(t.entry(0, 0).im, 0.25, max_relative = 1e-7);
    }

    #[test]
    fn gaussian_connection_matches_closed_form() {
        let hbar = 1.0;
        let field = single_particle_field(hbar);
        let z = Complex64::new(0.4, 0.9);
        let config = ParticleConfig::planar(vec![z]);
        let conn = berry_connection(&field, &config).unwrap();
        // A_z = (i/2) ħ z̄
        let expected = Complex64::new(0.0, 0.5) * hbar * z.conj();
        assert!((conn.a[0] - expected).norm() < 1e-8);
        // Reality of the connection one-form: A_ī = conj(A_i).
        assert!((conn.a_bar[0] - conn.a[0].conj()).norm() < 1e-8);
    }

    #[test]
    fn finite_difference_defect_shrinks_second_order() {
        // Difference the full two-body potential and compare against its
        // analytic tensor; the defect must drop 4x when the step is halved.
        let field = crate::planar::two_body_field(&crate::Statistics::Boson, 1.0).unwrap();
        let config = ParticleConfig::planar(vec![
            Complex64::new(0.8, 0.2),
            Complex64::new(-0.3, 0.6),
        ]);
        let reference = symplectic_tensor(&field, &config, DerivativeMode::Analytic).unwrap();
        let err = |scale: f64| -> f64 {
            let t = symplectic_tensor(
                &field,
                &config,
                DerivativeMode::FiniteDifference {
                    scale,
                    richardson: false,
                },
            )
            .unwrap();
            let mut m = 0.0f64;
            for i in 0..2 {
                for j in 0..2 {
                    m = m.max((t.entry(i, j) - reference.entry(i, j)).norm());
                }
            }
            m
        };
        let ratio = err(2e-3) / err(1e-3);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn hermiticity_defect_bounds() {
        // Randomized two-body configurations: the analytic tensor is
        // hermitian to roundoff, finite differences to O(h²).
        let field = crate::planar::two_body_field(&crate::Statistics::Fermion, 1.0).unwrap();
        let mut seed = 42u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..25 {
            let config = ParticleConfig::planar(vec![
                Complex64::new(2.0 * next(), 2.0 * next()),
                Complex64::new(2.0 * next(), 2.0 * next()),
            ]);
            let analytic = symplectic_tensor(&field, &config, DerivativeMode::Analytic).unwrap();
            assert!(analytic.hermiticity_defect < 1e-10);
            let scale = 1e-4;
            let fd = symplectic_tensor(
                &field,
                &config,
                DerivativeMode::FiniteDifference {
                    scale,
                    richardson: false,
                },
            )
            .unwrap();
            let h = scale
                * config
                    .coords
                    .iter()
                    .map(|z| z.norm().max(1.0))
                    .fold(0.0f64, f64::max);
            assert!(
                fd.hermiticity_defect < 10.0 * h * h,
                "defect {} vs bound {}",
                fd.hermiticity_defect,
                10.0 * h * h
            );
        }
    }

    #[test]
    fn gauge_term_leaves_tensor_invariant() {
        // Adding Re[c ln z] to K shifts the connection by a gradient but not
        // the curvature; checked on an annulus avoiding the branch point.
        let hbar = 1.0;
        let base = crate::planar::two_body_relative_field(&crate::Statistics::Boson, hbar).unwrap();
        let gauged = KahlerField::from_potential(1, hbar, move |z: &[Complex64]| {
            let x = 0.5 * z[0].norm_sqr();
            let kappa = x + libm::log1p(libm::exp(-2.0 * x));
            Ok(hbar * kappa + 0.7 * z[0].ln().re)
        });
        // Coarser step than the default: the 1e-9 target sits below the
        // roundoff floor eps/h² of a 1e-4 step; Richardson handles the
        // truncation side.
        let mode = DerivativeMode::FiniteDifference {
            scale: 2e-3,
            richardson: true,
        };
        for k in 0..12 {
            let phi = 0.5 + k as f64;
            let z = Complex64::from_polar(1.0 + 0.2 * k as f64, phi);
            let config = ParticleConfig::planar(vec![z]);
            let plain = symplectic_tensor(&base, &config, mode).unwrap();
            let shifted = symplectic_tensor(&gauged, &config, mode).unwrap();
            assert!(
                (plain.entry(0, 0) - shifted.entry(0, 0)).norm() < 1e-9,
                "gauge term leaked into f at {z}"
            );
        }
        // The boundary-integral volume on the annulus is also unchanged: the
        // gauge winding cancels between the two arcs.
        let region = Region2D::annulus(1.0, 3.0, AngularRange::HalfTurn).unwrap();
        let v_plain = volume_boundary_integral(&base, &region).unwrap();
        let v_gauged = volume_boundary_integral(&gauged, &region).unwrap();
        assert!((v_plain.value - v_gauged.value).abs() < 1e-7 * v_plain.value.abs());
    }

    #[test]
    fn region_validation() {
        assert!(Region2D::disk(-1.0, AngularRange::FullTurn).is_err());
        assert!(Region2D::annulus(2.0, 1.0, AngularRange::FullTurn).is_err());
        assert!(Region2D::disk(1.0, AngularRange::FullTurn)
            .unwrap()
            .with_resolution(8)
            .is_err());
        assert!(Region2D::full_sphere(0).is_err());
    }

    #[test]
    fn gaussian_disk_volume_both_routes() {
        // V = −∫ f dz̄∧dz = ∫ 2 Im f dx dy, so f = iħ over a full disk gives
        // 2ħ · πR².
        let hbar = 1.0;
        let field = single_particle_field(hbar);
        let region = Region2D::disk(2.0, AngularRange::FullTurn).unwrap();
        let area = volume_area_integral(&field, &region).unwrap();
        let boundary = volume_boundary_integral(&field, &region).unwrap();
        let exact = 2.0 * hbar * core::f64::consts::PI * 4.0;
        assert_relative_eq!(area.value, exact, max_relative = 1e-8);
        assert_relative_eq!(boundary.value, exact, max_relative = 1e-8);
    }

    #[test]
    fn closed_surface_has_no_boundary_route() {
        let field = single_particle_field(1.0);
        let region = Region2D::full_sphere(4).unwrap();
        assert!(matches!(
            volume_boundary_integral(&field, &region),
            Err(Error::InvalidParameter { .. })
        ));
    }
}
