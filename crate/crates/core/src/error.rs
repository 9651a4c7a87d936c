//! Error type shared by every module of the crate.

use alloc::vec::Vec;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The Kähler potential is singular at the requested configuration,
    /// e.g. two fermions at the same point in the unreduced gauge.
    #[error("potential is singular: particles {first} and {second} coincide")]
    SingularPotential { first: usize, second: usize },

    /// The normalization factor vanishes, so no connection can be formed.
    #[error("normalization factor vanishes at the requested configuration")]
    ZeroNormalization,

    /// Operation not defined for the given statistics (e.g. planar anyon
    /// normalization for more than two particles).
    #[error("unsupported statistics: {reason}")]
    UnsupportedStatistics { reason: &'static str },

    /// Particle number exceeds the hard cost cap of the algorithm.
    #[error("{n} particles exceeds the cap of {cap}")]
    ParticleCap { n: usize, cap: usize },

    /// A series did not converge within the term budget.
    #[error("series did not converge within {terms} terms (partial sum {partial})")]
    SeriesDivergence { terms: usize, partial: f64 },

    /// Adaptive quadrature hit its refinement limit.
    #[error("quadrature did not converge: last refinements {previous} -> {last}")]
    QuadratureNonConvergent { last: f64, previous: f64 },

    /// An iterative solver failed; `residuals` holds the residual history.
    #[error("solver did not converge after {iterations} iterations (last residual {last_residual})")]
    NonConvergence {
        iterations: usize,
        last_residual: f64,
        residuals: Vec<f64>,
    },

    /// The radial domain is too small to hold the solution.
    #[error("radial domain too small: |u(r_max)| = {boundary_value} exceeds {limit}")]
    DomainTooSmall { boundary_value: f64, limit: f64 },

    /// Density at or above the incompressibility point 1/alpha.
    #[error("incompressible: density {density} >= maximum density {max_density}")]
    Incompressible { density: f64, max_density: f64 },

    /// Exclusion so strong that no states remain (negative factorial argument).
    #[error("over-exclusion: g = {g} leaves no states for N = {n} out of G = {states}")]
    OverExclusion { g: f64, states: f64, n: f64 },

    /// Occupation number outside [0, 1/g].
    #[error("occupation {occupation} outside [0, {max}]")]
    OccupationOutOfRange { occupation: f64, max: f64 },

    /// The N-particle volume base A - c(N-1)h is negative ("over-filled").
    #[error("phase space over-filled: volume base {base} is negative")]
    Overfilled { base: f64 },

    /// A log-domain value is too large to exponentiate into an f64.
    #[error("value exp({ln_value}) overflows f64")]
    RangeOverflow { ln_value: f64 },

    /// Monte Carlo standard error stayed above the requested budget.
    #[error("standard error {stderr} above budget {budget} (estimate {estimate})")]
    PrecisionBudget {
        stderr: f64,
        budget: f64,
        estimate: f64,
    },

    /// Least-squares fit residual above the acceptance threshold.
    #[error("fit residual {residual} above threshold {threshold}")]
    FitResidual { residual: f64, threshold: f64 },

    /// Time integration failed (NaN or blow-up).
    #[error("time integrator failed at step {step}")]
    IntegratorFailure { step: usize },

    /// The vortex equations are only first-order at the self-dual coupling.
    #[error("coupling lambda = {lambda} is not the self-dual value 1")]
    NotSelfDual { lambda: f64 },

    /// Parameter outside its documented domain.
    #[error("invalid parameter {name}: {message}")]
    InvalidParameter {
        name: &'static str,
        message: &'static str,
    },
}
