//! Particle statistics: bosons, fermions, and anyons interpolating between.

use crate::error::{Error, Result};

/// Exchange statistics of a species of identical particles.
///
/// The anyon parameter runs from 0 (boson) to 1 (fermion). Away from
/// coincidence points every metric quantity computed at `Anyon(0.0)` agrees
/// with `Boson`, and at `Anyon(1.0)` with `Fermion`; the potentials themselves
/// may differ by gauge terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statistics {
    Boson,
    Fermion,
    Anyon(f64),
}

impl Statistics {
    /// Anyon with validated statistics parameter ν ∈ [0, 1].
    pub fn anyon(nu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&nu) {
            return Err(Error::InvalidParameter {
                name: "nu",
                message: "anyon statistics parameter must lie in [0, 1]",
            });
        }
        Ok(Statistics::Anyon(nu))
    }

    /// Dimensionless exclusion parameter: 0 for bosons, 1 for fermions, ν for anyons.
    pub fn exclusion_parameter(&self) -> f64 {
        match self {
            Statistics::Boson => 0.0,
            Statistics::Fermion => 1.0,
            Statistics::Anyon(nu) => *nu,
        }
    }

    /// Sign carried by a permutation with the given parity.
    ///
    /// `None` for anyons: their exchange phase is not a sign, and the planar
    /// normalization sum over permutations is not defined for more than two
    /// particles.
    pub fn permutation_sign(&self, odd_permutation: bool) -> Option<f64> {
        match self {
            Statistics::Boson => Some(1.0),
            Statistics::Fermion => Some(if odd_permutation { -1.0 } else { 1.0 }),
            Statistics::Anyon(_) => None,
        }
    }

    pub fn is_fermion(&self) -> bool {
        matches!(self, Statistics::Fermion)
    }
}

impl core::fmt::Display for Statistics {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Statistics::Boson => write!(f, "boson"),
            Statistics::Fermion => write!(f, "fermion"),
            Statistics::Anyon(nu) => write!(f, "anyon(nu={nu})"),
        }
    }
}
