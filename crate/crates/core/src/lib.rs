//! Classical phase-space geometry and statistical mechanics of identical
//! particles.
//!
//! Coherent states labeled by particle coordinates inherit a Kähler geometry
//! from the quantum overlap: a symplectic form, a metric, and with them
//! phase-space volumes. For identical particles the volume available to each
//! particle is reduced by the others, which turns exchange statistics into a
//! classical statistics parameter. This crate computes that geometry for
//! bosons, fermions, and anyons in the plane and on the sphere, for vortices
//! of the self-dual Chern-Simons Ginzburg-Landau model, and works out the
//! resulting statistical mechanics, including its relation to exclusion
//! statistics.
//!
//! The crate is `no_std` (with `alloc`); float math goes through `libm`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
mod fmath;
pub mod geometry;
pub mod linalg;
pub mod oscillator;
pub mod planar;
pub mod quadrature;
pub mod special;
pub mod sphere;
pub mod statistics;
pub mod statmech;
pub mod vortex;

pub use error::{Error, Result};
pub use statistics::Statistics;
