//! # geophase
//!
//! Geometric-phase numerics on finite-dimensional projective Hilbert space.
//!
//! - [`hilbert`]: unit state vectors, overlaps, Fubini–Study distance, geodesics, gauge changes.
//! - [`pancharatnam`]: Pancharatnam phase traces along discretized paths, Bargmann invariants,
//!   Fubini–Study speed and detection of the ±π phase flip at an orthogonal crossing.
//! - [`optics`]: polarization sweeps through an orthogonal state and the Gouy phase of a focused
//!   Gaussian beam, both analytic and as a Pancharatnam trace over sampled modes.
//! - [`supercon`]: s-wave/d-wave pair states on the circle, the s→d junction crossing path,
//!   fluxoid quantization in integer or half-integer units of Φ₀ and the single-junction ring
//!   energy landscape.
//!
//! Everything is a pure function of its inputs; all values are `Send + Sync`.

#![forbid(unsafe_code)]

pub mod error;
pub mod hilbert;
pub mod optics;
pub mod pancharatnam;
pub mod supercon;

pub use error::{Error, Result};
pub use hilbert::{GaugePhases, StateVector};
pub use pancharatnam::{DiscretizedPath, JumpReport, JumpThresholds, PhaseTrace};

/// Overlap magnitude at or below which two rays are treated as orthogonal.
pub const ORTHOGONALITY_CUTOFF: f64 = 1e-9;

/// Norm below which a vector cannot be normalized.
pub const NORM_TOLERANCE: f64 = 1e-12;
