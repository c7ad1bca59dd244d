//! Numerical tolerances shared by the channel and measure code.
//!
//! Every matrix in this crate is at most 36-dimensional, so double precision
//! leaves several digits of headroom below these thresholds.

/// Hermiticity, trace and superoperator-identity checks.
pub const HERMITIAN: f64 = 1e-10;

/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-9;

/// A measure value at or below this is treated as zero (faithfulness).
pub const FAITHFUL: f64 = 1e-9;

/// Moduli below which a complex amplitude is treated as exactly zero when
/// reading off its phase.
pub const PHASE_ZERO: f64 = 1e-14;
