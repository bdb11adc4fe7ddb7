//! Numerical tolerances shared across the crate.
//!
//! Matrix checks are relative to the Frobenius scale of the operand, i.e.
//! a tolerance `tol` accepts deviations up to `tol * max(1, ‖A‖_F)`.

pub const HERMITIAN: f64 = 1e-10;
pub const TRACE: f64 = 1e-10;
pub const POSITIVE_DEFINITE: f64 = 1e-12;
pub const RECONSTRUCTION: f64 = 1e-9;
pub const SLD: f64 = 1e-9;
pub const METRIC: f64 = 1e-9;
pub const SPHERE: f64 = 1e-10;
/// Below this magnitude a coordinate no longer has a meaningful sign.
pub const ZERO: f64 = 1e-12;

/// Largest dimension the dense routines are validated for.
pub const MAX_DIM: usize = 64;

/// Default central finite-difference step.
pub const FD_STEP: f64 = 1e-4;

#[inline]
pub fn scaled(tol: f64, scale: f64) -> f64 {
    tol * scale.max(1.0)
}
