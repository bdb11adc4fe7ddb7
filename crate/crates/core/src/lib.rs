//! Numerical information geometry on the space of regular density matrices.
//!
//! The crate covers four layers:
//!
//! * [`qss`]: density matrices, tangent vectors, the symmetric logarithmic
//!   derivative (SLD) and the SLD-Fisher metric.
//! * [`geometry`]: exponential-type parallel transport and closed-form
//!   e-geodesics.
//! * [`dynamics`]: the extended averaged Hebbian learning flow on density
//!   matrices, Oja's averaged learning flow on the sphere, their RK4
//!   integrators, chart maps and closed-form solutions.
//! * [`verify`]: numerical checks that the Hebbian flow traces e-geodesics,
//!   plus an exploratory search for unitary/time-affine equivalences.
//!
//! The [`cli`] module backs the `qssgeo` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod qss;
pub mod random;
pub mod tol;
pub mod verify;

pub use error::{QssError, Result};
pub use linalg::CMatrix;
pub use qss::{DensityMatrix, EigenDecomposition, SldMatrix, TangentVector};
