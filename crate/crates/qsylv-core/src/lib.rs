//! Quaternion dense linear algebra and closed-form solvers for coupled
//! one-sided Sylvester-type matrix equations over the quaternions.
//!
//! The crate is split along the pipeline a caller walks through:
//!
//! - [`quat`] / [`matrix`]: the scalar and dense-matrix carriers.
//! - [`adjoint`]: the complex adjoint representation used for rank, SVD
//!   and the Moore-Penrose inverse.
//! - [`pinv`]: rank, pseudoinverse and the projectors `L_A`, `R_A`.
//! - [`sylvester`]: the two-equation building blocks (three pair shapes
//!   plus a four-term equation) that the coupled solvers compose.
//! - [`coupled`]: solvability certificates and general solutions for the
//!   five four-equation systems `sys01`..`sys05` and the three-equation
//!   specializations `special01`..`special03`.
//! - [`verify`]: residual reports and an independent consistency oracle
//!   built on the 4x4 real representation.
//!
//! Everything is a pure function over immutable values; the crate is
//! `no_std` (with `alloc`) and keeps no global state.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adjoint;
pub mod certificate;
pub mod coupled;
pub mod error;
pub mod matrix;
pub mod params;
pub mod pinv;
pub mod quat;
pub mod sylvester;
pub mod tol;
pub mod verify;

mod pattern;
mod svd;

pub use adjoint::ComplexAdjoint;
pub use certificate::{Certificate, ProjectorCondition, RankCondition};
pub use error::{Error, Result};
pub use matrix::QuatMatrix;
pub use params::{FreeParams, ParamId, ParamShapes};
pub use quat::Quaternion;
pub use tol::Tolerances;
