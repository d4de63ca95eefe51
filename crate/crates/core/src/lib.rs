//! Numerical verification kernels for the hyperboloid affine sphere in the
//! Lorentz cone and the flat `sl(3,R)` bundle over the upper half-plane.
//!
//! Every closed-form object of the model is implemented here: the
//! characteristic function and Cheng-Yau metric of the Lorentz cone, the
//! Klein-disk / half-plane / hyperboloid charts, the irreducible embedding
//! `PSL(2,R) -> SO(2,1)`, the fiber metric on the flat `sl(3,R)` bundle, Hodge
//! theory for Lie-algebra-valued 1-forms, the conormal duality, and group
//! cocycles on a rank-2 free group. The [`suite`] module checks the identities
//! between them at randomized sample points and emits JSON or markdown
//! reports.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bundle;
pub mod chart;
pub mod cocycle;
pub mod cone;
pub mod duality;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod numdiff;
pub mod quadrature;
pub mod rep;
pub mod sampling;
pub mod suite;

pub use error::{GeomError, Result};
