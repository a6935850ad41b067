//! Nevanlinna-Pick interpolation on right half-planes with the Szegö-Dirichlet
//! kernel `ζ(s + ū)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] evaluates ζ and 1/ζ, Möbius values, Dirichlet convolutions and
//!   smooth-number partial sums.
//! * [`kernels`] holds the kernel zoo (disc and half-plane Szegö kernels, powers
//!   of the Szegö-Dirichlet kernel, `κ_μ`, diagonal Dirichlet kernels) together
//!   with Gram assembly and truncated feature maps.
//! * [`pick`] builds Pick matrices, certifies positive semi-definiteness and
//!   reproduces the two-point counterexamples and the Cayley/Schur-product
//!   transfer between half-plane and disc Pick matrices.
//! * [`disc`] is a constructive Schur-Nevanlinna solver in the unit disc with
//!   Blaschke completion and the linear-fractional parametrization of all
//!   solutions.
//! * [`realization`] builds finite-truncation network realizations of
//!   contractive Dirichlet-series multipliers via a lurking isometry.
//!
//! Matrix convention: entry `(i, j)` of every kernel or Pick matrix is
//! `κ(λ_i, λ_j)`, i.e. linear in the first point and conjugate-linear in the
//! second. This is the conjugate transpose of the other common convention and
//! has the same spectrum.

pub mod arith;
pub mod disc;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod pick;
pub mod point;
pub mod realization;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use point::HalfPlanePoint;

/// Conjugation convention recorded in every serialized certificate.
pub const CONJUGATION_CONVENTION: &str = "M[i][j] = (1 - w_i conj(w_j)) k(l_i, l_j), k linear in first argument";

/// Schema tag carried by serialized reports and problems.
pub const SCHEMA_VERSION: &str = "pickzeta/1";
