//! MUB-driven commuting-operator bases for finite-dimensional quantum
//! systems, the closed-form joint quasiprobability distribution (QPD) on
//! their measurement outcomes, and the convex polytope of states for which
//! that QPD is an honest joint distribution.
//!
//! The crate is organised around a handful of small modules:
//!
//! * [`numerics`] — dense complex matrices, Hermitian eigendecomposition,
//!   spectral matrix exponentials.
//! * [`mub`] — complete sets of mutually unbiased bases, built by
//!   per-dimension constructions behind a common registry.
//! * [`csco`] — the complete sets of commuting operators attached to a MUB
//!   family, diagonal tensor operators via Clebsch–Gordan coefficients, and
//!   the published explicit operator fixtures for dims 2, 3 and 4.
//! * [`state`] — Bloch-vector parameterisation of density matrices.
//! * [`qpd`] — the joint QPD table, its marginals, and the Margenau–Hill
//!   characteristic-function oracle.
//! * [`polytope`] — membership, vertices, facet/edge enumeration and LP
//!   support probing of the non-negativity region.
//! * [`tomography`] — measurement simulation and linear-inversion
//!   reconstruction of the Bloch vector.

pub mod csco;
pub mod error;
pub mod mub;
pub mod numerics;
pub mod polytope;
pub mod qpd;
pub mod rng;
pub mod simplex;
pub mod state;
pub mod tol;
pub mod tomography;

pub use error::Error;
pub use numerics::ComplexMatrix;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
