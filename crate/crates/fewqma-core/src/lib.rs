//! Exact, desk-scale simulation of quantum Merlin-Arthur verification with a
//! bounded-dimension witness subspace, and of the deterministic oracle
//! reduction that collapses the witness subspace to a unique witness.
//!
//! The crate is organised around a handful of small, dense linear-algebra
//! primitives ([`linalg`]), register-permutation machinery ([`permgroup`]),
//! the symmetric/antisymmetric subspace calculus on tensor powers
//! ([`subspace`]), a spectral model of verification procedures ([`verifier`]),
//! the alternating-subspace and witness tests together with the oracle
//! reduction loop ([`protocol`]), and majorization bounds relating vector and
//! subspace witness definitions ([`majorization`]).
//!
//! Everything is deterministic: randomness comes from an explicitly seeded
//! counter-based generator ([`rng::CounterRng`]), and all operations are pure
//! functions of their inputs. The crate is `no_std` (with `alloc`); all IO
//! lives in the companion CLI crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod comb;
pub mod error;
pub mod linalg;
pub mod majorization;
pub mod permgroup;
pub mod protocol;
pub mod rng;
pub mod subspace;
pub mod verifier;

pub use error::{Error, Result};

/// Largest ambient Hilbert-space dimension any operation will materialise.
///
/// Dense operators of this size are the practical ceiling for the cyclic
/// Jacobi eigensolver and the tensor-power constructions.
pub const AMBIENT_CAP: usize = 4096;

/// Structural tolerance: unit norms, orthonormality, unitarity, projector
/// identities of directly constructed objects.
pub const TOL_STRUCTURAL: f64 = 1e-9;

/// Tolerance for reconstructed or derived quantities (eigendecompositions,
/// subspace identities) that accumulate error through tensor powers.
pub const TOL_DERIVED: f64 = 1e-8;

/// Threshold on singular values / residual norms below which a direction is
/// treated as rank-deficient.
pub const TOL_RANK: f64 = 1e-7;
