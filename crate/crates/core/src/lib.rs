//! Exact computational invariant theory of plane quartic curves.
//!
//! The crate computes Dixmier-Ohno invariants of ternary quartic forms, the
//! joint invariants of binary octic/quartic pairs, the equivariant transport
//! between the two pictures, and reconstructs a plane quartic from a generic
//! invariant tuple. All arithmetic is exact: rationals, prime fields (word
//! size and big), and quadratic extensions thereof.
//!
//! The core is `no_std` (with `alloc`); IO, file formats, and the parallel
//! interpolation driver live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod rng;
pub mod scalar;
pub mod matrix;
pub mod crt;
pub mod binary;
pub mod ternary;
pub mod vanrijnswou;
pub mod evectant;
pub mod macaulay;
pub mod dixmier_ohno;
pub mod normalize;
pub mod interpolate;
pub mod mestre;
pub mod mestre_tables;
pub mod reconstruct;
pub mod olive;
pub mod shioda_tables;

pub use scalar::{Field, FieldRand, FieldSqrt, Fp64, FpBig, Quad};
pub use matrix::{LinAlgError, LinearSolution, Matrix};
pub use binary::BinaryForm;
pub use ternary::{TernaryForm, TernaryQuadric};
