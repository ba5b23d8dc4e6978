//! Chain invariants of the poset `D_P` attached to a nilpotent Jordan type
//! `P`: the Greene partition `λ(P)`, the U-chain partition `λ_U(P)`, full
//! U-processes, and a finite-field estimate of the generic Jordan type of the
//! nilpotent commutator.
//!
//! The combinatorics are integer-valued. Linear algebra is generic over
//! [`field::Field`], with aliases below for the common scalar choices.

pub mod commutant;
pub mod error;
pub mod field;
pub mod flow;
pub mod greene;
pub mod matrix;
pub mod partition;
pub mod poset;
pub mod uchain;
pub mod uprocess;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Fp, PrimeField};
pub use matrix::Matrix;
pub use partition::Partition;
pub use poset::{Poset, Vertex};
pub use uchain::UChainSpec;

/// Matrices over `GF(p)`, the default for sampling.
pub type MatrixFp = Matrix<Fp>;
/// Exact rational matrices.
pub type MatrixQ = Matrix<num_rational::BigRational>;
/// Rational matrices with machine-word entries; can overflow on large inputs.
pub type MatrixQ64 = Matrix<num_rational::Rational64>;
pub type MatrixF64 = Matrix<f64>;
pub type MatrixF32 = Matrix<f32>;
