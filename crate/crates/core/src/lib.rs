//! Quasi-probability (Weyl) distributions for tuples of Hermitian matrices.
//!
//! For operators `A = (A_1, …, A_n)` and a state `ρ`, the distribution `W_ρ`
//! is fixed by requiring that the marginal along every direction `ξ` equals
//! the spectral distribution of `ξ·A` in `ρ`; its Fourier transform is
//! `tr ρ e^{iξ·A}`. The crate evaluates that transform, computes regularized
//! versions of `W_ρ` on grids, and checks the structural properties of the
//! distribution: support, singularities, moments, informational completeness
//! and symmetry.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod charfn;
pub mod checks;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod bmv;
pub mod infocomp;
pub mod moments;
pub mod quad;
pub mod qubit;
pub mod io;
pub mod linalg;
pub mod random;
pub mod symmetry;

pub use error::{Result, WignerError};
pub use linalg::{
    eigendecompose, expectation_tuple, validate_tuple, ComplexMatrix, ComplexVector, DensityMatrix, Hermitian,
    OperatorTuple, PencilEigen, Tolerances,
};
