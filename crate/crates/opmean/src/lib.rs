//! Numerical toolkit for operator means of positive definite Hermitian
//! matrices.
//!
//! An operator mean with representing function `f` sends a pair of
//! positive definite matrices to
//!
//! ```text
//! A s B = A^1/2 f(A^-1/2 B A^-1/2) A^1/2
//! ```
//!
//! This crate evaluates such means (weighted arithmetic, geometric,
//! harmonic, measure-backed, and transformed), computes the companion
//! mean that turns the arithmetic difference `A nabla_mu B - A s B` into
//! an exact congruence of `A - B`, and verifies the exact identities and
//! the Ky Fan type inequalities relating a mean of matrices in
//! `(0, I/2]` to the mean of their complements. Everything runs on a
//! dense complex Hermitian eigensolver with no external linear algebra
//! dependencies, and all randomized verification is reproducible from a
//! single seed.
//!
//! The main entry points:
//!
//! - [`hermitian::HermitianMatrix`]: validated Hermitian matrices with
//!   spectral decompositions, matrix functions, and Loewner comparisons.
//! - [`means`]: representing functions, named and measure-backed means,
//!   and the adjoint, transpose, and dual transforms.
//! - [`measure`]: finite Borel measures on `[0, 1]` representing means as
//!   integrals of weighted harmonic means.
//! - [`identities`]: residual checks for the exact difference and
//!   conjugation identities.
//! - [`inequalities`]: scalar and operator Ky Fan type inequalities,
//!   eigenvalue comparisons, equality diagnostics, and the bundled 2x2
//!   counterexample.
//! - [`trials`]: seeded randomized suites over all of the above.

pub mod error;
pub mod hermitian;
pub mod identities;
pub mod inequalities;
pub mod matrix;
pub mod means;
pub mod measure;
pub mod quadrature;
pub mod report;
pub mod trials;

pub use error::{Error, Result};
pub use hermitian::{HermitianMatrix, OrderComparison, SpectralDecomposition};
pub use matrix::ComplexMatrix;
pub use means::{
    adjoint, dual, evaluate_mean, named_mean, parse_mean_spec, transpose, MeanKind,
    RepresentingFunction,
};
pub use measure::BorelMeasure;
