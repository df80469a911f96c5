//! Exact finite-difference calculus for polynomial mappings `Q^n -> Q^m`.
//!
//! Everything is computed over arbitrary-precision rationals, so every
//! identity checked by this crate is checked by exact equality. The modules
//! build on each other roughly bottom-up:
//!
//! - [`combinatorics`]: binomials, multinomials, Stirling numbers, falling factorials.
//! - [`poly`]: sparse multivariate polynomials with vector codomain.
//! - [`tensor`]: symmetric multilinear forms and both polarization formulas.
//! - [`diff`]: numeric and symbolic forward differences, Newton expansion and
//!   the closed forms for differences of homogeneous polynomials.
//! - [`components`]: homogeneous-component extraction (interpolation, Stirling,
//!   formal scaling) and the degree criterion.
//! - [`positivity`]: positivity of polynomials on the orthant and the
//!   non-positive cubic whose pure differences are all nonnegative.
//! - [`kantorovich`]: constructive extension of a cone function satisfying the
//!   difference hypotheses to a positive polynomial on the whole space.
//! - [`parse`]: the polynomial expression grammar and canonical formatter.
//! - [`cli`]: the `posipoly` command-line surface.

pub mod cli;
pub mod combinatorics;
pub mod components;
pub mod diff;
mod error;
pub mod kantorovich;
pub mod mapping;
pub mod parse;
pub mod poly;
pub mod positivity;
pub mod report;
pub mod tensor;
pub mod vector;

pub use error::{Error, Result};
pub use mapping::{ConeRestriction, FnMapping, Mapping, TableFunction};
pub use poly::{Monomial, ScalarPoly, VectorPoly};
pub use report::{DiffReport, SamplerConfig, Verdict, Witness};
pub use tensor::SymTensor;
pub use vector::Vector;

/// Arbitrary-precision rational scalar. Always gcd-reduced with a positive
/// denominator, so equality is structural.
pub type Rat = num_rational::BigRational;
