//! Exact spectral invariants of finite-dimensional Lie algebras.
//!
//! For an algebra with basis `x_1..x_n` the characteristic polynomial is
//! `Q(z) = det(z0·I + z1·ad x_1 + … + zn·ad x_n)`, a homogeneous polynomial of
//! degree `n`. Its factorization, the spectral matrix of a solvable algebra, the
//! number of distinct linear factors and the Poincaré polynomial of the
//! complement of its zero set are invariants of the algebra up to isomorphism,
//! and are computed here in exact arithmetic.

pub mod arrangement;
pub mod catalog;
pub mod document;
pub mod error;
pub mod field;
pub mod lie;
pub mod matrix;
pub mod mpoly;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use field::{FieldElement, Rational, TowerContext};
pub use lie::LieAlgebra;
pub use matrix::MatrixK;
pub use mpoly::{Monomial, MultiPoly, PolyMatrix};
