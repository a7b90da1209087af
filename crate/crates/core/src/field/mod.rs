//! Exact scalars: rationals and towers of quadratic extensions over them.

pub mod literal;
mod numeric;
pub mod rational;
pub mod tower;
pub mod univariate;

pub use literal::{parse_gauss, Gauss};
pub use rational::Rational;
pub use tower::{FieldElement, Level, TowerContext, DEFAULT_TOWER_DEPTH};
pub use univariate::{factor_univariate, roots, solve_quadratic, UniFactorization, UniPoly};
