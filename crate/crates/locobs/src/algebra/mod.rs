//! Exact noncommutative algebra of the fifteen conformal generators.

pub mod coeff;
pub mod engine;
pub mod expr;
pub mod generator;
mod key;
pub mod metric;
pub mod ops;
pub mod relations;
pub mod suite;

pub use coeff::{GaussRat, Rat};
pub use expr::{Expression, Monomial, Word};
pub use generator::{j_signed, Gen, GenKind};
pub use ops::{associator, equals, jacobi_residual, lie_bracket, normal_form, sym_product, validate_mass_rules};
