//! Exact arithmetic substrate: rationals, sparse Laurent polynomials over
//! declared rings, derivations, operator words and exact kernels.

pub mod derivation;
pub mod echelon;
pub mod matrix;
mod parse;
pub mod poly;
pub mod rational;
pub mod ring;

pub use derivation::{Derivation, DiffOperator, OperatorWord};
pub use echelon::{echelon_polynomials, same_span, in_span};
pub use matrix::RationalMatrix;
pub use poly::Polynomial;
pub use rational::{int, parse_rational, rat, Rational};
pub use ring::{Monomial, Ring, TermMap, VarKind};
