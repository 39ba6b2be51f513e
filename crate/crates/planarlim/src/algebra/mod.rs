//! Exact arithmetic: rationals, polynomials, resultants, real roots, number
//! fields, high precision floats and the binomial identity checkers.

pub mod bigfloat;
pub mod binomial;
pub mod factor;
pub mod field;
pub mod mpoly;
pub mod numfield;
pub mod poly;
pub mod rat;
pub mod roots;

pub use bigfloat::BigFloat;
pub use field::Field;
pub use mpoly::{resultant, BivarPoly, MPoly};
pub use numfield::{NumberField, NumberFieldElem, Quad};
pub use poly::Poly;
pub use rat::Rat;
pub use roots::{isolate_real_roots, RootInterval};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("nothing to eliminate")]
    NothingToEliminate,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}
