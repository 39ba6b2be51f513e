//! Singularity analysis for the extreme kinds: dominant singularity of an
//! algebraic branch, Puiseux expansion by undetermined coefficients, and
//! transfer to Nilsson-type coefficient asymptotics.

pub mod analysis;
pub mod exact;
pub mod holonomic;
pub mod puiseux;
pub mod singularity;
pub mod transfer;

pub use analysis::{asymptotic_check, asymptotic_expansion, AsymExpansion, CheckReport};
pub use holonomic::{holonomic_evaluate, HolonomicRec};
pub use puiseux::{puiseux_expand, PuiseuxExpansion};
pub use singularity::{dominant_singularity, Singularity};
pub use transfer::{transfer, Transfer};

use crate::algebra::numfield::{NumberFieldElem, Quad};
use crate::algebra::{BigFloat, Field, Rat};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AsymError {
    #[error("leading recurrence coefficient vanishes at n = {0}")]
    LeadingVanishes(i64),
    #[error("not enough initial values to reach index {0}")]
    TooFewInitial(usize),
    #[error("branch stub inconsistent with the equation: {0}")]
    StubInconsistent(String),
    #[error("multiple dominant singularities")]
    MultipleDominant,
    #[error("no singularity found for the branch")]
    NoSingularity,
    #[error("non-square-root singularity")]
    NonSquareRoot,
    #[error("requested {requested} corrections, expansion supports {available}")]
    OrderTooHigh { requested: usize, available: usize },
    #[error("branch tracking failed: {0}")]
    Tracking(String),
    #[error("{0}")]
    Derive(String),
}

/// Field elements with a real embedding, so signs and sizes can be inspected.
pub trait Approx: Field {
    fn approx(&self, bits: usize) -> BigFloat;
    /// Zero test; exact fields use exact equality, floats a relative bound.
    fn negligible(&self, scale: &BigFloat) -> bool {
        let _ = scale;
        self.vanishes()
    }
}

impl Approx for Rat {
    fn approx(&self, bits: usize) -> BigFloat {
        BigFloat::from_rat(self, bits)
    }
}

impl Approx for NumberFieldElem {
    fn approx(&self, bits: usize) -> BigFloat {
        self.to_big(bits)
    }
}

impl Approx for BigFloat {
    fn approx(&self, bits: usize) -> BigFloat {
        self.with_prec(bits)
    }
    fn negligible(&self, scale: &BigFloat) -> bool {
        let p = self.prec();
        let tol = BigFloat::from_i64(2, p).powi(-(p as i64 * 3 / 4));
        self.is_zero() || self.abs().sub(&scale.abs().add(&BigFloat::one(p)).mul(&tol)).is_negative()
    }
}

impl<F: Approx> Approx for Quad<F> {
    /// x + y sqrt(alpha), alpha >= 0.
    fn approx(&self, bits: usize) -> BigFloat {
        let a = self.alpha.approx(bits);
        assert!(!a.is_negative(), "complex embedding of a quadratic element");
        self.x.approx(bits).add(&self.y.approx(bits).mul(&a.sqrt()))
    }
    fn negligible(&self, scale: &BigFloat) -> bool {
        self.x.negligible(scale) && self.y.negligible(scale)
    }
}
