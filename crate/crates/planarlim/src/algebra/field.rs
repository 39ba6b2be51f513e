//! A minimal field abstraction so that Puiseux and transfer code runs both on
//! exact number-field elements and on high precision floats.
//!
//! Elements carry their own context (precision, defining polynomial), so the
//! constructors take `&self` as a template.

use super::rat::Rat;
use num_traits::{One, Zero};

pub trait Field: Clone + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn vanishes(&self) -> bool;

    /// Square root inside the field, when it exists there.
    fn sqrt_opt(&self) -> Option<Self> {
        None
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.from_rat_like(&Rat::from_integer(n.into()))
    }
    fn scale(&self, r: &Rat) -> Self {
        self.mul(&self.from_rat_like(r))
    }
    fn powi(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!Zero::is_zero(o), "division by zero");
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sqrt_opt(&self) -> Option<Self> {
        use num_traits::Signed;
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rat::new(n, d))
        } else {
            None
        }
    }
}

/// Evaluate a polynomial with coefficients in `F` (ascending) at `x`.
pub fn horner<F: Field>(coeffs: &[F], x: &F) -> F {
    let mut acc = x.zero_like();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Trim trailing zeros.
pub fn trim<F: Field>(v: &mut Vec<F>) {
    while v.last().map_or(false, |c| c.vanishes()) {
        v.pop();
    }
}

/// Remainder of `a` modulo `b` over a field.
pub fn poly_rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut r: Vec<F> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let q = r[r.len() - 1].div(lead);
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = r[k + i].sub(&q.mul(bi));
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Monic gcd over a field. Inputs must not both be zero.
pub fn poly_gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().expect("gcd of zero polynomials").clone();
    x.iter().map(|c| c.div(&lead)).collect()
}

pub fn poly_derivative<F: Field>(a: &[F]) -> Vec<F> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&c.from_i64_like(i as i64)))
        .collect()
}
