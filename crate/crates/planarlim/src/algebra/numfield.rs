//! Number fields Q(theta) for a designated real root theta of an irreducible
//! polynomial, and quadratic extensions F(s) with s^2 = alpha.

use super::bigfloat::BigFloat;
use super::field::Field;
use super::poly::Poly;
use super::rat::Rat;
use super::roots;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct NumberField {
    pub minimal_poly: Poly,
    pub isolating_interval: (Rat, Rat),
}

impl NumberField {
    /// `minimal_poly` must be irreducible; it is made monic. The interval must
    /// isolate exactly one real root.
    pub fn new(minimal_poly: &Poly, isolating_interval: (Rat, Rat)) -> Arc<NumberField> {
        let m = minimal_poly.monic();
        let seq = roots::sturm_sequence(&m);
        let (lo, hi) = isolating_interval;
        let n = if lo == hi {
            assert!(m.eval(&lo).is_zero());
            1
        } else {
            roots::count_roots(&seq, &lo, &hi)
        };
        assert_eq!(n, 1, "interval does not isolate a single root");
        Arc::new(NumberField { minimal_poly: m, isolating_interval: (lo, hi) })
    }
    pub fn degree(&self) -> usize {
        self.minimal_poly.degree().unwrap()
    }
    pub fn theta_big(&self, bits: usize) -> BigFloat {
        let (lo, hi) = &self.isolating_interval;
        let seq = roots::sturm_sequence(&self.minimal_poly);
        roots::refine(&self.minimal_poly, &seq, lo.clone(), hi.clone(), bits + 16).approx.with_prec(bits)
    }
}

#[derive(Clone)]
pub struct NumberFieldElem {
    pub field: Arc<NumberField>,
    pub residue: Poly,
}

impl NumberFieldElem {
    pub fn new(field: &Arc<NumberField>, p: &Poly) -> NumberFieldElem {
        let residue = p.divrem(&field.minimal_poly).1;
        NumberFieldElem { field: field.clone(), residue }
    }
    pub fn theta(field: &Arc<NumberField>) -> NumberFieldElem {
        NumberFieldElem::new(field, &Poly::x())
    }
    pub fn from_rat(field: &Arc<NumberField>, r: &Rat) -> NumberFieldElem {
        NumberFieldElem::new(field, &Poly::constant(r.clone()))
    }
    pub fn to_big(&self, bits: usize) -> BigFloat {
        self.residue.eval_big(&self.field.theta_big(bits + 32)).with_prec(bits)
    }
    pub fn inverse(&self) -> NumberFieldElem {
        // extended Euclid: s*r + t*m = 1
        let m = &self.field.minimal_poly;
        let (mut r0, mut r1) = (m.clone(), self.residue.clone());
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        assert!(!r1.is_zero(), "inverse of zero in a number field");
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since m is irreducible
        assert_eq!(r0.degree(), Some(0), "minimal polynomial is not irreducible");
        let c = r0.coeff(0);
        NumberFieldElem::new(&self.field, &s0.scale(&c.recip()))
    }
    /// Rational value if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.residue.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.residue.coeff(0)),
            _ => None,
        }
    }
    pub fn to_json(&self) -> serde_json::Value {
        self.residue.to_json()
    }
}

impl PartialEq for NumberFieldElem {
    fn eq(&self, o: &Self) -> bool {
        self.field.minimal_poly == o.field.minimal_poly && self.residue == o.residue
    }
}

impl fmt::Debug for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue.fmt_var("θ"))
    }
}

impl Field for NumberFieldElem {
    fn zero_like(&self) -> Self {
        NumberFieldElem::new(&self.field, &Poly::zero())
    }
    fn one_like(&self) -> Self {
        NumberFieldElem::new(&self.field, &Poly::one())
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        NumberFieldElem::from_rat(&self.field, r)
    }
    fn add(&self, o: &Self) -> Self {
        NumberFieldElem { field: self.field.clone(), residue: &self.residue + &o.residue }
    }
    fn sub(&self, o: &Self) -> Self {
        NumberFieldElem { field: self.field.clone(), residue: &self.residue - &o.residue }
    }
    fn mul(&self, o: &Self) -> Self {
        NumberFieldElem::new(&self.field, &(&self.residue * &o.residue))
    }
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inverse())
    }
    fn neg(&self) -> Self {
        NumberFieldElem { field: self.field.clone(), residue: -&self.residue }
    }
    fn vanishes(&self) -> bool {
        self.residue.is_zero()
    }
}

/// x + y*s with s^2 = alpha.
#[derive(Clone, Debug)]
pub struct Quad<F: Field> {
    pub x: F,
    pub y: F,
    pub alpha: F,
}

impl<F: Field> Quad<F> {
    pub fn new(x: F, y: F, alpha: &F) -> Quad<F> {
        Quad { x, y, alpha: alpha.clone() }
    }
    /// The generator s.
    pub fn s(alpha: &F) -> Quad<F> {
        Quad { x: alpha.zero_like(), y: alpha.one_like(), alpha: alpha.clone() }
    }
    pub fn embed(x: F, alpha: &F) -> Quad<F> {
        Quad { y: x.zero_like(), x, alpha: alpha.clone() }
    }
}

impl<F: Field> Field for Quad<F> {
    fn zero_like(&self) -> Self {
        Quad::embed(self.x.zero_like(), &self.alpha)
    }
    fn one_like(&self) -> Self {
        Quad::embed(self.x.one_like(), &self.alpha)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Quad::embed(self.x.from_rat_like(r), &self.alpha)
    }
    fn add(&self, o: &Self) -> Self {
        Quad::new(self.x.add(&o.x), self.y.add(&o.y), &self.alpha)
    }
    fn sub(&self, o: &Self) -> Self {
        Quad::new(self.x.sub(&o.x), self.y.sub(&o.y), &self.alpha)
    }
    fn mul(&self, o: &Self) -> Self {
        let x = self.x.mul(&o.x).add(&self.y.mul(&o.y).mul(&self.alpha));
        let y = self.x.mul(&o.y).add(&self.y.mul(&o.x));
        Quad::new(x, y, &self.alpha)
    }
    fn div(&self, o: &Self) -> Self {
        let n = o.x.mul(&o.x).sub(&o.y.mul(&o.y).mul(&self.alpha));
        let conj = Quad::new(o.x.clone(), o.y.neg(), &self.alpha);
        let p = self.mul(&conj);
        Quad::new(p.x.div(&n), p.y.div(&n), &self.alpha)
    }
    fn neg(&self) -> Self {
        Quad::new(self.x.neg(), self.y.neg(), &self.alpha)
    }
    fn vanishes(&self) -> bool {
        self.x.vanishes() && self.y.vanishes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ri};

    #[test]
    fn cube_root_of_two_field() {
        let k = NumberField::new(&Poly::from_i64(&[-2, 0, 0, 1]), (ri(1), ri(2)));
        let th = NumberFieldElem::theta(&k);
        let c = th.mul(&th).mul(&th);
        assert_eq!(c.as_rat(), Some(ri(2)));
        let inv = th.inverse();
        assert_eq!(inv.mul(&th).as_rat(), Some(ri(1)));
        assert!((th.to_big(128).to_f64() - 2f64.cbrt()).abs() < 1e-15);
        let q = Quad::s(&NumberFieldElem::from_rat(&k, &rat(3, 1)));
        assert_eq!(q.mul(&q).x.as_rat(), Some(ri(3)));
    }
}
