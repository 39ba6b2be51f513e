//! Dense univariate polynomials over the rationals.

use super::bigfloat::BigFloat;
use super::rat::{lcm_denoms, gcd_numers, ri, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Poly {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }
    pub fn zero() -> Poly {
        Poly { c: vec![] }
    }
    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }
    pub fn x() -> Poly {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }
    pub fn constant(r: Rat) -> Poly {
        Poly::new(vec![r])
    }
    pub fn from_i64(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| ri(x)).collect())
    }
    pub fn monomial(r: Rat, k: usize) -> Poly {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = r;
        Poly::new(c)
    }
    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }
    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }
    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
    pub fn eval_big(&self, x: &BigFloat) -> BigFloat {
        let p = x.prec();
        let mut acc = BigFloat::zero(p);
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(&BigFloat::from_rat(c, p));
        }
        acc
    }
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.c.iter().rev() {
            acc = acc * x + super::rat::rat_to_f64(c);
        }
        acc
    }
    pub fn scale(&self, r: &Rat) -> Poly {
        Poly::new(self.c.iter().map(|x| x * r).collect())
    }
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * ri(i as i64))
                .collect(),
        )
    }
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
    /// self(q(x))
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }
    /// Quotient and remainder. Panics when dividing by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        let lead = d.lead();
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lead;
            if !f.is_zero() {
                for (i, di) in d.c.iter().enumerate() {
                    r[k + i] -= &f * di;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead();
        a.scale(&l.recip())
    }
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_denoms(self.c.iter());
        let scaled: Vec<Rat> = self.c.iter().map(|x| x * Rat::from_integer(l.clone())).collect();
        let g = gcd_numers(scaled.iter());
        let mut g = Rat::from_integer(g);
        if scaled.last().unwrap().is_negative() {
            g = -g;
        }
        Poly::new(scaled.into_iter().map(|x| x / &g).collect())
    }
    pub fn int_coeffs(&self) -> Vec<BigInt> {
        self.primitive().c.iter().map(|x| x.numer().clone()).collect()
    }
    pub fn square_free(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        self.divrem(&g).0.primitive()
    }
    /// Remove factors of x.
    pub fn strip_x(&self) -> Poly {
        let k = self.c.iter().take_while(|x| x.is_zero()).count();
        Poly::new(self.c[k..].to_vec())
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.c
                .iter()
                .map(|x| serde_json::Value::String(x.to_string()))
                .collect(),
        )
    }
    /// Human readable form in the named variable, ascending powers.
    pub fn fmt_var(&self, v: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{k}"),
            };
            if k == 0 || !a.is_one() {
                out.push_str(&a.to_string());
                if k > 0 {
                    out.push('*');
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl<'a> Add for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|x| -x).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}
impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}
impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn divrem_roundtrip() {
        let a = Poly::from_i64(&[1, 2, 3, 4, 5]);
        let b = Poly::from_i64(&[-1, 0, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_and_square_free() {
        let f = Poly::from_i64(&[-1, 1]);
        let g = Poly::from_i64(&[2, 1]);
        let p = &(&f * &f) * &g;
        assert_eq!(p.gcd(&p.derivative()), f);
        assert_eq!(p.square_free(), (&f * &g).primitive());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::constant(rat(3, 2)).primitive(), Poly::one());
    }
}
