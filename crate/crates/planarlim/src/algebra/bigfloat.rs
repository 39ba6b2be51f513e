//! Configurable precision real numbers on top of `astro_float`.
//!
//! Every value remembers its working precision in bits; binary operations use
//! the larger of the two precisions so nothing is silently downcast.

use super::rat::Rat;
use astro_float::{Consts, Radix, RoundingMode};
use num_traits::Zero;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

pub const DEFAULT_PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct BigFloat {
    v: astro_float::BigFloat,
    prec: usize,
}

impl BigFloat {
    fn wrap(v: astro_float::BigFloat, prec: usize) -> BigFloat {
        BigFloat { v, prec }
    }
    pub fn prec(&self) -> usize {
        self.prec
    }
    pub fn with_prec(&self, p: usize) -> BigFloat {
        let mut v = self.v.clone();
        let _ = v.set_precision(p, RM);
        BigFloat::wrap(v, p)
    }
    pub fn zero(p: usize) -> BigFloat {
        BigFloat::wrap(astro_float::BigFloat::from_u32(0, p), p)
    }
    pub fn one(p: usize) -> BigFloat {
        BigFloat::from_i64(1, p)
    }
    pub fn from_i64(n: i64, p: usize) -> BigFloat {
        BigFloat::wrap(astro_float::BigFloat::from_i64(n, p), p)
    }
    pub fn from_f64(x: f64, p: usize) -> BigFloat {
        BigFloat::wrap(astro_float::BigFloat::from_f64(x, p), p)
    }
    /// Parse a decimal literal such as "-1.25e-3".
    pub fn parse(s: &str, p: usize) -> BigFloat {
        let v = with_cc(|cc| astro_float::BigFloat::parse(s, Radix::Dec, p, RM, cc));
        BigFloat::wrap(v, p)
    }
    pub fn from_bigint(n: &num_bigint::BigInt, p: usize) -> BigFloat {
        let work = p.max(n.bits() as usize + 8);
        BigFloat::parse(&n.to_string(), work).with_prec(p)
    }
    pub fn from_rat(r: &Rat, p: usize) -> BigFloat {
        if r.is_zero() {
            return BigFloat::zero(p);
        }
        let work = p + 16;
        let n = BigFloat::from_bigint(r.numer(), work);
        let d = BigFloat::from_bigint(r.denom(), work);
        n.div(&d).with_prec(p)
    }
    pub fn pi(p: usize) -> BigFloat {
        BigFloat::wrap(with_cc(|cc| cc.pi(p, RM)), p)
    }
    fn p2(&self, o: &BigFloat) -> usize {
        self.prec.max(o.prec)
    }
    pub fn add(&self, o: &BigFloat) -> BigFloat {
        let p = self.p2(o);
        BigFloat::wrap(self.v.add(&o.v, p, RM), p)
    }
    pub fn sub(&self, o: &BigFloat) -> BigFloat {
        let p = self.p2(o);
        BigFloat::wrap(self.v.sub(&o.v, p, RM), p)
    }
    pub fn mul(&self, o: &BigFloat) -> BigFloat {
        let p = self.p2(o);
        BigFloat::wrap(self.v.mul(&o.v, p, RM), p)
    }
    pub fn div(&self, o: &BigFloat) -> BigFloat {
        let p = self.p2(o);
        BigFloat::wrap(self.v.div(&o.v, p, RM), p)
    }
    pub fn neg(&self) -> BigFloat {
        BigFloat::wrap(self.v.neg(), self.prec)
    }
    pub fn abs(&self) -> BigFloat {
        BigFloat::wrap(self.v.abs(), self.prec)
    }
    pub fn sqrt(&self) -> BigFloat {
        BigFloat::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }
    pub fn cbrt(&self) -> BigFloat {
        BigFloat::wrap(self.v.cbrt(self.prec, RM), self.prec)
    }
    pub fn ln(&self) -> BigFloat {
        let p = self.prec;
        BigFloat::wrap(with_cc(|cc| self.v.ln(p, RM, cc)), p)
    }
    pub fn exp(&self) -> BigFloat {
        let p = self.prec;
        BigFloat::wrap(with_cc(|cc| self.v.exp(p, RM, cc)), p)
    }
    pub fn powi(&self, n: i64) -> BigFloat {
        let r = BigFloat::wrap(self.v.powi(n.unsigned_abs() as usize, self.prec, RM), self.prec);
        if n < 0 {
            BigFloat::one(self.prec).div(&r)
        } else {
            r
        }
    }
    /// Real power via exp/log; `self` must be positive.
    pub fn powf(&self, e: &BigFloat) -> BigFloat {
        self.ln().mul(e).exp()
    }
    pub fn scale_rat(&self, r: &Rat) -> BigFloat {
        self.mul(&BigFloat::from_rat(r, self.prec))
    }
    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }
    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        format!("{}", self.v).parse().unwrap_or(f64::NAN)
    }
    /// |self - o| / |o| (or |self| when o = 0).
    pub fn rel_err(&self, o: &BigFloat) -> BigFloat {
        let d = self.sub(o).abs();
        if o.is_zero() {
            d
        } else {
            d.div(&o.abs())
        }
    }
    pub fn max(self, o: BigFloat) -> BigFloat {
        if self >= o {
            self
        } else {
            o
        }
    }
    /// Nearest integer.
    pub fn round_to_bigint(&self) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        if self.v.is_zero() || !self.is_finite() {
            return BigInt::from(0);
        }
        let (sign, ds, e) = match with_cc(|cc| self.v.convert_to_radix(Radix::Dec, RM, cc)) {
            Ok(x) => x,
            Err(_) => return BigInt::from(0),
        };
        let mut n = BigInt::from(0);
        let e = e as i64;
        for i in 0..e.max(0) {
            let d = ds.get(i as usize).copied().unwrap_or(0);
            n = n * 10 + d as u32;
        }
        let next = if e >= 0 { ds.get(e as usize).copied().unwrap_or(0) } else { 0 };
        if next >= 5 {
            n += 1;
        }
        if sign == astro_float::Sign::Neg {
            -n
        } else {
            n
        }
    }
    /// Scientific rendering with `digits` significant decimal digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".into();
        }
        if !self.is_finite() {
            return "NaN".into();
        }
        let (sign, mut ds, mut e) = match with_cc(|cc| self.v.convert_to_radix(Radix::Dec, RM, cc)) {
            Ok(x) => x,
            Err(_) => return "NaN".into(),
        };
        // ds are digits of 0.d1d2... * 10^e
        if ds.len() > digits {
            let round_up = ds[digits] >= 5;
            ds.truncate(digits);
            if round_up {
                let mut i = digits;
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        ds.truncate(digits);
                        e += 1;
                        break;
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        }
        while ds.len() > 1 && *ds.last().unwrap() == 0 {
            ds.pop();
        }
        let mut s = String::new();
        if sign == astro_float::Sign::Neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        if ds.len() > 1 {
            s.push('.');
            for d in &ds[1..] {
                s.push((b'0' + d) as char);
            }
        }
        let exp10 = e - 1;
        if exp10 != 0 {
            s.push_str(&format!("e{exp10}"));
        }
        s
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &BigFloat) -> bool {
        self.v.cmp(&o.v) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &BigFloat) -> Option<Ordering> {
        self.v.cmp(&o.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(30))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(f.precision().unwrap_or(30)))
    }
}

impl super::Field for BigFloat {
    fn zero_like(&self) -> Self {
        BigFloat::zero(self.prec)
    }
    fn one_like(&self) -> Self {
        BigFloat::one(self.prec)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        BigFloat::from_rat(r, self.prec)
    }
    fn add(&self, o: &Self) -> Self {
        BigFloat::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BigFloat::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BigFloat::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        BigFloat::div(self, o)
    }
    fn neg(&self) -> Self {
        BigFloat::neg(self)
    }
    fn vanishes(&self) -> bool {
        BigFloat::is_zero(self)
    }
    fn sqrt_opt(&self) -> Option<Self> {
        if self.is_negative() {
            None
        } else {
            Some(self.sqrt())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn basics() {
        let p = DEFAULT_PREC;
        let x = BigFloat::from_rat(&rat(1, 3), p);
        let y = x.mul(&BigFloat::from_i64(3, p));
        assert!(y.sub(&BigFloat::one(p)).abs() < BigFloat::parse("1e-70", p));
        assert_eq!(BigFloat::parse("0.0180827901833", p).to_sci(6), "1.80828e-2");
        assert_eq!(BigFloat::from_i64(12, p).to_sci(10), "1.2e1");
        let two = BigFloat::from_i64(2, p);
        assert!((two.sqrt().to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!((BigFloat::pi(p).to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }
}
