//! Big rationals. `Rat` is `num_rational::BigRational`, which is always kept
//! reduced with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rbig(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// "p/q", or "p" for integers.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat, super::AlgebraError> {
    let s = s.trim();
    let bad = || super::AlgebraError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(super::AlgebraError::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => match s.split_once('.') {
            // terminating decimal
            Some((i, f)) => {
                let digits: BigInt = format!("{i}{f}").parse().map_err(|_| bad())?;
                Ok(Rat::new(digits, num_traits::pow(BigInt::from(10), f.len())))
            }
            None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
        },
    }
}

pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binom_r(n: i64, k: i64) -> Rat {
    rbig(binom(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of denominators.
pub fn lcm_denoms<'a>(it: impl Iterator<Item = &'a Rat>) -> BigInt {
    it.fold(BigInt::one(), |a, r| a.lcm(r.denom()))
}

pub fn gcd_numers<'a>(it: impl Iterator<Item = &'a Rat>) -> BigInt {
    it.fold(BigInt::zero(), |a, r| a.gcd(r.numer()))
}

pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}
