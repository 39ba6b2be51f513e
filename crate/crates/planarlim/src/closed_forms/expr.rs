//! Expression trees over + - * / ^, sqrt, cbrt, log with rational constants.
//!
//! One tree is evaluated in several domains: BigFloat (numbers), USeries
//! (Taylor expansion at t = 0) and MPoly (printed polynomial equations).

use crate::algebra::bigfloat::BigFloat;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rat::{parse_rat, ri, Rat};
use crate::series::USeries;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0}")]
    UnknownVar(String),
    #[error("{0} not available in this domain")]
    Unsupported(&'static str),
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("log of a nonpositive number")]
    BadLog,
    #[error("division by zero")]
    DivByZero,
    #[error("series operation failed: {0}")]
    Series(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Func {
    Sqrt,
    Cbrt,
    Log,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rat),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Rational exponent.
    Pow(Box<Expr>, Rat),
    Call(Func, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "({a})/({b})"),
            Expr::Pow(a, e) => write!(f, "({a})^({e})"),
            Expr::Call(g, a) => {
                let name = match g {
                    Func::Sqrt => "sqrt",
                    Func::Cbrt => "cbrt",
                    Func::Log => "log",
                };
                write!(f, "{name}({a})")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError::Parse { pos: self.pos, msg: msg.into() })
    }
    fn skip(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.pos).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut a = self.term()?;
        loop {
            if self.eat(b'+') {
                a = Expr::Add(Box::new(a), Box::new(self.term()?));
            } else if self.eat(b'-') {
                a = Expr::Sub(Box::new(a), Box::new(self.term()?));
            } else {
                return Ok(a);
            }
        }
    }
    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut a = self.unary()?;
        loop {
            if self.eat(b'*') {
                a = Expr::Mul(Box::new(a), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                a = Expr::Div(Box::new(a), Box::new(self.unary()?));
            } else {
                return Ok(a);
            }
        }
    }
    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }
    /// Exponent: integer, -integer, or (p/q).
    fn exponent(&mut self) -> Result<Rat, ExprError> {
        let neg = self.eat(b'-');
        let r = if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return self.err("expected )");
            }
            match constant_value(&e) {
                Some(r) => r,
                None => return self.err("exponent must be a rational constant"),
            }
        } else {
            match self.atom()? {
                Expr::Num(r) => r,
                _ => return self.err("exponent must be a number"),
            }
        };
        Ok(if neg { -r } else { r })
    }
    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected )");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                parse_rat(txt).map(Expr::Num).or_else(|_| self.err("bad number"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
                let func = match name.as_str() {
                    "sqrt" => Some(Func::Sqrt),
                    "cbrt" => Some(Func::Cbrt),
                    "log" => Some(Func::Log),
                    _ => None,
                };
                match func {
                    Some(g) => {
                        if !self.eat(b'(') {
                            return self.err("expected ( after function");
                        }
                        let e = self.expr()?;
                        if !self.eat(b')') {
                            return self.err("expected )");
                        }
                        Ok(Expr::Call(g, Box::new(e)))
                    }
                    None => Ok(Expr::Var(name)),
                }
            }
            _ => self.err("unexpected input"),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Value of a variable-free expression without roots or logs.
pub fn constant_value(e: &Expr) -> Option<Rat> {
    Some(match e {
        Expr::Num(r) => r.clone(),
        Expr::Neg(a) => -constant_value(a)?,
        Expr::Add(a, b) => constant_value(a)? + constant_value(b)?,
        Expr::Sub(a, b) => constant_value(a)? - constant_value(b)?,
        Expr::Mul(a, b) => constant_value(a)? * constant_value(b)?,
        Expr::Div(a, b) => {
            let d = constant_value(b)?;
            if d.is_zero() {
                return None;
            }
            constant_value(a)? / d
        }
        Expr::Pow(a, q) if q.is_integer() => crate::algebra::rat::rat_pow(&constant_value(a)?, q.to_integer().to_i64()?),
        _ => return None,
    })
}

/// A domain in which expression trees can be evaluated.
pub trait ExprValue: Clone {
    fn lift(&self, r: &Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, ExprError>;
    fn neg(&self) -> Self {
        self.lift(&Rat::zero()).sub(self)
    }
    fn sqrt(&self) -> Result<Self, ExprError>;
    fn cbrt(&self) -> Result<Self, ExprError> {
        Err(ExprError::Unsupported("cube root"))
    }
    fn log(&self) -> Result<Self, ExprError>;
    fn pow_rat(&self, q: &Rat) -> Result<Self, ExprError> {
        if !q.is_integer() {
            if q == &Rat::new(1.into(), 2.into()) {
                return self.sqrt();
            }
            return Err(ExprError::Unsupported("fractional power"));
        }
        let k = q.to_integer().to_i64().ok_or(ExprError::Unsupported("huge power"))?;
        let mut acc = self.lift(&Rat::one());
        for _ in 0..k.abs() {
            acc = acc.mul(self);
        }
        if k < 0 {
            acc = self.lift(&Rat::one()).div(&acc)?;
        }
        Ok(acc)
    }
}

pub fn eval<T: ExprValue>(e: &Expr, template: &T, vars: &HashMap<&str, T>) -> Result<T, ExprError> {
    Ok(match e {
        Expr::Num(r) => template.lift(r),
        Expr::Var(v) => match vars.get(v.as_str()) {
            Some(x) => x.clone(),
            None => return Err(ExprError::UnknownVar(v.clone())),
        },
        Expr::Neg(a) => eval(a, template, vars)?.neg(),
        Expr::Add(a, b) => eval(a, template, vars)?.add(&eval(b, template, vars)?),
        Expr::Sub(a, b) => eval(a, template, vars)?.sub(&eval(b, template, vars)?),
        Expr::Mul(a, b) => eval(a, template, vars)?.mul(&eval(b, template, vars)?),
        Expr::Div(a, b) => eval(a, template, vars)?.div(&eval(b, template, vars)?)?,
        Expr::Pow(a, q) => eval(a, template, vars)?.pow_rat(q)?,
        Expr::Call(Func::Sqrt, a) => eval(a, template, vars)?.sqrt()?,
        Expr::Call(Func::Cbrt, a) => eval(a, template, vars)?.cbrt()?,
        Expr::Call(Func::Log, a) => eval(a, template, vars)?.log()?,
    })
}

impl ExprValue for BigFloat {
    fn lift(&self, r: &Rat) -> Self {
        BigFloat::from_rat(r, self.prec())
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
    fn div(&self, o: &Self) -> Result<Self, ExprError> {
        if o.is_zero() {
            return Err(ExprError::DivByZero);
        }
        Ok(BigFloat::div(self, o))
    }
    fn sqrt(&self) -> Result<Self, ExprError> {
        if self.is_negative() {
            return Err(ExprError::NegativeSqrt);
        }
        Ok(BigFloat::sqrt(self))
    }
    fn cbrt(&self) -> Result<Self, ExprError> {
        Ok(BigFloat::cbrt(self))
    }
    fn log(&self) -> Result<Self, ExprError> {
        if self.is_negative() || self.is_zero() {
            return Err(ExprError::BadLog);
        }
        Ok(self.ln())
    }
    fn pow_rat(&self, q: &Rat) -> Result<Self, ExprError> {
        if q.is_integer() {
            return Ok(self.powi(q.to_integer().to_i64().ok_or(ExprError::Unsupported("huge power"))?));
        }
        if self.is_negative() {
            return Err(ExprError::NegativeSqrt);
        }
        Ok(self.powf(&BigFloat::from_rat(q, self.prec())))
    }
}

impl ExprValue for Rat {
    fn lift(&self, r: &Rat) -> Self {
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
    fn div(&self, o: &Self) -> Result<Self, ExprError> {
        if o.is_zero() {
            return Err(ExprError::DivByZero);
        }
        Ok(self / o)
    }
    /// Only perfect squares have a rational root.
    fn sqrt(&self) -> Result<Self, ExprError> {
        if self.is_negative() {
            return Err(ExprError::NegativeSqrt);
        }
        crate::algebra::field::Field::sqrt_opt(self).ok_or(ExprError::Unsupported("irrational square root"))
    }
    fn log(&self) -> Result<Self, ExprError> {
        if self == &Rat::one() {
            return Ok(Rat::zero());
        }
        Err(ExprError::Unsupported("log of a rational"))
    }
}

impl ExprValue for USeries {
    fn lift(&self, r: &Rat) -> Self {
        USeries::constant(r.clone(), self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        USeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        USeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        USeries::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self, ExprError> {
        USeries::div(self, o).map_err(|e| ExprError::Series(e.to_string()))
    }
    fn sqrt(&self) -> Result<Self, ExprError> {
        USeries::sqrt(self).map_err(|e| ExprError::Series(e.to_string()))
    }
    fn log(&self) -> Result<Self, ExprError> {
        USeries::log(self).map_err(|e| ExprError::Series(e.to_string()))
    }
    fn pow_rat(&self, q: &Rat) -> Result<Self, ExprError> {
        if q.is_integer() && !q.is_negative() {
            return Ok(self.powi(q.to_integer().to_u32().ok_or(ExprError::Unsupported("huge power"))?));
        }
        if q.is_integer() {
            return ExprValue::div(&self.lift(&Rat::one()), &ExprValue::pow_rat(self, &-q)?);
        }
        // c * u^v * (unit)^q needs v*q integral and c^q rational
        let v = self.valuation().ok_or(ExprError::DivByZero)?;
        let c = self.coeff_u(v);
        let vq = ri(v) * q;
        if !vq.is_integer() || c != Rat::one() {
            return Err(ExprError::Unsupported("fractional power of this series"));
        }
        let unit = self.shift(-v);
        let r = unit.pow_rat(q).map_err(|e| ExprError::Series(e.to_string()))?;
        Ok(r.shift(vq.to_integer().to_i64().unwrap()))
    }
}

impl ExprValue for MPoly {
    fn lift(&self, r: &Rat) -> Self {
        MPoly::constant(self.nvars(), r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        MPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MPoly::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self, ExprError> {
        let c = o.terms().iter().next().filter(|(e, _)| o.terms().len() == 1 && e.iter().all(|&k| k == 0));
        match c {
            Some((_, c)) => Ok(self.scale(&c.recip())),
            None => Err(ExprError::Unsupported("division by a non-constant polynomial")),
        }
    }
    fn sqrt(&self) -> Result<Self, ExprError> {
        Err(ExprError::Unsupported("sqrt of a polynomial"))
    }
    fn log(&self) -> Result<Self, ExprError> {
        Err(ExprError::Unsupported("log of a polynomial"))
    }
}

/// Taylor expansion in u = sqrt(t) of an expression in t, known through
/// u^(prec-1). Works at a padded precision to absorb Laurent cancellations.
pub fn taylor(e: &Expr, prec: i64) -> Result<USeries, ExprError> {
    let work = prec + 16;
    let tser = USeries::t(&Rat::zero(), work);
    let tmpl = USeries::constant(Rat::one(), work);
    let mut vars = HashMap::new();
    vars.insert("t", tser);
    let s = eval(e, &tmpl, &vars)?;
    if s.prec() < prec {
        return Err(ExprError::Series(format!("precision {} below requested {}", s.prec(), prec)));
    }
    Ok(s.truncate(prec))
}

/// Numeric value at t.
pub fn eval_at(e: &Expr, t: &BigFloat) -> Result<BigFloat, ExprError> {
    let mut vars = HashMap::new();
    vars.insert("t", t.clone());
    vars.insert("pi", BigFloat::pi(t.prec()));
    eval(e, t, &vars)
}

/// Numeric value of a closed constant (may mention pi).
pub fn eval_const(e: &Expr, bits: usize) -> Result<BigFloat, ExprError> {
    let one = BigFloat::one(bits);
    let mut vars = HashMap::new();
    vars.insert("pi", BigFloat::pi(bits));
    eval(e, &one, &vars)
}

/// Numeric value with named constants bound (pi is always bound).
pub fn eval_with(e: &Expr, bits: usize, bound: &[(&str, BigFloat)]) -> Result<BigFloat, ExprError> {
    let one = BigFloat::one(bits);
    let mut vars: HashMap<&str, BigFloat> = bound.iter().cloned().collect();
    vars.insert("pi", BigFloat::pi(bits));
    eval(e, &one, &vars)
}

/// Exact value at a rational t, when no irrational root or log is met.
pub fn eval_rat_at(e: &Expr, t: &Rat) -> Result<Rat, ExprError> {
    let mut vars = HashMap::new();
    vars.insert("t", t.clone());
    eval(e, &Rat::one(), &vars)
}

/// Polynomial in the named variables (listed in order).
pub fn to_mpoly(e: &Expr, names: &[&str]) -> Result<MPoly, ExprError> {
    let n = names.len();
    let mut vars = HashMap::new();
    for (i, v) in names.iter().enumerate() {
        vars.insert(*v, MPoly::var(n, i));
    }
    eval(e, &MPoly::zero(n), &vars)
}

/// Parse and convert in one step; panics on malformed catalog data.
pub fn poly_of(s: &str, names: &[&str]) -> MPoly {
    to_mpoly(&parse(s).unwrap_or_else(|e| panic!("{s}: {e}")), names).unwrap_or_else(|e| panic!("{s}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn parse_and_expand() {
        let e = parse("(1+12*t-sqrt(1-12*t))/(18*t)").unwrap();
        let s = taylor(&e, 10).unwrap();
        assert_eq!(s.coeff_t(0), ri(1));
        let big = eval_at(&e, &BigFloat::from_rat(&rat(1, 16), 128)).unwrap();
        assert!((big.to_f64() - 10.0 / 9.0).abs() < 1e-15);
        let p = poly_of("4*R^2*t - R*(1+4*t) + t + 1", &["t", "R"]);
        assert_eq!(p.terms().len(), 5);
        let s = taylor(&parse("(1-sqrt(1-12*t))/(6*sqrt(t))").unwrap(), 8).unwrap();
        assert_eq!(s.coeff_u(1), ri(1));
        assert_eq!(s.coeff_u(3), ri(3));
        assert!(parse("1+").is_err());
    }
}
