//! Truncated series in u = t^(1/2), optionally Laurent.
//!
//! Coefficient i of the dense vector belongs to u^(lo + i); everything at and
//! above u^prec is unknown. Public accessors speak in t-exponents k/2.

use super::SeriesError;
use crate::algebra::bigfloat::BigFloat;
use crate::algebra::field::Field;
use crate::algebra::rat::{ri, Rat};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct USeries<F: Field = Rat> {
    lo: i64,
    c: Vec<F>,
    prec: i64,
    zero: F,
}

impl USeries<Rat> {
    /// Coefficients of u^lo, u^(lo+1), ... known below u^prec.
    pub fn from_coeffs(lo: i64, c: Vec<Rat>, prec: i64) -> USeries<Rat> {
        USeries::from_vec(lo, c, prec, Rat::zero())
    }
    /// A series in t with integer exponents: coefficients of t^0, t^1, ...
    pub fn from_t_coeffs(c: &[Rat], t_prec: i64) -> USeries<Rat> {
        let mut v = vec![Rat::zero(); (2 * t_prec).max(0) as usize];
        for (k, x) in c.iter().enumerate() {
            if 2 * (k as i64) < 2 * t_prec {
                v[2 * k] = x.clone();
            }
        }
        USeries::from_coeffs(0, v, 2 * t_prec)
    }
    pub fn to_big(&self, bits: usize) -> USeries<BigFloat> {
        let z = BigFloat::zero(bits);
        USeries::from_vec(self.lo, self.c.iter().map(|x| BigFloat::from_rat(x, bits)).collect(), self.prec, z)
    }
    pub fn eval_big(&self, t: &BigFloat) -> BigFloat {
        self.to_big(t.prec()).eval(t)
    }
}

impl<F: Field> USeries<F> {
    pub fn from_vec(lo: i64, mut c: Vec<F>, prec: i64, zero: F) -> USeries<F> {
        let n = (prec - lo).max(0) as usize;
        c.truncate(n);
        while c.len() < n {
            c.push(zero.zero_like());
        }
        USeries { lo, c, prec, zero }
    }
    pub fn constant(x: F, prec: i64) -> USeries<F> {
        let z = x.zero_like();
        USeries::from_vec(0, vec![x], prec, z)
    }
    pub fn zero_with(zero: F, prec: i64) -> USeries<F> {
        USeries::from_vec(0, vec![], prec, zero)
    }
    /// The series u (that is t^(1/2)).
    pub fn u(template: &F, prec: i64) -> USeries<F> {
        USeries::from_vec(1, vec![template.one_like()], prec, template.zero_like())
    }
    /// The series t.
    pub fn t(template: &F, prec: i64) -> USeries<F> {
        USeries::from_vec(2, vec![template.one_like()], prec, template.zero_like())
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    /// Exclusive truncation order in u.
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn zero_elem(&self) -> F {
        self.zero.zero_like()
    }
    /// Coefficient of u^k.
    pub fn coeff_u(&self, k: i64) -> F {
        assert!(k < self.prec, "coefficient u^{k} beyond truncation u^{}", self.prec);
        if k < self.lo {
            return self.zero.zero_like();
        }
        self.c[(k - self.lo) as usize].clone()
    }
    /// Coefficient of t^(num/2).
    pub fn coeff_half(&self, num: i64) -> F {
        self.coeff_u(num)
    }
    /// Coefficient of t^k.
    pub fn coeff_t(&self, k: i64) -> F {
        self.coeff_u(2 * k)
    }
    /// Coefficients of t^0 .. t^(n-1) (integer exponents only).
    pub fn t_coeffs(&self, n: usize) -> Vec<F> {
        (0..n as i64).map(|k| self.coeff_t(k)).collect()
    }
    pub fn valuation(&self) -> Option<i64> {
        self.c.iter().position(|x| !x.vanishes()).map(|i| self.lo + i as i64)
    }
    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }
    pub fn truncate(&self, prec: i64) -> USeries<F> {
        USeries::from_vec(self.lo, self.c.clone(), prec.min(self.prec), self.zero.clone())
    }
    pub fn add(&self, o: &USeries<F>) -> USeries<F> {
        let lo = self.lo.min(o.lo);
        let prec = self.prec.min(o.prec);
        let c = (lo..prec)
            .map(|k| {
                let a = if k >= self.lo { self.coeff_u(k) } else { self.zero_elem() };
                let b = if k >= o.lo { o.coeff_u(k) } else { self.zero_elem() };
                a.add(&b)
            })
            .collect();
        USeries::from_vec(lo, c, prec, self.zero.clone())
    }
    pub fn neg(&self) -> USeries<F> {
        USeries::from_vec(self.lo, self.c.iter().map(|x| x.neg()).collect(), self.prec, self.zero.clone())
    }
    pub fn sub(&self, o: &USeries<F>) -> USeries<F> {
        self.add(&o.neg())
    }
    pub fn scale(&self, r: &F) -> USeries<F> {
        USeries::from_vec(self.lo, self.c.iter().map(|x| x.mul(r)).collect(), self.prec, self.zero.clone())
    }
    pub fn scale_rat(&self, r: &Rat) -> USeries<F> {
        self.scale(&self.zero.from_rat_like(r))
    }
    pub fn add_const(&self, x: &F) -> USeries<F> {
        self.add(&USeries::constant(x.clone(), self.prec))
    }
    /// Multiply by u^k.
    pub fn shift(&self, k: i64) -> USeries<F> {
        USeries { lo: self.lo + k, c: self.c.clone(), prec: self.prec + k, zero: self.zero.clone() }
    }
    pub fn mul(&self, o: &USeries<F>) -> USeries<F> {
        let lo = self.lo + o.lo;
        // known-zero low coefficients count toward the precision
        let va = self.valuation().unwrap_or(self.prec);
        let vb = o.valuation().unwrap_or(o.prec);
        let prec = (self.prec + vb).min(o.prec + va);
        let n = (prec - lo).max(0) as usize;
        let mut c = vec![self.zero_elem(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.vanishes() || i >= n {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                if b.vanishes() {
                    continue;
                }
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        USeries::from_vec(lo, c, prec, self.zero.clone())
    }
    pub fn powi(&self, k: u32) -> USeries<F> {
        let mut acc = USeries::constant(self.zero.one_like(), self.prec.max(self.prec - self.lo));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
    /// Reciprocal; the Laurent exponent becomes -valuation.
    pub fn inv(&self) -> Result<USeries<F>, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroDivisor)?;
        let n = (self.prec - v) as usize;
        let g: Vec<F> = (0..n).map(|i| self.coeff_u(v + i as i64)).collect();
        let g0inv = self.zero.one_like().div(&g[0]);
        let mut h = vec![g0inv.clone()];
        for k in 1..n {
            let mut s = self.zero_elem();
            for j in 1..=k {
                if !g[j].vanishes() {
                    s = s.add(&g[j].mul(&h[k - j]));
                }
            }
            h.push(s.mul(&g0inv).neg());
        }
        Ok(USeries::from_vec(-v, h, self.prec - 2 * v, self.zero.clone()))
    }
    pub fn div(&self, o: &USeries<F>) -> Result<USeries<F>, SeriesError> {
        Ok(self.mul(&o.inv()?))
    }
    fn check_unit(&self) -> bool {
        let one = self.zero.one_like();
        (self.lo..0).all(|k| self.coeff_u(k).vanishes()) && self.coeff_u(0).sub(&one).vanishes()
    }
    fn nonneg_coeffs(&self) -> Vec<F> {
        (0..self.prec).map(|k| self.coeff_u(k)).collect()
    }
    pub fn log(&self) -> Result<USeries<F>, SeriesError> {
        if self.prec <= 0 || !self.check_unit() {
            return Err(SeriesError::LogConstantTerm);
        }
        let f = self.nonneg_coeffs();
        let n = f.len();
        let mut g = vec![self.zero_elem(); n];
        for k in 1..n {
            let mut s = f[k].mul(&self.zero.from_i64_like(k as i64));
            for j in 1..k {
                if !f[k - j].vanishes() {
                    s = s.sub(&g[j].mul(&f[k - j]).mul(&self.zero.from_i64_like(j as i64)));
                }
            }
            g[k] = s.div(&self.zero.from_i64_like(k as i64));
        }
        Ok(USeries::from_vec(0, g, self.prec, self.zero.clone()))
    }
    pub fn exp(&self) -> Result<USeries<F>, SeriesError> {
        if (self.lo..=0.min(self.prec - 1)).any(|k| !self.coeff_u(k).vanishes()) {
            return Err(SeriesError::ExpConstantTerm);
        }
        let f = self.nonneg_coeffs();
        let n = f.len();
        let mut g = vec![self.zero_elem(); n];
        if n > 0 {
            g[0] = self.zero.one_like();
        }
        for k in 1..n {
            let mut s = self.zero_elem();
            for j in 1..=k {
                if !f[j].vanishes() {
                    s = s.add(&f[j].mul(&g[k - j]).mul(&self.zero.from_i64_like(j as i64)));
                }
            }
            g[k] = s.div(&self.zero.from_i64_like(k as i64));
        }
        Ok(USeries::from_vec(0, g, self.prec, self.zero.clone()))
    }
    /// self^alpha for a series with constant term 1.
    pub fn pow_rat(&self, alpha: &Rat) -> Result<USeries<F>, SeriesError> {
        if self.prec <= 0 || !self.check_unit() {
            return Err(SeriesError::LogConstantTerm);
        }
        let f = self.nonneg_coeffs();
        let n = f.len();
        let a = self.zero.from_rat_like(alpha);
        let mut g = vec![self.zero_elem(); n];
        g[0] = self.zero.one_like();
        for k in 1..n {
            let mut s = self.zero_elem();
            for j in 1..=k {
                if f[j].vanishes() {
                    continue;
                }
                let w = a.mul(&self.zero.from_i64_like(j as i64)).sub(&self.zero.from_i64_like((k - j) as i64));
                s = s.add(&w.mul(&f[j]).mul(&g[k - j]));
            }
            g[k] = s.div(&self.zero.from_i64_like(k as i64));
        }
        Ok(USeries::from_vec(0, g, self.prec, self.zero.clone()))
    }
    pub fn sqrt(&self) -> Result<USeries<F>, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::NotASquare)?;
        if v % 2 != 0 {
            return Err(SeriesError::NotASquare);
        }
        let c = self.coeff_u(v);
        let rc = c.sqrt_opt().ok_or(SeriesError::NotASquare)?;
        let unit = self.shift(-v).scale(&self.zero.one_like().div(&c));
        Ok(unit.pow_rat(&Rat::new(1.into(), 2.into()))?.scale(&rc).shift(v / 2))
    }
    /// d/dt: u^k -> (k/2) u^(k-2).
    pub fn d_dt(&self) -> USeries<F> {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| x.scale(&Rat::new((self.lo + i as i64).into(), 2.into())))
            .collect();
        USeries::from_vec(self.lo - 2, c, self.prec - 2, self.zero.clone())
    }
    /// Antiderivative in t with zero constant: u^k -> 2 u^(k+2)/(k+2).
    pub fn antiderivative_t(&self) -> Result<USeries<F>, SeriesError> {
        let mut c = Vec::with_capacity(self.c.len());
        for (i, x) in self.c.iter().enumerate() {
            let k = self.lo + i as i64;
            if k == -2 {
                if !x.vanishes() {
                    return Err(SeriesError::LogTerm);
                }
                c.push(self.zero_elem());
            } else {
                c.push(x.scale(&Rat::new(2.into(), (k + 2).into())));
            }
        }
        Ok(USeries::from_vec(self.lo + 2, c, self.prec + 2, self.zero.clone()))
    }
    /// d/du
    pub fn d_du(&self) -> USeries<F> {
        let c = self.c.iter().enumerate().map(|(i, x)| x.scale(&ri(self.lo + i as i64))).collect();
        USeries::from_vec(self.lo - 1, c, self.prec - 1, self.zero.clone())
    }
    /// self(g(u)) with both read as series in u; g needs positive valuation.
    pub fn compose_u(&self, g: &USeries<F>) -> USeries<F> {
        assert!(self.lo >= 0, "compose of a Laurent series");
        let v = g.valuation().unwrap_or(g.prec).max(1);
        assert!(g.lo >= 1 || (g.lo..1).all(|k| g.coeff_u(k).vanishes()), "inner series needs zero constant term");
        let prec = (self.prec * v).min(g.prec);
        let g = g.truncate(prec);
        let mut acc = USeries::zero_with(self.zero_elem(), prec);
        for k in (0..self.prec).rev() {
            acc = acc.mul(&g).truncate(prec).add(&USeries::constant(self.coeff_u(k), prec));
        }
        acc
    }
    /// self(g) with self read as a series in t (integer exponents only) and g
    /// any series with positive t-valuation.
    pub fn compose_t(&self, g: &USeries<F>) -> USeries<F> {
        let n = (self.prec + 1) / 2;
        let c: Vec<F> = (0..n).map(|j| self.coeff_u(2 * j)).collect();
        for k in (self.lo.max(0)..self.prec).filter(|k| k % 2 != 0) {
            assert!(self.coeff_u(k).vanishes(), "compose_t needs integer t-exponents");
        }
        USeries::from_vec(0, c, n, self.zero.clone()).compose_u(g)
    }
    /// Sum of all stored coefficients (t = 1).
    pub fn set_t_one(&self) -> F {
        self.c.iter().fold(self.zero_elem(), |a, x| a.add(x))
    }
    pub fn coeffs_from(&self, k0: i64) -> Vec<F> {
        (k0..self.prec).map(|k| self.coeff_u(k)).collect()
    }
    pub fn map<G: Field>(&self, zero: G, f: impl Fn(&F) -> G) -> USeries<G> {
        USeries::from_vec(self.lo, self.c.iter().map(f).collect(), self.prec, zero)
    }
}

impl USeries<BigFloat> {
    /// Partial sum at t (t > 0 when half-integer exponents occur).
    pub fn eval(&self, t: &BigFloat) -> BigFloat {
        let u = t.sqrt();
        let mut acc = BigFloat::zero(t.prec());
        for c in self.c.iter().rev() {
            acc = acc.mul(&u).add(c);
        }
        acc.mul(&u.powi(self.lo))
    }
}

impl<F: Field + PartialEq> PartialEq for USeries<F> {
    fn eq(&self, o: &Self) -> bool {
        if self.prec != o.prec {
            return false;
        }
        let lo = self.lo.min(o.lo);
        (lo..self.prec).all(|k| self.coeff_u(k) == o.coeff_u(k))
    }
}

impl USeries<Rat> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.vanishes())
                .map(|(i, x)| serde_json::json!({"exp_num": self.lo + i as i64, "coeff": x.to_string()}))
                .collect(),
        )
    }
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, x) in self.c.iter().enumerate() {
            if x.vanishes() {
                continue;
            }
            let k = self.lo + i as i64;
            let e = if k % 2 == 0 { format!("{}", k / 2) } else { format!("{k}/2") };
            parts.push(match k {
                0 => x.to_string(),
                2 => format!("{x}*t"),
                _ => format!("{x}*t^{e}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Truncated sum at t = 1.
pub fn set_t_one<F: Field>(s: &USeries<F>) -> F {
    s.set_t_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn tser(c: &[i64], n: i64) -> USeries {
        USeries::from_t_coeffs(&c.iter().map(|&x| ri(x)).collect::<Vec<_>>(), n)
    }

    #[test]
    fn log_exp_inverse() {
        let f = tser(&[1, 1], 8);
        let l = f.log().unwrap();
        assert_eq!(l.coeff_t(1), ri(1));
        assert_eq!(l.coeff_t(2), rat(-1, 2));
        assert_eq!(l.coeff_t(3), rat(1, 3));
        assert_eq!(l.exp().unwrap(), f);
        assert!(tser(&[2, 1], 4).log().is_err());
    }

    #[test]
    fn derivative_example() {
        let f = USeries::from_t_coeffs(&[ri(0), ri(1), rat(9, 4), ri(9)], 4);
        let d = f.d_dt();
        assert_eq!(d.coeff_t(0), ri(1));
        assert_eq!(d.coeff_t(1), rat(9, 2));
        assert_eq!(d.coeff_t(2), ri(27));
        assert_eq!(f.antiderivative_t().unwrap().d_dt().truncate(8), f);
    }

    #[test]
    fn sqrt_and_division() {
        let f = tser(&[1, -12], 10);
        let s = f.sqrt().unwrap();
        assert_eq!(s.mul(&s), f);
        let q = tser(&[1, 2, 3], 6).div(&tser(&[0, 1], 6)).unwrap();
        assert_eq!(q.lo(), -2);
        assert_eq!(q.coeff_t(-1), ri(1));
        assert_eq!(set_t_one(&tser(&[0, 1, 1], 3)), ri(2));
    }
}
