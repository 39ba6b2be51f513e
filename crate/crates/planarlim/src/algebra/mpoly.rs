//! Sparse multivariate polynomials over the rationals, the bivariate special
//! case used for algebraic equations, and resultants by evaluation and
//! interpolation of Sylvester determinants.

use super::bigfloat::BigFloat;
use super::field::Field;
use super::poly::Poly;
use super::rat::{ri, Rat};
use super::AlgebraError;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, c: Rat) -> MPoly {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }
    pub fn one(nvars: usize) -> MPoly {
        MPoly::constant(nvars, Rat::one())
    }
    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }
    pub fn monomial(nvars: usize, e: Vec<u32>, c: Rat) -> MPoly {
        let mut p = MPoly::zero(nvars);
        p.add_term(e, c);
        p
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }
    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    pub fn scale(&self, r: &Rat) -> MPoly {
        let mut p = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * r);
        }
        p
    }
    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }
    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
    /// Multiply by var_i^k.
    pub fn shift(&self, i: usize, k: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }
    /// Coefficients of var_i^0, var_i^1, ... (each with var_i removed, i.e. exponent 0).
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * ri(e[i] as i64));
            }
        }
        r
    }
    /// Substitute var_i = v.
    pub fn eval_var(&self, i: usize, v: &Rat) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            r.add_term(e2, c * super::rat::rat_pow(v, k as i64));
        }
        r
    }
    /// Substitute var_i = q (a polynomial in the same ring).
    pub fn subst(&self, i: usize, q: &MPoly) -> MPoly {
        let cs = self.coeffs_in(i);
        let mut acc = MPoly::zero(self.nvars);
        for c in cs.iter().rev() {
            acc = acc.mul(q).add(c);
        }
        acc
    }
    pub fn eval_field<F: Field>(&self, x: &[F]) -> F {
        let mut acc = x[0].zero_like();
        for (e, c) in &self.terms {
            let mut m = x[0].from_rat_like(c);
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    m = m.mul(&x[k].powi(p));
                }
            }
            acc = acc.add(&m);
        }
        acc
    }
    pub fn eval_rat(&self, x: &[Rat]) -> Rat {
        self.eval_field(x)
    }
    /// Divide every exponent of var_i by 2; all must be even.
    pub fn halve_exponent(&self, i: usize) -> Option<MPoly> {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] % 2 != 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[i] /= 2;
            r.add_term(e2, c.clone());
        }
        Some(r)
    }
    /// Largest power of var_i dividing self.
    pub fn valuation(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }
    pub fn unshift(&self, i: usize, k: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] -= k;
                    (e, c.clone())
                })
                .collect(),
        }
    }
    /// Reorder / embed variables: new var `map[i]` receives old var i.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut r = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[i]] += k;
                }
            }
            r.add_term(e2, c.clone());
        }
        r
    }
    /// Integer coefficients with unit content and positive leading term.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = super::rat::lcm_denoms(self.terms.values());
        let s = self.scale(&Rat::from_integer(l));
        let g = super::rat::gcd_numers(s.terms.values());
        let mut g = Rat::from_integer(g);
        if s.terms.values().next_back().unwrap().is_negative() {
            g = -g;
        }
        s.scale(&g.recip())
    }
    pub fn fmt_vars(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(names[i].to_string()),
                    _ => mono.push(format!("{}^{}", names[i], k)),
                }
            }
            if mono.is_empty() || !a.is_one() {
                mono.insert(0, a.to_string());
            }
            out.push_str(&mono.join("*"));
        }
        out
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let r: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.fmt_vars(&r))
    }
}

fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for col in 0..n {
        let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let pv = m[col][col].clone();
        d *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    d
}

/// Sylvester determinant with formal degrees `m`, `n`.
fn sylvester(p: &[Rat], q: &[Rat], m: usize, n: usize) -> Rat {
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let get = |v: &[Rat], k: usize| v.get(k).cloned().unwrap_or_else(Rat::zero);
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rat::zero(); size];
        for k in 0..=m {
            row[i + k] = get(p, m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rat::zero(); size];
        for k in 0..=n {
            row[i + k] = get(q, n - k);
        }
        rows.push(row);
    }
    det(rows)
}

/// Multivariate resultant with respect to var `v`; the result lives in the same
/// ring with exponent 0 in `v`.
pub fn resultant_mpoly(p: &MPoly, q: &MPoly, v: usize) -> Result<MPoly, AlgebraError> {
    let nv = p.nvars;
    let m = p.degree_in(v).unwrap_or(0) as usize;
    let n = q.degree_in(v).unwrap_or(0) as usize;
    if m == 0 && n == 0 {
        return Err(AlgebraError::NothingToEliminate);
    }
    let vars: Vec<usize> = (0..nv).filter(|&i| i != v).collect();
    let bounds: Vec<usize> = vars
        .iter()
        .map(|&i| {
            n * p.degree_in(i).unwrap_or(0) as usize + m * q.degree_in(i).unwrap_or(0) as usize
        })
        .collect();
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let mut point = vec![Rat::zero(); nv];
    Ok(interp_rec(&pc, &qc, m, n, v, &vars, &bounds, 0, &mut point, nv))
}

#[allow(clippy::too_many_arguments)]
fn interp_rec(
    pc: &[MPoly],
    qc: &[MPoly],
    m: usize,
    n: usize,
    v: usize,
    vars: &[usize],
    bounds: &[usize],
    depth: usize,
    point: &mut Vec<Rat>,
    nv: usize,
) -> MPoly {
    if depth == vars.len() {
        let pv: Vec<Rat> = pc.iter().map(|c| c.eval_rat(point)).collect();
        let qv: Vec<Rat> = qc.iter().map(|c| c.eval_rat(point)).collect();
        return MPoly::constant(nv, sylvester(&pv, &qv, m, n));
    }
    let var = vars[depth];
    let b = bounds[depth];
    // Newton divided differences on the nodes 0..=b, then Horner
    let mut dd: Vec<MPoly> = (0..=b)
        .map(|j| {
            point[var] = ri(j as i64);
            interp_rec(pc, qc, m, n, v, vars, bounds, depth + 1, point, nv)
        })
        .collect();
    for k in 1..=b {
        for j in (k..=b).rev() {
            dd[j] = dd[j].sub(&dd[j - 1]).scale(&Rat::new(1.into(), (k as i64).into()));
        }
    }
    let mut acc = dd[b].clone();
    for j in (0..b).rev() {
        // acc * (x - j) + dd[j]
        acc = acc.shift(var, 1).sub(&acc.scale(&ri(j as i64))).add(&dd[j]);
    }
    point[var] = Rat::zero();
    acc
}

/// Variable of a bivariate polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    T,
    Y,
}

/// Polynomial in (t, y); internally an `MPoly` with var 0 = t and var 1 = y.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    pub p: MPoly,
}

impl BivarPoly {
    pub fn from_mpoly(p: MPoly) -> BivarPoly {
        assert_eq!(p.nvars(), 2);
        BivarPoly { p }
    }
    /// Terms (i, j, c) meaning c t^i y^j.
    pub fn from_terms(terms: &[(u32, u32, Rat)]) -> BivarPoly {
        let mut p = MPoly::zero(2);
        for (i, j, c) in terms {
            p.add_term(vec![*i, *j], c.clone());
        }
        BivarPoly { p }
    }
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> BivarPoly {
        BivarPoly::from_terms(&terms.iter().map(|&(i, j, c)| (i, j, ri(c))).collect::<Vec<_>>())
    }
    pub fn deg_t(&self) -> u32 {
        self.p.degree_in(0).unwrap_or(0)
    }
    pub fn deg_y(&self) -> u32 {
        self.p.degree_in(1).unwrap_or(0)
    }
    /// Coefficient of y^k as a polynomial in t.
    pub fn coeff_y(&self, k: u32) -> Poly {
        let mut c = vec![Rat::zero(); self.deg_t() as usize + 1];
        for (e, v) in self.p.terms() {
            if e[1] == k {
                c[e[0] as usize] = v.clone();
            }
        }
        Poly::new(c)
    }
    pub fn coeffs_y(&self) -> Vec<Poly> {
        (0..=self.deg_y()).map(|k| self.coeff_y(k)).collect()
    }
    pub fn from_coeffs_y(cs: &[Poly]) -> BivarPoly {
        let mut p = MPoly::zero(2);
        for (j, c) in cs.iter().enumerate() {
            for (i, v) in c.coeffs().iter().enumerate() {
                p.add_term(vec![i as u32, j as u32], v.clone());
            }
        }
        BivarPoly { p }
    }
    pub fn d_y(&self) -> BivarPoly {
        BivarPoly { p: self.p.derivative(1) }
    }
    pub fn d_t(&self) -> BivarPoly {
        BivarPoly { p: self.p.derivative(0) }
    }
    /// Polynomial in y at a rational t.
    pub fn at_t(&self, t: &Rat) -> Poly {
        Poly::new(self.coeffs_y().iter().map(|c| c.eval(t)).collect())
    }
    pub fn eval<F: Field>(&self, t: &F, y: &F) -> F {
        self.p.eval_field(&[t.clone(), y.clone()])
    }
    pub fn eval_big(&self, t: &BigFloat, y: &BigFloat) -> BigFloat {
        self.eval(t, y)
    }
    /// Discriminant in y, normalized so that a quadratic a y^2 + b y + c gives
    /// b^2 - 4ac: Res(p, p_y) / ((-1)^(n(n-1)/2) lc(p)).
    pub fn discriminant_y(&self) -> Poly {
        let n = self.deg_y() as usize;
        let r = resultant(self, &self.d_y(), Var::Y).expect("y present");
        let lc = self.coeff_y(n as u32);
        let q = r.exact_div(&lc).expect("leading coefficient divides the resultant");
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            -&q
        } else {
            q
        }
    }
    /// Remove factors depending on t alone, powers of y, and rational content.
    pub fn primitive_part_y(&self) -> BivarPoly {
        let cs = self.coeffs_y();
        let mut g = Poly::zero();
        for c in &cs {
            g = g.gcd(c);
        }
        let cs: Vec<Poly> = cs.iter().map(|c| c.exact_div(&g).unwrap()).collect();
        let lead = cs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let b = BivarPoly::from_coeffs_y(&cs[lead..]);
        BivarPoly { p: b.p.primitive() }
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.p
                .terms()
                .iter()
                .map(|(e, c)| serde_json::json!({"t": e[0], "y": e[1], "coeff": c.to_string()}))
                .collect(),
        )
    }
    pub fn fmt_with(&self, y: &str) -> String {
        self.p.fmt_vars(&["t", y])
    }
    /// Substitute y by a truncated series in t and return the residual series
    /// coefficients up to order `n` (exclusive).
    pub fn residual_series(&self, y: &[Rat], n: usize) -> Vec<Rat> {
        let mul = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
            let mut c = vec![Rat::zero(); n];
            for (i, x) in a.iter().enumerate().take(n) {
                if x.is_zero() {
                    continue;
                }
                for (j, z) in b.iter().enumerate().take(n - i) {
                    c[i + j] += x * z;
                }
            }
            c
        };
        let mut acc = vec![Rat::zero(); n];
        for c in self.coeffs_y().iter().rev() {
            acc = mul(&acc, y);
            for (i, v) in c.coeffs().iter().enumerate() {
                if i < n {
                    acc[i] += v;
                }
            }
        }
        acc
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("y"))
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("y"))
    }
}

/// Resultant of two bivariate polynomials eliminating `eliminate`, in the
/// Sylvester determinant convention (rows of p first).
pub fn resultant(p: &BivarPoly, q: &BivarPoly, eliminate: Var) -> Result<Poly, AlgebraError> {
    let (v, keep) = match eliminate {
        Var::T => (0, 1),
        Var::Y => (1, 0),
    };
    let r = resultant_mpoly(&p.p, &q.p, v)?;
    let d = r.degree_in(keep).unwrap_or(0) as usize;
    let mut c = vec![Rat::zero(); d + 1];
    for (e, x) in r.terms() {
        c[e[keep] as usize] = x.clone();
    }
    Ok(Poly::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_example() {
        let p = BivarPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]);
        let q = BivarPoly::from_int_terms(&[(0, 1, 1), (0, 0, -1)]);
        assert_eq!(resultant(&p, &q, Var::Y).unwrap(), Poly::from_i64(&[1, -1]));
        let c = BivarPoly::from_int_terms(&[(1, 0, 3)]);
        assert_eq!(resultant(&c, &c, Var::Y), Err(AlgebraError::NothingToEliminate));
    }

    #[test]
    fn even_edge_discriminant() {
        // 4t y^2 - (1+4t) y + (t+1)
        let p = BivarPoly::from_int_terms(&[(1, 2, 4), (0, 1, -1), (1, 1, -4), (1, 0, 1), (0, 0, 1)]);
        assert_eq!(p.discriminant_y(), Poly::from_i64(&[1, -8]));
    }

    #[test]
    fn three_variable_resultant() {
        // eliminate z from x - z^2 and y - z^3: x^3 - y^2 (up to sign)
        let x = MPoly::var(3, 0);
        let y = MPoly::var(3, 1);
        let z = MPoly::var(3, 2);
        let r = resultant_mpoly(&x.sub(&z.pow(2)), &y.sub(&z.pow(3)), 2).unwrap();
        let want = x.pow(3).sub(&y.pow(2));
        assert!(r == want || r == want.neg());
    }
}
