//! Complex root approximation and factorization over Q for the small-degree
//! polynomials that appear as discriminants.
//!
//! Factors are found by grouping numeric roots: by Gauss's lemma every integer
//! factor g of f satisfies lc(f) * g / lc(g) in Z[x], so each candidate subset of
//! roots is rounded and confirmed by exact division.

use super::bigfloat::BigFloat;
use super::poly::Poly;
use super::rat::Rat;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct CBig {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl CBig {
    fn new(re: BigFloat, im: BigFloat) -> CBig {
        CBig { re, im }
    }
    fn add(&self, o: &CBig) -> CBig {
        CBig::new(self.re.add(&o.re), self.im.add(&o.im))
    }
    fn sub(&self, o: &CBig) -> CBig {
        CBig::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
    fn mul(&self, o: &CBig) -> CBig {
        CBig::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }
    fn div(&self, o: &CBig) -> CBig {
        let n = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        CBig::new(
            self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&n),
            self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&n),
        )
    }
    pub fn modulus(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }
}

fn eval_c(p: &[BigFloat], z: &CBig) -> CBig {
    let prec = z.re.prec();
    let mut acc = CBig::new(BigFloat::zero(prec), BigFloat::zero(prec));
    for c in p.iter().rev() {
        acc = acc.mul(z);
        acc.re = acc.re.add(c);
    }
    acc
}

/// Aberth iteration in f64 for starting values.
fn aberth_f64(c: &[f64]) -> Vec<(f64, f64)> {
    let d = c.len() - 1;
    let lead = c[d];
    let cm: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let rad = 1.0 + cm[..d].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4;
            (0.5 * rad * a.cos(), 0.5 * rad * a.sin())
        })
        .collect();
    let mulc = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let divc = |a: (f64, f64), b: (f64, f64)| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut p = (0.0, 0.0);
            let mut dp = (0.0, 0.0);
            for k in (0..=d).rev() {
                dp = mulc(dp, z[i]);
                dp.0 += p.0;
                dp.1 += p.1;
                p = mulc(p, z[i]);
                p.0 += cm[k];
            }
            let ratio = divc(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let w = divc((1.0, 0.0), (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    s.0 += w.0;
                    s.1 += w.1;
                }
            }
            let den = (1.0 - mulc(ratio, s).0, -mulc(ratio, s).1);
            let w = divc(ratio, den);
            if w.0.is_finite() && w.1.is_finite() {
                z[i] = (z[i].0 - w.0, z[i].1 - w.1);
                moved = moved.max((w.0 * w.0 + w.1 * w.1).sqrt());
            }
        }
        if moved < 1e-15 * rad {
            break;
        }
    }
    z
}

/// All complex roots of a square-free polynomial, polished by Newton's method
/// at `bits` precision.
pub fn complex_roots(p: &Poly, bits: usize) -> Vec<CBig> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return vec![];
    }
    let cf: Vec<f64> = p.coeffs().iter().map(super::rat::rat_to_f64).collect();
    let start = aberth_f64(&cf);
    let work = bits + 64;
    let cb: Vec<BigFloat> = p.coeffs().iter().map(|c| BigFloat::from_rat(c, work)).collect();
    let db: Vec<BigFloat> = p.derivative().coeffs().iter().map(|c| BigFloat::from_rat(c, work)).collect();
    start
        .into_iter()
        .map(|(x, y)| {
            let mut z = CBig::new(BigFloat::from_f64(x, work), BigFloat::from_f64(y, work));
            for _ in 0..60 {
                let step = eval_c(&cb, &z).div(&eval_c(&db, &z));
                z = z.sub(&step);
                if !step.re.is_finite() {
                    break;
                }
                let m = step.modulus();
                let zm = z.modulus();
                if m.is_zero() || m.to_f64() <= zm.to_f64().max(1e-300) * 2f64.powi(-(work as i32) + 8) {
                    break;
                }
            }
            CBig::new(z.re.with_prec(bits), z.im.with_prec(bits))
        })
        .collect()
}

fn round_big(x: &BigFloat) -> Option<BigInt> {
    let n = x.round_to_bigint();
    let err = x.sub(&BigFloat::from_bigint(&n, x.prec())).abs();
    let scale = x.abs().to_f64().max(1.0);
    if err.to_f64() < 1e-40 * scale {
        Some(n)
    } else {
        None
    }
}

/// Yun square-free decomposition: list of (factor, multiplicity).
pub fn square_free_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut a = p.monic();
    let mut b = a.derivative();
    let mut c = a.gcd(&b);
    let mut w = a.divrem(&c).0;
    let mut y = b.divrem(&c).0;
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let g = w.gcd(&z);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.primitive(), i));
        }
        w = w.divrem(&g).0;
        y = z.divrem(&g).0;
        z = &y - &w.derivative();
        i += 1;
        let _ = (&mut a, &mut b, &mut c);
    }
    out
}

/// Irreducible factors of a square-free integer polynomial of small degree.
pub fn factor_square_free(f: &Poly) -> Vec<Poly> {
    let f = f.primitive();
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return if d == 1 { vec![f] } else { vec![] };
    }
    let bits = 384;
    let mut roots = complex_roots(&f, bits);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let lead = BigFloat::from_rat(&f.lead(), bits);
    let mut k = 1;
    'outer: while k * 2 <= roots.len() {
        let n = roots.len();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            // monic product over the subset
            let mut coeffs = vec![CBig::new(BigFloat::one(bits), BigFloat::zero(bits))];
            for &i in &idx {
                let mut next = vec![CBig::new(BigFloat::zero(bits), BigFloat::zero(bits)); coeffs.len() + 1];
                for (j, c) in coeffs.iter().enumerate() {
                    next[j + 1] = next[j + 1].add(c);
                    next[j] = next[j].sub(&c.mul(&roots[i]));
                }
                coeffs = next;
            }
            let mut ints = Vec::new();
            let mut ok = true;
            for c in &coeffs {
                if c.im.abs().to_f64() > 1e-30 {
                    ok = false;
                    break;
                }
                match round_big(&c.re.mul(&lead)) {
                    Some(v) => ints.push(Rat::from_integer(v)),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let g = Poly::new(ints).primitive();
                if let Some(q) = rest.exact_div(&g) {
                    out.push(g);
                    rest = q.primitive();
                    let keep: Vec<CBig> = roots
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !idx.contains(i))
                        .map(|(_, r)| r.clone())
                        .collect();
                    roots = keep;
                    continue 'outer;
                }
            }
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    k += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < n - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.primitive());
    }
    out.sort_by_key(|g| g.degree());
    out
}

/// Irreducible factors with multiplicities (content discarded).
pub fn factor(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (g, m) in square_free_decomposition(p) {
        for h in factor_square_free(&g) {
            out.push((h, m));
        }
    }
    out
}

/// The irreducible factor of `p` vanishing at the root isolated by (lo, hi].
pub fn minimal_polynomial_of_root(p: &Poly, lo: &Rat, hi: &Rat) -> Poly {
    for (g, _) in factor(p) {
        if lo == hi {
            if g.eval(lo).is_zero() {
                return g;
            }
            continue;
        }
        let seq = super::roots::sturm_sequence(&g);
        if super::roots::count_roots(&seq, lo, hi) == 1 {
            return g;
        }
    }
    panic!("no factor vanishes in the isolating interval");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_products() {
        let a = Poly::from_i64(&[-2, 0, 1]);
        let b = Poly::from_i64(&[1, 1, 1]);
        let c = Poly::from_i64(&[3, -7]);
        let p = &(&a * &b) * &c;
        let fs = factor_square_free(&p);
        assert_eq!(fs.len(), 3);
        let quartic = Poly::from_i64(&[-11, -128, 41088, -20480, 4096]);
        assert_eq!(factor_square_free(&quartic), vec![quartic.clone()]);
        let sq = &(&a * &a) * &c;
        let d = factor(&sq);
        assert!(d.contains(&(a.primitive(), 2)));
    }
}
