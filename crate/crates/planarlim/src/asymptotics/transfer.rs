//! From a local expansion g = sum b_k rho^k, rho = (1 - t/t0)^(1/2), to
//! f_n = g_n / ((n + s1)(n + s2)) ~ c t0^-n n^(-7/2) (1 + sum d_l / n^l).
//!
//! Only odd k contribute:
//!   [t^n] (1 - t/t0)^(k/2) = t0^-n Gamma(n - k/2) / (Gamma(-k/2) Gamma(n + 1)),
//! and Gamma(n - a)/Gamma(n + 1) = n^(-a-1) (1 + sum e_j(a) / n^j) with the
//! e_j from the Bernoulli-polynomial expansion of log Gamma.

use super::{Approx, AsymError};
use crate::algebra::numfield::Quad;
use crate::algebra::rat::{binom_r, ri, Rat};
use crate::algebra::{BigFloat, Field};
use crate::series::USeries;
use num_traits::{One, Zero};

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Vec<Rat> {
    let mut b = vec![Rat::one()];
    for m in 1..=n {
        let mut acc = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += binom_r(m as i64 + 1, k as i64) * bk;
        }
        b.push(-acc / ri(m as i64 + 1));
    }
    b
}

pub fn bernoulli_poly(m: usize, x: &Rat, b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    let mut xp = Rat::one();
    // sum_k C(m,k) B_k x^(m-k), built from the top power down
    for k in (0..=m).rev() {
        acc += binom_r(m as i64, k as i64) * &b[k] * &xp;
        xp *= x;
    }
    acc
}

/// e_0..e_l of Gamma(n + x) / Gamma(n + y) = n^(x-y) (1 + sum e_j n^-j).
pub fn gamma_ratio_coeffs(x: &Rat, y: &Rat, l: usize) -> Vec<Rat> {
    let b = bernoulli(l + 2);
    let mut log = vec![Rat::zero(); l + 1];
    for (k, slot) in log.iter_mut().enumerate().skip(1) {
        let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
        let d = bernoulli_poly(k + 1, x, &b) - bernoulli_poly(k + 1, y, &b);
        *slot = sign * d / ri((k * (k + 1)) as i64);
    }
    let s = USeries::from_coeffs(0, log, l as i64 + 1);
    let e = s.exp().expect("zero constant term");
    (0..=l).map(|j| e.coeff_u(j as i64)).collect()
}

#[derive(Clone, Debug)]
pub struct Transfer<F: Field> {
    /// c^2 pi, in F.
    pub stokes_sq_pi: F,
    pub stokes: BigFloat,
    /// 1/t0
    pub rate: F,
    pub exponent: Rat,
    /// d_1 .. d_M
    pub corrections: Vec<F>,
}

/// `g` holds b_0 .. b_K; shifts (s1, s2) relate g_n to f_n.
pub fn transfer<F: Approx>(g: &[Quad<F>], t0: &F, shifts: (i64, i64), m: usize, bits: usize) -> Result<Transfer<F>, AsymError> {
    let available = g.len().saturating_sub(2) / 2;
    if g.len() < 2 * m + 2 {
        return Err(AsymError::OrderTooHigh { requested: m, available });
    }
    let b1 = &g[1];
    if !b1.x.vanishes() || b1.y.vanishes() {
        return Err(AsymError::NonSquareRoot);
    }
    let half = Rat::new(1.into(), 2.into());
    // ratios b_{2j+1} / b_1 and r_k = Gamma(-1/2) / Gamma(-k/2)
    let mut ratio = Vec::new();
    let mut r = Rat::one();
    for j in 0..=m {
        if j > 0 {
            r *= -&half - ri(j as i64);
        }
        let bk = &g[2 * j + 1];
        if !bk.x.vanishes() {
            return Err(AsymError::Derive(format!("odd coefficient b_{} has a rational part", 2 * j + 1)));
        }
        ratio.push(bk.y.div(&b1.y).scale(&r));
    }
    // G_l = sum_{j + i = l} ratio_j e_i(j + 1/2)
    let zero = t0.zero_like();
    let mut big_g = vec![zero.clone(); m + 1];
    for (j, rj) in ratio.iter().enumerate() {
        let a = ri(j as i64) + &half;
        let e = gamma_ratio_coeffs(&-a, &Rat::one(), m);
        for i in 0..=(m - j) {
            big_g[i + j] = big_g[i + j].add(&rj.scale(&e[i]));
        }
    }
    // divide by (n + s1)(n + s2) = n^2 (1 + s1/n)(1 + s2/n)
    let mut inv = vec![Rat::zero(); m + 1];
    for (i, slot) in inv.iter_mut().enumerate() {
        let mut acc = Rat::zero();
        for k in 0..=i {
            let a = crate::algebra::rat::rat_pow(&ri(-shifts.0), k as i64);
            let b = crate::algebra::rat::rat_pow(&ri(-shifts.1), (i - k) as i64);
            acc += a * b;
        }
        *slot = acc;
    }
    let mut d = vec![zero.clone(); m + 1];
    for i in 0..=m {
        for k in 0..=(m - i) {
            d[i + k] = d[i + k].add(&big_g[i].scale(&inv[k]));
        }
    }
    // c = -b_1 / (2 sqrt(pi)), c^2 pi = b_1^2 / 4
    let b1sq = b1.y.mul(&b1.y).mul(&b1.alpha);
    let stokes_sq_pi = b1sq.scale(&Rat::new(1.into(), 4.into()));
    let b1v = b1.approx(bits);
    let stokes = b1v.neg().div(&BigFloat::from_i64(2, bits).mul(&BigFloat::pi(bits).sqrt()));
    Ok(Transfer {
        stokes_sq_pi,
        stokes,
        rate: t0.one_like().div(t0),
        exponent: Rat::new((-7).into(), 2.into()),
        corrections: d[1..].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn gamma_ratio() {
        // Gamma(n + 1/2) / Gamma(n + 1) = n^(-1/2) (1 - 1/(8n) + 1/(128 n^2) + ...)
        let e = gamma_ratio_coeffs(&rat(1, 2), &ri(1), 3);
        assert_eq!(e[1], rat(-1, 8));
        assert_eq!(e[2], rat(1, 128));
        assert_eq!(e[3], rat(5, 1024));
        // Gamma(n)/Gamma(n+1) = 1/n exactly
        let e = gamma_ratio_coeffs(&ri(0), &ri(1), 4);
        assert!(e[1..].iter().all(|x| x.is_zero()));
    }
}
