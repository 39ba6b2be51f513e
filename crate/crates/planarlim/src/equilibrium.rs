//! Potential theory for one-cut polynomial potentials.
//!
//! Everything is reduced to moments of the arcsine law
//! dω = dx / (π √(4 - x²)) on [-2, 2], whose moments are central binomials,
//! so integrals of polynomials against it are exact. The support [b - 2c, b + 2c]
//! maximizes H(c, b) = log c - (1/2) ∫ V(cx + b) dω.

use crate::algebra::rat::{binom_r, ri, Rat};
use crate::algebra::BigFloat;
use num_traits::{Signed, Zero};
use serde_json::json;

pub const DEFAULT_BITS: usize = 256;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EquilibriumError {
    #[error("no one-cut solution found from this seed")]
    NoSolution,
    #[error("degenerate maximizer")]
    Degenerate,
    #[error("potential is not admissible: {0}")]
    NotAdmissible(String),
    #[error("non-finite energy: {0}")]
    NonFinite(String),
}

/// A polynomial potential V(x) = sum coeffs[k] x^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    coeffs: Vec<Rat>,
    pub even: bool,
    /// Set for formal perturbations that are not bounded below; only the local
    /// one-cut branch near the Gaussian is meaningful for them.
    pub formal: bool,
}

impl Potential {
    fn build(mut coeffs: Vec<Rat>, formal: bool) -> Result<Potential, EquilibriumError> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if !formal {
            let d = coeffs.len().saturating_sub(1);
            if d < 2 || d % 2 == 1 || !coeffs[d].is_positive() {
                return Err(EquilibriumError::NotAdmissible(format!(
                    "need even degree >= 2 with positive leading coefficient, got degree {d}"
                )));
            }
        }
        let even = coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero());
        Ok(Potential { coeffs, even, formal })
    }
    /// V(x) = sum coeffs[k] x^k.
    pub fn raw(coeffs: Vec<Rat>) -> Result<Potential, EquilibriumError> {
        Potential::build(coeffs, false)
    }
    fn perturbation_coeffs(pairs: &[(usize, Rat)]) -> Vec<Rat> {
        let top = pairs.iter().map(|p| p.0).max().unwrap_or(0).max(2);
        let mut c = vec![Rat::zero(); top + 1];
        c[2] = Rat::new(1.into(), 2.into());
        for (n, a) in pairs {
            assert!(*n >= 1, "couplings start at a_1");
            c[*n] -= a / ri(*n as i64);
        }
        c
    }
    /// V(x) = x²/2 - sum a_n x^n / n.
    pub fn perturbed(pairs: &[(usize, Rat)]) -> Result<Potential, EquilibriumError> {
        Potential::build(Potential::perturbation_coeffs(pairs), false)
    }
    /// Same convention without the admissibility check.
    pub fn formal_perturbed(pairs: &[(usize, Rat)]) -> Potential {
        Potential::build(Potential::perturbation_coeffs(pairs), true).expect("no check")
    }
    /// V(x) = a2 x²/2 + a4 x⁴/4.
    pub fn quartic(a2: Rat, a4: Rat) -> Result<Potential, EquilibriumError> {
        Potential::raw(vec![Rat::zero(), Rat::zero(), a2 / ri(2), Rat::zero(), a4 / ri(4)])
    }
    /// V(x) = a x^k / k.
    pub fn monomial(k: usize, a: Rat) -> Result<Potential, EquilibriumError> {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = a / ri(k as i64);
        Potential::raw(c)
    }
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
    pub fn derivative(&self) -> Vec<Rat> {
        deriv(&self.coeffs)
    }
    pub fn eval(&self, x: &BigFloat) -> BigFloat {
        horner(&self.coeffs, x)
    }
}

fn deriv(p: &[Rat]) -> Vec<Rat> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * ri(k as i64)).collect()
}

fn horner(p: &[Rat], x: &BigFloat) -> BigFloat {
    let b = x.prec();
    p.iter().rev().fold(BigFloat::zero(b), |acc, c| acc.mul(x).add(&BigFloat::from_rat(c, b)))
}

fn horner_big(p: &[BigFloat], x: &BigFloat) -> BigFloat {
    p.iter().rev().fold(BigFloat::zero(x.prec()), |acc, c| acc.mul(x).add(c))
}

/// ∫ x^i dω: C(i, i/2) for even i, else 0.
pub fn omega_moment(i: usize) -> Rat {
    if i % 2 == 1 {
        Rat::zero()
    } else {
        binom_r(i as i64, (i / 2) as i64)
    }
}

fn omega_big(i: usize, bits: usize) -> BigFloat {
    BigFloat::from_rat(&omega_moment(i), bits)
}

/// β_n(f) = ∫ f(x) T_n(x/2) dω for n = 0..=n_max, from ∫ x^i T_n(x/2) dω = C(i, (i-n)/2).
pub fn cheb_moments(f: &[Rat], n_max: usize) -> Vec<Rat> {
    (0..=n_max)
        .map(|n| {
            let mut acc = Rat::zero();
            for (i, fi) in f.iter().enumerate() {
                if i >= n && (i - n) % 2 == 0 {
                    acc += fi * binom_r(i as i64, ((i - n) / 2) as i64);
                }
            }
            acc
        })
        .collect()
}

pub fn cheb_moments_big(f: &[BigFloat], n_max: usize) -> Vec<BigFloat> {
    let bits = f.first().map_or(DEFAULT_BITS, |x| x.prec());
    (0..=n_max)
        .map(|n| {
            let mut acc = BigFloat::zero(bits);
            for (i, fi) in f.iter().enumerate() {
                if i >= n && (i - n) % 2 == 0 {
                    acc = acc.add(&fi.mul(&BigFloat::from_rat(&binom_r(i as i64, ((i - n) / 2) as i64), bits)));
                }
            }
            acc
        })
        .collect()
}

/// Coefficients in x of p(cx + b).
pub fn shifted(p: &[Rat], c: &BigFloat, b: &BigFloat) -> Vec<BigFloat> {
    let bits = c.prec();
    let mut acc: Vec<BigFloat> = vec![];
    for pk in p.iter().rev() {
        // acc <- acc * (c x + b) + pk
        let mut next = vec![BigFloat::zero(bits); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] = next[i].add(&a.mul(b));
            next[i + 1] = next[i + 1].add(&a.mul(c));
        }
        next[0] = next[0].add(&BigFloat::from_rat(pk, bits));
        acc = next;
    }
    if acc.is_empty() {
        acc.push(BigFloat::zero(bits));
    }
    acc
}

/// ∫ x^k q(x) dω for q given by coefficients.
fn omega_integral(q: &[BigFloat], k: usize) -> BigFloat {
    let bits = q[0].prec();
    q.iter()
        .enumerate()
        .fold(BigFloat::zero(bits), |acc, (i, qi)| acc.add(&qi.mul(&omega_big(i + k, bits))))
}

pub fn h_value(v: &Potential, c: &BigFloat, b: &BigFloat) -> BigFloat {
    let half = BigFloat::from_rat(&Rat::new(1.into(), 2.into()), c.prec());
    c.ln().sub(&half.mul(&omega_integral(&shifted(&v.coeffs, c, b), 0)))
}

/// (∂_c H, ∂_b H) and the Hessian [[H_cc, H_cb], [H_cb, H_bb]].
pub fn h_gradient(v: &Potential, c: &BigFloat, b: &BigFloat) -> ([BigFloat; 2], [[BigFloat; 2]; 2]) {
    let bits = c.prec();
    let half = BigFloat::from_rat(&Rat::new(1.into(), 2.into()), bits);
    let d1 = shifted(&deriv(&v.coeffs), c, b);
    let v2 = deriv(&deriv(&v.coeffs));
    let d2 = if v2.is_empty() { vec![BigFloat::zero(bits)] } else { shifted(&v2, c, b) };
    let one = BigFloat::one(bits);
    let gc = one.div(c).sub(&half.mul(&omega_integral(&d1, 1)));
    let gb = half.mul(&omega_integral(&d1, 0)).neg();
    let hcc = one.div(&c.mul(c)).neg().sub(&half.mul(&omega_integral(&d2, 2)));
    let hcb = half.mul(&omega_integral(&d2, 1)).neg();
    let hbb = half.mul(&omega_integral(&d2, 0)).neg();
    ([gc, gb], [[hcc, hcb.clone()], [hcb, hbb]])
}

/// The two integrals of the endpoint system, which should equal 2 and 0.
pub fn endpoint_integrals(v: &Potential, c: &BigFloat, b: &BigFloat) -> (BigFloat, BigFloat) {
    let d1 = shifted(&v.derivative(), c, b);
    (c.mul(&omega_integral(&d1, 1)), omega_integral(&d1, 0))
}

/// Newton on ∇H from (c0, b0), with step halving.
pub fn solve_endpoints(v: &Potential, init: (BigFloat, BigFloat)) -> Result<(BigFloat, BigFloat), EquilibriumError> {
    let (mut c, mut b) = init;
    let bits = c.prec();
    if v.even {
        b = BigFloat::zero(bits);
    }
    if c.is_negative() || c.is_zero() {
        return Err(EquilibriumError::NoSolution);
    }
    let tol = BigFloat::from_i64(10, bits).powi(-30);
    let norm = |g: &[BigFloat; 2], even: bool| -> BigFloat {
        if even {
            g[0].abs()
        } else {
            g[0].abs().max(g[1].abs())
        }
    };
    for _ in 0..200 {
        let (g, h) = h_gradient(v, &c, &b);
        let gn = norm(&g, v.even);
        if gn.sub(&tol).is_negative() {
            return Ok((c, b));
        }
        let (dc, db) = if v.even {
            if h[0][0].is_zero() {
                return Err(EquilibriumError::Degenerate);
            }
            (g[0].div(&h[0][0]).neg(), BigFloat::zero(bits))
        } else {
            let det = h[0][0].mul(&h[1][1]).sub(&h[0][1].mul(&h[1][0]));
            if det.abs().to_f64() < 1e-60 {
                return Err(EquilibriumError::Degenerate);
            }
            let dc = h[1][1].mul(&g[0]).sub(&h[0][1].mul(&g[1])).div(&det).neg();
            let db = h[0][0].mul(&g[1]).sub(&h[1][0].mul(&g[0])).div(&det).neg();
            (dc, db)
        };
        let mut lambda = BigFloat::one(bits);
        let mut accepted = false;
        for _ in 0..20 {
            let cn = c.add(&lambda.mul(&dc));
            let bn = b.add(&lambda.mul(&db));
            if !(cn.is_negative() || cn.is_zero()) && cn.is_finite() && bn.is_finite() {
                let (gn2, _) = h_gradient(v, &cn, &bn);
                if norm(&gn2, v.even).sub(&gn).is_negative() {
                    c = cn;
                    b = bn;
                    accepted = true;
                    break;
                }
            }
            lambda = lambda.div(&BigFloat::from_i64(2, bits));
        }
        if !accepted {
            return Err(EquilibriumError::NoSolution);
        }
    }
    Err(EquilibriumError::NoSolution)
}

/// ψ_{b,c}(u) = ∫ (V'(cu + b) - V'(cy + b)) / (u - y) dω(y) as a polynomial in u.
pub fn psi_poly(v: &Potential, c: &BigFloat, b: &BigFloat) -> Vec<BigFloat> {
    let bits = c.prec();
    let d = shifted(&v.derivative(), c, b);
    // (u^k - y^k)/(u - y) = sum_j u^j y^(k-1-j)
    let mut psi = vec![BigFloat::zero(bits); d.len().saturating_sub(1).max(1)];
    for (k, dk) in d.iter().enumerate().skip(1) {
        for (j, slot) in psi.iter_mut().enumerate().take(k) {
            *slot = slot.add(&dk.mul(&omega_big(k - 1 - j, bits)));
        }
    }
    psi
}

pub fn psi(v: &Potential, c: &BigFloat, b: &BigFloat, u: &BigFloat) -> BigFloat {
    horner_big(&psi_poly(v, c, b), u)
}

/// Equilibrium density at x; 0 outside the support.
pub fn density(v: &Potential, c: &BigFloat, b: &BigFloat, x: &BigFloat) -> BigFloat {
    let bits = c.prec();
    let u = x.sub(b).div(c);
    let four = BigFloat::from_i64(4, bits);
    let rad = four.sub(&u.mul(&u));
    if rad.is_negative() || rad.is_zero() {
        return BigFloat::zero(bits);
    }
    // ψ(u) √(4c² - (x-b)²) / (2cπ) = ψ(u) √(4 - u²) / (2π)
    let two_pi = BigFloat::pi(bits).mul(&BigFloat::from_i64(2, bits));
    psi(v, c, b, &u).mul(&rad.sqrt()).div(&two_pi)
}

/// ∫ density dx, exactly: with x = cu + b it is (c/2) ∫ ψ(u) (4 - u²) dω(u).
pub fn density_mass(v: &Potential, c: &BigFloat, b: &BigFloat) -> BigFloat {
    let p = psi_poly(v, c, b);
    let four = BigFloat::from_i64(4, c.prec());
    let half = BigFloat::from_rat(&Rat::new(1.into(), 2.into()), c.prec());
    half.mul(c).mul(&four.mul(&omega_integral(&p, 0)).sub(&omega_integral(&p, 2)))
}

/// ∫ density by the n-point Gauss-Chebyshev rule in u, exact for deg ψ + 2 < 2n.
pub fn density_mass_quadrature(v: &Potential, c: &BigFloat, b: &BigFloat, n: usize) -> BigFloat {
    let p = psi_poly(v, c, b);
    let bits = c.prec();
    let four = BigFloat::from_i64(4, bits);
    let mut acc = BigFloat::zero(bits);
    for k in 1..=n {
        let u = cheb_node(k, n, bits);
        acc = acc.add(&horner_big(&p, &u).mul(&four.sub(&u.mul(&u))));
    }
    acc.mul(c).div(&BigFloat::from_i64(2 * n as i64, bits))
}

/// 2 cos((2k - 1) π / (2n)).
fn cheb_node(k: usize, n: usize, bits: usize) -> BigFloat {
    let th = BigFloat::pi(bits).mul(&BigFloat::from_rat(&Rat::new(((2 * k - 1) as i64).into(), ((2 * n) as i64).into()), bits));
    BigFloat::from_i64(2, bits).mul(&cos_big(&th))
}

fn cos_big(x: &BigFloat) -> BigFloat {
    // Taylor series after halving the argument, then double-angle back
    let bits = x.prec();
    let halvings = 8;
    let y = x.div(&BigFloat::from_i64(1 << halvings, bits));
    let y2 = y.mul(&y);
    let mut term = BigFloat::one(bits);
    let mut sum = BigFloat::one(bits);
    let eps = BigFloat::from_i64(2, bits).powi(-(bits as i64 + 8));
    let mut k = 0i64;
    loop {
        term = term.mul(&y2).div(&BigFloat::from_i64((2 * k + 1) * (2 * k + 2), bits)).neg();
        sum = sum.add(&term);
        k += 1;
        if term.abs().sub(&eps).is_negative() {
            break;
        }
    }
    let two = BigFloat::from_i64(2, bits);
    let one = BigFloat::one(bits);
    for _ in 0..halvings {
        sum = two.mul(&sum.mul(&sum)).sub(&one);
    }
    sum
}

#[derive(Clone, Debug)]
pub struct SupportReport {
    pub ok: bool,
    /// min ψ vanishes to working precision: the one-cut threshold.
    pub boundary: bool,
    pub min_psi: BigFloat,
    pub argmin: BigFloat,
}

/// ψ on a Chebyshev grid of [-2, 2], with the smallest grid value polished by
/// Newton on ψ'.
pub fn support_check(v: &Potential, c: &BigFloat, b: &BigFloat, grid_size: usize) -> SupportReport {
    assert!(grid_size >= 64, "grid_size must be at least 64");
    let bits = c.prec();
    let p = psi_poly(v, c, b);
    let mut best: Option<(BigFloat, BigFloat)> = None;
    for k in 1..=grid_size {
        let u = cheb_node(k, grid_size, bits);
        let val = horner_big(&p, &u);
        if best.as_ref().map_or(true, |(bv, _)| val.sub(bv).is_negative()) {
            best = Some((val, u));
        }
    }
    let (mut min_psi, mut argmin) = best.unwrap();
    let dp = deriv_big(&p);
    let ddp = deriv_big(&dp);
    let mut u = argmin.clone();
    let two = BigFloat::from_i64(2, bits);
    for _ in 0..100 {
        let d2 = horner_big(&ddp, &u);
        if d2.is_zero() || d2.is_negative() {
            break;
        }
        let step = horner_big(&dp, &u).div(&d2);
        u = u.sub(&step);
        if !u.abs().sub(&two).is_negative() || step.abs().to_f64() < 1e-60 {
            break;
        }
    }
    if u.abs().sub(&two).is_negative() {
        let val = horner_big(&p, &u);
        if val.sub(&min_psi).is_negative() {
            min_psi = val;
            argmin = u;
        }
    }
    let scale: f64 = p.iter().map(|x| x.abs().to_f64()).fold(1.0, f64::max);
    let boundary = min_psi.abs().to_f64() < 1e-20 * scale;
    let ok = !boundary && !min_psi.is_negative();
    SupportReport { ok, boundary, min_psi, argmin }
}

fn deriv_big(p: &[BigFloat]) -> Vec<BigFloat> {
    let bits = p.first().map_or(DEFAULT_BITS, |x| x.prec());
    let d: Vec<BigFloat> = p.iter().enumerate().skip(1).map(|(k, c)| c.mul(&BigFloat::from_i64(k as i64, bits))).collect();
    if d.is_empty() {
        vec![BigFloat::zero(bits)]
    } else {
        d
    }
}

pub fn full_support_test(v: &Potential, c: &BigFloat, b: &BigFloat, grid_size: usize) -> bool {
    support_check(v, c, b, grid_size).ok
}

/// w_j = V'^(j)(b) / j!, so V'(sx + b) = sum_j w_j s^j x^j.
fn taylor_at(p: &[Rat], b: &BigFloat) -> Vec<BigFloat> {
    shifted(p, &BigFloat::one(b.prec()), b)
}

fn poly_mul(a: &[BigFloat], b: &[BigFloat]) -> Vec<BigFloat> {
    let bits = a[0].prec();
    let mut c = vec![BigFloat::zero(bits); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = c[i + j].add(&x.mul(y));
        }
    }
    c
}

/// ∫_0^c s^shift q(s) ds.
fn integrate_0c(q: &[BigFloat], shift: usize, c: &BigFloat) -> BigFloat {
    let bits = c.prec();
    let mut acc = BigFloat::zero(bits);
    for (i, qi) in q.iter().enumerate() {
        let e = (i + shift + 1) as i64;
        acc = acc.add(&qi.mul(&c.powi(e)).div(&BigFloat::from_i64(e, bits)));
    }
    acc
}

/// A(s) = (1/2) ∫ x V'(sx + b) dω and B(s) = ∫ V'(sx + b) dω, polynomials in s.
fn moment_polys(v: &Potential, b: &BigFloat) -> (Vec<BigFloat>, Vec<BigFloat>) {
    let bits = b.prec();
    let w = taylor_at(&v.derivative(), b);
    let half = BigFloat::from_rat(&Rat::new(1.into(), 2.into()), bits);
    let a: Vec<BigFloat> = w.iter().enumerate().map(|(j, wj)| half.mul(wj).mul(&omega_big(j + 1, bits))).collect();
    let bb: Vec<BigFloat> = w.iter().enumerate().map(|(j, wj)| wj.mul(&omega_big(j, bits))).collect();
    (a, bb)
}

/// I_V = -log c + ∫ V(cx + b) dω - ∫_0^c s (A(s)² + B(s)²) ds.
pub fn planar_energy(v: &Potential, c: &BigFloat, b: &BigFloat) -> BigFloat {
    let (a, bb) = moment_polys(v, b);
    let q: Vec<BigFloat> = {
        let a2 = poly_mul(&a, &a);
        let b2 = poly_mul(&bb, &bb);
        let n = a2.len().max(b2.len());
        (0..n)
            .map(|i| {
                let x = a2.get(i).cloned().unwrap_or_else(|| BigFloat::zero(c.prec()));
                x.add(&b2.get(i).cloned().unwrap_or_else(|| BigFloat::zero(c.prec())))
            })
            .collect()
    };
    let vint = omega_integral(&shifted(&v.coeffs, c, b), 0);
    c.ln().neg().add(&vint).sub(&integrate_0c(&q, 1, c))
}

/// The second form: V(b) - log c - ∫_0^c (1/s)[-1 + (1 - sA)² + (sB)²] ds,
/// whose integrand is the polynomial -2A + s A² + s B².
pub fn planar_energy_alt(v: &Potential, c: &BigFloat, b: &BigFloat) -> BigFloat {
    let (a, bb) = moment_polys(v, b);
    let two = BigFloat::from_i64(2, c.prec());
    let lin = integrate_0c(&a, 0, c).mul(&two).neg();
    let quad = integrate_0c(&poly_mul(&a, &a), 1, c).add(&integrate_0c(&poly_mul(&bb, &bb), 1, c));
    v.eval(b).sub(&c.ln()).sub(&lin.add(&quad))
}

/// I = β0 + 2 sum_{n>=1} (β_n α_n + α_n² / n); index 0 of `alphas` is ignored.
pub fn energy_of_moments(alphas: &[BigFloat], betas: &[BigFloat]) -> BigFloat {
    assert_eq!(alphas.len(), betas.len(), "alphas and betas differ in length");
    let bits = betas[0].prec();
    let mut s = BigFloat::zero(bits);
    for n in 1..betas.len() {
        let t = betas[n].mul(&alphas[n]).add(&alphas[n].mul(&alphas[n]).div(&BigFloat::from_i64(n as i64, bits)));
        s = s.add(&t);
    }
    betas[0].add(&s.mul(&BigFloat::from_i64(2, bits)))
}

/// I_V through the rescaled potential V(cx + b) on [-2, 2], at the minimizing
/// moments α_n = -n β_n / 2, minus log c.
pub fn energy_by_moments(v: &Potential, c: &BigFloat, b: &BigFloat) -> BigFloat {
    let vt = shifted(&v.coeffs, c, b);
    let betas = cheb_moments_big(&vt, vt.len() - 1);
    let bits = c.prec();
    let alphas: Vec<BigFloat> = betas
        .iter()
        .enumerate()
        .map(|(n, bn)| bn.mul(&BigFloat::from_rat(&Rat::new((-(n as i64)).into(), 2.into()), bits)))
        .collect();
    energy_of_moments(&alphas, &betas).sub(&c.ln())
}

/// ∫ log|x - y| dω(y): 0 on [-2, 2], log((|x| + √(x² - 4)) / 2) outside.
pub fn arcsine_potential(x: &BigFloat) -> BigFloat {
    let bits = x.prec();
    let a = x.abs();
    let four = BigFloat::from_i64(4, bits);
    if !four.sub(&a.mul(&a)).is_negative() {
        return BigFloat::zero(bits);
    }
    a.add(&a.mul(&a).sub(&four).sqrt()).div(&BigFloat::from_i64(2, bits)).ln()
}

/// ∫ log|x - y| dω(y) by quadrature in y = 2 cos θ. Outside [-2, 2] the
/// integrand is smooth and periodic, so the midpoint rule converges
/// geometrically; inside, the range is split at the singular angle and each
/// piece done by tanh-sinh.
pub fn log_potential_quadrature(x: f64) -> f64 {
    use std::f64::consts::PI;
    if x.abs() > 2.0 {
        let n = 4000;
        let s: f64 = (1..=n).map(|k| (x - 2.0 * (PI * (2 * k - 1) as f64 / (2 * n) as f64).cos()).abs().ln()).sum();
        return s / n as f64;
    }
    let phi = (x / 2.0).acos();
    // x - 2cos θ = 4 sin((θ + φ)/2) sin((θ - φ)/2), with δ = |θ - φ|
    let right = |d: f64| (4.0 * (phi + d / 2.0).sin() * (d / 2.0).sin()).abs().ln();
    let left = |d: f64| (4.0 * (phi - d / 2.0).sin() * (d / 2.0).sin()).abs().ln();
    (tanh_sinh(left, phi) + tanh_sinh(right, PI - phi)) / PI
}

/// ∫_0^len f, tolerating an integrable singularity at 0.
fn tanh_sinh(f: impl Fn(f64) -> f64, len: f64) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    if len <= 0.0 {
        return 0.0;
    }
    let h = 1.0 / 64.0;
    let mut acc = 0.0;
    let mut k = -400i64;
    while k <= 400 {
        let t = k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        // node (1 + tanh u)/2 of [0, 1]; near 0 use the stable form
        let x0 = if u < 0.0 { 1.0 / (1.0 + (-2.0 * u).exp()) } else { 1.0 - 1.0 / (1.0 + (2.0 * u).exp()) };
        let x = x0 * len;
        if x > 0.0 && x < len && w > 1e-300 {
            let fx = f(x);
            if fx.is_finite() {
                acc += w * fx;
            }
        }
        k += 1;
    }
    acc * h * len / 2.0
}

#[derive(Clone, Debug)]
pub struct EquilibriumResult {
    pub b: BigFloat,
    pub c: BigFloat,
    pub i_v: BigFloat,
    pub h_value: BigFloat,
    pub hessian: [[BigFloat; 2]; 2],
    pub support_ok: bool,
    pub boundary: bool,
    pub density_samples: Vec<(BigFloat, BigFloat)>,
}

impl EquilibriumResult {
    pub fn hessian_negative_definite(&self) -> bool {
        let h = &self.hessian;
        let det = h[0][0].mul(&h[1][1]).sub(&h[0][1].mul(&h[1][0]));
        h[0][0].is_negative() && det.is_positive_big()
    }
    pub fn to_json(&self) -> serde_json::Value {
        let s = |x: &BigFloat| x.to_sci(40);
        json!({
            "b": s(&self.b),
            "c": s(&self.c),
            "I_V": s(&self.i_v),
            "F0": s(&BigFloat::from_rat(&Rat::new(3.into(), 4.into()), self.i_v.prec()).sub(&self.i_v)),
            "H_value": s(&self.h_value),
            "support_ok": self.support_ok,
            "boundary": self.boundary,
            "hessian": self.hessian.iter().map(|r| r.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
    pub fn density_csv(&self) -> String {
        let mut out = String::from("x,density\n");
        for (x, y) in &self.density_samples {
            out.push_str(&format!("{},{}\n", x.to_sci(20), y.to_sci(20)));
        }
        out
    }
}

trait PositiveBig {
    fn is_positive_big(&self) -> bool;
}

impl PositiveBig for BigFloat {
    fn is_positive_big(&self) -> bool {
        !self.is_negative() && !self.is_zero()
    }
}

/// Endpoints, energy, support check and `samples` density values across the support.
pub fn equilibrium(v: &Potential, bits: usize, samples: usize) -> Result<EquilibriumResult, EquilibriumError> {
    let (c, b) = solve_endpoints(v, (BigFloat::one(bits), BigFloat::zero(bits)))?;
    let (_, hessian) = h_gradient(v, &c, &b);
    let report = support_check(v, &c, &b, 128);
    let i_v = planar_energy(v, &c, &b);
    if !i_v.is_finite() {
        return Err(EquilibriumError::NonFinite("planar energy".into()));
    }
    let mut density_samples = Vec::new();
    let two = BigFloat::from_i64(2, bits);
    for k in 0..samples {
        // interior points b - 2c + 4c (k + 1/2)/samples
        let frac = BigFloat::from_rat(&Rat::new((2 * k as i64 + 1).into(), (2 * samples as i64).into()), bits);
        let x = b.sub(&two.mul(&c)).add(&two.mul(&two).mul(&c).mul(&frac));
        let y = density(v, &c, &b, &x);
        density_samples.push((x, y));
    }
    Ok(EquilibriumResult {
        h_value: h_value(v, &c, &b),
        b,
        c,
        i_v,
        hessian,
        support_ok: report.ok,
        boundary: report.boundary,
        density_samples,
    })
}

/// Energy of the best piecewise-constant density on a uniform grid of m bins,
/// found by accelerated projected gradient over the probability simplex. The
/// kernel is the exact bin-averaged log|x - y| (its diagonal is log Δ - 3/2)
/// and V is averaged exactly over each bin, so the value is the energy of an
/// actual probability measure and hence an upper bound for I_V, up to the
/// optimizer's residual.
pub fn discretized_minimizer(v: &Potential, grid: (f64, f64, usize), iterations: usize) -> Result<BigFloat, EquilibriumError> {
    let (lo, hi, m) = grid;
    assert!(m >= 200, "need at least 200 bins");
    assert!(hi > lo, "empty grid");
    let dx = (hi - lo) / m as f64;
    let vc: Vec<f64> = v.coeffs.iter().map(crate::algebra::rat::rat_to_f64).collect();
    // antiderivative of V for bin averages
    let anti = |x: f64| vc.iter().enumerate().rev().fold(0.0, |acc, (k, c)| acc * x + c / (k + 1) as f64) * x;
    let vbin: Vec<f64> = (0..m).map(|i| (anti(lo + (i + 1) as f64 * dx) - anti(lo + i as f64 * dx)) / dx).collect();
    let g = |u: f64| if u == 0.0 { 0.0 } else { u * u * u.abs().ln() / 2.0 - 0.75 * u * u };
    // K_ij = -(1/Δ²) [G(d + Δ) - 2G(d) + G(d - Δ)], d = (j - i) Δ, G'' = log|u|
    let kern: Vec<f64> = (0..m)
        .map(|k| {
            let d = k as f64 * dx;
            -(g(d + dx) - 2.0 * g(d) + g(d - dx)) / (dx * dx)
        })
        .collect();
    let kmul = |w: &[f64]| -> Vec<f64> {
        (0..m).map(|i| (0..m).map(|j| kern[i.abs_diff(j)] * w[j]).sum()).collect()
    };
    let energy = |w: &[f64]| -> f64 {
        let kw = kmul(w);
        w.iter().zip(&vbin).map(|(a, b)| a * b).sum::<f64>() + w.iter().zip(&kw).map(|(a, b)| a * b).sum::<f64>()
    };
    // Lipschitz constant of the gradient 2Kw + V by power iteration
    let mut x = vec![1.0; m];
    let mut lam = 1.0;
    for _ in 0..60 {
        let y = kmul(&x);
        lam = y.iter().map(|a| a * a).sum::<f64>().sqrt() / x.iter().map(|a| a * a).sum::<f64>().sqrt();
        let n = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        x = y.iter().map(|a| a / n).collect();
    }
    let step = 1.0 / (2.0 * lam * 1.05);
    let mut w = vec![1.0 / m as f64; m];
    let mut z = w.clone();
    let mut t = 1.0f64;
    for _ in 0..iterations {
        let kz = kmul(&z);
        let grad: Vec<f64> = (0..m).map(|i| vbin[i] + 2.0 * kz[i]).collect();
        let wn = project_simplex(&(0..m).map(|i| z[i] - step * grad[i]).collect::<Vec<_>>());
        let tn = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
        z = (0..m).map(|i| wn[i] + (t - 1.0) / tn * (wn[i] - w[i])).collect();
        w = wn;
        t = tn;
    }
    let e = energy(&w);
    if !e.is_finite() {
        return Err(EquilibriumError::NonFinite(format!("discretized energy on {m} bins")));
    }
    Ok(BigFloat::from_f64(e, 64))
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut css = 0.0;
    let mut theta = 0.0;
    for (i, ui) in u.iter().enumerate() {
        css += ui;
        let th = (css - 1.0) / (i + 1) as f64;
        if ui - th > 0.0 {
            theta = th;
        }
    }
    y.iter().map(|v| (v - theta).max(0.0)).collect()
}

/// Both sides of the s-weighted bilinear identity for a polynomial U, exactly:
/// (1/4) ∫_0^1 s [P1 P2 + 4 P3 P4] ds  and  (∫ U dω) ∫_0^1 s P4 ds, where
/// P1 = ∫ x U(sx) dω, P2 = ∫ y U'(sy) dω, P3 = ∫ U(sx) dω, P4 = ∫ U'(sy) dω.
pub fn bilinear_identity_sides(u: &[Rat]) -> (Rat, Rat) {
    let du = deriv(u);
    let p = |q: &[Rat], extra: usize| -> Vec<Rat> { q.iter().enumerate().map(|(k, c)| c * omega_moment(k + extra)).collect() };
    let (p1, p2, p3, p4) = (p(u, 1), p(&du, 1), p(u, 0), p(&du, 0));
    let mul = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
        let mut c = vec![Rat::zero(); (a.len() + b.len()).saturating_sub(1)];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        c
    };
    // ∫_0^1 s q(s) ds
    let int1 = |q: &[Rat]| -> Rat { q.iter().enumerate().map(|(i, c)| c / ri(i as i64 + 2)).sum() };
    let lhs = (int1(&mul(&p1, &p2)) + ri(4) * int1(&mul(&p3, &p4))) / ri(4);
    let mean: Rat = p3.iter().cloned().sum();
    let rhs = mean * int1(&p4);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn bf(x: &BigFloat) -> f64 {
        x.to_f64()
    }

    #[test]
    fn moments() {
        assert_eq!(cheb_moments(&[ri(0), ri(0), ri(0), ri(0), ri(1)], 4), vec![ri(6), ri(0), ri(4), ri(0), ri(1)]);
        assert_eq!(cheb_moments(&[ri(0), ri(1)], 3), vec![ri(0), ri(1), ri(0), ri(0)]);
        assert_eq!(cheb_moments(&[ri(1)], 2), vec![ri(1), ri(0), ri(0)]);
    }

    #[test]
    fn gaussian_and_quartics() {
        let bits = DEFAULT_BITS;
        let g = Potential::perturbed(&[]).unwrap();
        let r = equilibrium(&g, bits, 8).unwrap();
        let tol = 1e-30;
        assert!((bf(&r.c) - 1.0).abs() < tol && r.b.is_zero());
        let three_q = BigFloat::from_rat(&rat(3, 4), bits);
        assert!(r.i_v.sub(&three_q).abs().to_f64() < 1e-60);
        assert!(density(&g, &r.c, &r.b, &BigFloat::zero(bits)).sub(&BigFloat::one(bits).div(&BigFloat::pi(bits))).abs().to_f64() < 1e-60);

        let q = Potential::monomial(4, ri(1)).unwrap();
        let r = equilibrium(&q, bits, 8).unwrap();
        let c = BigFloat::from_i64(3, bits).powf(&BigFloat::from_rat(&rat(-1, 4), bits));
        assert!(r.c.sub(&c).abs().to_f64() < 1e-40);
        let iv = BigFloat::from_i64(3, bits).ln().div(&BigFloat::from_i64(4, bits)).add(&BigFloat::from_rat(&rat(3, 8), bits));
        assert!(r.i_v.sub(&iv).abs().to_f64() < 1e-40);
        // ψ = c³(u² + 2)
        let p = psi_poly(&q, &r.c, &r.b);
        let c3 = r.c.powi(3);
        assert!(p[0].sub(&c3.mul(&BigFloat::from_i64(2, bits))).abs().to_f64() < 1e-40);
        assert!(p[2].sub(&c3).abs().to_f64() < 1e-40);

        let q = Potential::quartic(ri(1), ri(1)).unwrap();
        let r = equilibrium(&q, bits, 8).unwrap();
        let c2 = BigFloat::from_i64(13, bits).sqrt().sub(&BigFloat::one(bits)).div(&BigFloat::from_i64(6, bits));
        assert!(r.c.sub(&c2.sqrt()).abs().to_f64() < 1e-40);
        assert!((bf(&r.c) - 0.658983).abs() < 1e-6);
        assert!(r.support_ok && r.hessian_negative_definite());
        let m = density_mass(&q, &r.c, &r.b);
        assert!(m.sub(&BigFloat::one(bits)).abs().to_f64() < 1e-30);
        let mq = density_mass_quadrature(&q, &r.c, &r.b, 8);
        assert!(mq.sub(&BigFloat::one(bits)).abs().to_f64() < 1e-30);
        let alt = planar_energy_alt(&q, &r.c, &r.b);
        assert!(alt.sub(&r.i_v).abs().to_f64() < 1e-30);
        let mom = energy_by_moments(&q, &r.c, &r.b);
        assert!(mom.sub(&r.i_v).abs().to_f64() < 1e-30);
    }

    #[test]
    fn support_failures() {
        let bits = DEFAULT_BITS;
        let q = Potential::quartic(ri(-3), ri(1)).unwrap();
        let (c, b) = solve_endpoints(&q, (BigFloat::one(bits), BigFloat::zero(bits))).unwrap();
        assert!(!full_support_test(&q, &c, &b, 64));
        let q = Potential::quartic(ri(-2), ri(1)).unwrap();
        let (c, b) = solve_endpoints(&q, (BigFloat::one(bits), BigFloat::zero(bits))).unwrap();
        let rep = support_check(&q, &c, &b, 64);
        assert!(!rep.ok && rep.boundary, "{}", rep.min_psi.to_f64());
    }

    #[test]
    fn non_even_potential() {
        // V = x²/2 - x³/30 + x⁴/20 has b != 0
        let v = Potential::raw(vec![ri(0), ri(0), rat(1, 2), rat(-1, 30), rat(1, 20)]).unwrap();
        let bits = DEFAULT_BITS;
        let r = equilibrium(&v, bits, 4).unwrap();
        let (i1, i2) = endpoint_integrals(&v, &r.c, &r.b);
        assert!((bf(&i1) - 2.0).abs() < 1e-29 && bf(&i2).abs() < 1e-29);
        assert!(!r.b.is_zero());
        let mom = energy_by_moments(&v, &r.c, &r.b);
        assert!(mom.sub(&r.i_v).abs().to_f64() < 1e-30);
        assert!(planar_energy_alt(&v, &r.c, &r.b).sub(&r.i_v).abs().to_f64() < 1e-30);
        assert!(density_mass(&v, &r.c, &r.b).sub(&BigFloat::one(bits)).abs().to_f64() < 1e-30);
    }

    #[test]
    fn energy_of_moments_examples() {
        let b = |r: Rat| BigFloat::from_rat(&r, 128);
        let e = energy_of_moments(&[b(ri(1)), b(ri(0)), b(rat(-1, 2))], &[b(ri(1)), b(ri(0)), b(rat(1, 2))]);
        assert!(e.sub(&b(rat(3, 4))).abs().to_f64() < 1e-35);
    }

    #[test]
    fn arcsine() {
        let b = |x: f64| BigFloat::from_f64(x, 128);
        assert!(arcsine_potential(&b(1.0)).is_zero());
        assert!(arcsine_potential(&b(2.0)).is_zero());
        assert!((arcsine_potential(&b(2.5)).to_f64() - 2f64.ln()).abs() < 1e-15);
        for x in [2.5, -3.0, 7.0] {
            assert!((log_potential_quadrature(x) - arcsine_potential(&b(x)).to_f64()).abs() < 1e-10);
        }
        for x in [0.0, 0.3, -1.7, 1.99] {
            assert!(log_potential_quadrature(x).abs() < 1e-10, "{x}: {}", log_potential_quadrature(x));
        }
    }

    #[test]
    fn bilinear_identity() {
        for k in 0..=8 {
            let mut u = vec![Rat::zero(); k + 1];
            u[k] = ri(1);
            let (l, r) = bilinear_identity_sides(&u);
            assert_eq!(l, r);
        }
        let (l, r) = bilinear_identity_sides(&[ri(1), ri(1)]);
        assert_eq!((l.clone(), r), (rat(1, 2), rat(1, 2)));
        let (l, r) = bilinear_identity_sides(&[ri(3), rat(-1, 2), ri(2), ri(1), rat(5, 3), ri(0), ri(-7)]);
        assert_eq!(l, r);
    }

    #[test]
    fn discretized_gaussian() {
        let g = Potential::perturbed(&[]).unwrap();
        let e = discretized_minimizer(&g, (-2.4, 2.4, 300), 3000).unwrap().to_f64();
        assert!((e - 0.75).abs() < 1e-3, "{e}");
    }
}
