//! Puiseux expansion at a square-root branch point by undetermined
//! coefficients: y = sum a_k rho^k with rho = (1 - t/t0)^(1/2).
//!
//! Put t = t0 (1 - rho^2). The rho^2 coefficient of p(t, y(rho)) fixes
//! a_1^2 = 2 t0 p_t / p_yy; afterwards a_k enters first at rho^(k+1), linearly,
//! through p_yy a_1 a_k. Coefficients live in F(s), s^2 = a_1^2: even-index
//! ones have no s part, odd-index ones are multiples of s.

use super::{Approx, AsymError};
use crate::algebra::numfield::Quad;
use crate::algebra::{BivarPoly, Field, Poly};
use crate::series::USeries;

#[derive(Clone, Debug)]
pub struct PuiseuxExpansion<F: Field> {
    pub t0: F,
    /// a_1^2
    pub alpha: F,
    /// a_0 .. a_order
    pub coeffs: Vec<Quad<F>>,
}

impl<F: Approx> PuiseuxExpansion<F> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
    /// As a truncated series in rho.
    pub fn series(&self) -> USeries<Quad<F>> {
        let z = self.coeffs[0].zero_like();
        USeries::from_vec(0, self.coeffs.clone(), self.coeffs.len() as i64, z)
    }
    pub fn approx(&self, bits: usize) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.approx(bits).to_f64()).collect()
    }
}

/// Value of a univariate polynomial with rational coefficients on a series.
pub fn poly_on_series<F: Field>(p: &Poly, x: &USeries<F>) -> USeries<F> {
    let z = x.zero_elem();
    let mut acc = USeries::zero_with(z.clone(), x.prec());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_const(&z.from_rat_like(c));
    }
    acc
}

/// p(t(rho), y(rho)) by Horner in y.
pub fn bivar_on_series<F: Field>(p: &BivarPoly, t: &USeries<F>, y: &USeries<F>) -> USeries<F> {
    let cs = p.coeffs_y();
    let mut acc = USeries::zero_with(t.zero_elem(), t.prec().min(y.prec()));
    for c in cs.iter().rev() {
        acc = acc.mul(y).add(&poly_on_series(c, t));
    }
    acc
}

/// t0 (1 - rho^2) as a series over F(s).
pub fn t_of_rho<F: Field>(t0: &Quad<F>, prec: i64) -> USeries<Quad<F>> {
    let z = t0.zero_like();
    let mut c = vec![z.clone(); prec.max(3) as usize];
    c[0] = t0.clone();
    c[2] = t0.neg();
    USeries::from_vec(0, c, prec, z)
}

/// Sign of a_1: negative for a branch with nonnegative Taylor coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
}

/// Expansion of the branch of p through (t0, y0) to rho^order.
pub fn puiseux_expand<F: Approx>(p: &BivarPoly, t0: &F, y0: &F, order: usize, sign: Sign) -> Result<PuiseuxExpansion<F>, AsymError> {
    let bits = 256;
    let scale = y0.approx(bits).abs().add(&t0.approx(bits).abs());
    let v = p.eval(t0, y0);
    let vy = p.d_y().eval(t0, y0);
    if !v.negligible(&scale) || !vy.negligible(&scale) {
        return Err(AsymError::Derive("expansion point is not a double root".into()));
    }
    let vyy = p.d_y().d_y().eval(t0, y0);
    if vyy.negligible(&scale) {
        return Err(AsymError::NonSquareRoot);
    }
    let vt = p.d_t().eval(t0, y0);
    let alpha = t0.mul(&vt).scale(&crate::algebra::rat::ri(2)).div(&vyy);
    if alpha.negligible(&scale) || alpha.approx(bits).is_negative() {
        return Err(AsymError::NonSquareRoot);
    }
    let s = Quad::s(&alpha);
    let a1 = match sign {
        Sign::Negative => s.neg(),
        Sign::Positive => s,
    };
    let prec = order as i64 + 2;
    let emb = |x: &F| Quad::embed(x.clone(), &alpha);
    let tq = t_of_rho(&emb(t0), prec);
    let z = emb(&t0.zero_like());
    let mut coeffs = vec![emb(y0), a1.clone()];
    let lin = emb(&vyy).mul(&a1);
    for k in 2..=order {
        let mut c = coeffs.clone();
        c.push(z.clone());
        let y = USeries::from_vec(0, c, prec, z.clone());
        let r = bivar_on_series(p, &tq, &y).coeff_u(k as i64 + 1);
        coeffs.push(r.div(&lin).neg());
    }
    // the truncated expansion must annihilate p through rho^(order+1)
    let y = USeries::from_vec(0, coeffs.clone(), prec, z);
    let res = bivar_on_series(p, &tq, &y);
    for k in 0..=(order as i64 + 1) {
        if !res.coeff_u(k).negligible(&scale) {
            return Err(AsymError::Derive(format!("Puiseux residual at rho^{k}")));
        }
    }
    Ok(PuiseuxExpansion { t0: t0.clone(), alpha, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ri};
    use crate::algebra::Rat;
    use crate::closed_forms::expr::poly_of;

    #[test]
    fn edge_all_expansion() {
        let p = BivarPoly::from_mpoly(poly_of("9*R^2*t - 12*R*t - R + 4*t + 1", &["t", "R"]));
        let e = puiseux_expand(&p, &rat(1, 12), &rat(4, 3), 5, Sign::Negative).unwrap();
        // R = (1 + 12t - rho)/(18t) with 12t = 1 - rho^2: a1 = -2/3
        let a1 = &e.coeffs[1];
        let val: Rat = a1.y.clone() * a1.y.clone() * e.alpha.clone();
        assert_eq!(val, rat(4, 9));
        assert_eq!(a1.approx(128).to_f64(), -2.0 / 3.0);
        assert_eq!(e.coeffs[2].x, rat(2, 3));
        assert_eq!(e.coeffs[0].x, rat(4, 3));
        assert!(e.coeffs[3].x == ri(0));
    }
}
