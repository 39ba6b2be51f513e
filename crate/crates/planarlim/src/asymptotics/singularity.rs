//! Locating the dominant singularity of an algebraic branch.
//!
//! Candidates are the positive roots of the discriminant and of the leading
//! coefficient. The branch, pinned at small t by its Taylor stub, is followed
//! along the real axis with a predictor-corrector; at the first candidate where
//! it meets another branch it is singular. The stub has nonnegative
//! coefficients, so by Pringsheim that point is also of smallest modulus;
//! nonreal candidates of the same modulus are reported as a tie.

use super::AsymError;
use crate::algebra::factor::{complex_roots, minimal_polynomial_of_root};
use crate::algebra::roots::{isolate_real_roots, root_bound};
use crate::algebra::{BigFloat, BivarPoly, Poly, Rat};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct Singularity {
    pub t0: BigFloat,
    /// Irreducible polynomial of t0 with an isolating interval.
    pub minimal_poly: Poly,
    pub interval: (Rat, Rat),
    /// Branch value at t0.
    pub y0: BigFloat,
    /// Positive candidates passed on the way where the branch stays regular.
    pub skipped: Vec<BigFloat>,
    /// Largest |P| / (1 + |y|) accepted while tracking.
    pub track_residual: f64,
}

/// Branch follower for p(t, y) = 0.
pub struct Tracker<'a> {
    p: &'a BivarPoly,
    py: BivarPoly,
    pt: BivarPoly,
    pyy: BivarPoly,
    bits: usize,
    pub max_residual: f64,
}

impl<'a> Tracker<'a> {
    pub fn new(p: &'a BivarPoly, bits: usize) -> Tracker<'a> {
        let py = p.d_y();
        Tracker { p, pt: p.d_t(), pyy: py.d_y(), py, bits, max_residual: 0.0 }
    }
    fn tol(&self, y: &BigFloat) -> BigFloat {
        let b = self.bits;
        BigFloat::from_i64(2, b).powi(-(b as i64 - 24)).mul(&BigFloat::one(b).add(&y.abs()))
    }
    /// Newton on y at fixed t.
    pub fn newton(&self, t: &BigFloat, y: &BigFloat) -> Option<BigFloat> {
        let mut y = y.clone();
        let b = self.bits;
        // near a double root rounding caps the accuracy at about eps / p_y,
        // so a stalled step below 2^(-b/2) counts as converged
        let loose = BigFloat::from_i64(2, b).powi(-(b as i64 / 2));
        let mut prev: Option<BigFloat> = None;
        for _ in 0..80 {
            let d = self.py.eval_big(t, &y);
            if d.is_zero() {
                return None;
            }
            let step = self.p.eval_big(t, &y).div(&d);
            y = y.sub(&step);
            if !y.is_finite() {
                return None;
            }
            let a = step.abs();
            if a.sub(&self.tol(&y)).is_negative() {
                return Some(y);
            }
            if let Some(p) = &prev {
                let stalled = !a.mul(&BigFloat::from_i64(2, b)).sub(p).is_negative();
                if stalled && a.sub(&loose.mul(&BigFloat::one(b).add(&y.abs()))).is_negative() {
                    return Some(y);
                }
            }
            prev = Some(a);
        }
        None
    }
    /// Follow the branch through (t, y) up to t_to.
    pub fn track(&mut self, t: &BigFloat, y: &BigFloat, t_to: &BigFloat) -> Result<BigFloat, AsymError> {
        let b = self.bits;
        let mut t = t.clone();
        let mut y = y.clone();
        let mut h = t_to.sub(&t).div(&BigFloat::from_i64(32, b));
        let floor = t_to.sub(&t).abs().mul(&BigFloat::from_i64(2, b).powi(-(b as i64 / 2)));
        let quarter = BigFloat::from_rat(&Rat::new(1.into(), 4.into()), b);
        let mut steps = 0usize;
        while t.sub(t_to).is_negative() {
            steps += 1;
            if steps > 200_000 {
                return Err(AsymError::Tracking("step budget exhausted".into()));
            }
            let remaining = t_to.sub(&t);
            let tn = if h.sub(&remaining).is_negative() { t.add(&h) } else { t_to.clone() };
            let slope = self.pt.eval_big(&t, &y).div(&self.py.eval_big(&t, &y)).neg();
            let pred = y.add(&slope.mul(&tn.sub(&t)));
            let ok = match self.newton(&tn, &pred) {
                Some(yn) => {
                    let jump = yn.sub(&pred).abs();
                    let moved = yn.sub(&y).abs().add(&self.tol(&y).mul(&BigFloat::from_i64(1 << 20, b)));
                    if jump.sub(&moved.mul(&quarter)).is_negative() {
                        Some(yn)
                    } else {
                        None
                    }
                }
                None => None,
            };
            match ok {
                Some(yn) => {
                    let r = self.p.eval_big(&tn, &yn).abs().div(&BigFloat::one(b).add(&yn.abs())).to_f64();
                    self.max_residual = self.max_residual.max(r);
                    if yn.abs().to_f64() > 1e30 {
                        return Err(AsymError::Tracking(format!("branch escapes to infinity near t = {}", tn.to_f64())));
                    }
                    t = tn;
                    y = yn;
                    h = h.mul(&BigFloat::from_rat(&Rat::new(3.into(), 2.into()), b));
                }
                None => {
                    h = h.div(&BigFloat::from_i64(2, b));
                    if h.sub(&floor).is_negative() {
                        return Err(AsymError::Tracking(format!("step underflow at t = {}", t.to_f64())));
                    }
                }
            }
        }
        Ok(y)
    }
    /// |p_y / p_yy| at the point, the half-distance to a colliding root.
    pub fn collision_gap(&self, t: &BigFloat, y: &BigFloat) -> BigFloat {
        let d2 = self.pyy.eval_big(t, y);
        if d2.is_zero() {
            return BigFloat::from_i64(1, self.bits);
        }
        self.py.eval_big(t, y).div(&d2).abs()
    }
    /// The double root of p(t0, .) next to y: Newton on p_y.
    pub fn double_root(&self, t0: &BigFloat, y: &BigFloat) -> Option<BigFloat> {
        let mut y = y.clone();
        for _ in 0..200 {
            let d = self.pyy.eval_big(t0, &y);
            if d.is_zero() {
                return None;
            }
            let step = self.py.eval_big(t0, &y).div(&d);
            y = y.sub(&step);
            if step.abs().sub(&self.tol(&y)).is_negative() {
                return Some(y);
            }
        }
        None
    }
}

pub fn stub_value(stub: &[Rat], t: &BigFloat) -> BigFloat {
    let b = t.prec();
    let mut acc = BigFloat::zero(b);
    for c in stub.iter().rev() {
        acc = acc.mul(t).add(&BigFloat::from_rat(c, b));
    }
    acc
}

/// Check the stub against p and return a point on the branch at t_s.
pub fn anchor(p: &BivarPoly, stub: &[Rat], t_s: &BigFloat, tracker: &Tracker) -> Result<BigFloat, AsymError> {
    if stub.len() < 10 {
        return Err(AsymError::StubInconsistent(format!("stub has {} coefficients, need 10", stub.len())));
    }
    let res = p.residual_series(stub, stub.len());
    if let Some(k) = res.iter().position(|c| !c.is_zero()) {
        return Err(AsymError::StubInconsistent(format!("residual {} at t^{k}", res[k])));
    }
    let ys = stub_value(stub, t_s);
    let y = tracker.newton(t_s, &ys).ok_or_else(|| AsymError::StubInconsistent("Newton failed at the anchor".into()))?;
    if y.sub(&ys).abs().to_f64() > 1e-4 * (1.0 + y.abs().to_f64()) {
        return Err(AsymError::StubInconsistent(format!("stub {} vs root {}", ys.to_f64(), y.to_f64())));
    }
    Ok(y)
}

struct Candidate {
    approx: BigFloat,
    lo: Rat,
    hi: Rat,
    source: Poly,
}

fn positive_roots(q: &Poly, bits: usize) -> Vec<Candidate> {
    if q.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let q = q.square_free().strip_x();
    if q.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let bound = root_bound(&q);
    let tiny = Rat::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 40));
    isolate_real_roots(&q, (tiny, bound), bits)
        .into_iter()
        .map(|r| Candidate { approx: r.approx, lo: r.lo, hi: r.hi, source: q.clone() })
        .collect()
}

pub fn dominant_singularity(p: &BivarPoly, stub: &[Rat], bits: usize) -> Result<Singularity, AsymError> {
    if stub.iter().any(|c| c.is_negative()) {
        return Err(AsymError::StubInconsistent("stub has negative coefficients".into()));
    }
    let disc = p.discriminant_y();
    let lead = p.coeff_y(p.deg_y());
    let mut cands = positive_roots(&disc, bits);
    cands.extend(positive_roots(&lead, bits));
    cands.sort_by(|a, b| a.approx.to_f64().partial_cmp(&b.approx.to_f64()).unwrap());
    let first = cands.first().ok_or(AsymError::NoSingularity)?;
    let mut tracker = Tracker::new(p, bits);
    let mut t = first.approx.div(&BigFloat::from_i64(8, bits));
    let mut y = anchor(p, stub, &t, &tracker)?;
    let eps = BigFloat::from_i64(10, bits).powi(-24);
    let one = BigFloat::one(bits);
    let mut skipped = Vec::new();
    for c in &cands {
        let target = c.approx.mul(&one.sub(&eps));
        if !t.sub(&target).is_negative() {
            continue;
        }
        y = tracker.track(&t, &y, &target)?;
        t = target;
        let gap = tracker.collision_gap(&t, &y);
        let singular = gap.to_f64() < 1e-8 * (1.0 + y.abs().to_f64());
        if !singular {
            skipped.push(c.approx.clone());
            // step past the candidate before moving on
            let past = c.approx.mul(&one.add(&eps));
            y = tracker.track(&t, &y, &past)?;
            t = past;
            continue;
        }
        let t0 = c.approx.clone();
        let y0 = tracker.double_root(&t0, &y).ok_or(AsymError::NonSquareRoot)?;
        let minimal_poly = minimal_polynomial_of_root(&c.source, &c.lo, &c.hi);
        // nonreal candidates on the same circle
        for q in [&disc, &lead] {
            if q.degree().unwrap_or(0) == 0 {
                continue;
            }
            for z in complex_roots(&q.square_free(), bits) {
                let im = z.im.abs().to_f64();
                let m = z.modulus();
                if im > 1e-20 && m.sub(&t0).abs().to_f64() < 1e-20 * t0.to_f64() {
                    return Err(AsymError::MultipleDominant);
                }
            }
        }
        return Ok(Singularity {
            t0,
            minimal_poly,
            interval: (c.lo.clone(), c.hi.clone()),
            y0,
            skipped,
            track_residual: tracker.max_residual,
        });
    }
    Err(AsymError::NoSingularity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::expr::poly_of;

    #[test]
    fn edge_all_radius() {
        let p = BivarPoly::from_mpoly(poly_of("9*R^2*t - 12*R*t - R + 4*t + 1", &["t", "R"]));
        let e = crate::closed_forms::expr::parse("(1+12*t-sqrt(1-12*t))/(18*t)").unwrap();
        let stub = crate::closed_forms::expr::taylor(&e, 24).unwrap().t_coeffs(12);
        let res = p.residual_series(&stub, 12);
        assert!(res.iter().all(|x| x.is_zero()), "{res:?}");
        let s = dominant_singularity(&p, &stub, 256).unwrap();
        assert!((s.t0.to_f64() - 1.0 / 12.0).abs() < 1e-15);
        assert!((s.y0.to_f64() - 4.0 / 3.0).abs() < 1e-12);
    }
}
