//! Real root isolation with Sturm sequences and exact rational bisection.
//! Approximations are produced only at the end, from the isolating interval.

use super::bigfloat::BigFloat;
use super::poly::Poly;
use super::rat::{rat, Rat};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub approx: BigFloat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].divrem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for q in seq {
        let v = q.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Number of distinct real roots in the half-open interval (a, b].
pub fn count_roots(seq: &[Poly], a: &Rat, b: &Rat) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

/// Cauchy bound on the absolute value of the roots.
pub fn root_bound(p: &Poly) -> Rat {
    let l = p.lead().abs();
    let m = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(Rat::zero);
    Rat::from_integer(1.into()) + m / l
}

/// All real roots of `p` in the closed interval, each with a disjoint isolating
/// interval and an approximation carrying `bits` of precision.
pub fn isolate_real_roots(p: &Poly, interval: (Rat, Rat), bits: usize) -> Vec<RootInterval> {
    assert!(!p.is_zero(), "isolate_real_roots on the zero polynomial");
    let q = p.square_free();
    if q.degree() == Some(0) {
        return vec![];
    }
    let seq = sturm_sequence(&q);
    let (a, b) = interval;
    let mut out = Vec::new();
    if q.eval(&a).is_zero() {
        out.push((a.clone(), a.clone()));
    }
    let mut stack = vec![(a, b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if q.eval(&hi).is_zero() {
                out.push((hi.clone(), hi));
            } else {
                out.push((lo, hi));
            }
            continue;
        }
        let mut mid = (&lo + &hi) / Rat::from_integer(2.into());
        let mut k = 3i64;
        while q.eval(&mid).is_zero() {
            mid = &lo + (&hi - &lo) * rat(1, k);
            k += 1;
        }
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out.into_iter()
        .map(|(lo, hi)| refine(&q, &seq, lo, hi, bits))
        .collect()
}

/// Bisect an isolating interval of a square-free polynomial until its width is
/// below 2^-bits relative to the root size.
pub fn refine(q: &Poly, seq: &[Poly], mut lo: Rat, mut hi: Rat, bits: usize) -> RootInterval {
    if lo == hi {
        let approx = BigFloat::from_rat(&lo, bits.max(64));
        return RootInterval { lo, hi, approx };
    }
    let two = Rat::from_integer(2.into());
    if q.eval(&lo).is_zero() {
        // lo is a neighbouring root; move it up without losing ours
        let mut step = (&hi - &lo) / &two;
        loop {
            let cand = &lo + &step;
            if !q.eval(&cand).is_zero() && count_roots(seq, &cand, &hi) == 1 {
                lo = cand;
                break;
            }
            step = step / &two;
        }
    }
    let mut slo = q.eval(&lo).is_positive();
    // the root lies in (lo, hi]; the value at lo is nonzero
    let scale = {
        let m = lo.abs().max(hi.abs());
        if m.is_zero() {
            rat(1, 1)
        } else {
            m
        }
    };
    let tol = scale * super::rat::rat_pow(&two, -(bits as i64 + 4));
    let mut exact = None;
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        let v = q.eval(&mid);
        if v.is_zero() {
            exact = Some(mid);
            break;
        }
        if v.is_positive() == slo {
            lo = mid;
            slo = v.is_positive();
        } else {
            hi = mid;
        }
    }
    if let Some(m) = exact {
        return RootInterval { lo: m.clone(), hi: m.clone(), approx: BigFloat::from_rat(&m, bits.max(64)) };
    }
    let mid = (&lo + &hi) / &two;
    RootInterval { lo, hi, approx: BigFloat::from_rat(&mid, bits.max(64)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::ri;

    #[test]
    fn linear_root() {
        let p = Poly::from_i64(&[1, -8]);
        let r = isolate_real_roots(&p, (ri(0), ri(1)), 128);
        assert_eq!(r.len(), 1);
        assert!(r[0].is_exact());
        assert_eq!(r[0].lo, rat(1, 8));
    }

    #[test]
    fn face_all_quartic() {
        let p = Poly::from_i64(&[-11, -128, 41088, -20480, 4096]);
        let r = isolate_real_roots(&p, (ri(0), ri(1)), 256);
        assert_eq!(r.len(), 1);
        let want = BigFloat::parse("0.0180827901833", 256);
        assert!(r[0].approx.rel_err(&want).to_f64() < 1e-11);
    }

    #[test]
    fn face_even_quintic() {
        // -5t^2 + 96t^3 - 96t^4 + 32t^5: zero root plus one positive real root
        let p = Poly::from_i64(&[0, 0, -5, 96, -96, 32]);
        let r = isolate_real_roots(&p.strip_x(), (ri(0), ri(1)), 256);
        assert_eq!(r.len(), 1);
        assert!((r[0].approx.to_f64() - 0.0550592).abs() < 1e-6);
    }
}
