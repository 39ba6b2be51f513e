//! Exact Taylor coefficients of the algebraic branches and of F0, by Newton
//! iteration on truncated power series in t.

use super::AsymError;
use crate::algebra::rat::ri;
use crate::algebra::{BivarPoly, Rat};
use crate::closed_forms::derive::{derive, KindAlgebra};
use crate::closed_forms::ExtremeKind;
use crate::series::Grading;
use num_traits::{One, Zero};

pub fn mul_trunc(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            c[i + j] += x * y;
        }
    }
    c
}

pub fn inv_trunc(a: &[Rat], n: usize) -> Option<Vec<Rat>> {
    if a.is_empty() || a[0].is_zero() {
        return None;
    }
    let mut b = vec![Rat::zero(); n];
    b[0] = a[0].recip();
    for k in 1..n {
        let mut acc = Rat::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &b[k - j];
        }
        b[k] = -acc * &b[0];
    }
    Some(b)
}

/// log of a series with constant term 1.
pub fn log_trunc(a: &[Rat], n: usize) -> Vec<Rat> {
    assert!(a[0] == Rat::one(), "log needs constant term 1");
    let da: Vec<Rat> = (1..a.len().min(n + 1)).map(|k| &a[k] * ri(k as i64)).collect();
    let q = mul_trunc(&da, &inv_trunc(a, n).unwrap(), n);
    let mut out = vec![Rat::zero(); n];
    for k in 1..n {
        out[k] = &q[k - 1] / ri(k as i64);
    }
    out
}

/// Branch of p(t, y) = 0 with y(0) = y0, through t^(n-1). Requires p_y(0, y0) != 0.
pub fn newton_branch(p: &BivarPoly, y0: &Rat, n: usize) -> Result<Vec<Rat>, AsymError> {
    let py = p.d_y();
    let mut y = vec![y0.clone()];
    if !p.residual_series(&y, 1)[0].is_zero() {
        return Err(AsymError::StubInconsistent(format!("p(0, {y0}) != 0")));
    }
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        y.resize(prec, Rat::zero());
        let f = p.residual_series(&y, prec);
        let d = py.residual_series(&y, prec);
        let dinv = inv_trunc(&d, prec).ok_or_else(|| AsymError::StubInconsistent("p_y vanishes at t = 0".into()))?;
        let step = mul_trunc(&f, &dinv, prec);
        for (yk, sk) in y.iter_mut().zip(step.iter()) {
            *yk -= sk;
        }
    }
    Ok(y)
}

/// f_0 .. f_(n-1) of F0 for the kind, from the derived equations.
pub fn algebraic_f0(kind: ExtremeKind, n: usize) -> Result<Vec<Rat>, AsymError> {
    let alg = derive(kind).map_err(|e| AsymError::Derive(e.to_string()))?;
    algebraic_f0_with(&alg, n)
}

pub fn algebraic_r_sigma(alg: &KindAlgebra, n: usize) -> Result<(Vec<Rat>, Vec<Rat>), AsymError> {
    let r = newton_branch(&alg.p_r, &Rat::one(), n)?;
    let sigma = match &alg.p_sigma {
        None => vec![Rat::zero(); n],
        Some(ps) => {
            // sigma(0) from the system at t = 0 with R = 1
            let s0 = sigma_at_zero(alg)?;
            newton_branch(ps, &s0, n)?
        }
    };
    Ok((r, sigma))
}

fn sigma_at_zero(alg: &KindAlgebra) -> Result<Rat, AsymError> {
    // the relations at t = 0, R = 1 are linear or have an obvious small root
    let cands: Vec<Rat> = (-4..=4).map(ri).collect();
    for c in cands {
        let ok = alg.system.iter().all(|q| q.eval_rat(&[Rat::zero(), c.clone(), Rat::one()]).is_zero());
        let ps = alg.p_sigma.as_ref().unwrap();
        if ok && ps.residual_series(&[c.clone()], 1)[0].is_zero() && !ps.d_y().residual_series(&[c.clone()], 1)[0].is_zero() {
            return Ok(c);
        }
    }
    Err(AsymError::StubInconsistent("no simple root for sigma(0)".into()))
}

pub fn algebraic_f0_with(alg: &KindAlgebra, n: usize) -> Result<Vec<Rat>, AsymError> {
    let m = n + 2;
    let (r, sigma) = algebraic_r_sigma(alg, m)?;
    let mut f = vec![Rat::zero(); n];
    match alg.kind.grading() {
        Grading::Edge => {
            // Q = (R^2 + 2 t R sigma^2 - 1)/2, n(n+1) f_n = q_n
            let r2 = mul_trunc(&r, &r, m);
            let rs2 = mul_trunc(&r, &mul_trunc(&sigma, &sigma, m), m);
            for k in 1..n {
                let q = (&r2[k] + ri(2) * &rs2[k - 1]) / ri(2);
                f[k] = q / ri((k * (k + 1)) as i64);
            }
        }
        Grading::Face => {
            let l = log_trunc(&r, m);
            for k in 0..n {
                f[k] = &l[k] / ri(((k + 1) * (k + 2)) as i64);
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn edge_all_from_equations() {
        let f = algebraic_f0(ExtremeKind::EdgeAll, 8).unwrap();
        assert_eq!(f[1..].to_vec(), vec![ri(1), rat(9, 4), ri(9), rat(189, 4), rat(1458, 5), rat(8019, 4), rat(104247, 7)]);
        let f = algebraic_f0(ExtremeKind::FaceAll, 4).unwrap();
        assert_eq!(f[1..].to_vec(), vec![rat(7, 6), rat(109, 8), rat(15631, 60)]);
    }
}
