//! Coefficient asymptotics of F0 for every extreme kind:
//! f_n ~ c t0^-n n^(-7/2) (1 + d_1/n + d_2/n^2 + ...).
//!
//! t0 is located on the derived equation of R (or of sigma), the branch is
//! expanded at t0 in rho = (1 - t/t0)^(1/2), the F0 integrand is formed on that
//! expansion and transferred. When t0 has degree at most 4 the whole chain
//! runs in Q(t0); otherwise in high precision floats.

use super::exact::{algebraic_f0_with, algebraic_r_sigma};
use super::puiseux::{bivar_on_series, puiseux_expand, t_of_rho, Sign};
use super::singularity::{dominant_singularity, Singularity};
use super::transfer::{transfer, Transfer};
use super::{Approx, AsymError};
use crate::algebra::field::{poly_derivative, poly_gcd};
use crate::algebra::numfield::Quad;
use crate::algebra::rat::ri;
use crate::algebra::{BigFloat, BivarPoly, Field, NumberField, NumberFieldElem, Poly, Rat};
use crate::closed_forms::derive::{derive, KindAlgebra};
use crate::closed_forms::ExtremeKind;
use crate::planar::{edge_extreme_online, extreme_series};
use crate::series::{Grading, USeries};
use std::sync::Arc;

/// Values in Q(t0), present when t0 has degree at most 4.
#[derive(Clone, Debug)]
pub struct ExactAsym {
    pub field: Arc<NumberField>,
    pub r0: NumberFieldElem,
    /// c^2 pi
    pub stokes_sq_pi: NumberFieldElem,
    pub corrections: Vec<NumberFieldElem>,
}

#[derive(Clone, Debug)]
pub struct AsymExpansion {
    pub kind: ExtremeKind,
    pub t0: BigFloat,
    pub t0_minimal_poly: Poly,
    pub t0_interval: (Rat, Rat),
    pub r0: BigFloat,
    pub rate: BigFloat,
    pub exponent: Rat,
    pub stokes: BigFloat,
    pub stokes_sq_pi: BigFloat,
    pub corrections: Vec<BigFloat>,
    /// Positive candidates the branch passed without becoming singular.
    pub skipped: Vec<BigFloat>,
    pub track_residual: f64,
    pub exact: Option<ExactAsym>,
    pub bits: usize,
}

impl AsymExpansion {
    /// c t0^-n n^(-7/2) (1 + sum d_l n^-l) with the first `m` corrections.
    pub fn value(&self, n: u64, m: usize) -> BigFloat {
        let b = self.bits;
        let nb = BigFloat::from_i64(n as i64, b);
        let inv = BigFloat::one(b).div(&nb);
        let mut corr = BigFloat::one(b);
        let mut p = BigFloat::one(b);
        for d in self.corrections.iter().take(m) {
            p = p.mul(&inv);
            corr = corr.add(&d.mul(&p));
        }
        let pow = self.rate.ln().mul(&nb).exp();
        let alg = nb.powf(&BigFloat::from_rat(&self.exponent, b));
        self.stokes.mul(&pow).mul(&alg).mul(&corr)
    }
    pub fn to_json(&self) -> serde_json::Value {
        let f = |x: &BigFloat| x.to_sci(20);
        let mut v = serde_json::json!({
            "kind": self.kind.tag(),
            "t0": f(&self.t0),
            "t0_minimal_poly": self.t0_minimal_poly.fmt_var("t"),
            "rate": f(&self.rate),
            "exponent": self.exponent.to_string(),
            "C": f(&self.stokes),
            "C2_pi": f(&self.stokes_sq_pi),
            "corrections": self.corrections.iter().map(f).collect::<Vec<_>>(),
            "R0": f(&self.r0),
            "skipped": self.skipped.iter().map(f).collect::<Vec<_>>(),
        });
        if let Some(e) = &self.exact {
            v["exact"] = serde_json::json!({
                "R0": e.r0.residue.fmt_var("t0"),
                "C2_pi": e.stokes_sq_pi.residue.fmt_var("t0"),
                "corrections": e.corrections.iter().map(|d| d.residue.fmt_var("t0")).collect::<Vec<_>>(),
            });
        }
        v
    }
}

const STUB_LEN: usize = 12;

/// Taylor stubs of R and sigma. Infinite edge kinds come straight from the
/// series pipeline; the rest from the derived equations, checked against the
/// multivariate pipeline on its first coefficients.
fn stubs(alg: &KindAlgebra) -> Result<(Vec<Rat>, Vec<Rat>), AsymError> {
    let kind = alg.kind;
    if kind.grading() == Grading::Edge && kind != ExtremeKind::Mixed34Edge {
        let (r, s) = edge_extreme_online(kind, 2 * STUB_LEN + 1);
        let sig = (0..STUB_LEN).map(|k| s.coeff_u(2 * k as i64 + 1)).collect();
        return Ok((r.t_coeffs(STUB_LEN), sig));
    }
    let (r, sig) = algebraic_r_sigma(alg, STUB_LEN)?;
    let check = 5;
    let (rp, sp, _) = extreme_series(kind, check as u32);
    let rp = rp.t_coeffs(check + 1);
    if rp[..] != r[..check + 1] {
        return Err(AsymError::StubInconsistent(format!("R from the equation {:?} vs series {:?}", &r[..check + 1], rp)));
    }
    if alg.p_sigma.is_some() {
        let spv: Vec<Rat> = (0..check).map(|k| sp.coeff_u(2 * k as i64 + 1)).collect();
        if spv[..] != sig[..check] {
            return Err(AsymError::StubInconsistent("sigma from the equation disagrees with the series".into()));
        }
    }
    Ok((r, sig))
}

fn quad_series<F: Approx>(coeffs: &[Quad<F>], prec: i64) -> USeries<Quad<F>> {
    USeries::from_vec(0, coeffs.to_vec(), prec, coeffs[0].zero_like())
}

/// Puiseux data of R (and sigma) at t0, in F(s).
struct Local<F: Approx> {
    r: USeries<Quad<F>>,
    sigma: Option<USeries<Quad<F>>>,
    t: USeries<Quad<F>>,
}

fn local<F: Approx>(alg: &KindAlgebra, t0: &F, r0: &F, sigma0: Option<&F>, order: usize) -> Result<Local<F>, AsymError> {
    let prec = order as i64 + 1;
    match (sigma0, &alg.p_sigma, &alg.r_from_sigma) {
        (Some(s0), Some(ps), Some((a, b))) => {
            let e = puiseux_expand(ps, t0, s0, order, Sign::Negative)?;
            let sig = quad_series(&e.coeffs, prec);
            let tq = t_of_rho(&Quad::embed(t0.clone(), &e.alpha), prec);
            let av = bivar_on_series(a, &tq, &sig);
            let bv = bivar_on_series(b, &tq, &sig);
            let r = bv.div(&av).map_err(|e| AsymError::Derive(e.to_string()))?.neg();
            let bits = 256;
            if !r.coeff_u(0).sub(&Quad::embed(r0.clone(), &e.alpha)).negligible(&r0.approx(bits)) {
                return Err(AsymError::Derive("R from sigma does not meet R0".into()));
            }
            Ok(Local { r, sigma: Some(sig), t: tq })
        }
        (None, _, _) => {
            let e = puiseux_expand(&alg.p_r, t0, r0, order, Sign::Negative)?;
            let tq = t_of_rho(&Quad::embed(t0.clone(), &e.alpha), prec);
            Ok(Local { r: quad_series(&e.coeffs, prec), sigma: None, t: tq })
        }
        _ => Err(AsymError::Derive("sigma route needs a relation linear in R".into())),
    }
}

/// Local expansion of the transfer integrand and the shifts (s1, s2) with
/// g_n = (n + s1)(n + s2) f_n.
fn integrand<F: Approx>(kind: ExtremeKind, loc: &Local<F>) -> Result<(Vec<Quad<F>>, (i64, i64)), AsymError> {
    let prec = loc.r.prec();
    match kind.grading() {
        Grading::Edge => {
            // Q = (R^2 + 2 t R sigma^2 - 1)/2, q_n = n(n+1) f_n
            let mut q = loc.r.mul(&loc.r);
            if let Some(s) = &loc.sigma {
                q = q.add(&loc.t.mul(&loc.r).mul(&s.mul(s)).scale_rat(&ri(2)));
            }
            let one = loc.r.zero_elem().one_like();
            let q = q.add_const(&one.neg()).scale_rat(&Rat::new(1.into(), 2.into()));
            Ok(((0..prec).map(|k| q.coeff_u(k)).collect(), (0, 1)))
        }
        Grading::Face => {
            // log(R/R0); [t^n] log R = (n+1)(n+2) f_n
            let r0 = loc.r.coeff_u(0);
            let unit = loc.r.scale(&r0.one_like().div(&r0));
            // in floats R0/R0 need not be exactly one
            let mut c: Vec<Quad<F>> = (0..prec).map(|k| unit.coeff_u(k)).collect();
            c[0] = r0.one_like();
            let l = quad_series(&c, prec)
                .log().map_err(|e| AsymError::Derive(e.to_string()))?;
            Ok(((0..prec).map(|k| l.coeff_u(k)).collect(), (1, 2)))
        }
    }
}

fn run<F: Approx>(alg: &KindAlgebra, t0: &F, r0: &F, sigma0: Option<&F>, m: usize, bits: usize) -> Result<Transfer<F>, AsymError> {
    let order = 2 * m + 3;
    let loc = local(alg, t0, r0, sigma0, order)?;
    let (g, shifts) = integrand(alg.kind, &loc)?;
    transfer(&g, t0, shifts, m, bits)
}

/// The double root of p(theta, y) in Q(theta) next to `approx`.
fn exact_double_root(p: &BivarPoly, field: &Arc<NumberField>, approx: &BigFloat, bits: usize) -> Result<NumberFieldElem, AsymError> {
    let f: Vec<NumberFieldElem> = p.coeffs_y().iter().map(|c| NumberFieldElem::new(field, c)).collect();
    let g = poly_gcd(&f, &poly_derivative(&f));
    if g.len() != 2 {
        return Err(AsymError::Derive(format!("gcd of degree {} at t0", g.len() as i64 - 1)));
    }
    let y0 = g[0].neg();
    let d = y0.to_big(bits).sub(approx).abs().to_f64();
    if d > 1e-20 * (1.0 + approx.abs().to_f64()) {
        return Err(AsymError::Derive("exact double root disagrees with the tracked value".into()));
    }
    Ok(y0)
}

/// Dominant singularity of the kind: located on the R equation, and for
/// kinds with a sigma route also on the sigma equation; both must agree.
pub fn kind_singularity(alg: &KindAlgebra, bits: usize) -> Result<(Singularity, Option<Singularity>), AsymError> {
    let (r_stub, s_stub) = stubs(alg)?;
    let sr = dominant_singularity(&alg.p_r, &r_stub, bits)?;
    let ss = match &alg.p_sigma {
        Some(ps) if alg.r_from_sigma.is_some() => {
            let s = dominant_singularity(ps, &s_stub, bits)?;
            if s.t0.sub(&sr.t0).abs().to_f64() > 1e-30 {
                return Err(AsymError::Derive(format!("R and sigma singular at {} and {}", sr.t0.to_f64(), s.t0.to_f64())));
            }
            Some(s)
        }
        _ => None,
    };
    Ok((sr, ss))
}

pub fn asymptotic_expansion(kind: ExtremeKind, m: usize, bits: usize) -> Result<AsymExpansion, AsymError> {
    let alg = derive(kind).map_err(|e| AsymError::Derive(e.to_string()))?;
    let (sr, ss) = kind_singularity(&alg, bits)?;
    let deg = sr.minimal_poly.degree().unwrap_or(0);
    let mut out = AsymExpansion {
        kind,
        t0: sr.t0.clone(),
        t0_minimal_poly: sr.minimal_poly.clone(),
        t0_interval: sr.interval.clone(),
        r0: sr.y0.clone(),
        rate: BigFloat::one(bits).div(&sr.t0),
        exponent: Rat::new((-7).into(), 2.into()),
        stokes: BigFloat::zero(bits),
        stokes_sq_pi: BigFloat::zero(bits),
        corrections: vec![],
        skipped: sr.skipped.clone(),
        track_residual: sr.track_residual,
        exact: None,
        bits,
    };
    if deg <= 4 {
        let field = NumberField::new(&sr.minimal_poly, sr.interval.clone());
        let t0 = NumberFieldElem::theta(&field);
        let r0 = exact_double_root(&alg.p_r, &field, &sr.y0, bits)?;
        let s0 = match (&ss, &alg.p_sigma) {
            (Some(s), Some(ps)) => Some(exact_double_root(ps, &field, &s.y0, bits)?),
            _ => None,
        };
        let tr = run(&alg, &t0, &r0, s0.as_ref(), m, bits)?;
        out.stokes = tr.stokes;
        out.stokes_sq_pi = tr.stokes_sq_pi.to_big(bits);
        out.corrections = tr.corrections.iter().map(|d| d.to_big(bits)).collect();
        out.t0 = t0.to_big(bits);
        out.rate = tr.rate.to_big(bits);
        out.r0 = r0.to_big(bits);
        out.exact = Some(ExactAsym { field, r0, stokes_sq_pi: tr.stokes_sq_pi, corrections: tr.corrections });
    } else {
        let s0 = ss.as_ref().map(|s| s.y0.clone());
        let tr = run(&alg, &sr.t0, &sr.y0, s0.as_ref(), m, bits)?;
        out.stokes = tr.stokes;
        out.stokes_sq_pi = tr.stokes_sq_pi;
        out.corrections = tr.corrections;
        out.rate = tr.rate;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CheckRow {
    pub n: u64,
    pub exact: Rat,
    pub approx: BigFloat,
    pub rel_error: f64,
    /// rel_error * n^(M+1)
    pub scaled: f64,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub kind: ExtremeKind,
    pub m: usize,
    pub rows: Vec<CheckRow>,
    /// Slopes of log(rel_error) against log(n) between consecutive rows.
    pub slopes: Vec<f64>,
}

impl CheckReport {
    pub fn max_scaled(&self) -> f64 {
        self.rows.iter().map(|r| r.scaled).fold(0.0, f64::max)
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.tag(),
            "M": self.m,
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "n": r.n,
                "f_n": crate::algebra::rat::rat_to_f64(&r.exact),
                "asymptotic": r.approx.to_sci(16),
                "rel_error": r.rel_error,
                "scaled": r.scaled,
            })).collect::<Vec<_>>(),
            "slopes": self.slopes,
        })
    }
}

/// Compare the expansion truncated after d_M with exact f_n at each n.
/// Exact values come from the derived equations by power-series Newton.
pub fn asymptotic_check(kind: ExtremeKind, ns: &[u64], m: usize, bits: usize) -> Result<CheckReport, AsymError> {
    let alg = derive(kind).map_err(|e| AsymError::Derive(e.to_string()))?;
    let nmax = *ns.iter().max().ok_or(AsymError::NoSingularity)? as usize;
    let f = algebraic_f0_with(&alg, nmax + 1)?;
    let e = asymptotic_expansion(kind, m.max(1), bits)?;
    check_against(&e, &f, ns, m)
}

pub fn check_against(e: &AsymExpansion, f: &[Rat], ns: &[u64], m: usize) -> Result<CheckReport, AsymError> {
    if e.corrections.len() < m {
        return Err(AsymError::OrderTooHigh { requested: m, available: e.corrections.len() });
    }
    let bits = e.bits;
    let mut rows = Vec::new();
    for &n in ns {
        let exact = f.get(n as usize).cloned().ok_or(AsymError::TooFewInitial(n as usize))?;
        let a = e.value(n, m);
        let fx = BigFloat::from_rat(&exact, bits);
        let rel = a.sub(&fx).div(&fx).abs().to_f64();
        rows.push(CheckRow { n, exact, approx: a, rel_error: rel, scaled: rel * (n as f64).powi(m as i32 + 1) });
    }
    let slopes = rows
        .windows(2)
        .map(|w| (w[1].rel_error.ln() - w[0].rel_error.ln()) / ((w[1].n as f64).ln() - (w[0].n as f64).ln()))
        .collect();
    Ok(CheckReport { kind: e.kind, m, rows, slopes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn edge_all_constants() {
        // f_n = 3^n C(2n, n) / (n (n+1) (n+2)): c = 1/sqrt(pi), and the same
        // corrections as 2^(n-1) 3 C(2n, n) / (2n (n+1) (n+2))
        let e = asymptotic_expansion(ExtremeKind::EdgeAll, 3, 256).unwrap();
        let x = e.exact.as_ref().unwrap();
        assert_eq!(x.stokes_sq_pi.as_rat(), Some(ri(1)));
        let d: Vec<Rat> = x.corrections.iter().map(|d| d.as_rat().unwrap()).collect();
        assert_eq!(d, vec![rat(-25, 8), rat(945, 128), rat(-16275, 1024)]);
        assert!((e.rate.to_f64() - 12.0).abs() < 1e-12);
    }
}
