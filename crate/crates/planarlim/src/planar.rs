//! The formal (R, S) system and the planar free energy F0.
//!
//! R and S solve
//!   S = sum_n a_n M_{n-1}(S, R),   R = 1 + (1/2) sum_n a_n B_{n-1}(S, R)
//! with M_m = sum_k C(m,2k) C(2k,k) S^(m-2k) R^k and B_m = M_{m+1} - S M_m.
//! The solver fills in one filtration degree at a time; the explicit binomial
//! form is kept separately for the fixed-point residual check.

use crate::algebra::rat::{binom_r, is_nonneg_integer, ri, Rat};
use crate::closed_forms::ExtremeKind;
use crate::series::{grade_specialize, Filtration, Grading, MultiSeries, Partition, SeriesError, USeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const DEFAULT_WEIGHT_CAP: u32 = 14;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum PlanarError {
    #[error("weight cap {cap} too small, need at least {need}")]
    CapTooSmall { cap: u32, need: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Debug)]
pub struct RSPair {
    pub r: MultiSeries,
    pub s: MultiSeries,
}

#[derive(Clone, Debug)]
pub struct PlanarResult {
    pub f0: MultiSeries,
    pub f0_edge: USeries,
    pub f0_face: USeries,
    pub rs: RSPair,
}

/// Which couplings are switched on.
#[derive(Clone, Debug, PartialEq)]
pub enum VarSet {
    All,
    Even,
    Only(Vec<u32>),
}

impl VarSet {
    pub fn vars(&self, filt: Filtration, cap: u32) -> Vec<u32> {
        let lo = if filt == Filtration::Face { 3 } else { 1 };
        (lo..=cap + 2)
            .filter(|&j| filt.var_degree(j) <= cap)
            .filter(|j| match self {
                VarSet::All => true,
                VarSet::Even => j % 2 == 0,
                VarSet::Only(v) => v.contains(j),
            })
            .collect()
    }
}

fn times_var(x: &MultiSeries, j: u32) -> MultiSeries {
    MultiSeries::var_in(x.weight_cap(), x.filtration(), j).mul(x)
}

/// sum_{i=lo..=d} a[i] * b[d-i] over homogeneous components.
fn conv(a: &[MultiSeries], b: &[MultiSeries], d: usize, lo: usize, cap: u32, filt: Filtration) -> MultiSeries {
    let mut acc = MultiSeries::zero_in(cap, filt);
    for i in lo..=d {
        if a[i].is_empty() || b[d - i].is_empty() {
            continue;
        }
        acc = acc.add(&a[i].mul(&b[d - i]));
    }
    acc
}

/// Degree-by-degree solution in the given filtration and variable set.
pub fn solve_rs_in(cap: u32, filt: Filtration, vars: &VarSet) -> RSPair {
    let vs = vars.vars(filt, cap);
    let zero = MultiSeries::zero_in(cap, filt);
    let mmax = vs.iter().map(|&j| j as usize).max().unwrap_or(1);
    let mut r = vec![MultiSeries::constant(cap, filt, Rat::one())];
    let mut s = vec![zero.clone()];
    // T = S^2 - 4R by components
    let mut tt = vec![MultiSeries::constant(cap, filt, ri(-4))];
    // m[k][d]: component d of M_k, for k = 0..=mmax
    let mut m: Vec<Vec<MultiSeries>> = (0..=mmax)
        .map(|k| {
            let c = if k % 2 == 0 { binom_r(k as i64, (k / 2) as i64) } else { Rat::zero() };
            vec![MultiSeries::constant(cap, filt, c)]
        })
        .collect();
    for d in 1..=cap as usize {
        let mut rd = zero.clone();
        let mut sd = zero.clone();
        for &j in &vs {
            let dj = filt.var_degree(j) as usize;
            if dj > d {
                continue;
            }
            let e = d - dj;
            let k = (j - 1) as usize;
            sd = sd.add(&times_var(&m[k][e], j));
            // B_k[e] = M_{k+1}[e] - sum_{i>=1} S[i] M_k[e-i]
            let b = m[k + 1][e].sub(&conv(&s, &m[k], e, 1, cap, filt));
            rd = rd.add(&times_var(&b, j));
        }
        r.push(rd.scale(&Rat::new(1.into(), 2.into())));
        s.push(sd);
        tt.push(conv(&s, &s, d, 0, cap, filt).sub(&r[d].scale(&ri(4))));
        for k in 0..=mmax {
            let c = match k {
                0 => zero.clone(),
                1 => s[d].clone(),
                _ => {
                    let a = conv(&s, &m[k - 1], d, 1, cap, filt).scale(&ri(2 * k as i64 - 1));
                    let b = conv(&tt, &m[k - 2], d, 0, cap, filt).scale(&ri(k as i64 - 1));
                    a.sub(&b).scale(&Rat::new(1.into(), (k as i64).into()))
                }
            };
            m[k].push(c);
        }
    }
    let sum = |v: &[MultiSeries]| v.iter().fold(zero.clone(), |a, x| a.add(x));
    RSPair { r: sum(&r), s: sum(&s) }
}

pub fn solve_rs(weight_cap: u32) -> RSPair {
    solve_rs_in(weight_cap, Filtration::Weight, &VarSet::All)
}

/// Binomial tables C(m,2k) C(2k,k), indexed [m][k].
fn moment_table(mmax: usize) -> Vec<Vec<Rat>> {
    (0..=mmax)
        .map(|m| (0..=m / 2).map(|k| binom_r(m as i64, 2 * k as i64) * binom_r(2 * k as i64, k as i64)).collect())
        .collect()
}

/// One application of the map (R, S) -> (H1, H2) using the explicit sums.
pub fn h_map(rs: &RSPair, vars: &VarSet) -> RSPair {
    let cap = rs.r.weight_cap();
    let filt = rs.r.filtration();
    let vs = vars.vars(filt, cap);
    let mmax = vs.iter().map(|&j| j as usize).max().unwrap_or(1);
    let tab = moment_table(mmax);
    let one = MultiSeries::constant(cap, filt, Rat::one());
    let mut spow = vec![one.clone()];
    let mut rpow = vec![one.clone()];
    for i in 1..=mmax {
        spow.push(spow[i - 1].mul(&rs.s));
        rpow.push(rpow[i - 1].mul(&rs.r));
    }
    let moment = |mm: usize| {
        let mut acc = MultiSeries::zero_in(cap, filt);
        for (k, c) in tab[mm].iter().enumerate() {
            acc = acc.add(&spow[mm - 2 * k].mul(&rpow[k]).scale(c));
        }
        acc
    };
    let mut r = one.clone();
    let mut s = MultiSeries::zero_in(cap, filt);
    for &j in &vs {
        let k = (j - 1) as usize;
        let mk = moment(k);
        s = s.add(&times_var(&mk, j));
        let b = moment(k + 1).sub(&rs.s.mul(&mk));
        r = r.add(&times_var(&b, j).scale(&Rat::new(1.into(), 2.into())));
    }
    RSPair { r, s }
}

/// Plain fixed-point iteration from (1, 0); exact after `cap` rounds.
pub fn solve_rs_iterated(cap: u32, filt: Filtration, vars: &VarSet) -> RSPair {
    let mut rs = RSPair {
        r: MultiSeries::constant(cap, filt, Rat::one()),
        s: MultiSeries::zero_in(cap, filt),
    };
    for _ in 0..cap {
        rs = h_map(&rs, vars);
    }
    rs
}

/// H(R) = 1 with H(R) = R - (1/2) sum_n a_{2n} C(2n,n) R^n, by plain iteration.
pub fn solve_r_even(weight_cap: u32) -> MultiSeries {
    let cap = weight_cap;
    let one = MultiSeries::one(cap);
    let mut r = one.clone();
    for _ in 0..=cap / 2 {
        let mut next = one.clone();
        let mut pw = one.clone();
        for n in 1..=cap / 2 {
            pw = pw.mul(&r);
            let c = binom_r(2 * n as i64, n as i64) / ri(2);
            next = next.add(&times_var(&pw, 2 * n).scale(&c));
        }
        r = next;
    }
    r
}

/// Every coefficient of R and S is a nonnegative integer.
pub fn check_integrality(rs: &RSPair) -> bool {
    rs.r.terms().values().chain(rs.s.terms().values()).all(is_nonneg_integer)
}

/// (2 R S^2 + R^2 - 1) / 2
pub fn q_tilde(rs: &RSPair) -> MultiSeries {
    let cap = rs.r.weight_cap();
    let one = MultiSeries::constant(cap, rs.r.filtration(), Rat::one());
    rs.r
        .mul(&rs.s)
        .mul(&rs.s)
        .scale(&ri(2))
        .add(&rs.r.mul(&rs.r))
        .sub(&one)
        .scale(&Rat::new(1.into(), 2.into()))
}

/// Edge route: F0_lambda = Q_lambda / (k (k+1)) with k = weight/2.
pub fn f0_from_rs_edge(rs: &RSPair) -> MultiSeries {
    let q = q_tilde(rs);
    let mut f = MultiSeries::zero_in(q.weight_cap(), q.filtration());
    for (p, c) in q.terms() {
        let w = p.weight();
        assert!(w % 2 == 0, "odd-weight term {p} in the edge integrand");
        let k = (w / 2) as i64;
        assert!(k > 0, "constant term survived in the edge integrand");
        f.add_term(p.clone(), c / ri(k * (k + 1)));
    }
    f
}

/// Face route on partitions without a_1, a_2: F0_lambda = (log R)_lambda /
/// ((k+1)(k+2)) with k = weight/2 - #parts.
pub fn f0_from_rs_face(rs: &RSPair) -> Result<MultiSeries, SeriesError> {
    let rf = rs.r.filter(|p| p.mult(1) == 0 && p.mult(2) == 0);
    let l = rf.log()?;
    let mut f = MultiSeries::zero_in(l.weight_cap(), l.filtration());
    for (p, c) in l.terms() {
        let w = p.weight() as i64;
        assert!(w % 2 == 0, "odd-weight term {p} in log R");
        let k = w / 2 - p.num_parts() as i64;
        f.add_term(p.clone(), c / ri((k + 1) * (k + 2)));
    }
    Ok(f)
}

/// F0 in any filtration and variable set, computed by the edge route and
/// asserted against the face route.
pub fn f0_multivariate_in(cap: u32, filt: Filtration, vars: &VarSet) -> (MultiSeries, RSPair) {
    let rs = solve_rs_in(cap, filt, vars);
    let f = f0_from_rs_edge(&rs);
    let g = f0_from_rs_face(&rs).expect("R has constant term 1");
    let restricted = f.filter(|p| p.mult(1) == 0 && p.mult(2) == 0);
    assert_eq!(restricted, g, "edge and face routes disagree");
    (f, rs)
}

pub fn f0_multivariate(weight_cap: u32) -> PlanarResult {
    let (f0, rs) = f0_multivariate_in(weight_cap, Filtration::Weight, &VarSet::All);
    let cap = weight_cap as i64;
    let f0_edge = grade_specialize(&f0, Grading::Edge, |_| Rat::one(), cap + 1).expect("edge grading");
    // a face-degree d monomial has weight at most 3d
    let f0_face = grade_specialize(&f0, Grading::Face, |j| if j >= 3 { Rat::one() } else { Rat::zero() }, cap / 3 + 1)
        .expect("face grading");
    PlanarResult { f0, f0_edge, f0_face, rs }
}

/// F0_e(t) = (1/t) int_0^t (t-s) (2 R S^2 + R^2 - 1)/(2s) ds, term by term.
pub fn f0_edge(r: &USeries, s: &USeries) -> Result<USeries, SeriesError> {
    let one = USeries::constant(Rat::one(), r.prec());
    let q = r.mul(s).mul(s).scale(&ri(2)).add(&r.mul(r)).sub(&one).scale(&Rat::new(1.into(), 2.into()));
    Ok(q.shift(-2).antiderivative_t()?.antiderivative_t()?.shift(-2))
}

/// F0_f(t) = (1/t^2) int_0^t (t-s) log R(s) ds.
pub fn f0_face(r: &USeries) -> Result<USeries, SeriesError> {
    Ok(r.log()?.antiderivative_t()?.antiderivative_t()?.shift(-4))
}

/// Univariate (R, S, F0) of an extreme kind from the multivariate solver,
/// through t^t_cap. Edge kinds use the weight filtration, face kinds the face
/// filtration, each restricted to the kind's variables.
pub fn extreme_series(kind: ExtremeKind, t_cap: u32) -> (USeries, USeries, USeries) {
    let cap = 2 * t_cap;
    let filt = kind.filtration();
    let vars = VarSet::Only(kind.vars(cap));
    let rs = solve_rs_in(cap, filt, &vars);
    let value = |j: u32| if kind.includes(j) { Rat::one() } else { Rat::zero() };
    let uc = cap as i64 + 1;
    let r = grade_specialize(&rs.r, kind.grading(), value, uc).expect("grading");
    let s = grade_specialize(&rs.s, kind.grading(), value, uc).expect("grading");
    let f = match kind.grading() {
        Grading::Edge => f0_edge(&r, &s),
        Grading::Face => f0_face(&r),
    }
    .expect("well-formed extreme series");
    (r, s, f)
}

/// Edge extreme kinds to high order without the multivariate ring.
///
/// With W = sum_m u^m M_m = D^(-1/2), D = (1 - uS)^2 - 4u^2 R, the system
/// becomes S = u (W - P_M) and R - 1 = ((1 - uS) W - 1 - u P_B)/2, where
/// P_M, P_B hold the moments below the first switched-on valency. All
/// coefficients are integers, so the recursion runs in BigInt.
pub fn edge_extreme_online(kind: ExtremeKind, u_cap: usize) -> (USeries, USeries) {
    assert_eq!(kind.grading(), Grading::Edge);
    assert!(kind != ExtremeKind::Mixed34Edge, "mixed kind has no W form");
    let n0 = kind.n0() as usize;
    let even = kind.is_even();
    let n = u_cap;
    let z = BigInt::zero();
    let mut s = vec![z.clone(); n];
    let mut r = vec![z.clone(); n];
    let mut w = vec![z.clone(); n];
    let mut d = vec![z.clone(); n];
    let mut s2 = vec![z.clone(); n];
    r[0] = BigInt::one();
    w[0] = BigInt::one();
    d[0] = BigInt::one();
    let at = |v: &Vec<BigInt>, k: i64| if k < 0 { BigInt::zero() } else { v[k as usize].clone() };
    for k in 1..n {
        let ki = k as i64;
        d[k] = -at(&s, ki - 1) * 2 + at(&s2, ki - 2) - at(&r, ki - 2) * 4;
        let mut acc = BigInt::zero();
        for j in 1..=k {
            acc += BigInt::from(2 * (k - j) + j) * &d[j] * &w[k - j];
        }
        let (q, rem) = (-acc).div_rem(&BigInt::from(2 * k));
        assert!(rem.is_zero(), "W coefficient not integral");
        w[k] = q;
        // moments below the first valency: M_0 = 1, M_1 = S, M_2 = S^2 + 2R
        // and B_0 = 0, B_1 = 2R, B_2 = 4SR
        if !even {
            let pm = |m: i64| -> BigInt {
                let mut x = BigInt::zero();
                if n0 > 1 && m == 0 {
                    x += 1;
                }
                if n0 > 2 {
                    x += at(&s, m - 1);
                }
                if n0 > 3 {
                    x += at(&s2, m - 2) + at(&r, m - 2) * 2;
                }
                x
            };
            s[k] = &w[k - 1] - pm(ki - 1);
        }
        let mut sw = BigInt::zero();
        for j in 0..k {
            sw += &s[j] * &w[k - 1 - j];
        }
        let mut pb = BigInt::zero();
        let m = ki - 1;
        if n0 > 2 {
            pb += at(&r, m - 1) * 2;
        }
        if n0 > 3 {
            let mut sr = BigInt::zero();
            for i in 0..=(m - 2).max(-1) {
                sr += at(&s, i) * at(&r, m - 2 - i);
            }
            pb += sr * 4;
        }
        let num = &w[k] - sw - pb;
        let (q, rem) = num.div_rem(&BigInt::from(2));
        assert!(rem.is_zero(), "R coefficient not integral");
        r[k] = q;
        let mut acc2 = BigInt::zero();
        for i in 0..=k {
            acc2 += &s[i] * &s[k - i];
        }
        s2[k] = acc2;
    }
    let conv = |v: Vec<BigInt>| USeries::from_coeffs(0, v.into_iter().map(Rat::from_integer).collect(), n as i64);
    (conv(r), conv(s))
}

/// Edge-extreme F0 coefficients f_1..f_{t_cap} from the online route.
pub fn edge_extreme_fn(kind: ExtremeKind, t_cap: usize) -> Vec<Rat> {
    let (r, s) = edge_extreme_online(kind, 2 * t_cap + 1);
    let f = f0_edge(&r, &s).expect("edge integrand");
    (1..=t_cap as i64).map(|k| f.coeff_t(k)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: u32,
    pub sum_all: Rat,
    pub sum_even: Rat,
    pub bound_ok: bool,
}

/// Sums of c_lambda over |lambda| = 2n (all partitions, even parts only),
/// tested against 12^n and 8^n together with positivity of every c_lambda.
pub fn coefficient_bound_report(f0: &MultiSeries, n: u32) -> Result<BoundReport, PlanarError> {
    if f0.filtration() != Filtration::Weight || f0.weight_cap() < 2 * n {
        return Err(PlanarError::CapTooSmall { cap: f0.weight_cap(), need: 2 * n });
    }
    let mut sum_all = Rat::zero();
    let mut sum_even = Rat::zero();
    let mut positive = true;
    for (p, c) in f0.terms() {
        if p.weight() != 2 * n {
            continue;
        }
        positive &= !c.is_negative();
        sum_all += c;
        if p.all_even() {
            sum_even += c;
        }
    }
    let bound_ok = positive
        && sum_all <= Rat::from_integer(BigInt::from(12).pow(n))
        && sum_even <= Rat::from_integer(BigInt::from(8).pow(n));
    Ok(BoundReport { n, sum_all, sum_even, bound_ok })
}

/// a_n -> a_n r^n, coefficientwise.
pub fn rescale(f: &MultiSeries, r: &Rat) -> MultiSeries {
    let mut out = MultiSeries::zero_in(f.weight_cap(), f.filtration());
    for (p, c) in f.terms() {
        out.add_term(p.clone(), c * crate::algebra::rat::rat_pow(r, p.weight() as i64));
    }
    out
}

/// Printed-table style rows: (partition, coefficient) by weight.
pub fn table_rows(f: &MultiSeries) -> Vec<(Partition, Rat)> {
    f.sorted_terms()
}

/// Coefficient as f64 (table printing).
pub fn approx(c: &Rat) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn small_coefficients() {
        let rs = solve_rs(6);
        assert_eq!(rs.r.coefficient(&p(&[2])), ri(1));
        assert_eq!(rs.s.coefficient(&p(&[3])), ri(2));
        assert_eq!(rs.r.coefficient(&p(&[4])), ri(3));
        assert_eq!(rs.s.coefficient(&p(&[2, 1])), ri(1));
        assert_eq!(rs.s.coefficient(&p(&[3, 1, 1])), ri(1));
        assert_eq!(rs.r.coefficient(&p(&[2, 2])), ri(1));
        assert!(check_integrality(&rs));
    }

    #[test]
    fn iterated_matches_online() {
        let a = solve_rs(7);
        let b = solve_rs_iterated(7, Filtration::Weight, &VarSet::All);
        assert_eq!(a.r, b.r);
        assert_eq!(a.s, b.s);
        let h = h_map(&a, &VarSet::All);
        assert_eq!(h.r, a.r);
        assert_eq!(h.s, a.s);
    }

    #[test]
    fn even_solver_matches() {
        let r = solve_r_even(10);
        let rs = solve_rs_in(10, Filtration::Weight, &VarSet::Even);
        assert_eq!(r, rs.r);
        assert!(rs.s.is_empty());
    }

    #[test]
    fn f0_edge_extremes() {
        let (_, _, f) = extreme_series(ExtremeKind::EdgeAll, 5);
        let want = [rat(1, 1), rat(9, 4), ri(9), rat(189, 4), rat(1458, 5)];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(&f.coeff_t(k as i64 + 1), w);
        }
        assert_eq!(edge_extreme_fn(ExtremeKind::EdgeAll, 5), want.to_vec());
        let (_, _, f) = extreme_series(ExtremeKind::EdgeEven, 5);
        let want = [rat(1, 2), rat(3, 4), ri(2), ri(7), rat(144, 5)];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(&f.coeff_t(k as i64 + 1), w);
        }
    }

    #[test]
    fn online_agrees_with_multivariate() {
        for kind in [ExtremeKind::EdgeAll, ExtremeKind::EdgeEven, ExtremeKind::EdgeEvenMin4, ExtremeKind::EdgeMin2, ExtremeKind::EdgeMin3] {
            let (r, s, _) = extreme_series(kind, 5);
            let (r2, s2) = edge_extreme_online(kind, 11);
            assert_eq!(r, r2, "{kind} R");
            assert_eq!(s, s2, "{kind} S");
        }
    }

    #[test]
    fn face_extremes() {
        let (_, _, f) = extreme_series(ExtremeKind::FaceEven, 3);
        assert_eq!(f.coeff_t(1), rat(1, 2));
        assert_eq!(f.coeff_t(2), rat(47, 24));
        assert_eq!(f.coeff_t(3), rat(49, 4));
        let (_, _, f) = extreme_series(ExtremeKind::FaceAll, 3);
        assert_eq!(f.coeff_t(1), rat(7, 6));
        assert_eq!(f.coeff_t(2), rat(109, 8));
        assert_eq!(f.coeff_t(3), rat(15631, 60));
    }

    #[test]
    fn bound_report() {
        let f = f0_multivariate(4).f0;
        let b = coefficient_bound_report(&f, 1).unwrap();
        assert_eq!(b.sum_all, ri(1));
        assert_eq!(b.sum_even, rat(1, 2));
        assert_eq!(coefficient_bound_report(&f, 2).unwrap().sum_all, rat(9, 4));
        assert!(coefficient_bound_report(&f, 3).is_err());
    }
}
