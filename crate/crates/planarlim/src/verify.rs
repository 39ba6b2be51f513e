//! The acceptance suite, shared by `planarlim verify` and the `acceptance`
//! test target. Each check carries a pass/fail status and a short detail line
//! with the evidence. Printed data that is known to be wrong is reported as an
//! expected failure next to a machine-checked corrected form.

use crate::algebra::binomial::{
    check_binomial_identity, check_zb_certificate, check_zb_certificate_corrected, bilinear_identity_monomial, zb_sum, Which,
};
use crate::algebra::rat::{parse_rat, rat, rat_pow, ri};
use crate::algebra::{BigFloat, BivarPoly, Rat};
use crate::asymptotics::analysis::check_against;
use crate::asymptotics::exact::algebraic_f0;
use crate::asymptotics::{asymptotic_expansion, AsymExpansion};
use crate::closed_forms::catalog::{catalog, fn_closed, recurrence_coeffs, PrintedAsym};
use crate::closed_forms::expr::{self, constant_value, eval_with, parse, taylor, to_mpoly};
use crate::closed_forms::ExtremeKind::{self, *};
use crate::equilibrium::{
    discretized_minimizer, equilibrium, bilinear_identity_sides, planar_energy, Potential, DEFAULT_BITS,
};
use crate::planar::{
    coefficient_bound_report, edge_extreme_fn, extreme_series, f0_multivariate, f0_multivariate_in, PlanarResult, VarSet,
};
use crate::series::{Filtration, MultiSeries, Partition, USeries};
use crate::wick_oracle::{connected_coefficients, genus0};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A printed statement that is wrong, reported with its corrected form.
    XFail,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::XFail => "XFAIL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub title: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(id: &str, title: &str, ok: bool, detail: String) -> Check {
        Check { id: id.into(), title: title.into(), status: if ok { Status::Pass } else { Status::Fail }, detail }
    }
    fn xfail(id: &str, title: &str, detail: String) -> Check {
        Check { id: id.into(), title: title.into(), status: Status::XFail, detail }
    }
    pub fn line(&self) -> String {
        format!("{:<5} {:<28} {} | {}", self.status.label(), self.id, self.title, self.detail)
    }
}

/// Checks that fail for reasons outside the implementation, with the reason.
pub const KNOWN_UNATTAINABLE: &[(&str, &str)] = &[
    (
        "5.edge-min3-printed-init",
        "the printed initial values of the edge-min3 recurrence carry f_5 = 138/5; the series has 139/5",
    ),
    (
        "6.mixed34-face",
        "the printed t0 = 0.02305646139 has 10 significant digits, so its rounding error alone is 1.6e-10 relative; the exact root 0.023056461386376 rounds to it",
    ),
    (
        "7.edge-all",
        "the printed edge-all constants (2/sqrt(pi), halved corrections) contradict the printed closed form; the derived values are 1/sqrt(pi) and the edge-even corrections",
    ),
    (
        "9.small-quartic",
        "the weight-14 partial sum stops at a4^3; the a4^4 term alone is about 2.5e-7, far above 1e-10",
    ),
    (
        "11.zb-second-printed",
        "the printed companion g of the second identity is off by the factor (l1+1)^2 (l2+1)^2",
    ),
];

pub fn known_reason(id: &str) -> Option<&'static str> {
    KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id).map(|(_, r)| *r)
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }
    /// Failures not covered by [`KNOWN_UNATTAINABLE`].
    pub fn unexpected_failures(&self) -> Vec<&Check> {
        self.failures().into_iter().filter(|c| known_reason(&c.id).is_none()).collect()
    }
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.line());
            s.push('\n');
        }
        let count = |st: Status| self.checks.iter().filter(|c| c.status == st).count();
        s.push_str(&format!(
            "summary: {} pass, {} fail ({} known), {} expected-fail annotations\n",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Fail) - self.unexpected_failures().len(),
            count(Status::XFail)
        ));
        s
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "id": c.id, "title": c.title, "status": c.status.label(), "detail": c.detail,
                        "known_reason": known_reason(&c.id),
                    })
                })
                .collect(),
        )
    }
    pub fn to_csv(&self) -> String {
        let mut s = String::from("status,id,title,detail\n");
        for c in &self.checks {
            let q = |x: &str| format!("\"{}\"", x.replace('"', "\"\""));
            s.push_str(&format!("{},{},{},{}\n", c.status.label(), c.id, q(&c.title), q(&c.detail)));
        }
        s
    }
}

fn rel(a: &BigFloat, b: &BigFloat) -> f64 {
    a.rel_err(b).to_f64()
}

fn abs_diff(a: &BigFloat, b: &BigFloat) -> f64 {
    a.sub(b).abs().to_f64()
}

fn big(s: &str, bits: usize) -> BigFloat {
    eval_with(&parse(s).expect("constant expression"), bits, &[]).expect("constant value")
}

// ---------------------------------------------------------------- 1

const TABLE_R: &str = include_str!("../tests/fixtures/table_R.txt");
const TABLE_S: &str = include_str!("../tests/fixtures/table_S.txt");
const TABLE_F0: &str = include_str!("../tests/fixtures/table_F0.txt");

/// Rows "coef<TAB>j^k j^k ..."; a bare "1" in the second column is the empty monomial.
pub fn parse_table(src: &str) -> Vec<(Partition, Rat)> {
    let mut out = Vec::new();
    for line in src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (c, parts) = line.split_once('\t').expect("two columns");
        let c = parse_rat(c.trim()).expect("coefficient");
        let parts = parts.trim();
        let p = if parts == "1" {
            Partition::empty()
        } else {
            let pairs: Vec<(u32, u32)> = parts
                .split_whitespace()
                .map(|w| {
                    let (j, k) = w.split_once('^').expect("j^k");
                    (j.parse().unwrap(), k.parse().unwrap())
                })
                .collect();
            Partition::from_pairs(&pairs)
        };
        out.push((p, c));
    }
    out
}

fn compare_table(name: &str, table: &[(Partition, Rat)], computed: &MultiSeries) -> (bool, String) {
    let mut wrong = Vec::new();
    for (p, c) in table {
        if computed.coefficient(p) != *c {
            wrong.push(format!("{p:?}"));
        }
    }
    // the other direction: every computed term up to the table's top weight is printed
    let top = table.iter().map(|(p, _)| p.weight()).max().unwrap_or(0);
    let printed: BTreeMap<&Partition, &Rat> = table.iter().map(|(p, c)| (p, c)).collect();
    let missing: Vec<String> = computed
        .terms()
        .iter()
        .filter(|(p, c)| p.weight() <= top && !c.is_zero() && !printed.contains_key(p))
        .map(|(p, _)| format!("{p:?}"))
        .collect();
    let ok = wrong.is_empty() && missing.is_empty();
    let mut d = format!("{name}: {} printed, top weight {top}", table.len());
    if !wrong.is_empty() {
        d.push_str(&format!(", mismatched {wrong:?}"));
    }
    if !missing.is_empty() {
        d.push_str(&format!(", computed but not printed {missing:?}"));
    }
    (ok, d)
}

fn criterion_1(res: &PlanarResult) -> Vec<Check> {
    let mut out = Vec::new();
    for (id, name, src, ser) in [
        ("1.table-R", "R", TABLE_R, &res.rs.r),
        ("1.table-S", "S", TABLE_S, &res.rs.s),
        ("1.table-F0", "F0", TABLE_F0, &res.f0),
    ] {
        let (ok, d) = compare_table(name, &parse_table(src), ser);
        out.push(Check::new(id, &format!("printed {name} table reproduced exactly at weight cap 10"), ok, d));
    }
    out
}

// ---------------------------------------------------------------- 2

fn criterion_2(res: &PlanarResult) -> Vec<Check> {
    let t = Instant::now();
    let map = match connected_coefficients(8, false) {
        Ok(m) => m,
        Err(e) => return vec![Check::new("2.oracle", "Wick oracle equals F0 up to weight 8", false, e.to_string())],
    };
    let g0 = genus0(&map);
    let secs = t.elapsed().as_secs_f64();
    let f0 = res.f0.truncate(8);
    let mut keys: Vec<&Partition> = g0.keys().collect();
    keys.extend(f0.terms().keys().filter(|p| !g0.contains_key(*p)));
    let bad: Vec<String> = keys
        .iter()
        .filter(|p| p.weight() <= 8 && g0.get(**p).cloned().unwrap_or_else(Rat::zero) != f0.coefficient(p))
        .map(|p| format!("{p:?}"))
        .collect();
    let ok = bad.is_empty() && secs < 60.0;
    vec![Check::new(
        "2.oracle",
        "Wick oracle genus-0 coefficients equal F0 up to weight 8",
        ok,
        format!("{} monomials compared, {} mismatches, oracle time {secs:.1} s (limit 60 s)", keys.len(), bad.len()),
    )]
}

// ---------------------------------------------------------------- 3, 4

fn printed_prefix(kind: ExtremeKind, upto: usize) -> Vec<(usize, Rat)> {
    catalog(kind).printed_series.into_iter().filter(|(n, _)| *n <= upto).collect()
}

fn series_vs_printed(kind: ExtremeKind, upto: usize, f: &USeries) -> (bool, String) {
    let printed = printed_prefix(kind, upto);
    let bad: Vec<usize> = printed.iter().filter(|(n, c)| f.coeff_t(*n as i64) != *c).map(|(n, _)| *n).collect();
    let shown: Vec<String> = (1..=upto).map(|n| f.coeff_t(n as i64).to_string()).collect();
    (bad.is_empty() && printed.len() >= upto - 1, format!("f_1..f_{upto} = {} ; mismatched n {bad:?}", shown.join(", ")))
}

fn criterion_3() -> Vec<Check> {
    let mut out = Vec::new();
    for (kind, upto) in [(EdgeAll, 7usize), (EdgeEven, 8)] {
        let (_, _, f) = extreme_series(kind, upto as u32);
        let (ok, mut d) = series_vs_printed(kind, upto, &f);
        // the online route must agree as well
        let online = edge_extreme_fn(kind, upto);
        let agree = (1..=upto).all(|n| online[n - 1] == f.coeff_t(n as i64));
        d.push_str(&format!(" ; online route agrees: {agree}"));
        out.push(Check::new(
            &format!("3.{}", kind.tag()),
            &format!("{} F0 series matches the printed series through t^{upto}", kind.tag()),
            ok && agree,
            d,
        ));
    }
    out
}

fn criterion_4() -> Vec<Check> {
    let mut out = Vec::new();
    for (kind, upto) in [(FaceEven, 10usize), (FaceAll, 6)] {
        let t = Instant::now();
        let (_, _, f) = extreme_series(kind, upto as u32);
        let (ok, d) = series_vs_printed(kind, upto, &f);
        out.push(Check::new(
            &format!("4.{}", kind.tag()),
            &format!("{} F0 from the multivariate R matches the printed series through t^{upto}", kind.tag()),
            ok,
            format!("{d} ; {:.1} s", t.elapsed().as_secs_f64()),
        ));
    }
    out
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Vec<Check> {
    let mut out = Vec::new();
    for kind in [EdgeEven, EdgeAll] {
        let n = 200usize;
        let series = edge_extreme_fn(kind, n);
        let rec = recurrence_coeffs(kind).map_err(|e| e.to_string()).and_then(|r| r.evaluate(n).map_err(|e| e.to_string()));
        let (ok, d) = match rec {
            Ok(rec) => {
                let mut bad = Vec::new();
                for k in 1..=n {
                    let c = fn_closed(kind, k as u64).expect("factorial formula");
                    if c != series[k - 1] || c != rec[k] {
                        bad.push(k);
                    }
                }
                (bad.is_empty(), format!("n = 1..{n}: factorial formula, recurrence and series disagree at {bad:?}"))
            }
            Err(e) => (false, e),
        };
        out.push(Check::new(
            &format!("5.{}", kind.tag()),
            "factorial formula, recurrence and series agree for n <= 200",
            ok,
            d,
        ));
    }
    for kind in [EdgeEvenMin4, EdgeMin2, EdgeMin3] {
        let n = 50usize;
        let mut f = vec![Rat::zero()];
        f.extend(edge_extreme_fn(kind, n));
        let rec = recurrence_coeffs(kind).expect("printed recurrence");
        let res = rec.residuals(&f);
        let nonzero: Vec<usize> = res.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, _)| i).collect();
        out.push(Check::new(
            &format!("5.{}-relation", kind.tag()),
            "series satisfies the printed recurrence for n <= 50",
            nonzero.is_empty() && !res.is_empty(),
            format!("{} relation instances, nonzero at {nonzero:?}", res.len()),
        ));
        let (ok, d) = match rec.evaluate(n) {
            Ok(v) => {
                let bad: Vec<usize> = (0..=n).filter(|&k| v[k] != f[k]).collect();
                let first = bad.first().map(|&k| format!(", first at n = {k}: {} vs series {}", v[k], f[k])).unwrap_or_default();
                (bad.is_empty(), format!("{} of {} values differ{first}", bad.len(), n + 1))
            }
            Err(e) => (false, e.to_string()),
        };
        out.push(Check::new(
            &format!("5.{}-printed-init", kind.tag()),
            "recurrence run from the printed initial values reproduces the series for n <= 50",
            ok,
            d,
        ));
    }
    out
}

// ---------------------------------------------------------------- 6, 7, 8

/// Expansions with three corrections for every kind, computed in parallel.
pub fn expansions(bits: usize) -> Vec<(ExtremeKind, Result<AsymExpansion, String>)> {
    std::thread::scope(|s| {
        let hs: Vec<_> = ExtremeKind::ALL
            .iter()
            .map(|&k| s.spawn(move || (k, asymptotic_expansion(k, 3, bits).map_err(|e| e.to_string()))))
            .collect();
        hs.into_iter().map(|h| h.join().expect("expansion thread")).collect()
    })
}

fn expected_rate(kind: ExtremeKind) -> Option<&'static str> {
    match kind {
        EdgeEven => Some("8"),
        EdgeAll => Some("12"),
        EdgeEvenMin4 => Some("7"),
        EdgeMin2 => Some("5+2*sqrt(6)"),
        EdgeMin3 => Some("4+2*sqrt(6)"),
        _ => None,
    }
}

fn criterion_6(exps: &[(ExtremeKind, Result<AsymExpansion, String>)]) -> Vec<Check> {
    let mut out = Vec::new();
    for (kind, e) in exps {
        let id = format!("6.{}", kind.tag());
        let e = match e {
            Ok(e) => e,
            Err(msg) => {
                out.push(Check::new(&id, "dominant singularity", false, msg.clone()));
                continue;
            }
        };
        let bits = e.bits;
        let pa = catalog(*kind).asym;
        let deg = e.t0_minimal_poly.degree().unwrap_or(0);
        let (ok, d) = if let Some(t0s) = pa.t0 {
            let want = big(t0s, bits);
            let r = rel(&e.t0, &want);
            let mut ok = r < 1e-50;
            let mut d = format!("t0 = {t0s} (rel err {r:.1e}), minimal polynomial degree {deg}");
            if let Some(rs) = expected_rate(*kind) {
                let rr = rel(&e.rate, &big(rs, bits));
                ok &= rr < 1e-50;
                d.push_str(&format!(", rate {rs} (rel err {rr:.1e})"));
            }
            (ok, d)
        } else {
            let want = BigFloat::parse(pa.t0_decimal.expect("decimal t0"), bits);
            let r = rel(&e.t0, &want);
            let printed = pa.t0_decimal.unwrap();
            let places = printed.split_once('.').map(|(_, f)| f.len()).unwrap_or(0);
            let rounds = format!("{:.*}", places, e.t0.to_f64()) == printed;
            let mut d = format!(
                "t0 = {} vs printed {printed} (rel err {r:.1e}, tol 1e-10; rounds to the printed digits: {rounds})",
                e.t0.to_sci(14)
            );
            let mut ok = r < 1e-10;
            if let Some(rd) = pa.rate_decimal {
                let rr = rel(&e.rate, &BigFloat::parse(rd, bits));
                ok &= rr < 1e-10;
                d.push_str(&format!(", rate {} vs {rd}", e.rate.to_sci(12)));
            }
            if let Some(ps) = pa.t0_poly {
                // the printed polynomial must vanish at t0
                let p = expr::poly_of(ps, &["t"]);
                let val = p.eval_field(&[e.t0.clone()]);
                let scale: f64 = p.terms().values().map(|c| crate::algebra::rat::rat_to_f64(c).abs()).sum();
                let z = val.abs().to_f64() / scale;
                ok &= z < 1e-40;
                d.push_str(&format!(", printed polynomial at t0 {z:.1e}, minimal polynomial degree {deg}"));
            }
            (ok, d)
        };
        out.push(Check::new(&id, "dominant singularity and growth rate", ok, d));
    }
    out
}

struct ConstCmp {
    ok: bool,
    note: String,
}

/// Compare computed constants with the printed ones: exact expressions at
/// 1e-40 (exact Rat equality where both sides are rational), decimals at 1e-8.
fn compare_constants(e: &AsymExpansion, pa: &PrintedAsym, m: usize) -> Vec<ConstCmp> {
    let bits = e.bits;
    let bound = [("t0", e.t0.clone())];
    let mut out = Vec::new();
    let exact_cmp = |label: &str, printed: &str, computed: &BigFloat, exact: Option<Rat>| -> ConstCmp {
        let pe = parse(printed).expect("printed constant");
        let pv = eval_with(&pe, bits, &bound).expect("printed value");
        let r = rel(computed, &pv);
        match (constant_value(&pe), exact) {
            (Some(a), Some(b)) => ConstCmp { ok: a == b, note: format!("{label}: printed {printed}, computed {b}") },
            _ => ConstCmp {
                ok: r < 1e-40,
                note: format!("{label}: printed {printed} = {}, rel err {r:.1e}", pv.to_sci(12)),
            },
        }
    };
    let dec_cmp = |label: &str, printed: &str, computed: &BigFloat| -> ConstCmp {
        let r = rel(computed, &BigFloat::parse(printed, bits));
        ConstCmp { ok: r < 1e-8, note: format!("{label}: {} vs printed {printed} (rel {r:.1e})", computed.to_sci(11)) }
    };
    if let Some(s) = pa.stokes {
        out.push(exact_cmp("c", s, &e.stokes, None));
    }
    if let Some(s) = pa.stokes_decimal {
        out.push(dec_cmp("c", s, &e.stokes));
    }
    let exact_d = |i: usize| e.exact.as_ref().and_then(|x| x.corrections.get(i)).and_then(|v| v.as_rat());
    for (i, s) in pa.corrections.iter().enumerate().take(m) {
        out.push(exact_cmp(&format!("d{}", i + 1), s, &e.corrections[i], exact_d(i)));
    }
    for (i, s) in pa.corrections_decimal.iter().enumerate().take(m) {
        out.push(dec_cmp(&format!("d{}", i + 1), s, &e.corrections[i]));
    }
    out
}

fn criterion_7(exps: &[(ExtremeKind, Result<AsymExpansion, String>)]) -> Vec<Check> {
    let mut out = Vec::new();
    for (kind, e) in exps {
        let id = format!("7.{}", kind.tag());
        let e = match e {
            Ok(e) => e,
            Err(msg) => {
                out.push(Check::new(&id, "Stokes constant and corrections", false, msg.clone()));
                continue;
            }
        };
        let pa = catalog(*kind).asym;
        let cmps = compare_constants(e, &pa, 3);
        let ok = !cmps.is_empty() && cmps.iter().all(|c| c.ok);
        let mut d: Vec<String> = cmps.iter().map(|c| format!("{}{}", if c.ok { "" } else { "MISMATCH " }, c.note)).collect();
        if !ok {
            if let Some(x) = &e.exact {
                let ds: Vec<String> = x.corrections.iter().map(|v| v.as_rat().map(|r| r.to_string()).unwrap_or_else(|| v.residue.fmt_var("t0"))).collect();
                d.push(format!("derived: c^2 pi = {}, d = [{}]", x.stokes_sq_pi.as_rat().map(|r| r.to_string()).unwrap_or_default(), ds.join(", ")));
            }
        }
        if *kind == FaceAll {
            // the printed closed formulas in t0 are recorded, not required
            let mut exact_notes = Vec::new();
            if let Some(s) = pa.stokes {
                let v = eval_with(&parse(s).unwrap(), e.bits, &[("t0", e.t0.clone())]).unwrap();
                exact_notes.push(format!("printed c formula rel {:.1e}", rel(&e.stokes, &v)));
            }
            for (i, s) in pa.corrections.iter().enumerate() {
                let v = eval_with(&parse(s).unwrap(), e.bits, &[("t0", e.t0.clone())]).unwrap();
                exact_notes.push(format!("d{} formula rel {:.1e}", i + 1, rel(&e.corrections[i], &v)));
            }
            d.push(exact_notes.join(", "));
        }
        out.push(Check::new(&id, "Stokes constant and corrections match the printed values", ok, d.join("; ")));
    }
    out
}

fn criterion_8(exps: &[(ExtremeKind, Result<AsymExpansion, String>)]) -> Vec<Check> {
    let mut out = Vec::new();
    let ns = [50u64, 100, 200];
    for (kind, e) in exps {
        let id = format!("8.{}", kind.tag());
        let e = match e {
            Ok(e) => e,
            Err(msg) => {
                out.push(Check::new(&id, "O(n^-3) convergence", false, msg.clone()));
                continue;
            }
        };
        let f = match algebraic_f0(*kind, 201) {
            Ok(f) => f,
            Err(err) => {
                out.push(Check::new(&id, "O(n^-3) convergence", false, err.to_string()));
                continue;
            }
        };
        let (ok, mut d) = match check_against(e, &f, &ns, 2) {
            Ok(rep) => {
                let errs: Vec<String> = rep.rows.iter().map(|r| format!("n={} {:.2e}", r.n, r.rel_error)).collect();
                let ok = rep.slopes.len() == 2 && rep.slopes.iter().all(|s| (s + 3.0).abs() <= 0.3);
                (ok, format!("rel errors {} ; slopes {:?}", errs.join(", "), rep.slopes.iter().map(|s| format!("{s:.3}")).collect::<Vec<_>>()))
            }
            Err(err) => (false, err.to_string()),
        };
        if *kind == EdgeAll {
            // the printed constants do not even give the leading term
            let pa = catalog(EdgeAll).asym;
            let mut p = e.clone();
            p.stokes = big(pa.stokes.unwrap(), e.bits);
            for (i, s) in pa.corrections.iter().enumerate() {
                p.corrections[i] = big(s, e.bits);
            }
            if let Ok(rep) = check_against(&p, &f, &ns, 2) {
                let errs: Vec<String> = rep.rows.iter().map(|r| format!("{:.3}", r.rel_error)).collect();
                d.push_str(&format!(" ; with the printed constants rel errors {}", errs.join(", ")));
            }
        }
        out.push(Check::new(&id, "f_n / asymptotic(M=2) - 1 decays like n^-3 (slope -3 +- 0.3)", ok, d));
    }
    out
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Vec<Check> {
    let bits = DEFAULT_BITS;
    let mut out = Vec::new();
    let gauss = Potential::perturbed(&[]).expect("gaussian");
    let quartic = Potential::monomial(4, ri(1)).expect("x^4/4");
    let q11 = Potential::quartic(ri(1), ri(1)).expect("quartic");
    let eqs: Vec<_> = [&gauss, &quartic, &q11].iter().map(|v| equilibrium(v, bits, 8)).collect();

    let one_check = |id: &str, title: &str, r: &Result<_, crate::equilibrium::EquilibriumError>, want: &str| -> Check {
        match r {
            Ok(r) => {
                let r: &crate::equilibrium::EquilibriumResult = r;
                let w = big(want, bits);
                let dlt = abs_diff(&r.i_v, &w);
                Check::new(id, title, dlt < 1e-20 && r.support_ok, format!("I_V = {}, |I_V - {want}| = {dlt:.1e}, support ok {}", r.i_v.to_sci(25), r.support_ok))
            }
            Err(e) => Check::new(id, title, false, e.to_string()),
        }
    };
    out.push(one_check("9.gaussian", "Gaussian I_V = 3/4 to 1e-20", &eqs[0], "3/4"));
    out.push(one_check("9.pure-quartic", "x^4/4 gives I_V = log(3)/4 + 3/8 to 1e-20", &eqs[1], "log(3)/4+3/8"));
    match &eqs[2] {
        Ok(r) => {
            let c = big("sqrt((-1+sqrt(13))/6)", bits);
            let dc = abs_diff(&r.c, &c);
            out.push(Check::new(
                "9.quartic-endpoints",
                "x^2/2 + x^4/4 has c = sqrt((sqrt(13)-1)/6), b = 0 to 1e-20",
                dc < 1e-20 && r.b.is_zero() && r.support_ok,
                format!("c = {}, |c - formula| = {dc:.1e}, b = {}", r.c.to_sci(25), r.b.to_f64()),
            ));
        }
        Err(e) => out.push(Check::new("9.quartic-endpoints", "quartic endpoints", false, e.to_string())),
    }
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    let mut ok = true;
    for ((name, v, lo, hi), r) in [("gaussian", &gauss, -2.4, 2.4), ("x^4/4", &quartic, -1.9, 1.9), ("quartic(1,1)", &q11, -1.6, 1.6)].into_iter().zip(&eqs) {
        match (discretized_minimizer(v, (lo, hi, 300), 3000), r) {
            (Ok(d), Ok(r)) => {
                let e = planar_energy(v, &r.c, &r.b);
                let diff = (d.to_f64() - e.to_f64()).abs();
                worst = worst.max(diff);
                notes.push(format!("{name} {diff:.1e}"));
            }
            (Err(e), _) => {
                ok = false;
                notes.push(format!("{name}: {e}"));
            }
            (_, Err(e)) => {
                ok = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    out.push(Check::new(
        "9.discretized",
        "discretized minimizer within 1e-3 of the one-cut energy",
        ok && worst < 1e-3,
        format!("|difference|: {}", notes.join(", ")),
    ));

    // a4 = 1/100 in V = x^2/2 - a4 x^4/4; formal, since V is unbounded below
    let a4 = rat(1, 100);
    let v = Potential::formal_perturbed(&[(4, a4.clone())]);
    match equilibrium(&v, bits, 4) {
        Ok(r) => {
            let f = big("3/4", bits).sub(&r.i_v);
            let partial = |cap: u32| -> BigFloat {
                let (s, _) = f0_multivariate_in(cap, Filtration::Weight, &VarSet::Only(vec![4]));
                let mut acc = Rat::zero();
                for (p, c) in s.terms() {
                    acc += c * rat_pow(&a4, p.mult(4) as i64);
                }
                BigFloat::from_rat(&acc, bits)
            };
            let d14 = abs_diff(&f, &partial(14));
            let d40 = abs_diff(&f, &partial(40));
            out.push(Check::new(
                "9.small-quartic",
                "a4 = 1/100: 3/4 - I_V equals the weight-14 F0 partial sum to 1e-10",
                d14 < 1e-10,
                format!("3/4 - I_V = {}, weight 14 diff {d14:.2e}, weight 40 diff {d40:.2e}", f.to_sci(20)),
            ));
        }
        Err(e) => out.push(Check::new("9.small-quartic", "a4 = 1/100", false, e.to_string())),
    }
    out
}

// ---------------------------------------------------------------- 10

fn criterion_10(res: &PlanarResult, exps: Option<&[(ExtremeKind, Result<AsymExpansion, String>)]>) -> Vec<Check> {
    let mut ok = true;
    let mut notes = Vec::new();
    let all = edge_extreme_fn(EdgeAll, 5);
    let even = edge_extreme_fn(EdgeEven, 5);
    for n in 1..=5u32 {
        match coefficient_bound_report(&res.f0, n) {
            Ok(b) => {
                // the block sums are the edge-extreme coefficients
                let tie = b.sum_all == all[n as usize - 1] && b.sum_even == even[n as usize - 1];
                ok &= b.bound_ok && tie;
                notes.push(format!("n={n}: {} <= {}, {} <= {}", b.sum_all, 12u64.pow(n), b.sum_even, 8u64.pow(n)));
            }
            Err(e) => {
                ok = false;
                notes.push(e.to_string());
            }
        }
    }
    let mut out = vec![Check::new("10.bounds", "block sums of F0 bounded by 12^n and 8^n for n <= 5", ok, notes.join("; "))];
    if let Some(exps) = exps {
        let rate = |k: ExtremeKind| exps.iter().find(|(x, _)| *x == k).and_then(|(_, e)| e.as_ref().ok()).map(|e| e.rate.to_f64());
        let (r12, r8) = (rate(EdgeAll), rate(EdgeEven));
        let sharp = matches!((r12, r8), (Some(a), Some(b)) if (a - 12.0).abs() < 1e-12 && (b - 8.0).abs() < 1e-12);
        out.push(Check::new(
            "10.sharpness",
            "bounds are sharp: edge-all and edge-even grow at rates 12 and 8",
            sharp,
            format!("growth rates {r12:?} and {r8:?}; block sums equal the edge-extreme coefficients"),
        ));
    }
    out
}

// ---------------------------------------------------------------- 11

fn zb_grid() -> Vec<(i64, i64, i64)> {
    let mut g = Vec::new();
    for l1 in 1..=5 {
        for l2 in 1..=4 {
            for p in 0..=4 {
                g.push((l1, l2, p));
            }
        }
    }
    g
}

fn criterion_11() -> Vec<Check> {
    let mut out = Vec::new();
    for (which, name) in [(Which::First, "first"), (Which::Second, "second")] {
        let mut bad = Vec::new();
        for l1 in 0..=40 {
            for l2 in 0..=40 {
                if !check_binomial_identity(which, l1, l2) {
                    bad.push((l1, l2));
                }
            }
        }
        out.push(Check::new(
            &format!("11.binomial-{name}"),
            &format!("{name} central-binomial sum identity for l1, l2 <= 40"),
            bad.is_empty(),
            format!("1681 pairs, failures {bad:?}"),
        ));
    }
    let grid = zb_grid();
    for (which, name) in [(Which::First, "first"), (Which::Second, "second")] {
        let rep = check_zb_certificate(which, &grid);
        let sums_ok = (1..=6).all(|l1| (1..=6).all(|l2| zb_sum(which, l1, l2) == Some(Rat::one())));
        let rc = check_zb_certificate_corrected(which, &grid);
        let mut d = format!(
            "{} grid points checked, {} failures, {} poles skipped; normalized sums equal 1: {sums_ok}",
            rep.checked,
            rep.failures.len(),
            rep.skipped_poles.len()
        );
        if !rep.ok() {
            d.push_str(&format!(
                "; corrected companion: {} checked, {} failures",
                rc.checked,
                rc.failures.len()
            ));
        }
        out.push(Check::new(
            &format!("11.zb-{name}-printed"),
            &format!("telescoping certificate of the {name} identity on a 100-point grid"),
            rep.ok() && sums_ok && grid.len() == 100,
            d,
        ));
    }
    // the s-weighted bilinear identity, by the binomial closed form and by exact moments
    let mut bad_a = Vec::new();
    let mut bad_b = Vec::new();
    for n in 0..=8i64 {
        for m in 0..=8i64 {
            let (l, r) = bilinear_identity_monomial(n, m);
            if l != r {
                bad_a.push((n, m));
            }
            let mut u = vec![Rat::zero(); 9];
            u[n as usize] += Rat::one();
            u[m as usize] += Rat::one();
            let (l, r) = bilinear_identity_sides(&u);
            if l != r {
                bad_b.push((n, m));
            }
        }
    }
    out.push(Check::new(
        "11.bilinear",
        "s-weighted bilinear identity for monomials up to degree 8, two routes",
        bad_a.is_empty() && bad_b.is_empty(),
        format!("binomial form failures {bad_a:?}; moment integration failures on x^n + x^m {bad_b:?}"),
    ));
    out
}

// ---------------------------------------------------------------- 12

fn t_series(prec: i64) -> USeries {
    USeries::t(&Rat::zero(), prec)
}

/// Coefficients t^0..t^n of (t^2 F')' - rhs.
fn ode_defect(f: &USeries, rhs: &USeries, n: i64) -> Vec<Rat> {
    let t = t_series(f.prec());
    let lhs = t.mul(&t).mul(&f.d_dt()).d_dt();
    (0..=n).map(|k| lhs.coeff_t(k) - rhs.coeff_t(k)).collect()
}

fn discrepancy_derivative() -> (Check, bool) {
    let mut printed_holds = true;
    let mut corrected_holds = true;
    let mut notes = Vec::new();
    for kind in [EdgeAll, EdgeEven] {
        let (r, s, f) = extreme_series(kind, 12);
        let q = r.mul(&s).mul(&s).scale_rat(&ri(2)).add(&r.mul(&r));
        let printed = q.scale_rat(&rat(1, 2));
        let corrected = q.add_const(&ri(-1)).scale_rat(&rat(1, 2));
        let dp = ode_defect(&f, &printed, 10);
        let dc = ode_defect(&f, &corrected, 10);
        printed_holds &= dp.iter().all(|x| x.is_zero());
        corrected_holds &= dc.iter().all(|x| x.is_zero());
        notes.push(format!("{}: printed defect at t^0 = {}", kind.tag(), dp[0]));
    }
    let ok = !printed_holds && corrected_holds;
    (
        Check::xfail(
            "12.second-derivative-rhs",
            "(t^2 F0')' = (2 R S^2 + R^2)/2 as printed; corrected right side (2 R S^2 + R^2 - 1)/2",
            format!("{}; corrected form holds through t^10: {corrected_holds}", notes.join(", ")),
        ),
        ok,
    )
}

const V4_PRINTED: &str = "(1-36*t+162*t^2+(1-30*t)*sqrt(1-12*t))/(432*t^2) + 1/2*log((1-sqrt(1-12*t))/(6*t))";
const V4_CORRECTED: &str = "(1-36*t+162*t^2-(1-30*t)*sqrt(1-12*t))/(432*t^2) + 1/2*log((1-sqrt(1-12*t))/(6*t))";

fn discrepancy_quartic_f0() -> (Check, bool) {
    let bits = DEFAULT_BITS;
    let (s, _) = f0_multivariate_in(32, Filtration::Weight, &VarSet::Only(vec![4]));
    let series: Vec<Rat> = (0..=8).map(|k| s.coefficient(&Partition::from_pairs(&[(4, k)]))).collect();
    let matches = |src: &str| -> (bool, String) {
        match taylor(&parse(src).unwrap(), 18) {
            Ok(t) => {
                let ok = t.valuation().map_or(true, |v| v >= 0) && (0..=8).all(|k| t.coeff_t(k) == series[k as usize]);
                let lead = t.valuation().map(|v| format!("leading u^{v} coefficient {}", t.coeff_u(v))).unwrap_or_default();
                (ok, lead)
            }
            Err(e) => (false, e.to_string()),
        }
    };
    let (p_ok, p_note) = matches(V4_PRINTED);
    let (c_ok, _) = matches(V4_CORRECTED);
    let a = rat(1, 100);
    let at = |src: &str| eval_with(&parse(src).unwrap(), bits, &[("t", BigFloat::from_rat(&a, bits))]).unwrap();
    let v = Potential::formal_perturbed(&[(4, a.clone())]);
    let (num_ok, num_note) = match equilibrium(&v, bits, 4) {
        Ok(r) => {
            let f = big("3/4", bits).sub(&r.i_v);
            let dc = abs_diff(&at(V4_CORRECTED), &f);
            (dc < 1e-25, format!("at a4 = 1/100: printed {}, corrected {}, 3/4 - I_V {} (diff {dc:.1e})", at(V4_PRINTED).to_sci(10), at(V4_CORRECTED).to_sci(20), f.to_sci(20)))
        }
        Err(e) => (false, e.to_string()),
    };
    let ok = !p_ok && c_ok && num_ok;
    (
        Check::xfail(
            "12.quartic-f0-sign",
            "closed form of F0 for x^2/2 - a4 x^4/4: the sqrt term needs a minus sign",
            format!("printed form is not a power series ({p_note}); corrected form matches F0 through a4^8: {c_ok}; {num_note}"),
        ),
        ok,
    )
}

const IV_PRINTED: &str = "3/8 + 1/2*log((a2+sqrt(a2^2+12*a4))/2) + (-a2^4-36*a2^2*a4+162*a4^2+(a2^3+30*a2*a4)*sqrt(a2^2+12*a4))/(432*a4^2)";
const IV_CORRECTED: &str = "1/2*log((a2+sqrt(a2^2+12*a4))/2) + (-a2^4-36*a2^2*a4+162*a4^2+(a2^3+30*a2*a4)*sqrt(a2^2+12*a4))/(432*a4^2)";

fn discrepancy_quartic_energy() -> (Check, bool) {
    let bits = DEFAULT_BITS;
    let mut ok = true;
    let mut notes = Vec::new();
    for (a2, a4) in [(ri(1), ri(1)), (ri(2), ri(3)), (ri(-1), ri(1)), (ri(1), rat(1, 100))] {
        let v = Potential::quartic(a2.clone(), a4.clone()).expect("admissible quartic");
        let Ok(r) = equilibrium(&v, bits, 4) else {
            ok = false;
            continue;
        };
        let env = [("a2", BigFloat::from_rat(&a2, bits)), ("a4", BigFloat::from_rat(&a4, bits))];
        let p = eval_with(&parse(IV_PRINTED).unwrap(), bits, &env).unwrap();
        let c = eval_with(&parse(IV_CORRECTED).unwrap(), bits, &env).unwrap();
        let off = p.sub(&r.i_v);
        let dc = abs_diff(&c, &r.i_v);
        ok &= dc < 1e-25 && abs_diff(&off, &big("3/8", bits)) < 1e-25;
        notes.push(format!("({a2},{a4}): printed - I_V = {}, |corrected - I_V| = {dc:.1e}", off.to_sci(8)));
    }
    // Gaussian limit a4 -> 0 at a2 = 1
    let env = [("a2", BigFloat::one(bits)), ("a4", big("1/10^12", bits))];
    let p = eval_with(&parse(IV_PRINTED).unwrap(), bits, &env).unwrap();
    let c = eval_with(&parse(IV_CORRECTED).unwrap(), bits, &env).unwrap();
    ok &= abs_diff(&c, &big("3/4", bits)) < 1e-10;
    notes.push(format!("a2 = 1, a4 = 1e-12: printed {}, corrected {} (Gaussian 3/4)", p.to_sci(8), c.to_sci(8)));
    (
        Check::xfail(
            "12.quartic-energy-constant",
            "I_V of the quartic: the printed 3/8 must be dropped to reach the Gaussian limit 3/4",
            notes.join("; "),
        ),
        ok,
    )
}

fn residual_of(eq: &str, r: &USeries, n: usize, in_t_squared: bool) -> Result<Vec<Rat>, String> {
    let mut m = to_mpoly(&parse(eq).map_err(|e| e.to_string())?, &["t", "R"]).map_err(|e| e.to_string())?;
    if in_t_squared {
        m = m.halve_exponent(0).ok_or("odd power of t")?;
    }
    let coeffs: Vec<Rat> = (0..n as i64).map(|k| r.coeff_t(k)).collect();
    Ok(BivarPoly::from_mpoly(m).residual_series(&coeffs, n))
}

fn extra_annotations() -> Vec<Check> {
    let mut out = Vec::new();
    let zero = |v: &[Rat]| v.iter().all(|x| x.is_zero());

    let (r, _, f) = extreme_series(EdgeAll, 12);
    let printed = catalog(EdgeAll).algebraic_r.unwrap();
    let pr = residual_of(printed, &r, 10, false).unwrap_or_default();
    let cr = residual_of("9*t*R^2 - (12*t+1)*R + 4*t + 1", &r, 10, false).unwrap_or_default();
    out.push(Check::xfail(
        "12.edge-all-R-equation",
        "edge-all R equation: printed 9tR^2 - (12t+1)R + 1, corrected with + 4t",
        format!("printed residual at t^1 = {}, corrected residual zero through t^9: {}", pr.get(1).cloned().unwrap_or_default(), zero(&cr)),
    ));

    let ode = catalog(EdgeAll).ode.unwrap();
    let ser = |s: &str| taylor(&parse(s).unwrap(), 40).unwrap();
    let fp = f.d_dt();
    let res = ser(ode.a).add(&ser(ode.b).mul(&fp)).add(&ser(ode.c).mul(&fp.d_dt()));
    let res_zero = (0..8).all(|k| res.coeff_t(k).is_zero());
    out.push(Check::xfail(
        "12.edge-all-ode-initial",
        "edge-all F0 differential equation: printed F0(0) = 1, the series has F0(0) = 0",
        format!(
            "equation residual zero through t^7: {res_zero}; series F0(0) = {}, F0'(0) = {} (printed {}, {})",
            f.coeff_t(0),
            f.coeff_t(1),
            ode.f0_at_0,
            ode.f0p_at_0
        ),
    ));

    let rec = recurrence_coeffs(EdgeMin3).expect("recurrence");
    let s5 = edge_extreme_fn(EdgeMin3, 5)[4].clone();
    out.push(Check::xfail(
        "12.edge-min3-initial",
        "edge-min3 recurrence initial value f_5",
        format!("printed {}, series {s5}", rec.initial[5]),
    ));

    let (rf, _, _) = extreme_series(FaceEven, 10);
    let eq = catalog(FaceEven).algebraic_r.unwrap();
    let as_printed = residual_of(eq, &rf, 10, false).unwrap_or_default();
    let halved = residual_of(eq, &rf, 10, true).unwrap_or_default();
    out.push(Check::xfail(
        "12.face-even-R-equation",
        "face-even R equation is printed in t^2; it holds after t^2 -> t",
        format!("residual as printed zero: {}, after t^2 -> t zero through t^9: {}", zero(&as_printed), zero(&halved)),
    ));

    let grid = zb_grid();
    let p = check_zb_certificate(Which::Second, &grid);
    let c = check_zb_certificate_corrected(Which::Second, &grid);
    out.push(Check::xfail(
        "12.zb-second-companion",
        "second telescoping companion g: divide the printed one by (l1+1)^2 (l2+1)^2",
        format!("printed fails at {} of {} points, corrected fails at {}", p.failures.len(), p.checked, c.failures.len()),
    ));
    out
}

fn criterion_12() -> Vec<Check> {
    let parts = [discrepancy_derivative(), discrepancy_quartic_f0(), discrepancy_quartic_energy()];
    let all_ok = parts.iter().all(|(_, ok)| *ok);
    let mut out: Vec<Check> = parts.iter().map(|(c, _)| c.clone()).collect();
    out.push(Check::new(
        "12.discrepancies",
        "the three printed discrepancies are detected and their corrected forms verified",
        all_ok,
        parts.iter().map(|(c, ok)| format!("{}: {}", c.id, if *ok { "confirmed" } else { "NOT confirmed" })).collect::<Vec<_>>().join(", "),
    ));
    out.extend(extra_annotations());
    out
}

// ---------------------------------------------------------------- driver

pub const ALL_CRITERIA: [u32; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

/// Run the chosen criteria (all when `only` is empty), reporting progress to `log`.
pub fn run(only: &[u32], mut log: impl FnMut(&Check)) -> Report {
    let want = |k: u32| only.is_empty() || only.contains(&k);
    let mut report = Report::default();
    let mut push = |cs: Vec<Check>, report: &mut Report| {
        for c in cs {
            log(&c);
            report.checks.push(c);
        }
    };
    let planar = if want(1) || want(2) || want(10) { Some(f0_multivariate(10)) } else { None };
    let exps = if want(6) || want(7) || want(8) || want(10) { Some(expansions(DEFAULT_BITS)) } else { None };
    if want(1) {
        push(criterion_1(planar.as_ref().unwrap()), &mut report);
    }
    if want(2) {
        push(criterion_2(planar.as_ref().unwrap()), &mut report);
    }
    if want(3) {
        push(criterion_3(), &mut report);
    }
    if want(4) {
        push(criterion_4(), &mut report);
    }
    if want(5) {
        push(criterion_5(), &mut report);
    }
    if want(6) {
        push(criterion_6(exps.as_ref().unwrap()), &mut report);
    }
    if want(7) {
        push(criterion_7(exps.as_ref().unwrap()), &mut report);
    }
    if want(8) {
        push(criterion_8(exps.as_ref().unwrap()), &mut report);
    }
    if want(9) {
        push(criterion_9(), &mut report);
    }
    if want(10) {
        push(criterion_10(planar.as_ref().unwrap(), exps.as_deref()), &mut report);
    }
    if want(11) {
        push(criterion_11(), &mut report);
    }
    if want(12) {
        push(criterion_12(), &mut report);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        let r = parse_table(TABLE_R);
        assert_eq!(r[0], (Partition::empty(), Rat::one()));
        assert_eq!(r[1], (Partition::single(2), Rat::one()));
        assert!(parse_table(TABLE_F0).len() > 50);
    }

    #[test]
    fn bilinear_and_zb_grid() {
        assert_eq!(zb_grid().len(), 100);
        let cs = criterion_11();
        assert!(cs.iter().any(|c| c.id == "11.bilinear" && c.status == Status::Pass));
    }
}
