//! Printed data for the extreme potentials, stored as written and parsed on
//! demand. Nothing here is trusted: every entry is checked against the
//! series pipeline or the derived equations elsewhere.

use super::expr::{self, Expr, ExprError};
use super::ExtremeKind;
use crate::algebra::rat::{factorial, rat, rbig, ri};
use crate::algebra::{BigFloat, Poly, Rat};
use crate::asymptotics::HolonomicRec;
use num_bigint::BigInt;
use ExtremeKind::*;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("beyond radius of convergence")]
    BeyondRadius,
    #[error("no printed recurrence")]
    NoRecurrence,
    #[error("no closed form for {0}")]
    NoClosedForm(&'static str),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// a + b F0' + c F0'' = 0 with F0(0), F0'(0).
#[derive(Clone, Debug)]
pub struct Ode {
    pub a: &'static str,
    pub b: &'static str,
    pub c: &'static str,
    pub f0_at_0: Rat,
    pub f0p_at_0: Rat,
}

/// Printed coefficient asymptotics; expressions may use t0 and pi.
#[derive(Clone, Debug)]
pub struct PrintedAsym {
    pub t0: Option<&'static str>,
    /// Polynomial whose root is t0, when t0 is given that way.
    pub t0_poly: Option<&'static str>,
    pub t0_decimal: Option<&'static str>,
    pub rate_decimal: Option<&'static str>,
    pub stokes: Option<&'static str>,
    pub stokes_decimal: Option<&'static str>,
    pub corrections: Vec<&'static str>,
    pub corrections_decimal: Vec<&'static str>,
    pub r0: Option<&'static str>,
}

#[derive(Clone, Debug)]
pub struct ClosedFormRecord {
    pub kind: ExtremeKind,
    pub r_closed: Option<&'static str>,
    pub s_closed: Option<&'static str>,
    pub f0_closed: Option<&'static str>,
    /// Printed equation of R in (t, R); may be in another normalization.
    pub algebraic_r: Option<&'static str>,
    /// Printed equation of S in (t, S).
    pub algebraic_s: Option<&'static str>,
    /// Printed equation of G0 = F0' in (t, G).
    pub algebraic_g0: Option<&'static str>,
    pub ode: Option<Ode>,
    pub recurrence: Option<HolonomicRec>,
    /// Printed Taylor coefficients of F0 as (n, f_n).
    pub printed_series: Vec<(usize, Rat)>,
    pub asym: PrintedAsym,
}

fn p(cs: &[i64]) -> Poly {
    Poly::from_i64(cs)
}

fn polys(v: &[&[i64]]) -> Vec<Poly> {
    v.iter().map(|c| p(c)).collect()
}

fn mulp(v: &[Poly]) -> Poly {
    v.iter().fold(Poly::one(), |a, b| &a * b)
}

/// (n + k)
fn nk(k: i64) -> Poly {
    p(&[k, 1])
}

fn series(v: &[(i64, i64)], first: usize) -> Vec<(usize, Rat)> {
    v.iter().enumerate().map(|(i, &(a, b))| (first + i, rat(a, b))).collect()
}

fn no_asym() -> PrintedAsym {
    PrintedAsym {
        t0: None,
        t0_poly: None,
        t0_decimal: None,
        rate_decimal: None,
        stokes: None,
        stokes_decimal: None,
        corrections: vec![],
        corrections_decimal: vec![],
        r0: None,
    }
}

fn rec_v1() -> HolonomicRec {
    let g = vec![
        mulp(&[p(&[0, 0, 49]), nk(1)]),
        mulp(&[p(&[7]), nk(1), nk(1), p(&[32, 21])]),
        mulp(&[nk(2), p(&[544, 543, 139])]),
        mulp(&[nk(3), p(&[224, 157, 33])]),
        mulp(&[p(&[-8]), nk(2), nk(4), nk(6)]),
    ];
    HolonomicRec { gammas: g, n_start: 0, first_index: 0, initial: vec![ri(0), ri(0), rat(1, 2), rat(5, 6)] }
}

fn rec_v2() -> HolonomicRec {
    let g = vec![
        mulp(&[nk(-2), nk(-1), Poly::x()]),
        mulp(&[p(&[-2]), nk(-1), nk(1), p(&[2, 5])]),
        mulp(&[p(&[-1]), nk(2), p(&[44, 25, 5])]),
        mulp(&[p(&[4]), nk(3), p(&[116, 91, 17])]),
        mulp(&[p(&[-1]), nk(4), p(&[1326, 701, 89])]),
        mulp(&[p(&[2]), nk(5), nk(6), p(&[85, 19])]),
        mulp(&[p(&[-3]), nk(5), nk(6), nk(8)]),
    ];
    let init = vec![ri(0), rat(1, 2), rat(3, 4), rat(8, 3), ri(12), rat(312, 5)];
    HolonomicRec { gammas: g, n_start: 0, first_index: 0, initial: init }
}

fn rec_v3() -> HolonomicRec {
    let g = vec![
        mulp(&[p(&[0, 0, 128]), nk(2)]),
        mulp(&[p(&[32]), nk(1), p(&[66, 97, 27])]),
        mulp(&[p(&[8]), nk(2), p(&[1836, 1568, 305])]),
        mulp(&[p(&[4]), nk(3), p(&[9972, 6193, 929])]),
        mulp(&[nk(4), p(&[54276, 26661, 3257])]),
        mulp(&[nk(5), p(&[38220, 15479, 1595])]),
        mulp(&[p(&[3]), nk(6), p(&[3972, 1349, 121])]),
        mulp(&[p(&[5]), nk(7), p(&[36, 5, 1])]),
        mulp(&[p(&[-8]), nk(6), nk(8), nk(10)]),
    ];
    // f_5 = 138/5 as printed
    let init = vec![ri(0), ri(0), rat(1, 2), rat(3, 2), rat(47, 8), rat(138, 5), rat(430, 3), rat(11175, 14)];
    HolonomicRec { gammas: g, n_start: 0, first_index: 0, initial: init }
}

/// (n+3)(n+1) f_{n+1} - k n (1 + 2n) f_n = 0, n >= 1.
fn rec_two_term(k: i64, f1: Rat) -> HolonomicRec {
    let g = polys(&[&[0, -k, -2 * k], &[3, 4, 1]]);
    HolonomicRec { gammas: g, n_start: 1, first_index: 1, initial: vec![f1] }
}

pub fn catalog(kind: ExtremeKind) -> ClosedFormRecord {
    match kind {
        EdgeEven => ClosedFormRecord {
            kind,
            r_closed: Some("(1+4*t-sqrt(1-8*t))/(8*t)"),
            s_closed: Some("0"),
            f0_closed: Some("(1-24*t+72*t^2-(1-20*t)*sqrt(1-8*t))/(128*t^2) - 3/8*log((1-4*t+sqrt(1-8*t))/2)"),
            algebraic_r: Some("4*R^2*t - R*(1+4*t) + t + 1"),
            algebraic_s: None,
            algebraic_g0: Some("64*t^3*G^2 + (48*t^2-24*t+2)*G + 9*t - 1"),
            ode: Some(Ode { a: "3", b: "6*(4*t-1)", c: "2*t*(8*t-1)", f0_at_0: ri(0), f0p_at_0: rat(1, 2) }),
            recurrence: Some(rec_two_term(4, rat(1, 2))),
            printed_series: series(&[(1, 2), (3, 4), (2, 1), (7, 1), (144, 5), (132, 1), (4576, 7), (3432, 1)], 1),
            asym: PrintedAsym {
                t0: Some("1/8"),
                stokes: Some("3/(4*sqrt(pi))"),
                corrections: vec!["-25/8", "945/128", "-16275/1024"],
                ..no_asym()
            },
        },
        EdgeAll => ClosedFormRecord {
            kind,
            r_closed: Some("(1+12*t-sqrt(1-12*t))/(18*t)"),
            s_closed: Some("(1-sqrt(1-12*t))/(6*sqrt(t))"),
            f0_closed: Some("(1-36*t+162*t^2-(1-30*t)*sqrt(1-12*t))/(216*t^2) - 1/2*log((1-6*t+sqrt(1-12*t))/2)"),
            algebraic_r: Some("9*t*R^2 - (12*t+1)*R + 1"),
            algebraic_s: Some("3*sqrt(t)*S^2 - S + sqrt(t)"),
            algebraic_g0: Some("108*t^3*G^2 + (108*t^2-36*t+2)*G + 27*t - 2"),
            ode: Some(Ode { a: "3", b: "3*(6*t-1)", c: "t*(12*t-1)", f0_at_0: ri(1), f0p_at_0: ri(1) }),
            recurrence: Some(rec_two_term(6, ri(1))),
            printed_series: series(&[(1, 1), (9, 4), (9, 1), (189, 4), (1458, 5), (8019, 4), (104247, 7)], 1),
            asym: PrintedAsym {
                t0: Some("1/12"),
                stokes: Some("2/sqrt(pi)"),
                corrections: vec!["-25/16", "945/256", "-16275/2048"],
                ..no_asym()
            },
        },
        EdgeEvenMin4 => ClosedFormRecord {
            kind,
            r_closed: Some("(1+5*t-sqrt((1+t)*(1-7*t)))/(8*t*(1+t))"),
            s_closed: Some("0"),
            f0_closed: Some(
                "(1-22*t+49*t^2-(1-19*t)*sqrt((1+t)*(1-7*t)))/(128*t^2) - 1/8*log(1+t) - 3/8*log((1-3*t+sqrt((1+t)*(1-7*t)))/2)",
            ),
            algebraic_r: None,
            algebraic_s: None,
            algebraic_g0: Some("-2*t+13*t^2+16*t^3+2*(1-9*t+3*t^2+45*t^3+32*t^4)*G+64*t^3*(1+t)^2*G^2"),
            ode: Some(Ode {
                a: "t*(8+7*t)",
                b: "-2*(3-4*t-21*t^2-14*t^3)",
                c: "-2*t*(1-5*t-13*t^2-7*t^3)",
                f0_at_0: ri(0),
                f0p_at_0: ri(0),
            }),
            recurrence: Some(rec_v1()),
            printed_series: series(&[(1, 2), (5, 6), (23, 8), (51, 5), (124, 3), (2515, 14), (13245, 16)], 2),
            asym: PrintedAsym {
                t0: Some("1/7"),
                stokes: Some("147/512*sqrt(7/(2*pi))"),
                corrections: vec!["-105/32", "16065/2048", "-1109115/65536"],
                ..no_asym()
            },
        },
        EdgeMin2 => ClosedFormRecord {
            kind,
            r_closed: Some("(1+14*t+t^2-(1+t)*sqrt(1-10*t+t^2))/(18*t)"),
            s_closed: Some("(1-5*t-sqrt(1-10*t+t^2))/(6*sqrt(t))"),
            f0_closed: Some(
                "(1-32*t+96*t^2+76*t^3+t^4-(1-27*t-27*t^2+t^3)*sqrt(1-10*t+t^2))/(216*t^2) - log((1+t+sqrt(1-10*t+t^2))/2)",
            ),
            algebraic_r: None,
            algebraic_s: None,
            algebraic_g0: Some("1-13*t+22*t^2-9*t^3-t^4+(-2+32*t-108*t^2+76*t^3+2*t^4)*G-108*t^3*G^2"),
            ode: Some(Ode {
                a: "3-5*t+t^2+t^3",
                b: "-2*(3-17*t+5*t^2+t^3)",
                c: "-2*t*(1-11*t+11*t^2-t^3)",
                f0_at_0: ri(0),
                f0p_at_0: rat(1, 2),
            }),
            recurrence: Some(rec_v2()),
            printed_series: series(&[(1, 2), (3, 4), (8, 3), (12, 1), (312, 5), (1076, 3), (15528, 7), (14508, 1)], 1),
            asym: PrintedAsym {
                t0: Some("5-2*sqrt(6)"),
                stokes: Some("2/(3*sqrt(pi))*(2/3)^(1/4)"),
                corrections: vec!["-45*sqrt(6)/32", "8435/1024", "-238805*sqrt(6)/32768"],
                ..no_asym()
            },
        },
        EdgeMin3 => ClosedFormRecord {
            kind,
            r_closed: Some("(1+16*t+16*t^2-(1+16*t)*sqrt(1-8*t-8*t^2))/(18*t*(1+t)^2)"),
            s_closed: Some("(1-4*t-sqrt(1-8*t-8*t^2))/(6*(1+t)*sqrt(t))"),
            f0_closed: Some(
                "(1-28*t+6*t^2+176*t^3+142*t^4-(1-24*t-78*t^2-52*t^3)*sqrt(1-8*t-8*t^2))/(216*t^2*(1+t)^2) + 1/2*log(1+t) - log((1+2*t+sqrt(1-8*t-8*t^2))/2)",
            ),
            algebraic_r: None,
            algebraic_s: None,
            algebraic_g0: Some(
                "-2*t+11*t^2+65*t^3+107*t^4+81*t^5+27*t^6+(2-20*t-22*t^2+184*t^3+560*t^4+700*t^5+432*t^6+108*t^7)*G+(108*t^3+540*t^4+1080*t^5+1080*t^6+540*t^7+108*t^8)*G^2",
            ),
            ode: Some(Ode {
                a: "-8*t-35*t^2-44*t^3-16*t^4",
                b: "-6*(-1+15*t^2+34*t^3+28*t^4+8*t^5)",
                c: "-2*(-t+5*t^2+29*t^3+47*t^4+32*t^5+8*t^6)",
                f0_at_0: ri(0),
                f0p_at_0: ri(0),
            }),
            recurrence: Some(rec_v3()),
            printed_series: series(&[(1, 2), (3, 2), (47, 8), (139, 5), (430, 3), (11175, 14), (75149, 16)], 2),
            asym: PrintedAsym {
                t0: Some("(-2+sqrt(6))/4"),
                stokes: Some("32/(3*sqrt((267+109*sqrt(6))*pi))"),
                corrections: vec![
                    "-5*(62-23*sqrt(6))/8",
                    "35*(4567-1858*sqrt(6))/64",
                    "-35*(2608410-1064767*sqrt(6))/512",
                ],
                ..no_asym()
            },
        },
        FaceEven => ClosedFormRecord {
            kind,
            r_closed: None,
            s_closed: None,
            f0_closed: None,
            algebraic_r: Some("1 - R - t^2 + 4*R^2*t^2 + 4*R*t^4 - 16*R^2*t^4 + 16*R^3*t^4"),
            algebraic_s: None,
            algebraic_g0: None,
            ode: None,
            recurrence: None,
            printed_series: series(
                &[
                    (1, 2),
                    (47, 24),
                    (49, 4),
                    (11839, 120),
                    (9283, 10),
                    (3260543, 336),
                    (18387797, 168),
                    (941448191, 720),
                    (490223647, 30),
                    (93171535189, 440),
                ],
                1,
            ),
            asym: PrintedAsym {
                t0: Some("(4-3*2^(1/3))/4"),
                t0_poly: Some("-16*(-5*t^2+96*t^3-96*t^4+32*t^5)"),
                stokes: Some("1/3*sqrt((2*2^(1/3)-1)/pi)"),
                corrections: vec!["-(243-8*2^(1/3))/72", "(91881-2640*2^(1/3)-5696*2^(2/3))/10368"],
                r0: Some("(7+4*2^(1/3)+3*2^(2/3))/10"),
                ..no_asym()
            },
        },
        FaceAll => ClosedFormRecord {
            kind,
            r_closed: None,
            s_closed: None,
            f0_closed: None,
            algebraic_r: Some("144*R^4*t^2+R^3*t*(60-192*t)+R^2*(-2-52*t+88*t^2)+R*(1+15*t-16*t^2)-(-1+2*t-t^2)"),
            algebraic_s: None,
            algebraic_g0: None,
            ode: None,
            recurrence: None,
            printed_series: series(
                &[(7, 6), (109, 8), (15631, 60), (256629, 40), (38720767, 210), (658811733, 112)],
                1,
            ),
            asym: PrintedAsym {
                t0: None,
                t0_poly: Some("-11 - 128*t + 41088*t^2 - 20480*t^3 + 4096*t^4"),
                t0_decimal: Some("0.0180827901833"),
                rate_decimal: Some("55.3012001942"),
                stokes: Some("sqrt((34133-914556*t0+449856*t0^2-89344*t0^3)/(176868*pi))"),
                stokes_decimal: Some("0.1786898225"),
                corrections: vec![
                    "-(36145645+79913928*t0-39094848*t0^2+7808512*t0^3)/11319552",
                    "(7806311269+20984001752*t0-10129539392*t0^2+2006727168*t0^3)/1026306048",
                ],
                corrections_decimal: vec!["-3.3197404318", "7.9727292073"],
                r0: Some("1/11 + 856*t0/11 - 1280*t0^2/33 + 256*t0^3/33"),
            },
        },
        Mixed34Edge => ClosedFormRecord {
            kind,
            r_closed: None,
            s_closed: None,
            f0_closed: None,
            algebraic_r: None,
            algebraic_s: None,
            algebraic_g0: None,
            ode: None,
            recurrence: None,
            printed_series: vec![],
            asym: PrintedAsym {
                t0_poly: Some(
                    "6912-13824*t-146592*t^2-239488*t^3-2602569*t^4-4300752*t^5+79091888*t^6+304167552*t^7+410284704*t^8-1349207040*t^9-7615156224*t^10-4603041792*t^11+31506516736*t^12",
                ),
                t0_decimal: Some("0.2094195368"),
                rate_decimal: Some("4.7751036758"),
                stokes_decimal: Some("1.4826787729"),
                corrections_decimal: vec!["-7.2166440681", "37.5616277128"],
                ..no_asym()
            },
        },
        Mixed34Face => ClosedFormRecord {
            kind,
            r_closed: None,
            s_closed: None,
            f0_closed: None,
            algebraic_r: None,
            algebraic_s: None,
            algebraic_g0: None,
            ode: None,
            recurrence: None,
            printed_series: vec![],
            asym: PrintedAsym {
                t0_poly: Some(
                    "-43625-614400*t+89812992*t^2+895478272*t^3-3041722368*t^4-11466178560*t^5+32248627200*t^6",
                ),
                t0_decimal: Some("0.02305646139"),
                rate_decimal: Some("43.3717899396"),
                stokes_decimal: Some("0.2023938212"),
                corrections_decimal: vec!["-3.2617202693"],
                ..no_asym()
            },
        },
    }
}

impl ClosedFormRecord {
    pub fn parsed(&self, which: &str) -> Result<Expr, CatalogError> {
        let s = match which {
            "R" => self.r_closed,
            "S" => self.s_closed,
            "F0" => self.f0_closed,
            _ => None,
        };
        let s = s.ok_or(CatalogError::NoClosedForm(self.kind.tag()))?;
        Ok(expr::parse(s)?)
    }
    /// Singularity of the closed forms, from the printed t0.
    pub fn radius(&self, bits: usize) -> Option<BigFloat> {
        let e = expr::parse(self.asym.t0?).ok()?;
        expr::eval_const(&e, bits).ok()
    }
    pub fn to_json(&self, coeffs: &[Rat]) -> serde_json::Value {
        let s = |x: Option<&str>| x.map(|v| serde_json::Value::String(v.to_string())).unwrap_or(serde_json::Value::Null);
        serde_json::json!({
            "kind": self.kind.tag(),
            "R": s(self.r_closed),
            "S": s(self.s_closed),
            "F0": s(self.f0_closed),
            "algebraic_R": s(self.algebraic_r),
            "algebraic_S": s(self.algebraic_s),
            "algebraic_G0": s(self.algebraic_g0),
            "ode": self.ode.as_ref().map(|o| serde_json::json!({
                "a": o.a, "b": o.b, "c": o.c,
                "F0(0)": o.f0_at_0.to_string(), "F0'(0)": o.f0p_at_0.to_string(),
            })),
            "recurrence": self.recurrence.as_ref().map(|r| r.to_json()),
            "printed_series": self.printed_series.iter().map(|(n, c)| serde_json::json!([n, c.to_string()])).collect::<Vec<_>>(),
            "series": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn recurrence_coeffs(kind: ExtremeKind) -> Result<HolonomicRec, CatalogError> {
    catalog(kind).recurrence.ok_or(CatalogError::NoRecurrence)
}

/// Exact f_n from the factorial formulas.
pub fn fn_closed(kind: ExtremeKind, n: u64) -> Result<Rat, CatalogError> {
    if n == 0 {
        return Ok(ri(0));
    }
    let core = || rbig(factorial(2 * n - 1)) / rbig(factorial(n) * factorial(n + 2));
    match kind {
        // 3 (2n-1)! 2^(n-1) / (n! (n+2)!)
        EdgeEven => Ok(core() * ri(3) * rbig(BigInt::from(2).pow(n as u32 - 1))),
        // 2 (2n-1)! 3^n / (n! (n+2)!)
        EdgeAll => Ok(core() * ri(2) * rbig(BigInt::from(3).pow(n as u32))),
        _ => Err(CatalogError::NoClosedForm(kind.tag())),
    }
}

/// (R, S, F0) at 0 < t < t0 in high precision.
pub fn eval_closed(kind: ExtremeKind, t: &BigFloat) -> Result<(BigFloat, BigFloat, BigFloat), CatalogError> {
    let rec = catalog(kind);
    let bits = t.prec();
    let t0 = rec.radius(bits).ok_or(CatalogError::NoClosedForm(kind.tag()))?;
    if !t.sub(&t0).is_negative() || t.is_negative() || t.is_zero() {
        return Err(CatalogError::BeyondRadius);
    }
    let at = |w: &str| -> Result<BigFloat, CatalogError> { Ok(expr::eval_at(&rec.parsed(w)?, t)?) };
    Ok((at("R")?, at("S")?, at("F0")?))
}

/// Exact (R, S) at a rational t where every radical is rational.
pub fn eval_closed_rat(kind: ExtremeKind, t: &Rat) -> Result<(Rat, Rat), CatalogError> {
    let rec = catalog(kind);
    let t0 = rec.radius(128).ok_or(CatalogError::NoClosedForm(kind.tag()))?;
    if !BigFloat::from_rat(t, 128).sub(&t0).is_negative() {
        return Err(CatalogError::BeyondRadius);
    }
    let r = expr::eval_rat_at(&rec.parsed("R")?, t)?;
    let s = expr::eval_rat_at(&rec.parsed("S")?, t)?;
    Ok((r, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_formulas() {
        assert_eq!(fn_closed(EdgeAll, 3).unwrap(), ri(9));
        assert_eq!(fn_closed(EdgeEven, 4).unwrap(), ri(7));
        assert_eq!(fn_closed(EdgeEven, 1).unwrap(), rat(1, 2));
        assert!(fn_closed(FaceAll, 2).is_err());
    }

    #[test]
    fn rational_points() {
        assert_eq!(eval_closed_rat(EdgeAll, &rat(1, 16)).unwrap(), (rat(10, 9), rat(1, 3)));
        assert_eq!(eval_closed_rat(EdgeEven, &rat(3, 32)).unwrap().0, rat(7, 6));
        let (_, _, f) = eval_closed(EdgeAll, &BigFloat::from_rat(&rat(1, 16), 256)).unwrap();
        assert!((f.to_f64() - 0.0747196).abs() < 1e-6, "{}", f.to_f64());
        assert_eq!(eval_closed(EdgeAll, &BigFloat::from_rat(&rat(1, 10), 256)), Err(CatalogError::BeyondRadius));
    }

    #[test]
    fn recurrences() {
        let f = recurrence_coeffs(EdgeAll).unwrap().evaluate(2).unwrap();
        assert_eq!(f[2], rat(9, 4));
        let f = recurrence_coeffs(EdgeEven).unwrap().evaluate(2).unwrap();
        assert_eq!(f[2], rat(3, 4));
        assert_eq!(recurrence_coeffs(FaceAll).unwrap_err().to_string(), "no printed recurrence");
    }
}
