//! Binomial-sum identities for central binomial moments and their
//! creative-telescoping certificates.
//!
//! Binomials follow the convention C(j, q) = 0 for q < 0 or q > j. Sums over p
//! run over p >= 0; the full sum over Z of the first identity vanishes by the
//! symmetry p -> -p.

use super::rat::{binom_r, ri, Rat};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

fn c(n: i64, k: i64) -> Rat {
    binom_r(n, k)
}

/// (direct sum, closed form)
pub fn binomial_identity_sides(which: Which, l1: i64, l2: i64) -> (Rat, Rat) {
    match which {
        Which::First => {
            let lhs = (0..=l1.min(l2))
                .fold(Rat::zero(), |a, p| a + ri(p) * c(2 * l1, l1 - p) * c(2 * l2, l2 - p));
            let rhs = if l1 + l2 == 0 {
                Rat::zero()
            } else {
                Rat::new((l1 * l2).into(), (2 * (l1 + l2)).into()) * c(2 * l1, l1) * c(2 * l2, l2)
            };
            (lhs, rhs)
        }
        Which::Second => {
            let lhs = (0..=l1.min(l2)).fold(Rat::zero(), |a, p| {
                a + ri(2 * p + 1) * c(2 * l1 + 1, l1 - p) * c(2 * l2 + 1, l2 - p)
            });
            let rhs = Rat::new(((2 * l1 + 1) * (2 * l2 + 1)).into(), (l1 + l2 + 1).into())
                * c(2 * l1, l1)
                * c(2 * l2, l2);
            (lhs, rhs)
        }
    }
}

pub fn check_binomial_identity(which: Which, l1: i64, l2: i64) -> bool {
    let (a, b) = binomial_identity_sides(which, l1, l2);
    a == b
}

/// The summand f(l1, l2, p) normalized so that the sum over p is 1.
/// `None` at poles.
pub fn zb_f(which: Which, l1: i64, l2: i64, p: i64) -> Option<Rat> {
    match which {
        Which::First => {
            let den = ri(l1 * l2) * c(2 * l1, l1) * c(2 * l2, l2);
            if den.is_zero() {
                return None;
            }
            Some(ri(2 * p * (l1 + l2)) * c(2 * l1, l1 - p) * c(2 * l2, l2 - p) / den)
        }
        Which::Second => {
            let den = ri((2 * l1 + 1) * (2 * l2 + 1)) * c(2 * l1, l1) * c(2 * l2, l2);
            if den.is_zero() {
                return None;
            }
            Some(ri((2 * p + 1) * (l1 + l2 + 1)) * c(2 * l1 + 1, l1 - p) * c(2 * l2 + 1, l2 - p) / den)
        }
    }
}

/// The printed companion g(l1, l2, p). The first one is read with the
/// obvious l2 in place of the stray symbol in the last binomial.
pub fn zb_g_printed(which: Which, l1: i64, l2: i64, p: i64) -> Option<Rat> {
    match which {
        Which::First => {
            let den = ri(l1 * (2 * l1 + 1)) * c(2 * l1, l1) * c(2 * l2, l2);
            if den.is_zero() {
                return None;
            }
            Some(-ri(2 * p * (p - 1)) * c(2 * l1 + 1, l1 + p) * c(2 * l2 - 1, l2 - p) / den)
        }
        Which::Second => {
            let den = c(2 * l1 + 2, l1 + 1) * c(2 * l2, l2);
            if den.is_zero() {
                return None;
            }
            Some(-ri(p * p * (l2 + 1) * (l2 + 1)) * c(2 * l1 + 2, l1 - p + 1) * c(2 * l2, l2 - p) / den)
        }
    }
}

/// Companion that actually satisfies the telescoping relation. For the first
/// identity it is the printed one; for the second the printed g carries an
/// extra factor (l1+1)^2 (l2+1)^2.
pub fn zb_g(which: Which, l1: i64, l2: i64, p: i64) -> Option<Rat> {
    match which {
        Which::First => zb_g_printed(which, l1, l2, p),
        Which::Second => {
            zb_g_printed(which, l1, l2, p).map(|g| g / ri((l1 + 1) * (l1 + 1) * (l2 + 1) * (l2 + 1)))
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ZbReport {
    pub checked: usize,
    pub failures: Vec<(i64, i64, i64)>,
    pub skipped_poles: Vec<(i64, i64, i64)>,
}

impl ZbReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

fn zb_check_with(
    which: Which,
    grid: &[(i64, i64, i64)],
    g: impl Fn(Which, i64, i64, i64) -> Option<Rat>,
) -> ZbReport {
    let mut rep = ZbReport::default();
    for &(l1, l2, p) in grid {
        let vals = (
            zb_f(which, l1 + 1, l2, p),
            zb_f(which, l1, l2, p),
            g(which, l1, l2, p + 1),
            g(which, l1, l2, p),
        );
        match vals {
            (Some(a), Some(b), Some(x), Some(y)) => {
                rep.checked += 1;
                if a - b != x - y {
                    rep.failures.push((l1, l2, p));
                }
            }
            _ => rep.skipped_poles.push((l1, l2, p)),
        }
    }
    rep
}

/// Check f(l1+1,l2,p) - f(l1,l2,p) = g(l1,l2,p+1) - g(l1,l2,p) with the printed g.
pub fn check_zb_certificate(which: Which, grid: &[(i64, i64, i64)]) -> ZbReport {
    zb_check_with(which, grid, zb_g_printed)
}

/// Same check with the corrected companion.
pub fn check_zb_certificate_corrected(which: Which, grid: &[(i64, i64, i64)]) -> ZbReport {
    zb_check_with(which, grid, zb_g)
}

/// Σ_p f(l1, l2, p) over p >= 0.
pub fn zb_sum(which: Which, l1: i64, l2: i64) -> Option<Rat> {
    let mut acc = Rat::zero();
    for p in 0..=(l1.max(l2) + 2) {
        acc += zb_f(which, l1, l2, p)?;
    }
    Some(acc)
}

/// Both sides of the monomial form of the s-weighted bilinear identity for
/// U1 = x^n, U2 = x^m, with C(a, b) = 0 unless b is a nonnegative integer.
pub fn bilinear_identity_monomial(n: i64, m: i64) -> (Rat, Rat) {
    let half = |a: i64, b2: i64| -> Rat {
        // C(a, b2/2)
        if b2 % 2 != 0 || b2 < 0 || a < 0 {
            Rat::zero()
        } else {
            c(a, b2 / 2)
        }
    };
    let bracket = Rat::new(n.into(), 4.into()) * half(n, n) * half(m + 1, m + 1)
        + Rat::new(m.into(), 4.into()) * half(m, m) * half(n + 1, n + 1)
        + ri(m) * half(n, n) * half(m - 1, m - 1)
        + ri(n) * half(m, m) * half(n - 1, n - 1);
    let lhs = bracket / ri(n + m + 1);
    let rhs = Rat::new(m.into(), (m + 1).into()) * half(n, n) * half(m - 1, m - 1)
        + Rat::new(n.into(), (n + 1).into()) * half(m, m) * half(n - 1, n - 1);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(binomial_identity_sides(Which::First, 1, 1).0, ri(1));
        assert_eq!(binomial_identity_sides(Which::First, 1, 2).0, ri(4));
        assert!(check_binomial_identity(Which::Second, 0, 0));
        assert!(check_zb_certificate(Which::First, &[(2, 2, 1), (3, 5, 2)]).ok());
        assert!(check_zb_certificate_corrected(Which::Second, &[(2, 3, 1)]).ok());
        assert!(!check_zb_certificate(Which::Second, &[(2, 3, 1)]).ok());
        let (a, b) = bilinear_identity_monomial(4, 3);
        assert_eq!(a, b);
        assert_eq!(a, Rat::new(3.into(), 4.into()) * ri(6) * ri(2));
    }
}
