use planarlim::algebra::binomial::{check_binomial_identity, Which};
use planarlim::algebra::rat::{rat, ri};
use planarlim::closed_forms::expr::{eval_with, parse};
use planarlim::equilibrium::{equilibrium, bilinear_identity_sides, planar_energy_alt, Potential};
use planarlim::series::USeries;
use planarlim::{BigFloat, Rat};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn binomial_identities(l1 in 0i64..80, l2 in 0i64..80) {
        prop_assert!(check_binomial_identity(Which::First, l1, l2));
        prop_assert!(check_binomial_identity(Which::Second, l1, l2));
    }

    // the s-weighted identity is quadratic in U, so random polynomials exercise the cross terms
    #[test]
    fn bilinear_identity_random_polynomials(cs in proptest::collection::vec(-9i64..10, 1..9)) {
        let u: Vec<Rat> = cs.iter().map(|&c| ri(c)).collect();
        let (l, r) = bilinear_identity_sides(&u);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn log_exp_roundtrip(cs in proptest::collection::vec(-5i64..6, 1..8)) {
        let mut c = vec![ri(0)];
        c.extend(cs.iter().map(|&x| rat(x, 3)));
        let s = USeries::from_t_coeffs(&c, 10);
        let back = s.exp().unwrap().log().unwrap();
        for k in 0..10 {
            prop_assert_eq!(back.coeff_t(k), s.coeff_t(k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // one-cut quartics: both energy formulas and the corrected closed form agree
    #[test]
    fn quartic_energy(a2n in -10i64..30, a4n in 1i64..30) {
        let (a2, a4) = (rat(a2n, 10), rat(a4n, 10));
        prop_assume!(a2n * a2n >= 400 * a4n / 10 || a2n >= 0);
        let v = Potential::quartic(a2.clone(), a4.clone()).unwrap();
        let r = equilibrium(&v, 192, 2).unwrap();
        let alt = planar_energy_alt(&v, &r.c, &r.b);
        prop_assert!(alt.sub(&r.i_v).abs().to_f64() < 1e-40);
        let e = parse("1/2*log((a2+sqrt(a2^2+12*a4))/2) + (-a2^4-36*a2^2*a4+162*a4^2+(a2^3+30*a2*a4)*sqrt(a2^2+12*a4))/(432*a4^2)").unwrap();
        let env = [("a2", BigFloat::from_rat(&a2, 192)), ("a4", BigFloat::from_rat(&a4, 192))];
        let closed = eval_with(&e, 192, &env).unwrap();
        prop_assert!(closed.sub(&r.i_v).abs().to_f64() < 1e-35);
    }
}
