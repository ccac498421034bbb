use laguerre_deform::algebra::{int, parse_rational, rat, Poly, Rational};
use laguerre_deform::deform::{apply_deformation, m_poly, Alpha};
use laguerre_deform::gram::MFamily;
use laguerre_deform::laguerre::laguerre;
use laguerre_deform::measure::MeasureParams;
use laguerre_deform::measure::MomentFunctional;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..15).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(rational(), 0..8).prop_map(Poly::from_coeffs)
}

fn alpha() -> impl Strategy<Value = Alpha> {
    prop_oneof![Just(Alpha::Plus), Just(Alpha::Minus)]
}

/// `(s, β)` with `β - s > -1`.
fn admissible() -> impl Strategy<Value = (u32, Rational)> {
    (0u32..5, 0i64..40, 1i64..7).prop_map(|(s, k, d)| (s, int(s as i64) - int(1) + rat(k + 1, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_display_round_trips(x in rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn deformation_group_law(p in poly(), s in rational(), t in rational(), a in alpha()) {
        let once = apply_deformation(&apply_deformation(&p, &s, a), &t, a);
        prop_assert_eq!(once, apply_deformation(&p, &(&s + &t), a));
    }

    #[test]
    fn deformation_inverts(p in poly(), s in rational(), a in alpha()) {
        let back = apply_deformation(&apply_deformation(&p, &s, a), &(-&s), a);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn deformation_is_linear(p in poly(), q in poly(), c in rational(), s in rational(), a in alpha()) {
        let lhs = apply_deformation(&(&p + &q.scale(&c)), &s, a);
        let rhs = apply_deformation(&p, &s, a) + apply_deformation(&q, &s, a).scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn plus_deformation_shifts_beta(n in 0usize..8, beta in rational(), s in 0i64..6) {
        let s = int(s);
        prop_assert_eq!(apply_deformation(&laguerre(n, &beta), &s, Alpha::Plus), laguerre(n, &(&beta - &s)));
    }

    #[test]
    fn partial_orthogonality((s, beta) in admissible(), n in 0usize..9) {
        let mut f = MomentFunctional::new(MeasureParams::new(s, beta.clone()).unwrap());
        let got = f.apply_coeff(&m_poly(n, &beta, &int(s as i64)));
        prop_assert_eq!(got, if n == 0 { Rational::one() } else { Rational::zero() });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn c_family_is_orthogonal((s, beta) in admissible()) {
        let mut fam = MFamily::new(s, &beta).unwrap();
        let cs: Vec<Option<Poly>> = (0..5).map(|n| fam.c_poly(n).ok()).collect();
        for n in 0..cs.len() {
            for m in 0..n {
                if let (Some(cn), Some(cm)) = (&cs[n], &cs[m]) {
                    prop_assert!(fam.inner(cn, cm).is_zero(), "n={} m={} s={} beta={}", n, m, s, beta);
                }
            }
        }
    }
}
