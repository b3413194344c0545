use proptest::prelude::*;
use wflag_core::arith::{hilbert_fraction, rat, series_of, solve_exact, RationalFunction, Solution, UniPolynomial};

fn poly() -> impl Strategy<Value = UniPolynomial> {
    prop::collection::vec(-6i64..=6, 0..7).prop_map(|c| UniPolynomial::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = UniPolynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Denominators with a nonzero constant term, so the series at 0 exists.
fn den_poly() -> impl Strategy<Value = UniPolynomial> {
    (prop_oneof![Just(1i64), Just(-1), Just(2)], prop::collection::vec(-4i64..=4, 0..5)).prop_map(|(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        UniPolynomial::from_i64s(&c)
    })
}

proptest! {
    #[test]
    fn xgcd_bezout(a in nonzero_poly(), b in nonzero_poly()) {
        let (g, s, t) = a.xgcd(&b).unwrap();
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        prop_assert!(g.leading_coeff().unwrap() == &rat(1));
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn div_rem_reconstructs(a in poly(), b in nonzero_poly()) {
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn canonical_form_ignores_common_factors(n in poly(), d in den_poly(), c in nonzero_poly()) {
        let f = RationalFunction::new(n.clone(), d.clone()).unwrap();
        let g = RationalFunction::new(&n * &c, &d * &c).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert!(f.denominator().leading_coeff().unwrap() == &rat(1));
        prop_assert_eq!(f.to_string().parse::<RationalFunction>().unwrap(), f);
    }

    #[test]
    fn series_prefix_stable(n in poly(), d in den_poly(), short in 0usize..8, extra in 0usize..8) {
        let f = RationalFunction::new(n, d).unwrap();
        let long = series_of(&f, short + extra).unwrap();
        prop_assert_eq!(long.truncated(short), series_of(&f, short).unwrap());
    }

    #[test]
    fn series_times_denominator(n in poly(), d in den_poly(), prec in 0usize..10) {
        let f = RationalFunction::new(n.clone(), d.clone()).unwrap();
        let s = series_of(&f, prec).unwrap().to_polynomial();
        let back = (&s * f.denominator()).truncate(prec);
        prop_assert_eq!(back, f.numerator().truncate(prec));
    }

    #[test]
    fn field_identities(a in poly(), b in den_poly(), c in poly(), d in den_poly()) {
        let f = RationalFunction::new(a, b).unwrap();
        let g = RationalFunction::new(c, d).unwrap();
        prop_assert!((&(&f + &g) - &g) == f);
        if !g.is_zero() {
            prop_assert_eq!((&f * &g).checked_div(&g).unwrap(), f);
        }
    }

    #[test]
    fn hilbert_fraction_is_the_plain_quotient(
        h in nonzero_poly(),
        w in prop::collection::vec(1u32..7, 1..5),
    ) {
        let den = w.iter().fold(UniPolynomial::one(), |acc, &x| &acc * &UniPolynomial::one_minus_t_pow(x as usize));
        prop_assert_eq!(hilbert_fraction(&h, &w), RationalFunction::new(h, den).unwrap());
    }

    #[test]
    fn solver_recovers_unique_solutions(
        m in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3),
        x in prop::collection::vec(-9i64..=9, 3),
    ) {
        let rows: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        let rhs: Vec<_> = m.iter().map(|r| rat(r.iter().zip(&x).map(|(a, b)| a * b).sum())).collect();
        let want: Vec<_> = x.iter().map(|&v| rat(v)).collect();
        match solve_exact(&rows, &rhs, 3) {
            Solution::Unique(v) => prop_assert_eq!(v, want),
            Solution::Underdetermined { particular, .. } => {
                for (r, b) in rows.iter().zip(&rhs) {
                    let lhs: wflag_core::arith::Rational = r.iter().zip(&particular).map(|(a, y)| a * y).sum();
                    prop_assert_eq!(&lhs, b);
                }
            }
            Solution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
        }
    }
}
