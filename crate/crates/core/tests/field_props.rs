use std::sync::OnceLock;

use liespectra::field::{factor_univariate, solve_quadratic, UniPoly};
use liespectra::{FieldElement, TowerContext};
use proptest::prelude::*;

/// ℚ(√2)(i).
fn tower() -> &'static (TowerContext, FieldElement, FieldElement) {
    static T: OnceLock<(TowerContext, FieldElement, FieldElement)> = OnceLock::new();
    T.get_or_init(|| {
        let (ctx, r2) = TowerContext::rationals()
            .adjoin_sqrt(&FieldElement::from_int(2))
            .unwrap();
        let (ctx, i) = ctx.adjoin_sqrt(&FieldElement::from_int(-1)).unwrap();
        (ctx, r2, i)
    })
}

fn rational() -> impl Strategy<Value = FieldElement> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| FieldElement::frac(n, d))
}

fn element() -> impl Strategy<Value = FieldElement> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| {
        let (_, r2, i) = tower();
        let ri = r2 * i;
        a + b * r2.clone() + c * i.clone() + d * ri
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses(a in element()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), a);
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in element(), b in element()) {
        let c = |x: &FieldElement| x.complex_conj().unwrap();
        prop_assert_eq!(c(&c(&a)), a.clone());
        prop_assert_eq!(c(&(&a * &b)), &c(&a) * &c(&b));
        prop_assert_eq!(c(&(&a + &b)), &c(&a) + &c(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjoined_roots_square_back(n in -60i64..=60, d in 1i64..=9) {
        prop_assume!(n != 0);
        let x = FieldElement::frac(n, d);
        let (_, r) = TowerContext::rationals().adjoin_sqrt(&x).unwrap();
        prop_assert_eq!(&r * &r, x);
    }

    #[test]
    fn quadratic_roots(a in rational(), b in rational(), c in rational()) {
        prop_assume!(!a.is_zero());
        let (_, r1, r2) = solve_quadratic(&TowerContext::gaussian(), &a, &b, &c).unwrap();
        for r in [&r1, &r2] {
            prop_assert!((&(&(&a * r) * r) + &(&(&b * r) + &c)).is_zero());
        }
        prop_assert_eq!(&r1 + &r2, -(&b / &a));
        prop_assert_eq!(&r1 * &r2, &c / &a);
    }

    #[test]
    fn univariate_factorization_multiplies_back(
        roots in proptest::collection::vec(-4i64..=4, 0..4),
        quad in proptest::option::of((-5i64..=5, -5i64..=5)),
    ) {
        let mut p = UniPoly::one();
        for r in &roots {
            p = p.mul(&UniPoly::from_ints(&[-r, 1]));
        }
        if let Some((b, c)) = quad {
            p = p.mul(&UniPoly::from_ints(&[c, b, 1]));
        }
        let f = factor_univariate(&p);
        prop_assert_eq!(f.product(), p);
    }
}
