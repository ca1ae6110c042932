use proptest::prelude::*;

use qsum_core::classical::{bernoulli_poly, power_sum, power_sum_poly};
use qsum_core::field::{frac, rat, Poly, RatFunc, Rational};
use qsum_core::qobjects::{q_binomial, q_bracket, q_int, q_power};
use qsum_core::sums::{schlosser_sum, thm3_lhs};
use qsum_core::QExp;

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| Poly::from_ints(&c))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::normalize(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
            prop_assert_eq!((&b * &a).checked_div(&a).unwrap(), b.clone());
        }
    }

    #[test]
    fn canonical_form_is_scale_invariant(n in small_poly(), d in nonzero_poly(), c in nonzero_rational(), s in nonzero_poly()) {
        let base = RatFunc::normalize(n.clone(), d.clone()).unwrap();
        let scaled = RatFunc::normalize(n.scale(&c) * s.clone(), d.scale(&c) * s).unwrap();
        prop_assert_eq!(&base.to_canonical_string(), &scaled.to_canonical_string());
        prop_assert_eq!(&base, &scaled);
        prop_assert_eq!(base.den().leading_coeff().cloned(), Some(rat(1)));
        prop_assert!(base.num().gcd(base.den()).degree() == Some(0));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in nonzero_rational()) {
        if let (Ok(ax), Ok(bx)) = (a.eval_at(&x), b.eval_at(&x)) {
            prop_assert_eq!((&a + &b).eval_at(&x).unwrap(), &ax + &bx);
            prop_assert_eq!((&a * &b).eval_at(&x).unwrap(), &ax * &bx);
        }
    }

    #[test]
    fn q_power_is_additive(a in -20i64..=20, b in -20i64..=20) {
        let (ea, eb) = (QExp::from_twice(a), QExp::from_twice(b));
        prop_assert_eq!(q_power(ea + eb), &q_power(ea) * &q_power(eb));
    }

    #[test]
    fn q_int_recurrence_and_limit(k in 1i64..=15) {
        prop_assert_eq!(q_int(k + 1), &RatFunc::one() + &(&q_power(QExp::int(1)) * &q_int(k)));
        prop_assert_eq!(q_int(k).limit_at_v1().unwrap(), rat(k));
        prop_assert_eq!(q_bracket(QExp::int(k), 2).limit_at_v1().unwrap(), rat(k));
    }

    #[test]
    fn q_pascal(n in 1u32..=10, k in 0i64..=10) {
        let lhs = q_binomial(n + 1, k);
        let rhs = &q_binomial(n, k - 1) + &(&q_power(QExp::int(k)) * &q_binomial(n, k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classical_sums_match_brute_force(n in 1u32..=8, k in 0u64..=15) {
        prop_assert_eq!(power_sum_poly(n).eval(&rat(k as i64)), power_sum(n, k));
        let shift = &bernoulli_poly(n + 1).eval(&rat(k as i64 + 1)) - &bernoulli_poly(n + 1).eval(&rat(k as i64));
        prop_assert_eq!(shift, &rat(i64::from(n) + 1) * &Rational::from_integer(num_bigint::BigInt::from(k).pow(n)));
    }

    #[test]
    fn q_sums_tend_to_power_sums(m in 1u32..=5, n in 0u32..=6) {
        let direct: Rational = (1..=i64::from(n)).map(|j| rat(j).pow(m as i32)).sum();
        prop_assert_eq!(schlosser_sum(m, n).limit_at_v1().unwrap(), direct);
        prop_assert_eq!(thm3_lhs(m, n).limit_at_v1().unwrap(), power_sum(m, u64::from(n)));
    }
}
