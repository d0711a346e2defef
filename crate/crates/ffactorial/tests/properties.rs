//! Randomized structural properties complementing the acceptance gate.

use ffactorial::bhargava::{factorial_s, IntegerSet};
use ffactorial::chebyshev::theta_f;
use ffactorial::fmap::FMap;
use ffactorial::interval::BoundedValue;
use ffactorial::legendre::{exponent, factorial, generalized_binomial, log_of_vector};
use proptest::prelude::*;
use rug::{Integer, Rational};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifted_linear_dsl_round_trips(a in 1u64..20, b in -9i64..20) {
        let f = FMap::ShiftedLinear { a, b };
        let back: FMap = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn identity_factorial_is_ordinary(n in 0u64..300) {
        let v = factorial(&FMap::Identity, n).unwrap().to_integer();
        prop_assert_eq!(v, Integer::from(Integer::factorial(n as u32)));
    }

    #[test]
    fn binomial_symmetry(n in 0u64..80, k in 0u64..80) {
        prop_assume!(k <= n);
        let f: FMap = "x-1".parse().unwrap();
        let a = generalized_binomial(&f, n, k).unwrap();
        let b = generalized_binomial(&f, n, n - k).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exponents_nondecreasing_in_n(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), n in 1u64..120) {
        let f: FMap = "x-1".parse().unwrap();
        let lo = exponent(&f, p, n - 1).unwrap();
        let hi = exponent(&f, p, n).unwrap();
        prop_assert!(hi >= lo);
    }

    #[test]
    fn log_factorial_encloses_exact(n in 0u64..60) {
        let f = FMap::HalfCeiling;
        let vec = factorial(&f, n).unwrap();
        let value = vec.to_integer();
        let enclosure = log_of_vector(&vec, 64);
        if value > 1 {
            let exact = BoundedValue::ln_rational(128, &Rational::from(value));
            prop_assert!(enclosure.overlaps(&exact));
        } else {
            prop_assert!(enclosure.contains_f64(0.0));
        }
    }

    #[test]
    fn interval_product_contains_exact(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        let x = BoundedValue::from_f64(64, a);
        let y = BoundedValue::from_f64(64, b);
        prop_assert!(x.mul(&y).contains_f64(a * b));
    }

    #[test]
    fn explicit_integer_prefix_is_ordinary_factorial(n in 0usize..8) {
        let set = IntegerSet::explicit((0..=40).collect()).unwrap();
        let got = factorial_s(&set, n).unwrap();
        prop_assert_eq!(got, Integer::from(Integer::factorial(n as u32)));
    }

    #[test]
    fn theta_f_monotone(x in 0i64..200, step in 1i64..50) {
        let f: FMap = "x-1".parse().unwrap();
        let lo = theta_f(&f, &Rational::from(x), 64).unwrap();
        let hi = theta_f(&f, &Rational::from(x + step), 64).unwrap();
        prop_assert!(hi.hi().to_f64() >= lo.lo().to_f64());
    }
}
