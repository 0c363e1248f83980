use kgibbs::approx::lagrange_interpolant;
use kgibbs::combinat::{binom, binom_uncached, binomial, forward_difference, int, rat, t_number};
use kgibbs::gibbs::{DecimalValue, Rounding};
use kgibbs::krawtchouk::KrawtchoukFamily;
use kgibbs::poly::{binom_poly, Poly, Sign};
use kgibbs::steepident::{s_of_m, steepness_exact, t_of_m};
use kgibbs::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..7).prop_map(Poly::from_coeffs)
}

fn falling(a: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut fact = BigRational::one();
    for j in 0..k {
        acc *= a - int(j as i64);
        fact *= int(j as i64 + 1);
    }
    acc / fact
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomial_is_falling_factorial(a in small_rat(), k in 0usize..10) {
        prop_assert_eq!(binomial(&a, k), falling(&a, k));
    }

    #[test]
    fn pascal_rule(n in -30i64..60, k in 1i64..40) {
        prop_assert_eq!(binom(n + 1, k), binom(n, k) + binom(n, k - 1));
        prop_assert_eq!(binom(n, k), binom_uncached(n, k));
    }

    #[test]
    fn binomial_matches_integer(n in 0i64..80, k in 0usize..20) {
        prop_assert_eq!(binomial(&int(n), k), BigRational::from_integer(binom(n, k as i64)));
    }

    #[test]
    fn t_numbers_are_integers(p in 0usize..30, q in 0usize..30) {
        prop_assert!(t_number(p, q).is_integer());
    }

    #[test]
    fn forward_difference_iterates(values in prop::collection::vec(small_rat(), 1..10)) {
        // n-fold application of (Delta h)(z) = h(z+1) - h(z), read at 0
        let n = values.len() - 1;
        let mut seq = values.clone();
        for _ in 0..n {
            seq = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        prop_assert_eq!(forward_difference(&values, n).unwrap(), seq[0].clone());
    }

    #[test]
    fn forward_difference_kills_low_degree(p in small_poly(), extra in 1usize..4) {
        let n = p.degree().map_or(0, |d| d) + extra;
        let values: Vec<_> = (0..=n).map(|v| p.eval(&int(v as i64))).collect();
        prop_assert!(forward_difference(&values, n).unwrap().is_zero());
    }

    #[test]
    fn eval_is_a_ring_map(f in small_poly(), g in small_poly(), x in small_rat()) {
        prop_assert_eq!((&f + &g).eval(&x), f.eval(&x) + g.eval(&x));
        prop_assert_eq!((&f - &g).eval(&x), f.eval(&x) - g.eval(&x));
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
    }

    #[test]
    fn derivative_rules(f in small_poly(), g in small_poly(), c in small_rat()) {
        prop_assert_eq!((&f + &g.scale(&c)).derivative(), &f.derivative() + &g.derivative().scale(&c));
        prop_assert_eq!(
            (&f * &g).derivative(),
            &(&f.derivative() * &g) + &(&f * &g.derivative())
        );
    }

    #[test]
    fn shift_and_scale_substitute(f in small_poly(), a in small_rat(), x in small_rat()) {
        prop_assert_eq!(f.shift(&a).eval(&x), f.eval(&(&x + &a)));
        prop_assert_eq!(f.scale_var(&a).eval(&x), f.eval(&(&a * &x)));
    }

    #[test]
    fn integer_form_round_trips(f in small_poly()) {
        let (numer, denom) = f.integer_form();
        prop_assert_eq!(Poly::from_integer_form(numer, &denom), f);
    }

    #[test]
    fn binom_poly_evaluates(c in small_rat(), k in 0usize..8, x in small_rat()) {
        prop_assert_eq!(binom_poly(&c, Sign::Plus, k).eval(&x), binomial(&(&c + &x), k));
        prop_assert_eq!(binom_poly(&c, Sign::Minus, k).eval(&x), binomial(&(&c - &x), k));
    }

    #[test]
    fn decimal_round_trip(n in -10_000_000i64..10_000_000, d in 1i64..5000, places in 0u32..9) {
        for mode in [Rounding::HalfEven, Rounding::Truncate] {
            let v = DecimalValue::from_rational(&rat(n, d), places, mode);
            let back: DecimalValue = v.to_string().parse().unwrap();
            prop_assert_eq!(back.to_rational(), v.to_rational());
            prop_assert!((v.to_rational() - rat(n, d)).abs() <= v.error_bound());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn three_steepness_routes_agree(m in 1usize..60) {
        let exact = steepness_exact(2 * m).unwrap();
        prop_assert_eq!(&exact, &t_of_m(m).unwrap());
        prop_assert_eq!(&exact, &s_of_m(m).unwrap());
        prop_assert_eq!(exact, lagrange_interpolant(2 * m).unwrap().coeff(1));
    }

    #[test]
    fn interpolant_is_odd(half in 1usize..25) {
        prop_assert!(lagrange_interpolant(2 * half).unwrap().is_odd());
    }

    #[test]
    fn krawtchouk_orthogonal(half in 1usize..10, i in 0usize..20, j in 0usize..20, a in 1i64..9) {
        let size = 2 * half;
        let (i, j) = (i % (size + 1), j % (size + 1));
        prop_assume!(i != j);
        let fam = KrawtchoukFamily::new(size, rat(a, 10)).unwrap();
        let (ki, kj) = (fam.shifted_k(i).unwrap(), fam.shifted_k(j).unwrap());
        prop_assert!(fam.inner_product(&ki, &kj).is_zero());
    }

    #[test]
    fn symmetric_norm_closed_form(half in 1usize..15, n in 0usize..30) {
        let size = 2 * half;
        let n = n % (size + 1);
        let fam = KrawtchoukFamily::symmetric(size).unwrap();
        let k = fam.shifted_k(n).unwrap();
        prop_assert_eq!(fam.inner_product(&k, &k), fam.norm_sq(n).unwrap());
    }
}
