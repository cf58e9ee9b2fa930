use muntz_core::constructive::{qn_coefficients, QnOracle};
use muntz_core::gram::{self, exact};
use muntz_core::muntz::{density_check, distance_profile, product_sum_table, SeriesBehaviour};
use muntz_core::primes::{euler_report, euler_table, is_prime};
use muntz_core::weierstrass::{abs_approximant, sqrt_iterate};
use muntz_core::{
    cauchy_determinant, distance_to_span, distance_via_gram_ratio, integrate, project_l2,
    ExponentSequence, GeneralizedPolynomial, Grid, QuadratureConfig, Term,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::{direct_cauchy_determinant, rel, separated};

fn terms() -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(
        (
            -10.0..10.0f64,
            prop::sample::select(vec![0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 7.25]),
        ),
        0..6,
    )
    .prop_map(|v| v.into_iter().map(|(c, l)| Term::new(c, l)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_is_idempotent(t in terms()) {
        let p = GeneralizedPolynomial::on_unit(t).unwrap();
        prop_assert_eq!(p.canonical().canonical(), p.canonical());
    }

    #[test]
    fn eval_is_linear(a in terms(), b in terms(), alpha in -5.0..5.0f64, x in 0.0..=1.0f64) {
        let p = GeneralizedPolynomial::on_unit(a).unwrap();
        let q = GeneralizedPolynomial::on_unit(b).unwrap();
        let lhs = p.add_scaled(alpha, &q).unwrap().eval(x).unwrap();
        let rhs = p.eval(x).unwrap() + alpha * q.eval(x).unwrap();
        let scale: f64 = p.terms().iter().chain(q.terms()).map(|t| t.coeff.abs()).sum::<f64>() * (1.0 + alpha.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn monomial_products_integrate(a in -0.4..20.0f64, b in -0.4..20.0f64) {
        let cfg = QuadratureConfig::for_endpoint_exponent(a + b);
        let v = integrate(|x| x.powf(a) * x.powf(b), 0.0, 1.0, &cfg).unwrap();
        prop_assert!(rel(v, 1.0 / (a + b + 1.0)) < 1e-10, "a={} b={} {}", a, b, v);
    }

    #[test]
    fn sqrt_iterates_increase(n in 1u32..2000, t in 0.0..=1.0f64) {
        prop_assert!(sqrt_iterate(n + 1).eval(t) >= sqrt_iterate(n).eval(t) - 1e-14);
    }

    #[test]
    fn two_sided_pointwise_bound(n in 1u32..=10_000, t in 0.0..=1.0f64) {
        let it = sqrt_iterate(n);
        let err = t.sqrt() - it.eval(t);
        prop_assert!(err >= -1e-12 && err <= it.pointwise_bound(t) + 1e-12, "n={} t={} err={}", n, t, err);
    }

    #[test]
    fn abs_approximant_is_even(a in 0.01..100.0f64, n in 1u32..500, s in 0.0..=1.0f64) {
        let q = abs_approximant(a, n).unwrap();
        let t = s * a;
        prop_assert_eq!(q.eval(-t).to_bits(), q.eval(t).to_bits());
    }

    #[test]
    fn cauchy_closed_form_matches_direct_determinant(
        raw in prop::collection::vec((0.0..10.0f64, 0.1..10.0f64), 1..=6)
    ) {
        let xs: Vec<f64> = raw.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = raw.iter().map(|p| p.1).collect();
        prop_assume!(separated(&xs, 0.1) && separated(&ys, 0.1));
        let closed = cauchy_determinant(&xs, &ys).unwrap();
        prop_assert!(rel(closed, direct_cauchy_determinant(&xs, &ys)) < 1e-8);
    }

    #[test]
    fn cauchy_swap_negates_exactly(
        xs in prop::collection::vec(0.0..10.0f64, 2..=8),
        ys in prop::collection::vec(0.1..10.0f64, 8),
        i in 0usize..8, j in 0usize..8,
    ) {
        let n = xs.len();
        let ys = &ys[..n];
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut swapped = xs.clone();
        swapped.swap(i, j);
        let d = cauchy_determinant(&xs, ys).unwrap();
        prop_assert_eq!(cauchy_determinant(&swapped, ys).unwrap().to_bits(), (-d).to_bits());
    }

    #[test]
    fn distance_oracle_equivalence(
        set in prop::sample::subsequence((0..=12).collect::<Vec<i64>>(), 1..=7)
            .prop_shuffle()
    ) {
        let (q, lambdas) = set.split_first().unwrap();
        prop_assume!(!lambdas.is_empty());
        let rl: Vec<BigRational> = lambdas.iter().map(|&l| BigRational::from_integer(BigInt::from(l))).collect();
        let rq = BigRational::from_integer(BigInt::from(*q));
        let fl: Vec<f64> = lambdas.iter().map(|&l| l as f64).collect();
        let closed = distance_to_span(*q as f64, &fl).unwrap().delta;
        let oracle = distance_via_gram_ratio(&rq, &rl).unwrap();
        prop_assert!(rel(closed, oracle.delta) < 1e-9, "{} vs {}", closed, oracle.delta);
    }

    #[test]
    fn appending_an_exponent_never_increases_delta(
        q in 0.0..20.0f64,
        exps in prop::collection::vec(0.0..20.0f64, 1..12),
    ) {
        prop_assume!(separated(&exps, 1e-6));
        prop_assume!(exps.iter().all(|&l| l != q));
        let mut prev = distance_to_span(q, &[]).unwrap().delta;
        for k in 1..=exps.len() {
            let d = distance_to_span(q, &exps[..k]).unwrap().delta;
            prop_assert!(d <= prev * (1.0 + 1e-14));
            prop_assert!(d > 0.0);
            prev = d;
        }
    }

    #[test]
    fn pythagoras_for_projection(
        coeffs in prop::collection::vec(-5i32..=5, 7),
        span in prop::sample::subsequence((0..=8).collect::<Vec<i32>>(), 1..=5),
    ) {
        let g = GeneralizedPolynomial::on_unit(coeffs.iter().enumerate().map(|(k, &c)| Term::new(c as f64, k as f64))).unwrap();
        prop_assume!(!g.is_zero());
        let exps: Vec<f64> = span.iter().map(|&l| l as f64).collect();
        let gg = gram::l2_norm_squared(&g);
        let p = project_l2(&gram::polynomial_moments(&g, &exps), &exps, Some(gg)).unwrap();
        let ff = gram::l2_norm_squared(&p.polynomial);
        prop_assert!(rel(ff + p.residual_squared.unwrap(), gg) < 1e-9);
    }

    #[test]
    fn product_sum_monotone(a in prop::collection::vec(1.001..1e6f64, 1..200)) {
        let rows = product_sum_table(a.iter().copied(), a.len()).unwrap();
        for w in rows.windows(2) {
            prop_assert!(w[1].product < w[0].product);
            prop_assert!(w[1].sum > w[0].sum);
        }
    }

    #[test]
    fn classical_and_full_conditions_agree(slope in 0.1..10.0f64, offset in 0.0..5.0f64, k in 0.1..4.0f64) {
        for seq in [ExponentSequence::affine(slope, offset).starting_at(1).unwrap(), ExponentSequence::power(k).starting_at(1).unwrap()] {
            let v = density_check(&seq, 50).unwrap();
            prop_assert_ne!(v.classical_condition, SeriesBehaviour::Inconclusive);
            prop_assert_eq!(v.classical_condition, v.full_condition);
        }
    }

    #[test]
    fn profile_nonincreasing_for_shuffled_lists(
        q in 0.1..10.0f64,
        exps in prop::collection::vec(0.0..30.0f64, 1..40).prop_shuffle(),
    ) {
        prop_assume!(separated(&exps, 1e-9) && exps.iter().all(|&l| l != q));
        let rows = distance_profile(q, &ExponentSequence::Explicit(exps.clone()), exps.len() - 1).unwrap();
        for w in rows.windows(2) {
            prop_assert!(w[1].delta <= w[0].delta * (1.0 + 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coefficients_match_integral_oracle(
        q in 0.01..5.0f64,
        exps in prop::collection::vec(0.01..10.0f64, 1..=6),
    ) {
        let mut all = exps.clone();
        all.push(q);
        // well separated so the f64 evaluation of Σ a_i x^λ_i does not cancel catastrophically
        prop_assume!(separated(&all, 0.1));
        let n = exps.len();
        let a = qn_coefficients(q, &exps, n).unwrap();
        let oracle = QnOracle::new(q, &exps, n, 1.0 / 21.0).unwrap();
        for k in 1..=20 {
            let x = k as f64 / 21.0;
            let d = (a.eval(x).unwrap() - oracle.eval(x).unwrap()).abs();
            prop_assert!(d <= 1e-6, "x={} diff={}", x, d);
        }
    }

    #[test]
    fn qn_bound_and_l2_consistency(
        q in 0.01..5.0f64,
        exps in prop::collection::vec(0.01..20.0f64, 1..=12),
    ) {
        let mut all = exps.clone();
        all.push(q);
        // keeps the coefficients below ~1e7, where f64 evaluation is trustworthy
        prop_assume!(separated(&all, 0.25));
        let grid = Grid::unit(501).unwrap();
        let a = qn_coefficients(q, &exps, exps.len()).unwrap();
        prop_assert!(a.grid_sup(&grid).unwrap() <= a.bound + 1e-9);
        let l2 = a.l2_norm_squared().sqrt();
        let delta = distance_to_span(q, &exps).unwrap().delta;
        prop_assert!(l2 >= delta - 1e-9, "{} < {}", l2, delta);
    }

    #[test]
    fn bound_decays_for_increasing_exponents(
        q in 0.01..5.0f64,
        gaps in prop::collection::vec(0.05..3.0f64, 1..30),
    ) {
        let mut l = q;
        let exps: Vec<f64> = gaps.iter().map(|g| { l += g; l }).collect();
        let mut prev = 1.0;
        for n in 1..=exps.len() {
            let b = qn_coefficients(q, &exps, n).unwrap().bound;
            prop_assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn euler_exact_agrees_with_float(n in 2u64..=1000) {
        let f = euler_report(n, false).unwrap();
        let e = euler_report(n, true).unwrap();
        let x = e.exact.unwrap();
        for (v, s) in [(f.harmonic, &x.harmonic), (f.product_plus, &x.product_plus), (f.product_minus, &x.product_minus), (f.basel, &x.basel)] {
            let r = exact::to_f64(&exact::parse_rational(s).unwrap());
            prop_assert!(rel(v, r) < 1e-10, "n={} {} vs {}", n, v, r);
        }
        prop_assert_eq!(f.inequality_holds, e.inequality_holds);
    }
}

#[test]
fn materialized_coefficients_match_recursion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=12 {
        let it = sqrt_iterate(n);
        let c = it.coefficients().unwrap();
        for _ in 0..100 {
            let t: f64 = rng.gen();
            let (a, b) = (c.eval_exact(t), it.eval(t));
            assert!((a - b).abs() <= 1e-12, "n={n} t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn euler_product_identity_and_decay() {
    let table = euler_table(20_000, false).unwrap();
    let mut prev_minus = f64::INFINITY;
    let mut squares = 1.0;
    for r in &table {
        if is_prime(r.n) {
            squares *= 1.0 - 1.0 / (r.n as f64 * r.n as f64);
            assert!(r.product_minus < prev_minus);
            prev_minus = r.product_minus;
        }
        let pm = r.product_plus * r.product_minus;
        assert!(pm > 0.0 && pm <= 1.0);
        assert!(rel(pm, squares) < 1e-12, "n={}", r.n);
        assert!(r.inequality_holds);
    }
}
