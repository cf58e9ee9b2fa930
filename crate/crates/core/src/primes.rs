//! Prime sieve, the inequality
//! `Σ_{i≤n} 1/i <= ∏_{p≤n}(1 + 1/p) · Σ_{i≤n} 1/i²` that forces `Σ 1/p = ∞`,
//! and density experiments on the span `{1, x^p : p prime}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::gram::{self, closed_form_delta, DistanceReport};
use crate::poly::GeneralizedPolynomial;
use crate::quadrature::{integrate, QuadratureConfig};

/// Largest sieve bound accepted by the public entry points.
pub const SIEVE_CEILING: u64 = 10_000_000;

/// Largest `n` for exact-rational Euler reports.
pub const EXACT_EULER_LIMIT: u64 = 1_000;

/// All primes `<= n`, ascending. Sieve of Eratosthenes over a bit array.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let len = n as usize + 1;
    // bit set => composite
    let mut bits = vec![0u64; len.div_ceil(64)];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
    let mut i = 2usize;
    while i * i < len {
        if !is_set(&bits, i) {
            let mut j = i * i;
            while j < len {
                bits[j / 64] |= 1 << (j % 64);
                j += i;
            }
        }
        i += 1;
    }
    (2..len)
        .filter(|&k| !is_set(&bits, k))
        .map(|k| k as u64)
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact companions of an [`EulerReport`], as `num/den` strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactEuler {
    pub harmonic: String,
    pub product_plus: String,
    pub product_minus: String,
    pub basel: String,
}

/// Partial sums and products for one `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerReport {
    pub n: u64,
    pub harmonic: f64,
    pub product_plus: f64,
    pub product_minus: f64,
    pub basel: f64,
    pub inequality_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactEuler>,
}

fn check_euler_range(n_max: u64, exact: bool) -> Result<()> {
    if n_max < 2 {
        return Err(invalid(format!("Euler report needs n >= 2, got {n_max}")));
    }
    if exact && n_max > EXACT_EULER_LIMIT {
        return Err(invalid(format!(
            "exact mode is limited to n <= {EXACT_EULER_LIMIT}, got {n_max}"
        )));
    }
    if n_max > SIEVE_CEILING {
        return Err(invalid(format!(
            "n = {n_max} exceeds the sieve ceiling {SIEVE_CEILING}"
        )));
    }
    Ok(())
}

/// Report for a single `n`.
pub fn euler_report(n: u64, exact: bool) -> Result<EulerReport> {
    let mut rows = euler_table(n, exact)?;
    Ok(rows.pop().expect("n >= 2 yields rows"))
}

/// Reports for every `n` in `2..=n_max`, computed incrementally.
pub fn euler_table(n_max: u64, exact: bool) -> Result<Vec<EulerReport>> {
    check_euler_range(n_max, exact)?;
    let is_p = prime_mask(n_max);
    Ok(if exact {
        exact_rows(n_max, &is_p)
    } else {
        float_rows(n_max, &is_p)
    })
}

fn prime_mask(n: u64) -> Vec<bool> {
    let mut mask = vec![false; n as usize + 1];
    for p in primes_up_to(n) {
        mask[p as usize] = true;
    }
    mask
}

fn float_rows(n_max: u64, is_p: &[bool]) -> Vec<EulerReport> {
    let mut harmonic = 0.0;
    let mut basel = 0.0;
    let mut log_plus = 0.0;
    let mut log_minus = 0.0;
    let mut rows = Vec::with_capacity(n_max as usize);
    for i in 1..=n_max {
        let x = i as f64;
        harmonic += 1.0 / x;
        basel += 1.0 / (x * x);
        if is_p[i as usize] {
            log_plus += (1.0 / x).ln_1p();
            log_minus += (-1.0 / x).ln_1p();
        }
        if i >= 2 {
            let product_plus = log_plus.exp();
            rows.push(EulerReport {
                n: i,
                harmonic,
                product_plus,
                product_minus: log_minus.exp(),
                basel,
                inequality_holds: harmonic <= product_plus * basel,
                exact: None,
            });
        }
    }
    rows
}

fn exact_rows(n_max: u64, is_p: &[bool]) -> Vec<EulerReport> {
    let one = BigRational::one();
    let mut harmonic = BigRational::zero();
    let mut basel = BigRational::zero();
    let mut plus = BigRational::one();
    let mut minus = BigRational::one();
    let mut rows = Vec::with_capacity(n_max as usize);
    for i in 1..=n_max {
        let inv = BigRational::new(BigInt::one(), BigInt::from(i));
        harmonic += &inv;
        basel += &inv * &inv;
        if is_p[i as usize] {
            plus *= &one + &inv;
            minus *= &one - &inv;
        }
        if i >= 2 {
            let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
            rows.push(EulerReport {
                n: i,
                harmonic: f(&harmonic),
                product_plus: f(&plus),
                product_minus: f(&minus),
                basel: f(&basel),
                inequality_holds: harmonic <= &plus * &basel,
                exact: Some(ExactEuler {
                    harmonic: gram::exact::format_rational(&harmonic),
                    product_plus: gram::exact::format_rational(&plus),
                    product_minus: gram::exact::format_rational(&minus),
                    basel: gram::exact::format_rational(&basel),
                }),
            });
        }
    }
    rows
}

/// `{0} ∪ {p prime : p <= n}`.
pub fn prime_span_exponents(n: u64) -> Vec<f64> {
    std::iter::once(0.0)
        .chain(primes_up_to(n).into_iter().map(|p| p as f64))
        .collect()
}

/// `d(x^q, span{1, x^p : p <= n prime})` in `L²[0,1]`.
pub fn prime_exponent_distance(q: f64, n: u64) -> Result<DistanceReport> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(invalid(format!("q = {q} must be positive")));
    }
    if q.fract() == 0.0 && is_prime(q as u64) {
        return Err(invalid(format!(
            "q = {q} is prime and therefore already in the span"
        )));
    }
    if n > SIEVE_CEILING {
        return Err(invalid(format!(
            "n = {n} exceeds the sieve ceiling {SIEVE_CEILING}"
        )));
    }
    gram::distance_to_span(q, &prime_span_exponents(n))
}

/// Source of the moments `⟨f, x^λ⟩` and `⟨f, f⟩` of a function on `[0, 1]`.
pub trait MomentProvider {
    fn moment(&self, exponent: f64) -> Result<f64>;
    fn norm_squared(&self) -> Result<f64>;
}

impl MomentProvider for GeneralizedPolynomial {
    fn moment(&self, exponent: f64) -> Result<f64> {
        Ok(gram::polynomial_moments(self, &[exponent])[0])
    }

    fn norm_squared(&self) -> Result<f64> {
        Ok(gram::l2_norm_squared(self))
    }
}

/// Moments of an arbitrary function by composite Gauss–Legendre quadrature.
pub struct QuadratureMoments<F> {
    f: F,
    config: QuadratureConfig,
}

impl<F: Fn(f64) -> f64> QuadratureMoments<F> {
    pub fn new(f: F) -> Self {
        QuadratureMoments {
            f,
            config: QuadratureConfig::graded(),
        }
    }

    pub fn with_config(f: F, config: QuadratureConfig) -> Self {
        QuadratureMoments { f, config }
    }
}

impl<F: Fn(f64) -> f64> MomentProvider for QuadratureMoments<F> {
    fn moment(&self, exponent: f64) -> Result<f64> {
        integrate(|x| (self.f)(x) * x.powf(exponent), 0.0, 1.0, &self.config)
    }

    fn norm_squared(&self) -> Result<f64> {
        integrate(|x| (self.f)(x).powi(2), 0.0, 1.0, &self.config)
    }
}

/// Squared residual of the `L²` projection of `f` onto
/// `span{1, x^p : p <= n prime}`.
///
/// If every moment `⟨f, 1⟩, ⟨f, x^p⟩` vanished the projection would be 0 and
/// the residual would equal `⟨f, f⟩`; density of the prime span instead
/// drives it to 0 as `n` grows.
pub fn moment_vanishing_residual<M: MomentProvider + ?Sized>(f: &M, n: u64) -> Result<f64> {
    let exps = prime_span_exponents(n);
    let moments = exps
        .iter()
        .map(|&l| f.moment(l))
        .collect::<Result<Vec<_>>>()?;
    let projection = gram::project_l2(&moments, &exps, Some(f.norm_squared()?))?;
    Ok(projection.residual_squared.expect("norm supplied"))
}

/// `δ(x^q, span{1, x^p : p <= n})²`: the residual of a pure monomial, from the
/// closed form, usable far past the point where the normal equations fail.
pub fn monomial_prime_residual(q: f64, n: u64) -> Result<f64> {
    Ok(closed_form_delta(q, &prime_span_exponents(n))?.powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_examples() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).is_empty());
        assert!(primes_up_to(0).is_empty());
        let p = primes_up_to(100);
        assert_eq!(p.len(), 25);
        assert_eq!(*p.last().unwrap(), 97);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = primes_up_to(2000);
        let trial: Vec<u64> = (0..=2000).filter(|&k| is_prime(k)).collect();
        assert_eq!(sieve, trial);
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }

    fn rat(n: i64, d: i64) -> String {
        gram::exact::format_rational(&BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn euler_small_cases_exact() {
        let r = euler_report(3, true).unwrap();
        let e = r.exact.as_ref().unwrap();
        assert_eq!(e.harmonic, rat(11, 6));
        assert_eq!(e.product_plus, "2");
        assert_eq!(e.basel, rat(49, 36));
        assert_eq!(e.product_minus, rat(1, 3));
        assert!(r.inequality_holds);

        let r = euler_report(2, true).unwrap();
        assert_eq!(r.exact.as_ref().unwrap().harmonic, rat(3, 2));
        assert_eq!(r.product_plus * r.basel, 15.0 / 8.0);
        assert!(r.inequality_holds);
    }

    #[test]
    fn euler_guards() {
        assert!(euler_report(1, false).is_err());
        assert!(euler_report(1001, true).is_err());
        assert!(euler_report(SIEVE_CEILING + 1, false).is_err());
    }

    #[test]
    fn euler_float_large_n() {
        let big = euler_report(100_000, false).unwrap();
        let small = euler_report(1_000, false).unwrap();
        assert!(big.inequality_holds);
        assert!(big.product_minus < small.product_minus);
    }

    #[test]
    fn prime_distance_examples() {
        let d = prime_exponent_distance(6.0, 2).unwrap();
        let want = (1.0 / 13f64.sqrt()) * (6.0 / 7.0) * (4.0 / 9.0);
        assert!((d.delta - want).abs() < 1e-15);
        assert_eq!(d.lambdas, vec![0.0, 2.0]);
        assert_eq!(
            prime_exponent_distance(1.0, 3).unwrap().lambdas,
            vec![0.0, 2.0, 3.0]
        );
        assert!(prime_exponent_distance(5.0, 10).is_err());
        assert!(prime_exponent_distance(0.0, 10).is_err());
        assert!(prime_exponent_distance(2.5, 10).is_ok());
    }

    #[test]
    fn residual_examples() {
        let x2 = GeneralizedPolynomial::on_unit([crate::poly::Term::new(1.0, 2.0)]).unwrap();
        // x² is itself a prime monomial once n >= 2
        assert!(moment_vanishing_residual(&x2, 20).unwrap() < 1e-3);
        let one = GeneralizedPolynomial::on_unit([crate::poly::Term::new(1.0, 0.0)]).unwrap();
        assert!(moment_vanishing_residual(&one, 0).unwrap() < 1e-15);
        assert!(moment_vanishing_residual(&one, 13).unwrap() < 1e-12);
    }
}
