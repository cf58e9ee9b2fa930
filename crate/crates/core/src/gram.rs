//! `L²[0,1]` geometry of monomial spans.
//!
//! With `⟨x^a, x^b⟩ = 1/(a + b + 1)` the Gram matrix of `{x^{λ_i}}` is the
//! Cauchy matrix `1/(x_i + y_j)` with `x_i = λ_i`, `y_j = λ_j + 1`, so its
//! determinant, its inverse and the distance
//!
//! ```text
//! δ = d(x^q, span{x^{λ_0}, …, x^{λ_n}}) = (2q+1)^{-1/2} ∏ |q − λ_i| / (q + λ_i + 1)
//! ```
//!
//! all have closed forms. The closed forms are the production path; the
//! exact rational determinant ratio exists to check them. Gram matrices of
//! monomials are Hilbert-like and lose all floating-point accuracy quickly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::poly::{GeneralizedPolynomial, Term, MIN_EXPONENT};

/// Products longer than this are accumulated in log space.
pub const LOG_SPACE_THRESHOLD: usize = 30;

/// Size guard for the exact rational determinant.
pub const MAX_EXACT_SIZE: usize = 8;

/// Condition estimate above which the normal equations are refused.
pub const MAX_CONDITION: f64 = 1e14;

/// `⟨x^a, x^b⟩` in `L²[0,1]`.
pub fn monomial_inner(a: f64, b: f64) -> f64 {
    1.0 / (a + b + 1.0)
}

/// `⟨p, r⟩` in `L²[0,1]` from the coefficients alone.
pub fn l2_inner(p: &GeneralizedPolynomial, r: &GeneralizedPolynomial) -> f64 {
    p.terms()
        .iter()
        .flat_map(|s| {
            r.terms()
                .iter()
                .map(move |t| s.coeff * t.coeff * monomial_inner(s.exponent, t.exponent))
        })
        .sum()
}

pub fn l2_norm_squared(p: &GeneralizedPolynomial) -> f64 {
    l2_inner(p, p)
}

/// `⟨p, x^{λ}⟩` for each exponent.
pub fn polynomial_moments(p: &GeneralizedPolynomial, exponents: &[f64]) -> Vec<f64> {
    exponents
        .iter()
        .map(|&l| {
            p.terms()
                .iter()
                .map(|t| t.coeff * monomial_inner(t.exponent, l))
                .sum()
        })
        .collect()
}

/// Gram matrix of `{x^{λ_i}}` in `L²[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    exponents: Vec<f64>,
}

impl GramMatrix {
    pub fn new(exponents: &[f64]) -> Result<Self> {
        check_exponents(exponents)?;
        Ok(GramMatrix {
            exponents: exponents.to_vec(),
        })
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        monomial_inner(self.exponents[i], self.exponents[j])
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// `‖G‖₁ · ‖G⁻¹‖₁` with the inverse taken from the Cauchy closed form,
    /// so the estimate stays meaningful far beyond `1/ε`. Returns infinity
    /// for repeated exponents.
    pub fn condition_estimate(&self) -> f64 {
        let xs = &self.exponents;
        let ys: Vec<f64> = xs.iter().map(|x| x + 1.0).collect();
        match cauchy_inverse_log_abs(xs, &ys) {
            None => f64::INFINITY,
            Some(log_inv) => {
                let n = xs.len();
                let norm = (0..n)
                    .map(|j| (0..n).map(|i| self.entry(i, j).abs()).sum::<f64>())
                    .fold(0.0, f64::max);
                let inv_norm = (0..n)
                    .map(|j| log_sum_exp((0..n).map(|i| log_inv[i][j])))
                    .fold(f64::NEG_INFINITY, f64::max);
                (norm.ln() + inv_norm).exp()
            }
        }
    }

    /// The pair of distinct exponents closest to each other.
    pub fn closest_pair(&self) -> Option<(f64, f64)> {
        let mut sorted = self.exponents.clone();
        sorted.sort_by(f64::total_cmp);
        sorted
            .windows(2)
            .min_by(|a, b| (a[1] - a[0]).total_cmp(&(b[1] - b[0])))
            .map(|w| (w[0], w[1]))
    }
}

fn log_sum_exp(it: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = it.collect();
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `ln |(C⁻¹)_{ij}|` for `C_{ij} = 1/(x_i + y_j)`:
///
/// `(C⁻¹)_{ij} = ∏_k (x_j + y_k)(x_k + y_i) / ((x_j + y_i) ∏_{k≠j}(x_j − x_k) ∏_{k≠i}(y_i − y_k))`.
fn cauchy_inverse_log_abs(xs: &[f64], ys: &[f64]) -> Option<Vec<Vec<f64>>> {
    let n = xs.len();
    let ln = |v: f64| v.abs().ln();
    let mut row_x = vec![0.0; n];
    let mut col_y = vec![0.0; n];
    let mut diff_x = vec![0.0; n];
    let mut diff_y = vec![0.0; n];
    for j in 0..n {
        for k in 0..n {
            row_x[j] += ln(xs[j] + ys[k]);
            col_y[j] += ln(xs[k] + ys[j]);
            if k != j {
                if xs[j] == xs[k] || ys[j] == ys[k] {
                    return None;
                }
                diff_x[j] += ln(xs[j] - xs[k]);
                diff_y[j] += ln(ys[j] - ys[k]);
            }
        }
    }
    Some(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| row_x[j] + col_y[i] - ln(xs[j] + ys[i]) - diff_x[j] - diff_y[i])
                    .collect()
            })
            .collect(),
    )
}

fn check_exponents(exponents: &[f64]) -> Result<()> {
    for &l in exponents {
        if !l.is_finite() || l <= MIN_EXPONENT {
            return Err(invalid(format!(
                "exponent {l} must be a finite number > -1/2"
            )));
        }
    }
    let mut sorted = exponents.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(invalid(format!("duplicate exponent {}", w[0])));
    }
    Ok(())
}

/// Closed-form Cauchy determinant
/// `det(1/(x_i + y_j)) = ∏_{i<j}(x_j − x_i)(y_j − y_i) / ∏_{i,j}(x_i + y_j)`.
pub fn cauchy_determinant(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len();
    if n == 0 || ys.len() != n {
        return Err(invalid(format!(
            "Cauchy determinant needs equal non-empty lengths, got {} and {}",
            n,
            ys.len()
        )));
    }
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            if x + y == 0.0 {
                return Err(invalid(format!(
                    "x_{i} + y_{j} = 0 is a pole of the Cauchy matrix"
                )));
            }
        }
    }
    // Evaluate on sorted nodes so the result depends only on the node sets
    // and the permutation parity; swapping two nodes then negates it exactly.
    let (xs, x_odd) = match sorted_with_parity(xs) {
        Some(v) => v,
        None => return Ok(0.0),
    };
    let (ys, y_odd) = match sorted_with_parity(ys) {
        Some(v) => v,
        None => return Ok(0.0),
    };
    let magnitude = if n > LOG_SPACE_THRESHOLD {
        cauchy_determinant_log_space(&xs, &ys)
    } else {
        let mut det = 1.0;
        for i in 0..n {
            for j in i + 1..n {
                det *= (xs[j] - xs[i]) * (ys[j] - ys[i]);
            }
            for &y in &ys {
                det /= xs[i] + y;
            }
        }
        det
    };
    Ok(if x_odd ^ y_odd { -magnitude } else { magnitude })
}

/// Ascending copy and whether sorting needed an odd permutation; `None` on
/// a repeated value.
fn sorted_with_parity(v: &[f64]) -> Option<(Vec<f64>, bool)> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let sorted: Vec<f64> = idx.iter().map(|&i| v[i]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    // parity = (n − number of cycles) mod 2
    let mut seen = vec![false; idx.len()];
    let mut transpositions = 0;
    for start in 0..idx.len() {
        let mut k = start;
        let mut len = 0;
        while !seen[k] {
            seen[k] = true;
            k = idx[k];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    Some((sorted, transpositions % 2 == 1))
}

fn cauchy_determinant_log_space(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    let mut log = 0.0;
    let mut negative = false;
    let mut take = |v: f64, numerator: bool| {
        negative ^= v < 0.0;
        if numerator {
            log += v.abs().ln();
        } else {
            log -= v.abs().ln();
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            take(xs[j] - xs[i], true);
            take(ys[j] - ys[i], true);
        }
        for &y in ys {
            take(xs[i] + y, false);
        }
    }
    let magnitude = log.exp();
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// How a [`DistanceReport`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMethod {
    ClosedForm,
    GramRatio,
    BruteForceRational,
}

impl DistanceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceMethod::ClosedForm => "closed-form",
            DistanceMethod::GramRatio => "gram-ratio",
            DistanceMethod::BruteForceRational => "brute-force-rational",
        }
    }
}

impl Serialize for DistanceMethod {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// `L²` distance from `x^q` to a finite monomial span.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub q: f64,
    pub lambdas: Vec<f64>,
    pub delta: f64,
    pub method: DistanceMethod,
    pub condition_note: String,
    /// Exact `δ²` as `num/den`, set by the rational route.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_squared_exact: Option<String>,
}

fn condition_note(exponents: &[f64]) -> String {
    if exponents.is_empty() {
        return "empty span".to_string();
    }
    let kappa = GramMatrix {
        exponents: exponents.to_vec(),
    }
    .condition_estimate();
    if kappa.is_finite() {
        format!("Gram matrix 1-norm condition estimate {kappa:.3e}")
    } else {
        "Gram matrix 1-norm condition estimate exceeds f64 range".to_string()
    }
}

/// `δ` by the closed-form product, without building a report.
pub fn closed_form_delta(q: f64, exponents: &[f64]) -> Result<f64> {
    if !q.is_finite() || q <= MIN_EXPONENT {
        return Err(invalid(format!("q = {q} must be a finite number > -1/2")));
    }
    check_exponents(exponents)?;
    let mut log = -0.5 * (2.0 * q + 1.0).ln();
    for &l in exponents {
        if l == q {
            return Ok(0.0);
        }
        log += ((q - l).abs() / (q + l + 1.0)).ln();
    }
    Ok(log.exp())
}

/// `d(x^q, span{x^{λ_i}})` in `L²[0,1]` from the closed form.
pub fn distance_to_span(q: f64, exponents: &[f64]) -> Result<DistanceReport> {
    let delta = closed_form_delta(q, exponents)?;
    Ok(DistanceReport {
        q,
        lambdas: exponents.to_vec(),
        delta,
        method: DistanceMethod::ClosedForm,
        condition_note: condition_note(exponents),
        delta_squared_exact: None,
    })
}

/// `δ` as the last Cholesky pivot of the bordered Gram matrix
/// `G(x^{λ_0}, …, x^{λ_n}, x^q)`, i.e. `√(G(…, x^q)/G(…))` in floating point.
/// Only trustworthy for small, well separated exponent sets.
pub fn distance_via_float_gram(q: f64, exponents: &[f64]) -> Result<DistanceReport> {
    let mut all = exponents.to_vec();
    all.push(q);
    let gram = GramMatrix::new(&all)?;
    let factor = cholesky(&gram.rows()).ok_or_else(|| {
        let (first, second) = gram.closest_pair().unwrap_or((q, q));
        Error::IllConditioned {
            condition: gram.condition_estimate(),
            first,
            second,
        }
    })?;
    let n = all.len();
    Ok(DistanceReport {
        q,
        lambdas: exponents.to_vec(),
        delta: factor[n - 1][n - 1],
        method: DistanceMethod::GramRatio,
        condition_note: condition_note(exponents),
        delta_squared_exact: None,
    })
}

/// Exact rational arithmetic for the Gram determinant oracle.
pub mod exact {
    use super::*;

    /// Parses `"p/q"`, an integer, or a finite decimal into an exact rational.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || invalid(format!("not a rational number: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(invalid("zero denominator"));
            }
            return Ok(BigRational::new(n, d));
        }
        let (mantissa, exp10) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let scale = exp10 - frac_part.len() as i32;
        let ten = BigInt::from(10);
        Ok(if scale >= 0 {
            BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
        })
    }

    pub fn to_f64(r: &BigRational) -> f64 {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn check_rational_exponents(exponents: &[BigRational]) -> Result<()> {
        let min = BigRational::new(BigInt::from(-1), BigInt::from(2));
        for l in exponents {
            if *l <= min {
                return Err(invalid(format!("exponent {l} must exceed -1/2")));
            }
        }
        for (i, a) in exponents.iter().enumerate() {
            if exponents[i + 1..].contains(a) {
                return Err(invalid(format!("duplicate exponent {a}")));
            }
        }
        if exponents.len() > MAX_EXACT_SIZE {
            return Err(invalid(format!(
                "exact Gram determinant is limited to {MAX_EXACT_SIZE} exponents, got {}",
                exponents.len()
            )));
        }
        Ok(())
    }

    /// `det(1/(λ_i + λ_j + 1))` exactly: rows are scaled to integers by the
    /// lcm of their denominators, then reduced by Bareiss fraction-free
    /// elimination.
    pub fn gram_determinant(exponents: &[BigRational]) -> Result<BigRational> {
        check_rational_exponents(exponents)?;
        Ok(gram_determinant_unchecked(exponents))
    }

    fn gram_determinant_unchecked(exponents: &[BigRational]) -> BigRational {
        let one = BigRational::one();
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = exponents
            .iter()
            .map(|a| {
                let row: Vec<BigRational> =
                    exponents.iter().map(|b| (a + b + &one).recip()).collect();
                let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                scale *= &lcm;
                row.iter()
                    .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
                    .collect()
            })
            .collect();
        BigRational::new(bareiss_determinant(&mut m), scale)
    }

    /// Determinant of an integer matrix by Bareiss elimination (in place).
    pub fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// `δ² = G(x^{λ_0}, …, x^{λ_n}, x^q) / G(x^{λ_0}, …, x^{λ_n})` exactly.
    pub fn gram_ratio_delta_squared(
        q: &BigRational,
        exponents: &[BigRational],
    ) -> Result<BigRational> {
        if exponents.contains(q) {
            return Err(invalid(format!(
                "q = {q} collides with an exponent of the span"
            )));
        }
        let mut all = exponents.to_vec();
        all.push(q.clone());
        check_rational_exponents(&all)?;
        Ok(gram_determinant_unchecked(&all) / gram_determinant_unchecked(exponents))
    }

    /// `δ²` from the closed-form product, in exact rationals.
    pub fn closed_form_delta_squared(q: &BigRational, exponents: &[BigRational]) -> BigRational {
        let one = BigRational::one();
        let two = BigRational::from_integer(BigInt::from(2));
        let mut acc = (&two * q + &one).recip();
        for l in exponents {
            let ratio = (q - l) / (q + l + &one);
            acc *= &ratio * &ratio;
        }
        acc
    }

    pub fn format_rational(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// `true` when `r` is an exact power of two times an integer (every `f64`).
    pub fn is_dyadic(r: &BigRational) -> bool {
        let d = r.denom();
        d.is_positive() && (d & (d - BigInt::one())).is_zero()
    }
}

/// Exact `det(1/(λ_i + λ_j + 1))` for at most [`MAX_EXACT_SIZE`] rational exponents.
pub fn gram_determinant_bruteforce(exponents: &[BigRational]) -> Result<BigRational> {
    exact::gram_determinant(exponents)
}

/// `δ` through the exact Gram determinant ratio, rounded only at the final
/// square root.
pub fn distance_via_gram_ratio(
    q: &BigRational,
    exponents: &[BigRational],
) -> Result<DistanceReport> {
    let d2 = exact::gram_ratio_delta_squared(q, exponents)?;
    let lambdas: Vec<f64> = exponents.iter().map(exact::to_f64).collect();
    Ok(DistanceReport {
        q: exact::to_f64(q),
        delta: exact::to_f64(&d2).sqrt(),
        condition_note: condition_note(&lambdas),
        lambdas,
        method: DistanceMethod::BruteForceRational,
        delta_squared_exact: Some(exact::format_rational(&d2)),
    })
}

/// Best `L²[0,1]` approximation from a monomial span.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    /// Coefficients aligned with the input exponents.
    pub coefficients: Vec<f64>,
    pub polynomial: GeneralizedPolynomial,
    /// `⟨g,g⟩ − ⟨g,f⟩`, present when `⟨g,g⟩` was supplied.
    pub residual_squared: Option<f64>,
    pub condition: f64,
}

/// Solves the normal equations `G c = m`, `m_i = ⟨g, x^{λ_i}⟩`.
pub fn project_l2(
    target_moments: &[f64],
    exponents: &[f64],
    target_norm_squared: Option<f64>,
) -> Result<Projection> {
    let gram = GramMatrix::new(exponents)?;
    if target_moments.len() != exponents.len() {
        return Err(invalid(format!(
            "{} moments supplied for {} exponents",
            target_moments.len(),
            exponents.len()
        )));
    }
    if target_moments.iter().any(|m| !m.is_finite()) {
        return Err(invalid("target moments must be finite"));
    }
    let condition = gram.condition_estimate();
    let ill = || {
        let (first, second) = gram.closest_pair().unwrap_or((f64::NAN, f64::NAN));
        Error::IllConditioned {
            condition,
            first,
            second,
        }
    };
    if !(condition <= MAX_CONDITION) {
        return Err(ill());
    }
    let l = cholesky(&gram.rows()).ok_or_else(ill)?;
    let coefficients = cholesky_solve(&l, target_moments);
    let polynomial = GeneralizedPolynomial::on_unit(
        coefficients
            .iter()
            .zip(exponents)
            .map(|(&c, &e)| Term::new(c, e)),
    )?;
    let residual_squared = target_norm_squared.map(|gg| {
        let captured: f64 = coefficients
            .iter()
            .zip(target_moments)
            .map(|(c, m)| c * m)
            .sum();
        (gg - captured).max(0.0)
    });
    Ok(Projection {
        coefficients,
        polynomial,
        residual_squared,
        condition,
    })
}

fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if !(d > 0.0) {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

fn cholesky_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let s: f64 = (0..i).map(|k| l[i][k] * y[k]).sum();
        y[i] = (b[i] - s) / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| l[k][i] * x[k]).sum();
        x[i] = (y[i] - s) / l[i][i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::exact::*;
    use super::*;

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn rs(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_determinant(&[2.0], &[3.0]).unwrap(), 0.2);
        let d = cauchy_determinant(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert!((d - 1.0 / 72.0).abs() < 1e-17);
        assert_eq!(
            cauchy_determinant(&[1.0, 3.0, 1.0], &[1.0, 2.0, 4.0]).unwrap(),
            0.0
        );
        assert!(cauchy_determinant(&[1.0, 2.0], &[-1.0, 0.5]).is_err());
        assert!(cauchy_determinant(&[1.0], &[1.0, 2.0]).is_err());
        assert!(cauchy_determinant(&[], &[]).is_err());
    }

    #[test]
    fn log_space_path_beyond_threshold() {
        // Geometric nodes keep the 31×31 determinant (about 7e-203) inside f64 range.
        let xs: Vec<f64> = (0..LOG_SPACE_THRESHOLD + 1)
            .map(|i| 1.5f64.powi(i as i32))
            .collect();
        let ys: Vec<f64> = xs.iter().map(|x| x + 1.0).collect();
        let det = cauchy_determinant(&xs, &ys).unwrap();
        // log10 of the determinant, evaluated at 50 digits
        assert!(
            (det.log10() + 202.141_192_252_809_52).abs() < 1e-10,
            "{det}"
        );
    }

    #[test]
    fn exact_gram_determinants() {
        assert_eq!(gram_determinant_bruteforce(&rs(&[0])).unwrap(), r("1"));
        assert_eq!(
            gram_determinant_bruteforce(&rs(&[0, 1])).unwrap(),
            r("1/12")
        );
        assert_eq!(
            gram_determinant_bruteforce(&rs(&[0, 1, 2])).unwrap(),
            r("1/2160")
        );
        assert!(gram_determinant_bruteforce(&rs(&[0, 1, 2, 3, 4, 5, 6, 7, 8])).is_err());
        assert!(gram_determinant_bruteforce(&rs(&[1, 1])).is_err());
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let mut m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(4)],
        ];
        // cofactor expansion: 0·4 − 2·(12 − 0) + 1·(0 − 1) = −25
        assert_eq!(bareiss_determinant(&mut m), BigInt::from(-25));
    }

    #[test]
    fn distance_examples() {
        let d = distance_to_span(1.0, &[0.0]).unwrap();
        assert!((d.delta - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(d.method, DistanceMethod::ClosedForm);
        let d = distance_to_span(2.0, &[0.0, 1.0]).unwrap();
        assert!((d.delta - 1.0 / (6.0 * 5f64.sqrt())).abs() < 1e-15);
        assert_eq!(distance_to_span(3.0, &[0.0, 3.0, 5.0]).unwrap().delta, 0.0);
        assert!(distance_to_span(1.0, &[2.0, 2.0]).is_err());
        assert!(distance_to_span(1.0, &[-0.5]).is_err());
        assert!(distance_to_span(-0.6, &[1.0]).is_err());
    }

    #[test]
    fn gram_ratio_examples() {
        let d = distance_via_gram_ratio(&r("1"), &rs(&[0])).unwrap();
        assert_eq!(d.delta_squared_exact.as_deref(), Some("1/12"));
        assert_eq!(d.method, DistanceMethod::BruteForceRational);
        assert_eq!(
            gram_ratio_delta_squared(&r("2"), &rs(&[0, 1])).unwrap(),
            r("1/180")
        );
        let exps = rs(&[0, 1, 2]);
        assert_eq!(
            gram_ratio_delta_squared(&r("3"), &exps).unwrap(),
            closed_form_delta_squared(&r("3"), &exps)
        );
        assert!(gram_ratio_delta_squared(&r("2"), &rs(&[0, 2])).is_err());
    }

    #[test]
    fn fractional_exponents_agree_exactly() {
        let exps = vec![r("-1/4"), r("1/3"), r("5/2")];
        let q = r("7/5");
        assert_eq!(
            gram_ratio_delta_squared(&q, &exps).unwrap(),
            closed_form_delta_squared(&q, &exps)
        );
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(r("3/6"), r("1/2"));
        assert_eq!(r("0.25"), r("1/4"));
        assert_eq!(r("-1.5e1"), r("-15"));
        assert_eq!(r("12"), r("12/1"));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(is_dyadic(&r("3/8")) && !is_dyadic(&r("1/3")));
    }

    #[test]
    fn projection_examples() {
        let exps = [0.0, 1.0, 2.0];
        let m: Vec<f64> = exps.iter().map(|&l| monomial_inner(2.0, l)).collect();
        let p = project_l2(&m, &exps, Some(0.2)).unwrap();
        for (c, want) in p.coefficients.iter().zip([0.0, 0.0, 1.0]) {
            assert!((c - want).abs() < 1e-12);
        }
        assert!(p.residual_squared.unwrap() < 1e-14);

        let m = [1.0 / 3.0, 1.0 / 4.0];
        let p = project_l2(&m, &[0.0, 1.0], Some(0.2)).unwrap();
        assert!((p.coefficients[0] + 1.0 / 6.0).abs() < 1e-13);
        assert!((p.coefficients[1] - 1.0).abs() < 1e-13);
        assert!((p.residual_squared.unwrap() - 1.0 / 180.0).abs() < 1e-14);

        let p = project_l2(&[0.5], &[0.0], None).unwrap();
        assert!((p.coefficients[0] - 0.5).abs() < 1e-15);
        assert!(p.residual_squared.is_none());
    }

    #[test]
    fn projection_refuses_ill_conditioned_systems() {
        let exps: Vec<f64> = (0..14).map(f64::from).collect();
        let m: Vec<f64> = exps.iter().map(|&l| monomial_inner(14.5, l)).collect();
        match project_l2(&m, &exps, None) {
            Err(Error::IllConditioned {
                condition,
                first,
                second,
            }) => {
                assert!(condition > MAX_CONDITION);
                assert_eq!(second - first, 1.0);
            }
            other => panic!("expected ill-conditioning, got {other:?}"),
        }
        assert!(project_l2(&[1.0], &[0.0, 1.0], None).is_err());
    }

    #[test]
    fn condition_estimate_of_small_hilbert_matrices() {
        // κ₁(H_3) = 748, κ₁(H_4) = 28375
        let k3 = GramMatrix::new(&[0.0, 1.0, 2.0])
            .unwrap()
            .condition_estimate();
        assert!((k3 - 748.0).abs() < 1e-9, "{k3}");
        let k4 = GramMatrix::new(&[0.0, 1.0, 2.0, 3.0])
            .unwrap()
            .condition_estimate();
        assert!((k4 - 28375.0).abs() < 1e-6, "{k4}");
    }

    #[test]
    fn float_gram_ratio_agrees_for_small_spans() {
        let d = distance_via_float_gram(2.0, &[0.0, 1.0]).unwrap();
        assert!((d.delta - 1.0 / (6.0 * 5f64.sqrt())).abs() < 1e-12);
        assert_eq!(d.method, DistanceMethod::GramRatio);
    }

    #[test]
    fn polynomial_inner_products() {
        let p = GeneralizedPolynomial::on_unit([Term::new(1.0, 1.0), Term::new(-1.0 / 6.0, 0.0)])
            .unwrap();
        // ‖x − 1/6‖² = 1/3 − 1/6 + 1/36
        assert!((l2_norm_squared(&p) - (1.0 / 3.0 - 1.0 / 6.0 + 1.0 / 36.0)).abs() < 1e-15);
        let m = polynomial_moments(&p, &[0.0]);
        assert!((m[0] - (0.5 - 1.0 / 6.0)).abs() < 1e-15);
    }
}
