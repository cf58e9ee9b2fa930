//! Generalized polynomials `Σ c_i x^{λ_i}` with real exponents, evaluation
//! grids, and sup-norm estimation.
//!
//! A [`GeneralizedPolynomial`] is always kept in canonical form: terms sorted
//! by strictly increasing exponent, equal exponents merged, zero
//! coefficients dropped. Every exponent must exceed `-1/2` so the monomials
//! live in `L²[0,1]`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

/// Smallest admissible exponent (exclusive): `x^λ ∈ L²[0,1]` iff `λ > -1/2`.
pub const MIN_EXPONENT: f64 = -0.5;

/// A single monomial `c · x^λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c")]
    pub coeff: f64,
    #[serde(rename = "lambda")]
    pub exponent: f64,
}

impl Term {
    pub fn new(coeff: f64, exponent: f64) -> Self {
        Term { coeff, exponent }
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(invalid(format!(
                "interval [{lo}, {hi}] is not a finite ordered interval"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval { lo: 0.0, hi: 1.0 }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::unit()
    }
}

pub(crate) fn is_integer(x: f64) -> bool {
    x.fract() == 0.0
}

/// `x^λ` with the conventions used throughout the crate at `x = 0`:
/// `0^0 = 1`, `0^λ = 0` for `λ > 0`, rejected for `λ < 0`.
pub fn pow(x: f64, exponent: f64) -> Result<f64> {
    if x == 0.0 {
        return if exponent == 0.0 {
            Ok(1.0)
        } else if exponent > 0.0 {
            Ok(0.0)
        } else {
            Err(invalid(format!(
                "0^{exponent} is undefined for a negative exponent"
            )))
        };
    }
    if is_integer(exponent) && exponent.abs() <= i32::MAX as f64 {
        return Ok(x.powi(exponent as i32));
    }
    if x < 0.0 {
        return Err(invalid(format!(
            "x^{exponent} is undefined at negative x = {x}"
        )));
    }
    Ok(x.powf(exponent))
}

/// Finite sum `Σ c_i x^{λ_i}` on a domain `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedPolynomial {
    terms: Vec<Term>,
    domain: Interval,
}

impl GeneralizedPolynomial {
    /// Builds the canonical polynomial from arbitrary terms.
    pub fn new(terms: impl IntoIterator<Item = Term>, domain: Interval) -> Result<Self> {
        let terms = canonical_terms(terms.into_iter().collect())?;
        let poly = GeneralizedPolynomial { terms, domain };
        poly.check_domain()?;
        Ok(poly)
    }

    /// Polynomial on `[0, 1]`.
    pub fn on_unit(terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        Self::new(terms, Interval::unit())
    }

    pub fn zero(domain: Interval) -> Self {
        GeneralizedPolynomial {
            terms: Vec::new(),
            domain,
        }
    }

    pub fn monomial(coeff: f64, exponent: f64, domain: Interval) -> Result<Self> {
        Self::new([Term::new(coeff, exponent)], domain)
    }

    /// Ordinary polynomial from ascending integer-power coefficients.
    pub fn from_power_coeffs(coeffs: &[f64], domain: Interval) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| Term::new(c, k as f64)),
            domain,
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn exponents(&self) -> impl Iterator<Item = f64> + '_ {
        self.terms.iter().map(|t| t.exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every exponent is a non-negative integer.
    pub fn is_ordinary(&self) -> bool {
        self.terms
            .iter()
            .all(|t| is_integer(t.exponent) && t.exponent >= 0.0)
    }

    pub fn with_domain(&self, domain: Interval) -> Result<Self> {
        let poly = GeneralizedPolynomial {
            terms: self.terms.clone(),
            domain,
        };
        poly.check_domain()?;
        Ok(poly)
    }

    /// Re-canonicalizes. A no-op for values built through the constructors.
    pub fn canonical(&self) -> Self {
        let terms = canonical_terms(self.terms.clone()).expect("terms already validated");
        GeneralizedPolynomial {
            terms,
            domain: self.domain,
        }
    }

    fn check_domain(&self) -> Result<()> {
        let needs_nonneg = self.terms.iter().any(|t| !is_integer(t.exponent));
        if needs_nonneg && self.domain.lo < 0.0 {
            return Err(invalid(format!(
                "domain [{}, {}] extends below 0 but the polynomial has non-integer exponents",
                self.domain.lo, self.domain.hi
            )));
        }
        Ok(())
    }

    /// `Σ c_i x^{λ_i}`, summed in increasing-exponent order.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(invalid(format!(
                "x = {x} lies outside the domain [{}, {}]",
                self.domain.lo, self.domain.hi
            )));
        }
        let mut sum = 0.0;
        for t in &self.terms {
            sum += t.coeff * pow(x, t.exponent)?;
        }
        Ok(sum)
    }

    /// Lower estimate of `‖p‖_∞` on the domain: the maximum of `|p|` over `grid`.
    pub fn sup_norm_estimate(&self, grid: &Grid) -> Result<f64> {
        sup_norm_estimate(self, grid)
    }

    fn same_domain(&self, other: &Self) -> Result<Interval> {
        if self.domain != other.domain {
            return Err(invalid(format!(
                "domains differ: [{}, {}] vs [{}, {}]",
                self.domain.lo, self.domain.hi, other.domain.lo, other.domain.hi
            )));
        }
        Ok(self.domain)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let domain = self.same_domain(other)?;
        Self::new(self.terms.iter().chain(&other.terms).copied(), domain)
    }

    /// `self + alpha · other`.
    pub fn add_scaled(&self, alpha: f64, other: &Self) -> Result<Self> {
        self.add(&other.scale(alpha))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(-1.0, other)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(alpha * t.coeff, t.exponent));
        Self::new(terms, self.domain).expect("scaling keeps exponents valid")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let domain = self.same_domain(other)?;
        let terms = self.terms.iter().flat_map(|a| {
            other
                .terms
                .iter()
                .map(move |b| Term::new(a.coeff * b.coeff, a.exponent + b.exponent))
        });
        Self::new(terms, domain)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("terms serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| invalid(format!("bad polynomial JSON: {e}")))
    }
}

fn canonical_terms(mut terms: Vec<Term>) -> Result<Vec<Term>> {
    for t in &terms {
        if !t.coeff.is_finite() || !t.exponent.is_finite() {
            return Err(invalid(format!(
                "non-finite term {} x^{}",
                t.coeff, t.exponent
            )));
        }
        if t.exponent <= MIN_EXPONENT {
            return Err(invalid(format!(
                "exponent {} must exceed -1/2 (L²[0,1] membership)",
                t.exponent
            )));
        }
    }
    terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.exponent == t.exponent => last.coeff += t.coeff,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coeff != 0.0);
    Ok(out)
}

impl Serialize for GeneralizedPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneralizedPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        GeneralizedPolynomial::on_unit(terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GeneralizedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if t.coeff < 0.0 { '-' } else { '+' })?;
            } else if t.coeff < 0.0 {
                write!(f, "-")?;
            }
            write!(f, "{}·x^{}", t.coeff.abs(), t.exponent)?;
        }
        Ok(())
    }
}

/// Strictly increasing evaluation points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    /// `count` equally spaced points including both endpoints.
    pub fn uniform(lo: f64, hi: f64, count: usize) -> Result<Self> {
        let domain = Interval::new(lo, hi)?;
        match count {
            0 => Err(invalid("grid must contain at least one point")),
            1 if lo == hi => Ok(Grid { points: vec![lo] }),
            1 => Err(invalid(
                "a one-point grid cannot include two distinct endpoints",
            )),
            _ if lo == hi => Err(invalid(
                "a degenerate interval admits only a one-point grid",
            )),
            _ => {
                let step = (domain.hi - domain.lo) / (count - 1) as f64;
                let mut points: Vec<f64> =
                    (0..count).map(|i| domain.lo + step * i as f64).collect();
                points[count - 1] = domain.hi;
                Ok(Grid { points })
            }
        }
    }

    pub fn unit(count: usize) -> Result<Self> {
        Self::uniform(0.0, 1.0, count)
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("grid must contain at least one point"));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(invalid("grid points must be finite"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("grid points must be strictly increasing"));
        }
        Ok(Grid { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lo(&self) -> f64 {
        self.points[0]
    }

    pub fn hi(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Maximum of `|f|` over the grid.
    pub fn max_abs<F>(&self, mut f: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut best = 0.0f64;
        for &x in &self.points {
            best = best.max(f(x)?.abs());
        }
        Ok(best)
    }
}

/// Max of `|p(x)|` over `grid`. This is a lower bound of the true sup norm.
pub fn sup_norm_estimate(p: &GeneralizedPolynomial, grid: &Grid) -> Result<f64> {
    if grid.is_empty() {
        return Err(invalid("sup-norm estimate needs a non-empty grid"));
    }
    let d = p.domain();
    if grid.lo() < d.lo || grid.hi() > d.hi {
        return Err(invalid(format!(
            "grid [{}, {}] is not inside the domain [{}, {}]",
            grid.lo(),
            grid.hi(),
            d.lo,
            d.hi
        )));
    }
    grid.max_abs(|x| p.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(f64, f64)]) -> GeneralizedPolynomial {
        GeneralizedPolynomial::on_unit(terms.iter().map(|&(c, l)| Term::new(c, l))).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[(1.0, 2.0), (-0.125, 1.0)]).eval(1.0).unwrap(), 0.875);
        assert_eq!(p(&[(1.0, 0.0)]).eval(0.0).unwrap(), 1.0);
        assert_eq!(p(&[(1.0, 0.5)]).eval(0.25).unwrap(), 0.5);
    }

    #[test]
    fn eval_at_zero_conventions() {
        assert_eq!(p(&[(3.0, 0.7)]).eval(0.0).unwrap(), 0.0);
        assert!(p(&[(1.0, -0.25)]).eval(0.0).is_err());
        assert!(p(&[(1.0, -0.25)]).eval(0.5).is_ok());
    }

    #[test]
    fn eval_rejects_points_outside_domain() {
        assert!(p(&[(1.0, 1.0)]).eval(1.5).is_err());
        assert!(p(&[(1.0, 1.0)]).eval(-0.1).is_err());
    }

    #[test]
    fn canonical_form_merges_and_sorts() {
        let q = p(&[(1.0, 3.0), (2.0, 1.0), (-1.0, 3.0), (0.0, 5.0), (1.0, 1.0)]);
        assert_eq!(q.terms(), &[Term::new(3.0, 1.0)]);
        assert_eq!(q.canonical(), q);
    }

    #[test]
    fn rejects_exponents_at_or_below_minus_half() {
        assert!(GeneralizedPolynomial::on_unit([Term::new(1.0, -0.5)]).is_err());
        assert!(GeneralizedPolynomial::on_unit([Term::new(1.0, -0.49)]).is_ok());
    }

    #[test]
    fn negative_domain_needs_integer_exponents() {
        let d = Interval::new(-1.0, 1.0).unwrap();
        assert!(GeneralizedPolynomial::monomial(1.0, 2.0, d).is_ok());
        assert!(GeneralizedPolynomial::monomial(1.0, 1.5, d).is_err());
        let q = GeneralizedPolynomial::monomial(1.0, 3.0, d).unwrap();
        assert_eq!(q.eval(-0.5).unwrap(), -0.125);
    }

    #[test]
    fn sup_norm_examples() {
        let g3 = Grid::unit(3).unwrap();
        assert_eq!(
            p(&[(1.0, 1.0), (-0.5, 0.0)])
                .sup_norm_estimate(&g3)
                .unwrap(),
            0.5
        );

        let g101 = Grid::unit(101).unwrap();
        let s = p(&[(1.0, 1.0), (-1.0, 2.0)])
            .sup_norm_estimate(&g101)
            .unwrap();
        assert!((s - 0.25).abs() < 1e-15);

        let g1001 = Grid::unit(1001).unwrap();
        let s = p(&[(1.0, 2.0), (-0.125, 1.0)])
            .sup_norm_estimate(&g1001)
            .unwrap();
        assert_eq!(s, 0.875);
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::from_points(vec![]).is_err());
        assert!(Grid::from_points(vec![0.0, 0.0]).is_err());
        assert!(Grid::unit(0).is_err());
        let g = Grid::unit(5).unwrap();
        assert_eq!(g.points(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let outside = Grid::uniform(0.0, 2.0, 3).unwrap();
        assert!(p(&[(1.0, 1.0)]).sup_norm_estimate(&outside).is_err());
    }

    #[test]
    fn json_is_exponent_sorted_pairs() {
        let q = p(&[(2.0, 3.0), (-1.0, 0.5)]);
        assert_eq!(
            q.to_json(),
            r#"[{"c":-1.0,"lambda":0.5},{"c":2.0,"lambda":3.0}]"#
        );
        assert_eq!(GeneralizedPolynomial::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn multiplication_adds_exponents() {
        let a = p(&[(1.0, 1.0), (1.0, 0.0)]);
        let b = p(&[(1.0, 1.0), (-1.0, 0.0)]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.terms(), &[Term::new(-1.0, 0.0), Term::new(1.0, 2.0)]);
    }
}
