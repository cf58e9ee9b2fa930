//! Explicit Müntz approximants.
//!
//! Starting from `Q_0(x) = x^q`, the recursion
//!
//! ```text
//! Q_n(x) = (λ_n − q) x^{λ_n} ∫_x^1 Q_{n−1}(t) t^{−1−λ_n} dt
//! ```
//!
//! keeps `Q_n = x^q − Σ_{i<=n} a_{n,i} x^{λ_i}` inside the span shifted by
//! `x^q`, and `‖Q_n‖_∞ <= ∏_{i<=n} |1 − q/λ_i|`.
//!
//! Integrating term by term with `μ = λ_{n+1}` gives the coefficient update
//!
//! ```text
//! a_{n+1,i}   = a_{n,i} (μ − q)/(μ − λ_i)        for i <= n
//! a_{n+1,n+1} = 1 − Σ_{i<=n} a_{n+1,i}
//! ```
//!
//! (the last line is `Q_{n+1}(1) = 0`). [`QnOracle`] evaluates the integral
//! recursion numerically and is the independent check on that update.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::poly::{pow, GeneralizedPolynomial, Grid, Term};
use crate::quadrature::{integrate, Grading, QuadratureConfig};
use crate::sequence::ExponentSequence;

/// Up to this many steps the coefficient recurrence runs in exact rationals
/// (every `f64` input is a binary rational); beyond it, in `f64`.
pub const EXACT_COEFFICIENT_LIMIT: usize = 20;

/// Slack added to the sup-norm bound when checking a grid estimate.
pub const BOUND_SLACK: f64 = 1e-9;

/// `Q_n = x^q − Σ a_{n,i} x^{λ_i}` with its sup-norm bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MuntzApproximant {
    pub q: f64,
    #[serde(rename = "lambdas")]
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub bound: f64,
    /// The coefficients as exact rationals, kept for `n <= 20`.
    #[serde(skip)]
    pub exact_coefficients: Option<Vec<BigRational>>,
}

fn check_inputs(q: f64, exponents: &[f64], n: usize) -> Result<()> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(invalid(format!(
            "q = {q} must be a finite non-negative number"
        )));
    }
    if n > exponents.len() {
        return Err(invalid(format!(
            "n = {n} exceeds the {} exponents supplied",
            exponents.len()
        )));
    }
    for (i, &l) in exponents[..n].iter().enumerate() {
        if !(l > 0.0 && l.is_finite()) {
            return Err(invalid(format!("λ_{} = {l} must be positive", i + 1)));
        }
        if l == q {
            return Err(invalid(format!(
                "λ_{} = q = {q}: the recursion divides by λ − q",
                i + 1
            )));
        }
        if exponents[..i].contains(&l) {
            return Err(invalid(format!(
                "λ_{} = {l} repeats an earlier exponent",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Coefficients of `Q_n` built from the first `n` exponents.
pub fn qn_coefficients(q: f64, exponents: &[f64], n: usize) -> Result<MuntzApproximant> {
    check_inputs(q, exponents, n)?;
    let lambdas = &exponents[..n];
    let (coefficients, exact_coefficients) = if n <= EXACT_COEFFICIENT_LIMIT {
        let exact = exact_recurrence(q, lambdas);
        (
            exact
                .iter()
                .map(|x| x.to_f64().unwrap_or(f64::NAN))
                .collect(),
            Some(exact),
        )
    } else {
        (float_recurrence(q, lambdas), None)
    };
    let bound = lambdas.iter().map(|l| (1.0 - q / l).abs()).product();
    Ok(MuntzApproximant {
        q,
        exponents: lambdas.to_vec(),
        coefficients,
        bound,
        exact_coefficients,
    })
}

fn float_recurrence(q: f64, lambdas: &[f64]) -> Vec<f64> {
    let mut a: Vec<f64> = Vec::with_capacity(lambdas.len());
    for (k, &mu) in lambdas.iter().enumerate() {
        for (ai, &li) in a.iter_mut().zip(&lambdas[..k]) {
            *ai *= (mu - q) / (mu - li);
        }
        let last = 1.0 - a.iter().sum::<f64>();
        a.push(last);
    }
    a
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

fn exact_recurrence(q: f64, lambdas: &[f64]) -> Vec<BigRational> {
    let q = rational(q);
    let r = rational;
    let lambdas: Vec<BigRational> = lambdas.iter().map(|&l| r(l)).collect();
    let mut a: Vec<BigRational> = Vec::with_capacity(lambdas.len());
    for (k, mu) in lambdas.iter().enumerate() {
        let num = mu - &q;
        for (ai, li) in a.iter_mut().zip(&lambdas[..k]) {
            *ai *= &num / (mu - li);
        }
        let last = BigRational::one() - a.iter().fold(BigRational::zero(), |s, x| s + x);
        a.push(last);
    }
    a
}

impl MuntzApproximant {
    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// `Q_n(x)` for `x ∈ [0, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(invalid(format!("x = {x} lies outside [0, 1]")));
        }
        let mut v = pow(x, self.q)?;
        for (a, &l) in self.coefficients.iter().zip(&self.exponents) {
            v -= a * pow(x, l)?;
        }
        Ok(v)
    }

    /// `Q_n` as a generalized polynomial on `[0, 1]`.
    pub fn to_polynomial(&self) -> Result<GeneralizedPolynomial> {
        let terms = std::iter::once(Term::new(1.0, self.q)).chain(
            self.coefficients
                .iter()
                .zip(&self.exponents)
                .map(|(&a, &l)| Term::new(-a, l)),
        );
        GeneralizedPolynomial::on_unit(terms)
    }

    /// `‖Q_n‖²` in `L²[0,1]` from the coefficients and the Gram entries
    /// `1/(α + β + 1)`; exact when the rational coefficients are kept.
    pub fn l2_norm_squared(&self) -> f64 {
        match &self.exact_coefficients {
            Some(a) => {
                let exps: Vec<BigRational> = self.exponents.iter().map(|&l| rational(l)).collect();
                let q = rational(self.q);
                let one = BigRational::one();
                let inner = |x: &BigRational, y: &BigRational| (x + y + &one).recip();
                let mut total = inner(&q, &q);
                for (ai, li) in a.iter().zip(&exps) {
                    total -= inner(&q, li) * ai * BigRational::from_integer(2.into());
                    for (aj, lj) in a.iter().zip(&exps) {
                        total += inner(li, lj) * ai * aj;
                    }
                }
                total.to_f64().unwrap_or(f64::NAN)
            }
            None => {
                let inner = |x: f64, y: f64| 1.0 / (x + y + 1.0);
                let mut total = inner(self.q, self.q);
                for (ai, &li) in self.coefficients.iter().zip(&self.exponents) {
                    total -= 2.0 * ai * inner(self.q, li);
                    for (aj, &lj) in self.coefficients.iter().zip(&self.exponents) {
                        total += ai * aj * inner(li, lj);
                    }
                }
                total
            }
        }
    }

    pub fn grid_sup(&self, grid: &Grid) -> Result<f64> {
        if grid.lo() < 0.0 || grid.hi() > 1.0 {
            return Err(invalid("grid must lie in [0, 1]"));
        }
        grid.max_abs(|x| self.eval(x))
    }

    /// Grid sup together with the bound check.
    pub fn certify(&self, grid: &Grid, slack: f64) -> Result<f64> {
        let sup = self.grid_sup(grid)?;
        if sup > self.bound + slack {
            return Err(Error::Certificate(format!(
                "grid sup {sup:e} of Q_{} exceeds the bound {:e}",
                self.n(),
                self.bound
            )));
        }
        Ok(sup)
    }
}

/// Chebyshev points per interpolation panel.
const ORACLE_NODES: usize = 16;
/// Panel width in `s = ln t`.
const ORACLE_PANEL_WIDTH: f64 = 0.25;

/// Evaluates `Q_n` from the integral recursion alone.
///
/// Each level `Q_k`, `k < n`, is tabulated at Chebyshev points of panels
/// uniform in `s = ln t` on `[ln x_min, 0]` and interpolated barycentrically
/// in between; `Q_{k+1}` at a node is the quadrature of the interpolated
/// `Q_k(t) t^{−1−λ}` over `[x, 1]`. Only `[x_min, 1]` is ever needed because
/// the integrals run from `x` up to 1. Accuracy is about 1e-10 for `n <= 6`
/// and exponents below 10.
pub struct QnOracle {
    q: f64,
    lambdas: Vec<f64>,
    x_min: f64,
    s_min: f64,
    panel_width: f64,
    panels: usize,
    /// Reference nodes on `[-1, 1]` and their barycentric weights.
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `levels[k][p * ORACLE_NODES + j]` = `Q_k` at node `j` of panel `p`.
    levels: Vec<Vec<f64>>,
    quadrature: QuadratureConfig,
}

impl QnOracle {
    pub fn new(q: f64, exponents: &[f64], n: usize, x_min: f64) -> Result<Self> {
        check_inputs(q, exponents, n)?;
        if !(x_min > 0.0 && x_min <= 1.0) {
            return Err(invalid(format!("oracle needs 0 < x_min <= 1, got {x_min}")));
        }
        let s_min = x_min.ln();
        let panels = ((-s_min) / ORACLE_PANEL_WIDTH).ceil().max(1.0) as usize;
        let panel_width = -s_min / panels as f64;
        let m = ORACLE_NODES;
        let nodes: Vec<f64> = (0..m)
            .map(|j| ((2 * j + 1) as f64 * std::f64::consts::PI / (2 * m) as f64).cos())
            .collect();
        let weights: Vec<f64> = (0..m)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * ((2 * j + 1) as f64 * std::f64::consts::PI / (2 * m) as f64).sin()
            })
            .collect();
        let quadrature = QuadratureConfig::new(32, 24, Grading::Geometric { ratio: 0.5 })?;
        let mut oracle = QnOracle {
            q,
            lambdas: exponents[..n].to_vec(),
            x_min,
            s_min,
            panel_width,
            panels,
            nodes,
            weights,
            levels: Vec::with_capacity(n),
            quadrature,
        };
        if n > 0 {
            let base: Vec<f64> = oracle.node_positions().map(|s| (q * s).exp()).collect();
            oracle.levels.push(base);
            for k in 1..n {
                let next = oracle
                    .node_positions()
                    .collect::<Vec<_>>()
                    .into_iter()
                    .map(|s| oracle.step(k, s.exp()))
                    .collect::<Result<Vec<f64>>>()?;
                oracle.levels.push(next);
            }
        }
        Ok(oracle)
    }

    fn node_positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.panels).flat_map(move |p| {
            let a = self.s_min + p as f64 * self.panel_width;
            self.nodes
                .iter()
                .map(move |&u| a + 0.5 * self.panel_width * (u + 1.0))
        })
    }

    /// Barycentric interpolation of level `k` at `s = ln t`.
    fn interpolate(&self, k: usize, s: f64) -> f64 {
        let p =
            (((s - self.s_min) / self.panel_width).floor().max(0.0) as usize).min(self.panels - 1);
        let a = self.s_min + p as f64 * self.panel_width;
        let u = 2.0 * (s - a) / self.panel_width - 1.0;
        let values = &self.levels[k][p * ORACLE_NODES..(p + 1) * ORACLE_NODES];
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&xj, &wj), &fj) in self.nodes.iter().zip(&self.weights).zip(values) {
            let d = u - xj;
            if d == 0.0 {
                return fj;
            }
            let c = wj / d;
            num += c * fj;
            den += c;
        }
        num / den
    }

    /// `Q_k(x) = (λ_k − q) x^{λ_k} ∫_x^1 Q_{k−1}(t) t^{−1−λ_k} dt`, `k >= 1`.
    fn step(&self, k: usize, x: f64) -> Result<f64> {
        if x >= 1.0 {
            return Ok(0.0);
        }
        let lambda = self.lambdas[k - 1];
        let prev = k - 1;
        let integral = integrate(
            |t| self.interpolate(prev, t.ln()) * t.powf(-1.0 - lambda),
            x,
            1.0,
            &self.quadrature,
        )?;
        Ok((lambda - self.q) * x.powf(lambda) * integral)
    }

    /// `Q_n(x)` for `x ∈ [x_min, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= self.x_min && x <= 1.0) {
            return Err(invalid(format!("x = {x} lies outside [{}, 1]", self.x_min)));
        }
        match self.lambdas.len() {
            0 => Ok(x.powf(self.q)),
            n => self.step(n, x),
        }
    }
}

/// `Q_n(x)` by nested numerical integration, `x ∈ (0, 1]`.
pub fn qn_oracle(q: f64, exponents: &[f64], n: usize, x: f64) -> Result<f64> {
    QnOracle::new(q, exponents, n, x)?.eval(x)
}

/// `(n, bound, grid sup |Q_n|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub bound: f64,
    pub grid_sup: f64,
}

/// Bound and grid sup of `Q_n` for `n = 0..=n_max` along a positive
/// increasing sequence (a leading `λ_0 = 0` is skipped). A grid sup above
/// the bound is a certificate failure.
pub fn qn_convergence_report(
    q: f64,
    seq: &ExponentSequence,
    n_max: usize,
    grid: &Grid,
) -> Result<Vec<ConvergenceRow>> {
    qn_convergence_report_with_slack(q, seq, n_max, grid, BOUND_SLACK)
}

pub fn qn_convergence_report_with_slack(
    q: f64,
    seq: &ExponentSequence,
    n_max: usize,
    grid: &Grid,
    slack: f64,
) -> Result<Vec<ConvergenceRow>> {
    let mut values = seq.take(n_max + 1)?;
    if values.first() == Some(&0.0) {
        values.remove(0);
    } else {
        values.truncate(n_max);
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("the sequence must be strictly increasing"));
    }
    check_inputs(q, &values, n_max)?;
    (0..=n_max)
        .map(|n| {
            let approx = qn_coefficients(q, &values, n)?;
            let grid_sup = approx.certify(grid, slack)?;
            Ok(ConvergenceRow {
                n,
                bound: approx.bound,
                grid_sup,
            })
        })
        .collect()
}
