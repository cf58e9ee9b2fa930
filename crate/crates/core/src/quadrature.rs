//! Composite Gauss–Legendre quadrature, optionally on a mesh graded
//! geometrically toward the left endpoint for integrands behaving like
//! `x^λ` there.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::poly::is_integer;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on `P_n`, starting from the
    /// Tricomi asymptotic guesses.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("Gauss-Legendre rule needs at least one node"));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(GaussLegendre { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single-panel estimate on `[a, b]`.
    pub fn integrate_panel<F>(&self, f: &mut F, a: f64, b: f64) -> Result<f64>
    where
        F: FnMut(f64) -> f64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let x = mid + half * t;
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFinite { at: x, value: v });
            }
            sum += w * v;
        }
        Ok(half * sum)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Panel layout of a composite rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grading {
    /// Equal-width panels.
    Uniform,
    /// Panel breakpoints `lo + (hi - lo)·ratio^k`, refining toward `lo`.
    Geometric { ratio: f64 },
}

/// Composite Gauss–Legendre configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    rule: GaussLegendre,
    panels: usize,
    grading: Grading,
}

pub const DEFAULT_POINTS_PER_PANEL: usize = 64;
pub const DEFAULT_PANELS: usize = 32;
pub const DEFAULT_GRADING_RATIO: f64 = 0.25;

impl QuadratureConfig {
    pub fn new(points_per_panel: usize, panels: usize, grading: Grading) -> Result<Self> {
        if panels == 0 {
            return Err(invalid("quadrature needs at least one panel"));
        }
        if let Grading::Geometric { ratio } = grading {
            if !(ratio > 0.0 && ratio < 1.0) {
                return Err(invalid(format!("grading ratio {ratio} must lie in (0, 1)")));
            }
        }
        Ok(QuadratureConfig {
            rule: GaussLegendre::new(points_per_panel)?,
            panels,
            grading,
        })
    }

    /// 64 points per panel, 32 equal panels.
    pub fn uniform() -> Self {
        Self::new(DEFAULT_POINTS_PER_PANEL, DEFAULT_PANELS, Grading::Uniform)
            .expect("default configuration is valid")
    }

    /// 64 points per panel, 32 panels graded by 1/4 toward the left endpoint.
    pub fn graded() -> Self {
        Self::new(
            DEFAULT_POINTS_PER_PANEL,
            DEFAULT_PANELS,
            Grading::Geometric {
                ratio: DEFAULT_GRADING_RATIO,
            },
        )
        .expect("default configuration is valid")
    }

    /// Picks the graded mesh when an integrand `~ x^λ` at the left endpoint
    /// is not smooth there (non-integer `λ`).
    pub fn for_endpoint_exponent(exponent: f64) -> Self {
        if is_integer(exponent) && exponent >= 0.0 {
            Self::uniform()
        } else {
            Self::graded()
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn rule(&self) -> &GaussLegendre {
        &self.rule
    }

    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let len = hi - lo;
        let n = self.panels;
        let mut b: Vec<f64> = match self.grading {
            Grading::Uniform => (0..=n).map(|k| lo + len * k as f64 / n as f64).collect(),
            Grading::Geometric { ratio } => std::iter::once(lo)
                .chain((1..=n).map(|j| lo + len * ratio.powi((n - j) as i32)))
                .collect(),
        };
        b[n] = hi;
        b
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::uniform()
    }
}

/// Composite Gauss–Legendre estimate of `∫_lo^hi f`.
///
/// The integrand is never sampled at the endpoints, so `f` only needs to be
/// finite on the open panels.
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, config: &QuadratureConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi < lo {
        return Err(invalid(format!(
            "integration interval [{lo}, {hi}] must satisfy 0 <= lo <= hi"
        )));
    }
    if lo == hi {
        return Ok(0.0);
    }
    let b = config.breakpoints(lo, hi);
    let mut total = 0.0;
    for w in b.windows(2) {
        if w[1] > w[0] {
            total += config.rule.integrate_panel(&mut f, w[0], w[1])?;
        }
    }
    Ok(total)
}
