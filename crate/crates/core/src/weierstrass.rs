//! Constructive Weierstrass kernels: the iteration
//! `p_0 = 0, p_{n+1}(t) = p_n(t) + (t − p_n(t)²)/2` converging uniformly to
//! `√t` on `[0, 1]`, the rescaled `q_n(t) = a·p_n(t²/a²)` converging to `|t|`
//! on `[−a, a]`, and the lattice operations `max`/`min` built from `|·|`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::poly::{GeneralizedPolynomial, Grid, Interval, Term};

/// Largest `n` for which the exact coefficients of `p_n` are materialized.
/// `deg p_n = 2^{n−1}`, so `p_12` already has 2049 coefficients of ~4500 bits.
pub const COEFFICIENT_CUTOFF: u32 = 12;

/// Polynomial with integer numerators over a common power-of-two
/// denominator: `Σ_k num_k t^k / 2^shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicPolynomial {
    numerators: Vec<BigInt>,
    shift: u64,
}

impl DyadicPolynomial {
    pub fn zero() -> Self {
        DyadicPolynomial {
            numerators: Vec::new(),
            shift: 0,
        }
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut numerators = vec![BigInt::zero(); k + 1];
        numerators[k] = BigInt::one();
        DyadicPolynomial {
            numerators,
            shift: 0,
        }
    }

    pub fn constant(c: i64) -> Self {
        DyadicPolynomial {
            numerators: vec![BigInt::from(c)],
            shift: 0,
        }
        .normalized()
    }

    pub fn degree(&self) -> Option<usize> {
        self.numerators.len().checked_sub(1)
    }

    /// Exponent of the common denominator `2^shift`.
    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        match self.numerators.get(k) {
            Some(num) => BigRational::new(num.clone(), BigInt::one() << self.shift),
            None => BigRational::zero(),
        }
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.numerators.len())
            .map(|k| self.coefficient(k))
            .collect()
    }

    fn normalized(mut self) -> Self {
        while self.numerators.last().is_some_and(Zero::is_zero) {
            self.numerators.pop();
        }
        let common = self
            .numerators
            .iter()
            .filter_map(|c| c.trailing_zeros())
            .min()
            .unwrap_or(0)
            .min(self.shift);
        if common > 0 {
            for c in &mut self.numerators {
                *c >>= common;
            }
            self.shift -= common;
        }
        if self.numerators.is_empty() {
            self.shift = 0;
        }
        self
    }

    fn rescaled(&self, shift: u64) -> Vec<BigInt> {
        let up = shift - self.shift;
        self.numerators.iter().map(|c| c << up).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let shift = self.shift.max(other.shift);
        let mut a = self.rescaled(shift);
        let b = other.rescaled(shift);
        if a.len() < b.len() {
            a.resize(b.len(), BigInt::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        DyadicPolynomial {
            numerators: a,
            shift,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        DyadicPolynomial {
            numerators: self.numerators.iter().map(|c| -c).collect(),
            shift: self.shift,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn half(&self) -> Self {
        DyadicPolynomial {
            numerators: self.numerators.clone(),
            shift: self.shift + 1,
        }
        .normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.numerators.is_empty() || other.numerators.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.numerators.len() + other.numerators.len() - 1];
        for (i, a) in self.numerators.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.numerators.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        DyadicPolynomial {
            numerators: out,
            shift: self.shift + other.shift,
        }
        .normalized()
    }

    fn square(&self) -> Self {
        let n = self.numerators.len();
        if n == 0 {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); 2 * n - 1];
        for i in 0..n {
            let a = &self.numerators[i];
            if a.is_zero() {
                continue;
            }
            out[2 * i] += a * a;
            let twice = a << 1u32;
            for j in i + 1..n {
                let b = &self.numerators[j];
                if !b.is_zero() {
                    out[i + j] += &twice * b;
                }
            }
        }
        DyadicPolynomial {
            numerators: out,
            shift: 2 * self.shift,
        }
        .normalized()
    }

    /// `t ↦ t²` substitution: `P(t)` becomes `P(s²)`.
    pub fn compose_square(&self) -> Self {
        let mut out = vec![BigInt::zero(); 2 * self.numerators.len().max(1) - 1];
        for (k, c) in self.numerators.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        DyadicPolynomial {
            numerators: out,
            shift: self.shift,
        }
        .normalized()
    }

    /// Exact value at the binary rational `t`, rounded once to `f64`.
    pub fn eval_exact(&self, t: f64) -> f64 {
        self.eval_rational(&BigRational::from_float(t).expect("finite argument"))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        // Horner over integers: Σ c_k m^k d^{deg−k}, then divide once.
        let (m, d) = (t.numer(), t.denom());
        let Some(deg) = self.degree() else {
            return BigRational::zero();
        };
        let mut acc = self.numerators[deg].clone();
        let mut dpow = BigInt::one();
        for k in (0..deg).rev() {
            dpow *= d;
            acc = acc * m + &self.numerators[k] * &dpow;
        }
        let denom = (BigInt::one() << self.shift) * dpow;
        BigRational::new(acc, denom)
    }

    /// Lossy conversion to `f64` coefficients. Coefficients of high iterates
    /// are huge and alternate in sign, so evaluate with [`Self::eval_exact`].
    pub fn to_generalized(&self, domain: Interval) -> Result<GeneralizedPolynomial> {
        let terms: Vec<Term> = self
            .coefficients()
            .iter()
            .enumerate()
            .map(|(k, c)| Term::new(c.to_f64().unwrap_or(f64::NAN), k as f64))
            .collect();
        GeneralizedPolynomial::new(terms, domain)
    }
}

/// The `n`-th iterate `p_n` of the square-root recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SqrtIterate {
    n: u32,
}

pub fn sqrt_iterate(n: u32) -> SqrtIterate {
    SqrtIterate { n }
}

impl SqrtIterate {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p_n(t)` by running the recursion `n` times; O(n).
    pub fn eval(&self, t: f64) -> f64 {
        let mut p = 0.0;
        for _ in 0..self.n {
            p += 0.5 * (t - p * p);
        }
        p
    }

    /// Exact coefficients of `p_n`, available for `n <= COEFFICIENT_CUTOFF`.
    pub fn coefficients(&self) -> Option<DyadicPolynomial> {
        (self.n <= COEFFICIENT_CUTOFF).then(|| exact_sqrt_iterate(self.n))
    }

    /// Pointwise error bound `2√t / (2 + n√t)`.
    pub fn pointwise_bound(&self, t: f64) -> f64 {
        let r = t.sqrt();
        2.0 * r / (2.0 + self.n as f64 * r)
    }

    /// Uniform error bound `2/n` on `[0, 1]`.
    pub fn analytic_bound(&self) -> f64 {
        2.0 / self.n as f64
    }
}

fn exact_sqrt_iterate(n: u32) -> DyadicPolynomial {
    let t = DyadicPolynomial::monomial(1);
    let mut p = DyadicPolynomial::zero();
    for _ in 0..n {
        p = p.add(&t.sub(&p.square()).half());
    }
    p
}

/// A grid point where a pointwise bound failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub t: f64,
    pub error: f64,
    pub bound: f64,
}

/// Analytic uniform bound paired with a grid estimate of the actual error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorCertificate {
    pub n: u32,
    pub analytic_bound: f64,
    pub grid_estimate: f64,
    #[serde(skip)]
    pub grid: Grid,
    pub violations: Vec<Violation>,
}

impl ErrorCertificate {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Turns recorded violations into a certificate failure.
    pub fn check(self) -> Result<Self> {
        match self.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::Certificate(format!(
                "n = {}: error {:e} exceeds bound {:e} at t = {} ({} violation(s))",
                self.n,
                v.error,
                v.bound,
                v.t,
                self.violations.len()
            ))),
        }
    }
}

/// Default numeric slack for the certificates: `1e-12 · n`.
pub fn default_slack(n: u32) -> f64 {
    1e-12 * f64::from(n.max(1))
}

/// Certificate for `sup |√t − p_n(t)| <= 2/n`, also checking
/// `0 <= √t − p_n(t) <= 2√t/(2 + n√t)` at every grid point. Violations are
/// recorded, not raised.
pub fn sqrt_certificate_with_slack(n: u32, grid: &Grid, slack: f64) -> Result<ErrorCertificate> {
    if n == 0 {
        return Err(invalid("the error certificate needs n >= 1"));
    }
    if grid.lo() < 0.0 || grid.hi() > 1.0 {
        return Err(invalid(
            "the square-root certificate grid must lie in [0, 1]",
        ));
    }
    let it = sqrt_iterate(n);
    let analytic_bound = it.analytic_bound();
    let mut grid_estimate = 0.0f64;
    let mut violations = Vec::new();
    for &t in grid.points() {
        let err = t.sqrt() - it.eval(t);
        grid_estimate = grid_estimate.max(err.abs());
        let bound = it.pointwise_bound(t);
        if err < -slack || err > bound + slack {
            violations.push(Violation {
                t,
                error: err,
                bound,
            });
        } else if err.abs() > analytic_bound + slack {
            violations.push(Violation {
                t,
                error: err,
                bound: analytic_bound,
            });
        }
    }
    Ok(ErrorCertificate {
        n,
        analytic_bound,
        grid_estimate,
        grid: grid.clone(),
        violations,
    })
}

/// Checked certificate: any violation beyond `1e-12 · n` is an error.
pub fn sqrt_error_certificate(n: u32, grid: &Grid) -> Result<ErrorCertificate> {
    sqrt_certificate_with_slack(n, grid, default_slack(n))?.check()
}

/// `q_n(t) = a·p_n(t²/a²)`, approximating `|t|` on `[−a, a]` within `2a/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsApproximant {
    a: f64,
    sqrt: SqrtIterate,
}

pub fn abs_approximant(a: f64, n: u32) -> Result<AbsApproximant> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(invalid(format!("half-width a = {a} must be positive")));
    }
    if n == 0 {
        return Err(invalid("the |t| approximant needs n >= 1"));
    }
    Ok(AbsApproximant {
        a,
        sqrt: sqrt_iterate(n),
    })
}

impl AbsApproximant {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n(&self) -> u32 {
        self.sqrt.n
    }

    pub fn domain(&self) -> Interval {
        Interval {
            lo: -self.a,
            hi: self.a,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let s = t / self.a;
        self.a * self.sqrt.eval(s * s)
    }

    pub fn analytic_bound(&self) -> f64 {
        2.0 * self.a / self.sqrt.n as f64
    }

    /// Grid certificate for `sup_{[−a,a]} ||t| − q_n(t)| <= 2a/n`.
    pub fn certificate(&self, grid: &Grid) -> Result<ErrorCertificate> {
        self.certificate_with_slack(grid, default_slack(self.n()) * self.a)
    }

    pub fn certificate_with_slack(&self, grid: &Grid, slack: f64) -> Result<ErrorCertificate> {
        if grid.lo() < -self.a || grid.hi() > self.a {
            return Err(invalid(format!("grid must lie in [-{0}, {0}]", self.a)));
        }
        let n = self.n();
        let analytic_bound = self.analytic_bound();
        let mut grid_estimate = 0.0f64;
        let mut violations = Vec::new();
        for &t in grid.points() {
            let err = t.abs() - self.eval(t);
            grid_estimate = grid_estimate.max(err.abs());
            let bound = self.a * self.sqrt.pointwise_bound((t / self.a).powi(2));
            if err < -slack || err > bound + slack || err.abs() > analytic_bound + slack {
                violations.push(Violation {
                    t,
                    error: err,
                    bound: bound.min(analytic_bound),
                });
            }
        }
        Ok(ErrorCertificate {
            n,
            analytic_bound,
            grid_estimate,
            grid: grid.clone(),
            violations,
        })
    }
}

/// Polynomial approximants of `max{f, g}` and `min{f, g}` via
/// `max = (f + g + |f − g|)/2`, `min = (f + g − |f − g|)/2`, with `|·|`
/// replaced by `q_n` on `[−a, a]`, `a` the grid sup of `|f − g|`.
#[derive(Debug, Clone)]
pub struct LatticeMaxMin {
    f: GeneralizedPolynomial,
    g: GeneralizedPolynomial,
    diff: GeneralizedPolynomial,
    abs: Option<AbsApproximant>,
    a: f64,
    n: u32,
}

pub fn lattice_max_min(
    f: &GeneralizedPolynomial,
    g: &GeneralizedPolynomial,
    n: u32,
    grid: &Grid,
) -> Result<LatticeMaxMin> {
    if n == 0 {
        return Err(invalid("lattice approximants need n >= 1"));
    }
    if f.domain() != g.domain() {
        return Err(invalid("f and g must share a domain"));
    }
    if !f.is_ordinary() || !g.is_ordinary() {
        return Err(invalid(
            "lattice operations need ordinary polynomials (non-negative integer exponents)",
        ));
    }
    let diff = f.sub(g)?;
    let a = diff.sup_norm_estimate(grid)?;
    let abs = if a > 0.0 {
        Some(abs_approximant(a, n)?)
    } else {
        None
    };
    Ok(LatticeMaxMin {
        f: f.clone(),
        g: g.clone(),
        diff,
        abs,
        a,
        n,
    })
}

impl LatticeMaxMin {
    /// Grid estimate of `sup |f − g|`.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Uniform error bound `a/n` for both approximants.
    pub fn bound(&self) -> f64 {
        self.a / self.n as f64
    }

    fn parts(&self, x: f64) -> Result<(f64, f64)> {
        let sum = self.f.eval(x)? + self.g.eval(x)?;
        let abs = match &self.abs {
            Some(q) => q.eval(self.diff.eval(x)?),
            None => 0.0,
        };
        Ok((sum, abs))
    }

    pub fn max(&self, x: f64) -> Result<f64> {
        let (sum, abs) = self.parts(x)?;
        Ok(0.5 * (sum + abs))
    }

    pub fn min(&self, x: f64) -> Result<f64> {
        let (sum, abs) = self.parts(x)?;
        Ok(0.5 * (sum - abs))
    }

    /// Grid sup of `|max approx − max{f,g}|` and `|min approx − min{f,g}|`.
    pub fn grid_errors(&self, grid: &Grid) -> Result<(f64, f64)> {
        let mut emax = 0.0f64;
        let mut emin = 0.0f64;
        for &x in grid.points() {
            let (fx, gx) = (self.f.eval(x)?, self.g.eval(x)?);
            emax = emax.max((self.max(x)? - fx.max(gx)).abs());
            emin = emin.max((self.min(x)? - fx.min(gx)).abs());
        }
        Ok((emax, emin))
    }
}
