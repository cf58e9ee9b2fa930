//! Density diagnostics for exponent sequences.
//!
//! Verdicts for symbolic families are decided analytically from the known
//! behaviour of `Σ 1/λ_i` and `Σ λ_i/(λ_i² + 1)`; partial sums are reported
//! as evidence only. A finite explicit list never decides density.

use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::gram::closed_form_delta;
use crate::sequence::ExponentSequence;

/// One row of the product/series comparison for `a_i > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductSumRow {
    pub n: usize,
    /// `∏_{i<=n} (1 − 1/a_i)`
    pub product: f64,
    /// `Σ_{i<=n} 1/a_i`
    pub sum: f64,
}

/// Partial products `∏(1 − 1/a_i)` next to partial sums `Σ 1/a_i` for the
/// first `n_max` terms. The product tends to 0 exactly when the sum diverges.
pub fn product_sum_table<I>(a: I, n_max: usize) -> Result<Vec<ProductSumRow>>
where
    I: IntoIterator<Item = f64>,
{
    if n_max == 0 {
        return Err(invalid("product/sum table needs n_max >= 1"));
    }
    let mut log_product = 0.0;
    let mut sum = 0.0;
    let mut rows = Vec::with_capacity(n_max);
    for (i, ai) in a.into_iter().take(n_max).enumerate() {
        if !(ai > 1.0) || !ai.is_finite() {
            return Err(invalid(format!(
                "a_{} = {ai} must be a finite number > 1",
                i + 1
            )));
        }
        let inv = 1.0 / ai;
        log_product += (-inv).ln_1p();
        sum += inv;
        rows.push(ProductSumRow {
            n: i + 1,
            product: log_product.exp(),
            sum,
        });
    }
    if rows.len() < n_max {
        return Err(invalid(format!(
            "sequence ended after {} terms, {} requested",
            rows.len(),
            n_max
        )));
    }
    Ok(rows)
}

/// Behaviour of a reciprocal-type series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesBehaviour {
    Diverges,
    Converges,
    Inconclusive,
}

impl SeriesBehaviour {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesBehaviour::Diverges => "diverges",
            SeriesBehaviour::Converges => "converges",
            SeriesBehaviour::Inconclusive => "inconclusive",
        }
    }
}

impl Serialize for SeriesBehaviour {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    Dense,
    NotDense,
    Inconclusive,
}

impl Density {
    pub fn as_str(self) -> &'static str {
        match self {
            Density::Dense => "dense",
            Density::NotDense => "not-dense",
            Density::Inconclusive => "inconclusive",
        }
    }
}

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Partial sums at `n` (terms with `λ_i = 0` excluded).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvidenceRow {
    pub n: usize,
    /// `Σ 1/λ_i`
    pub reciprocal_sum: f64,
    /// `Σ λ_i/(λ_i² + 1)`
    pub full_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityVerdict {
    pub sequence: String,
    pub classical_condition: SeriesBehaviour,
    pub full_condition: SeriesBehaviour,
    pub verdict: Density,
    pub evidence: Vec<EvidenceRow>,
}

/// Analytic behaviour of `(Σ 1/λ_i, Σ λ_i/(λ_i²+1))` for a family.
fn classify(seq: &ExponentSequence) -> (SeriesBehaviour, SeriesBehaviour) {
    use SeriesBehaviour::*;
    match seq {
        ExponentSequence::Explicit(_) => (Inconclusive, Inconclusive),
        ExponentSequence::Affine { .. } | ExponentSequence::Primes => (Diverges, Diverges),
        ExponentSequence::Power { power, .. } if *power > 0.0 => {
            if *power <= 1.0 {
                (Diverges, Diverges)
            } else {
                (Converges, Converges)
            }
        }
        // λ_i = i^k → 0: the classical criterion presumes λ_i → ∞, while
        // λ/(λ²+1) ~ i^k diverges iff k >= −1.
        ExponentSequence::Power { power, .. } => (
            Inconclusive,
            if *power >= -1.0 { Diverges } else { Converges },
        ),
        ExponentSequence::Custom { tail, .. } => classify(tail),
    }
}

/// Density verdict for `span{x^{λ_i}}` in `C[0,1]`, with partial sums up to
/// `n_max` as evidence.
pub fn density_check(seq: &ExponentSequence, n_max: usize) -> Result<DensityVerdict> {
    if let ExponentSequence::Power { power, start } = seq {
        if *power < 0.0 && *start == 0 {
            return Err(invalid("i^k with k < 0 must start at i >= 1"));
        }
    }
    let count = match seq.len() {
        Some(len) => len.min(n_max + 1),
        None => n_max + 1,
    };
    let values = seq.take(count)?;
    let (classical, full) = classify(seq);
    let verdict = match full {
        SeriesBehaviour::Diverges => Density::Dense,
        SeriesBehaviour::Converges => Density::NotDense,
        SeriesBehaviour::Inconclusive => Density::Inconclusive,
    };
    Ok(DensityVerdict {
        sequence: seq.to_string(),
        classical_condition: classical,
        full_condition: full,
        verdict,
        evidence: evidence_rows(&values),
    })
}

/// Rows at `n = 1, 2, 4, …` and at the last index.
fn evidence_rows(values: &[f64]) -> Vec<EvidenceRow> {
    let mut rows = Vec::new();
    let mut reciprocal_sum = 0.0;
    let mut full_sum = 0.0;
    let last = values.len().saturating_sub(1);
    let mut next = 1;
    for (i, &l) in values.iter().enumerate() {
        if l > 0.0 {
            reciprocal_sum += 1.0 / l;
            full_sum += l / (l * l + 1.0);
        }
        if i == next || (i == last && i > 0) {
            rows.push(EvidenceRow {
                n: i,
                reciprocal_sum,
                full_sum,
            });
            if i == next {
                next *= 2;
            }
        }
    }
    rows
}

/// One point of a distance-decay profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub delta: f64,
}

/// `δ_n = d(x^q, span{x^{λ_0}, …, x^{λ_n}})` for `n = 0..=n_max`.
pub fn distance_profile(q: f64, seq: &ExponentSequence, n_max: usize) -> Result<Vec<ProfileRow>> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(invalid(format!("q = {q} must be positive")));
    }
    let values = seq.take(n_max + 1)?;
    if let Some(i) = values.iter().position(|&l| l == q) {
        return Err(invalid(format!(
            "q = {q} equals λ_{i}; the distance is identically 0 from n = {i} on"
        )));
    }
    // Prefix products of the closed form, δ_n = δ_{n−1}·|q − λ_n|/(q + λ_n + 1).
    let mut log = -0.5 * (2.0 * q + 1.0).ln();
    let rows = values
        .iter()
        .enumerate()
        .map(|(n, &l)| {
            log += ((q - l).abs() / (q + l + 1.0)).ln();
            ProfileRow {
                n,
                delta: log.exp(),
            }
        })
        .collect();
    Ok(rows)
}

/// Closed-form `δ_n` for a single prefix length; equals the profile entry.
pub fn distance_at(q: f64, seq: &ExponentSequence, n: usize) -> Result<f64> {
    closed_form_delta(q, &seq.values(n)?)
}
