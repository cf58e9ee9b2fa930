//! Exponent sequences `λ_0, λ_1, …`, either explicit lists or symbolic
//! families whose reciprocal-sum behaviour is known in closed form.
//!
//! Descriptor micro-grammar accepted by [`ExponentSequence::parse`]:
//! `i`, `a*i+b`, `i^k`, `primes`, `@path` (explicit list read from a file),
//! or a comma-separated list of numbers.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{invalid, Result};
use crate::primes::primes_up_to;

#[derive(Debug, Clone, PartialEq)]
pub enum ExponentSequence {
    /// Finite list; nothing is known about how it would continue.
    Explicit(Vec<f64>),
    /// `λ_j = slope·(start + j) + offset`.
    Affine { slope: f64, offset: f64, start: u64 },
    /// `λ_j = (start + j)^power`.
    Power { power: f64, start: u64 },
    /// `λ_j` = the `(j+1)`-th prime.
    Primes,
    /// A finite head followed by a symbolic tail that decides density.
    Custom {
        head: Vec<f64>,
        tail: Box<ExponentSequence>,
    },
}

impl ExponentSequence {
    pub fn affine(slope: f64, offset: f64) -> Self {
        ExponentSequence::Affine {
            slope,
            offset,
            start: 0,
        }
    }

    pub fn power(power: f64) -> Self {
        ExponentSequence::Power { power, start: 0 }
    }

    /// Same family, indexed from `start` instead of 0.
    pub fn starting_at(self, start: u64) -> Result<Self> {
        match self {
            ExponentSequence::Affine { slope, offset, .. } => Ok(ExponentSequence::Affine {
                slope,
                offset,
                start,
            }),
            ExponentSequence::Power { power, .. } => Ok(ExponentSequence::Power { power, start }),
            ExponentSequence::Explicit(v) => {
                let start = usize::try_from(start).unwrap_or(usize::MAX).min(v.len());
                Ok(ExponentSequence::Explicit(v[start..].to_vec()))
            }
            other if start == 0 => Ok(other),
            other => Err(invalid(format!("sequence {other} cannot be re-indexed"))),
        }
    }

    /// Prepends `λ_0 = 0` (the constant function).
    pub fn with_leading_zero(self) -> Self {
        match self {
            ExponentSequence::Explicit(mut v) => {
                v.insert(0, 0.0);
                ExponentSequence::Explicit(v)
            }
            ExponentSequence::Custom { mut head, tail } => {
                head.insert(0, 0.0);
                ExponentSequence::Custom { head, tail }
            }
            tail => ExponentSequence::Custom {
                head: vec![0.0],
                tail: Box::new(tail),
            },
        }
    }

    /// Number of terms, `None` for infinite families.
    pub fn len(&self) -> Option<usize> {
        match self {
            ExponentSequence::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn is_symbolic(&self) -> bool {
        !matches!(self, ExponentSequence::Explicit(_))
    }

    /// `λ_0 ..= λ_n`.
    pub fn values(&self, n: usize) -> Result<Vec<f64>> {
        self.take(n + 1)
    }

    /// The first `count` terms, validated: finite, non-negative, pairwise
    /// distinct, with `0` allowed only as the leading term.
    pub fn take(&self, count: usize) -> Result<Vec<f64>> {
        let values = self.raw_take(count)?;
        validate_values(&values)?;
        Ok(values)
    }

    fn raw_take(&self, count: usize) -> Result<Vec<f64>> {
        match self {
            ExponentSequence::Explicit(v) => {
                if count > v.len() {
                    return Err(invalid(format!(
                        "explicit sequence has {} terms, {} requested",
                        v.len(),
                        count
                    )));
                }
                Ok(v[..count].to_vec())
            }
            ExponentSequence::Affine {
                slope,
                offset,
                start,
            } => {
                if !(*slope > 0.0) || !slope.is_finite() || !offset.is_finite() {
                    return Err(invalid(format!(
                        "affine sequence needs a finite positive slope, got {slope}*i+{offset}"
                    )));
                }
                Ok((0..count as u64)
                    .map(|j| slope * (start + j) as f64 + offset)
                    .collect())
            }
            ExponentSequence::Power { power, start } => {
                if *power == 0.0 || !power.is_finite() {
                    return Err(invalid(format!(
                        "power sequence i^{power} is not injective"
                    )));
                }
                Ok((0..count as u64)
                    .map(|j| ((start + j) as f64).powf(*power))
                    .collect())
            }
            ExponentSequence::Primes => {
                Ok(first_primes(count).into_iter().map(|p| p as f64).collect())
            }
            ExponentSequence::Custom { head, tail } => {
                let mut out: Vec<f64> = head.iter().copied().take(count).collect();
                if out.len() < count {
                    out.extend(tail.raw_take(count - out.len())?);
                }
                Ok(out)
            }
        }
    }

    /// Parses the descriptor micro-grammar.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix('@') {
            return Self::from_file(Path::new(path));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "primes" {
            return Ok(ExponentSequence::Primes);
        }
        if compact.contains('i') {
            return parse_family(&compact);
        }
        parse_number_list(s).map(ExponentSequence::Explicit)
    }

    /// Explicit list from a file: numbers separated by commas or newlines,
    /// with an optional non-numeric header line.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read sequence file {}: {e}", path.display())))?;
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .peekable();
        if let Some(first) = lines.peek() {
            let starts_numeric = first
                .split(',')
                .next()
                .map(|f| f.trim().parse::<f64>().is_ok())
                .unwrap_or(false);
            if !starts_numeric {
                lines.next();
            }
        }
        let body: Vec<&str> = lines.collect();
        parse_number_list(&body.join(",")).map(ExponentSequence::Explicit)
    }
}

fn parse_family(s: &str) -> Result<ExponentSequence> {
    let bad = || invalid(format!("unrecognized sequence descriptor {s:?}"));
    if let Some(rest) = s.strip_prefix("i^") {
        let power: f64 = rest.parse().map_err(|_| bad())?;
        return Ok(ExponentSequence::power(power));
    }
    let pos = s.find('i').ok_or_else(bad)?;
    let (left, right) = (&s[..pos], &s[pos + 1..]);
    let slope = match left {
        "" => 1.0,
        _ => left
            .strip_suffix('*')
            .ok_or_else(bad)?
            .parse::<f64>()
            .map_err(|_| bad())?,
    };
    let offset = match right {
        "" => 0.0,
        _ if right.starts_with('+') || right.starts_with('-') => {
            right.parse::<f64>().map_err(|_| bad())?
        }
        _ => return Err(bad()),
    };
    Ok(ExponentSequence::affine(slope, offset))
}

pub(crate) fn parse_number_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| invalid(format!("not a number: {t:?}")))
        })
        .collect()
}

fn validate_values(values: &[f64]) -> Result<()> {
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(invalid(format!("exponent λ_{i} = {v} is not finite")));
        }
        if v < 0.0 || (v == 0.0 && i > 0) {
            return Err(invalid(format!(
                "exponent λ_{i} = {v} must be positive (only λ_0 may be 0)"
            )));
        }
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(invalid(format!("exponent {} appears more than once", w[0])));
    }
    Ok(())
}

/// The first `count` primes.
pub(crate) fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let n = count as f64;
    // Rosser's bound p_n < n(ln n + ln ln n) for n >= 6.
    let mut limit = if count < 6 {
        15
    } else {
        (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1
    };
    loop {
        let primes = primes_up_to(limit);
        if primes.len() >= count {
            return primes[..count].to_vec();
        }
        limit *= 2;
    }
}

impl FromStr for ExponentSequence {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for ExponentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentSequence::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            ExponentSequence::Affine {
                slope,
                offset,
                start,
            } => {
                match (*slope == 1.0, *offset) {
                    (true, 0.0) => write!(f, "i")?,
                    (true, o) => write!(f, "i{o:+}")?,
                    (false, 0.0) => write!(f, "{slope}*i")?,
                    (false, o) => write!(f, "{slope}*i{o:+}")?,
                }
                if *start > 0 {
                    write!(f, " (i>={start})")?;
                }
                Ok(())
            }
            ExponentSequence::Power { power, start } => {
                write!(f, "i^{power}")?;
                if *start > 0 {
                    write!(f, " (i>={start})")?;
                }
                Ok(())
            }
            ExponentSequence::Primes => write!(f, "primes"),
            ExponentSequence::Custom { head, tail } => {
                let parts: Vec<String> = head.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}] ++ {}", parts.join(","), tail)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_micro_grammar() {
        assert_eq!(
            ExponentSequence::parse("i").unwrap(),
            ExponentSequence::affine(1.0, 0.0)
        );
        assert_eq!(
            ExponentSequence::parse("2*i+1").unwrap(),
            ExponentSequence::affine(2.0, 1.0)
        );
        assert_eq!(
            ExponentSequence::parse(" 3 * i - 1 ").unwrap(),
            ExponentSequence::affine(3.0, -1.0)
        );
        assert_eq!(
            ExponentSequence::parse("i^2").unwrap(),
            ExponentSequence::power(2.0)
        );
        assert_eq!(
            ExponentSequence::parse("i^0.5").unwrap(),
            ExponentSequence::power(0.5)
        );
        assert_eq!(
            ExponentSequence::parse("primes").unwrap(),
            ExponentSequence::Primes
        );
        assert_eq!(
            ExponentSequence::parse("0, 1.5,3").unwrap(),
            ExponentSequence::Explicit(vec![0.0, 1.5, 3.0])
        );
        assert!(ExponentSequence::parse("2i").is_err());
        assert!(ExponentSequence::parse("i*2").is_err());
        assert!(ExponentSequence::parse("x^2").is_err());
    }

    #[test]
    fn descriptor_round_trips_through_display() {
        for s in ["i", "2*i+1", "i^2", "primes", "3*i", "i-0.5"] {
            let seq = ExponentSequence::parse(s).unwrap();
            assert_eq!(
                ExponentSequence::parse(&seq.to_string()).unwrap(),
                seq,
                "{s}"
            );
        }
    }

    #[test]
    fn family_values() {
        assert_eq!(
            ExponentSequence::affine(2.0, 1.0).values(3).unwrap(),
            vec![1.0, 3.0, 5.0, 7.0]
        );
        assert_eq!(
            ExponentSequence::power(2.0).values(3).unwrap(),
            vec![0.0, 1.0, 4.0, 9.0]
        );
        assert_eq!(
            ExponentSequence::Primes.take(5).unwrap(),
            vec![2.0, 3.0, 5.0, 7.0, 11.0]
        );
        let s = ExponentSequence::power(2.0)
            .starting_at(2)
            .unwrap()
            .with_leading_zero();
        assert_eq!(s.take(4).unwrap(), vec![0.0, 4.0, 9.0, 16.0]);
    }

    #[test]
    fn rejects_invalid_values() {
        assert!(ExponentSequence::Explicit(vec![1.0, 2.0, 1.0])
            .take(3)
            .is_err());
        assert!(ExponentSequence::Explicit(vec![1.0, 0.0]).take(2).is_err());
        assert!(ExponentSequence::Explicit(vec![1.0, -2.0]).take(2).is_err());
        assert!(ExponentSequence::Explicit(vec![1.0]).take(2).is_err());
        assert!(ExponentSequence::affine(1.0, -1.0).take(3).is_err());
        assert!(ExponentSequence::affine(0.0, 1.0).take(3).is_err());
        assert!(ExponentSequence::power(0.0).take(3).is_err());
    }

    #[test]
    fn many_primes() {
        let p = first_primes(1000);
        assert_eq!(p.len(), 1000);
        assert_eq!(p[999], 7919);
    }

    #[test]
    fn reads_files_with_optional_header() {
        let dir = std::env::temp_dir().join(format!("muntz-seq-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("seq.csv");
        std::fs::write(&path, "lambda\n0\n2\n3.5\n").unwrap();
        let seq = ExponentSequence::parse(&format!("@{}", path.display())).unwrap();
        assert_eq!(seq, ExponentSequence::Explicit(vec![0.0, 2.0, 3.5]));
        std::fs::remove_dir_all(&dir).ok();
    }
}
