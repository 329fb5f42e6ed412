//! Motif scores built from per-pair link scores.
//!
//! * `Mul`: product of motif-pair scores times `1 - s` for every potential
//!   deal-breaker (pairs assumed independent).
//! * `Avg`: convex combination `<w, s>` of the scores. With deal-breakers
//!   the vector is transformed first: potential deal-breakers enter with a
//!   negative sign, an existing deal-breaker zeroes the whole vector, and
//!   the result is rectified at 0.
//! * `Min`: the rectified minimum of the same transformed vector, i.e. all
//!   weight on the weakest pair.
//!
//! Pairs that already exist always carry score 1. For deal-breaker-free
//! motifs `Mul <= Min <= Avg` holds pointwise.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::link::LinkScoreVector;
use crate::motif::{EdgeClass, MotifQuery};

const SIMPLEX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aggregator {
    Mul,
    Avg,
    Min,
}

impl Aggregator {
    pub const ALL: [Aggregator; 3] = [Aggregator::Mul, Aggregator::Avg, Aggregator::Min];

    pub fn name(self) -> &'static str {
        match self {
            Aggregator::Mul => "mul",
            Aggregator::Avg => "avg",
            Aggregator::Min => "min",
        }
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Aggregator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mul" => Ok(Aggregator::Mul),
            "avg" => Ok(Aggregator::Avg),
            "min" => Ok(Aggregator::Min),
            other => Err(Error::invalid(format!(
                "unknown aggregator {other:?} (valid: mul, avg, min)"
            ))),
        }
    }
}

/// Non-negative weights summing to one, aligned with a [`LinkScoreVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("weight vector is empty"));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::invalid(format!("weights must be finite and >= 0, got {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::invalid(format!("weights must sum to 1, got {sum}")));
        }
        Ok(Self(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightMode {
    /// Uniform over every motif and deal-breaker pair.
    UniformAll,
    /// Uniform over the pairs that do not exist yet; existing pairs get 0.
    UniformNonExisting,
    Custom(Vec<f64>),
}

impl WeightMode {
    /// Parses `all`, `nonexisting`, or a list of floats separated by commas
    /// or whitespace.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec.trim() {
            "all" => Ok(WeightMode::UniformAll),
            "nonexisting" => Ok(WeightMode::UniformNonExisting),
            list => {
                let values = list
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|e| Error::invalid(format!("weight {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(WeightMode::Custom(values))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotifScore {
    pub value: f64,
    pub aggregator: Aggregator,
    pub dealbreaker_mode: bool,
}

fn check_alignment(q: &MotifQuery, s: &LinkScoreVector) -> Result<()> {
    let expected: Vec<_> = q.scored_pairs().map(|p| (p.roles, p.class)).collect();
    if expected.len() != s.len() {
        return Err(Error::LengthMismatch {
            expected: expected.len(),
            actual: s.len(),
        });
    }
    let aligned = expected
        .iter()
        .zip(s.pairs.iter().zip(&s.classes))
        .all(|(&(roles, class), (&r, &c))| roles == r && class == c);
    if !aligned {
        return Err(Error::invalid("score vector is not aligned with the query's pairs"));
    }
    Ok(())
}

fn check_weights(s: &LinkScoreVector, w: &WeightVector) -> Result<()> {
    if w.len() != s.len() {
        return Err(Error::LengthMismatch {
            expected: s.len(),
            actual: w.len(),
        });
    }
    Ok(())
}

/// Deal-breaker transform: potential deal-breakers negated, everything zero
/// once any deal-breaker exists.
pub fn transformed_scores(s: &LinkScoreVector) -> Vec<f64> {
    if s.classes.contains(&EdgeClass::DealBreakerExisting) {
        return vec![0.0; s.len()];
    }
    s.classes
        .iter()
        .zip(&s.normalized)
        .map(|(c, &x)| if c.is_dealbreaker() { -x } else { x })
        .collect()
}

pub fn score_mul(q: &MotifQuery, s: &LinkScoreVector) -> Result<MotifScore> {
    check_alignment(q, s)?;
    let mut value = 1.0;
    for (c, &x) in s.classes.iter().zip(&s.normalized) {
        value *= match c {
            EdgeClass::MotifExisting => 1.0,
            EdgeClass::MotifNonExisting => x,
            EdgeClass::DealBreakerNonExisting => 1.0 - x,
            EdgeClass::DealBreakerExisting => 0.0,
            EdgeClass::Inert => 1.0,
        };
    }
    Ok(MotifScore {
        value,
        aggregator: Aggregator::Mul,
        dealbreaker_mode: q.has_dealbreakers(),
    })
}

/// Convex combination without deal-breaker handling. Weight on a
/// deal-breaker pair is rejected; use [`score_avg_db`] for those motifs.
pub fn score_avg(q: &MotifQuery, s: &LinkScoreVector, w: &WeightVector) -> Result<MotifScore> {
    check_alignment(q, s)?;
    check_weights(s, w)?;
    if s.classes
        .iter()
        .zip(w.as_slice())
        .any(|(c, &wi)| c.is_dealbreaker() && wi > 0.0)
    {
        return Err(Error::invalid("weights on deal-breaker pairs need the rectified score"));
    }
    let value = w
        .as_slice()
        .iter()
        .zip(&s.normalized)
        .map(|(a, b)| a * b)
        .sum::<f64>()
        .min(1.0);
    Ok(MotifScore {
        value,
        aggregator: Aggregator::Avg,
        dealbreaker_mode: false,
    })
}

/// Rectified convex combination of the deal-breaker-transformed scores.
pub fn score_avg_db(q: &MotifQuery, s: &LinkScoreVector, w: &WeightVector) -> Result<MotifScore> {
    check_alignment(q, s)?;
    check_weights(s, w)?;
    let t = transformed_scores(s);
    let dot: f64 = w.as_slice().iter().zip(&t).map(|(a, b)| a * b).sum();
    Ok(MotifScore {
        value: dot.clamp(0.0, 1.0),
        aggregator: Aggregator::Avg,
        dealbreaker_mode: true,
    })
}

/// Rectified minimum of the transformed scores; 1 when nothing is scored.
pub fn score_min(q: &MotifQuery, s: &LinkScoreVector) -> Result<MotifScore> {
    check_alignment(q, s)?;
    let value = transformed_scores(s)
        .into_iter()
        .fold(1.0f64, f64::min)
        .max(0.0);
    Ok(MotifScore {
        value,
        aggregator: Aggregator::Min,
        dealbreaker_mode: q.has_dealbreakers(),
    })
}

pub fn make_weights(mode: &WeightMode, q: &MotifQuery) -> Result<WeightVector> {
    let classes: Vec<EdgeClass> = q.scored_pairs().map(|p| p.class).collect();
    if classes.is_empty() {
        return Err(Error::invalid("query has no motif or deal-breaker pairs to weight"));
    }
    let uniform_over = |mask: &dyn Fn(EdgeClass) -> bool| -> Option<Vec<f64>> {
        let count = classes.iter().filter(|&&c| mask(c)).count();
        (count > 0).then(|| {
            let w = 1.0 / count as f64;
            classes.iter().map(|&c| if mask(c) { w } else { 0.0 }).collect()
        })
    };
    let weights = match mode {
        WeightMode::UniformAll => uniform_over(&|_| true).expect("non-empty"),
        // Fully existing queries fall back to uniform over everything.
        WeightMode::UniformNonExisting => {
            uniform_over(&|c| !c.exists()).unwrap_or_else(|| uniform_over(&|_| true).expect("non-empty"))
        }
        WeightMode::Custom(values) => {
            if values.len() != classes.len() {
                return Err(Error::LengthMismatch {
                    expected: classes.len(),
                    actual: values.len(),
                });
            }
            values.clone()
        }
    };
    WeightVector::new(weights)
}

/// Scores a query with the chosen aggregator. `Avg` uses the rectified form
/// whenever the motif has deal-breaker pairs.
pub fn aggregate(q: &MotifQuery, s: &LinkScoreVector, aggregator: Aggregator, weights: &WeightMode) -> Result<MotifScore> {
    match aggregator {
        Aggregator::Mul => score_mul(q, s),
        Aggregator::Min => score_min(q, s),
        Aggregator::Avg => {
            let w = make_weights(weights, q)?;
            if q.has_dealbreakers() {
                score_avg_db(q, s, &w)
            } else {
                score_avg(q, s, &w)
            }
        }
    }
}
