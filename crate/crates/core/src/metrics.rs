//! Vector-space similarity and distance measures over feature vectors.
//!
//! All four measures are defined in terms of dot products over the union
//! vocabulary of the two operands:
//!
//! * `euclidean` — `sqrt(Σ (a_f − b_f)²)`, a distance (smaller is more
//!   similar),
//! * `cosine` — `a·b / sqrt((a·a)(b·b))`,
//! * `jaccard` — `a·b / (a·a + b·b − a·b)` (the Tanimoto form),
//! * `dice` — `2(a·b) / (a·a + b·b)`.
//!
//! Counts stay exact integers until the final floating-point accumulation,
//! and every measure is symmetric bit-for-bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ngram::{check_orders, FeatureVector};

/// The four supported measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Euclidean,
    Cosine,
    Jaccard,
    Dice,
}

/// Whether larger values mean closer documents or farther ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpretation {
    /// Smaller is more similar (euclidean).
    Distance,
    /// Larger is more similar (cosine, jaccard, dice).
    Similarity,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::Euclidean,
        MetricKind::Cosine,
        MetricKind::Jaccard,
        MetricKind::Dice,
    ];

    pub fn interpretation(self) -> Interpretation {
        match self {
            MetricKind::Euclidean => Interpretation::Distance,
            _ => Interpretation::Similarity,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::Cosine => "cosine",
            MetricKind::Jaccard => "jaccard",
            MetricKind::Dice => "dice",
        }
    }

    /// Computes this measure for a pair of vectors of equal order.
    pub fn compute(self, a: &FeatureVector, b: &FeatureVector) -> Result<MetricValue> {
        match self {
            MetricKind::Euclidean => euclidean_distance(a, b),
            MetricKind::Cosine => cosine_similarity(a, b),
            MetricKind::Jaccard => jaccard_similarity(a, b),
            MetricKind::Dice => dice_similarity(a, b),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(MetricKind::Euclidean),
            "cosine" => Ok(MetricKind::Cosine),
            "jaccard" => Ok(MetricKind::Jaccard),
            "dice" => Ok(MetricKind::Dice),
            other => Err(Error::Config(format!(
                "unknown metric {other:?}; expected euclidean, cosine, jaccard, or dice"
            ))),
        }
    }
}

/// A computed measure together with the metric that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue {
    pub kind: MetricKind,
    pub value: f64,
}

impl MetricValue {
    pub fn interpretation(&self) -> Interpretation {
        self.kind.interpretation()
    }

    pub fn is_distance(&self) -> bool {
        self.interpretation() == Interpretation::Distance
    }
}

/// Dot product over the union vocabulary; missing features contribute 0,
/// so only the key intersection is visited. Terms accumulate in key order,
/// which makes `dot(a, b)` and `dot(b, a)` bit-identical.
pub fn dot(a: &FeatureVector, b: &FeatureVector) -> Result<f64> {
    check_orders(a, b)?;
    Ok(dot_unchecked(a, b))
}

fn dot_unchecked(a: &FeatureVector, b: &FeatureVector) -> f64 {
    let (small, large) = if a.counts.len() <= b.counts.len() {
        (a, b)
    } else {
        (b, a)
    };
    small
        .counts
        .iter()
        .filter_map(|(feature, &va)| large.counts.get(feature).map(|&vb| va as f64 * vb as f64))
        .sum()
}

fn self_dot(v: &FeatureVector) -> f64 {
    v.counts.values().map(|&c| c as f64 * c as f64).sum()
}

/// `sqrt(Σ (a_f − b_f)²)` over the union vocabulary. Zero exactly when the
/// count maps are equal; symmetric; non-negative.
pub fn euclidean_distance(a: &FeatureVector, b: &FeatureVector) -> Result<MetricValue> {
    check_orders(a, b)?;
    // Merge-join the two sorted maps so terms accumulate in key order for
    // either argument order.
    let mut sum = 0.0f64;
    let mut ia = a.counts.iter().peekable();
    let mut ib = b.counts.iter().peekable();
    loop {
        let diff = match (ia.peek(), ib.peek()) {
            (Some(&(ka, &va)), Some(&(kb, &vb))) => match ka.cmp(kb) {
                std::cmp::Ordering::Less => {
                    ia.next();
                    va as f64
                }
                std::cmp::Ordering::Greater => {
                    ib.next();
                    vb as f64
                }
                std::cmp::Ordering::Equal => {
                    ia.next();
                    ib.next();
                    va as f64 - vb as f64
                }
            },
            (Some(&(_, &va)), None) => {
                ia.next();
                va as f64
            }
            (None, Some(&(_, &vb))) => {
                ib.next();
                vb as f64
            }
            (None, None) => break,
        };
        sum += diff * diff;
    }
    Ok(MetricValue {
        kind: MetricKind::Euclidean,
        value: sum.sqrt(),
    })
}

/// `a·b / sqrt((a·a)(b·b))`. Returns 0 when either vector is empty.
pub fn cosine_similarity(a: &FeatureVector, b: &FeatureVector) -> Result<MetricValue> {
    check_orders(a, b)?;
    let value = if a.is_empty() || b.is_empty() {
        0.0
    } else {
        let d = dot_unchecked(a, b);
        // rounding can push the quotient a hair above 1 for near-parallel
        // vectors with very large counts
        (d / (self_dot(a) * self_dot(b)).sqrt()).min(1.0)
    };
    Ok(MetricValue {
        kind: MetricKind::Cosine,
        value,
    })
}

/// `a·b / (a·a + b·b − a·b)`. Both vectors empty gives 1, exactly one
/// empty gives 0.
pub fn jaccard_similarity(a: &FeatureVector, b: &FeatureVector) -> Result<MetricValue> {
    check_orders(a, b)?;
    let value = match (a.is_empty(), b.is_empty()) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        (false, false) => {
            let d = dot_unchecked(a, b);
            (d / (self_dot(a) + self_dot(b) - d)).min(1.0)
        }
    };
    Ok(MetricValue {
        kind: MetricKind::Jaccard,
        value,
    })
}

/// `2(a·b) / (a·a + b·b)`. Both vectors empty gives 1, exactly one empty
/// gives 0.
pub fn dice_similarity(a: &FeatureVector, b: &FeatureVector) -> Result<MetricValue> {
    check_orders(a, b)?;
    let value = match (a.is_empty(), b.is_empty()) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        (false, false) => {
            let d = dot_unchecked(a, b);
            (2.0 * d / (self_dot(a) + self_dot(b))).min(1.0)
        }
    };
    Ok(MetricValue {
        kind: MetricKind::Dice,
        value,
    })
}
