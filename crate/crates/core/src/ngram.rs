//! Word-level n-gram frequency vectors.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::TokenStream;

/// Sparse frequency vector over n-gram features of one document.
///
/// A feature is `n` tokens joined by single ASCII spaces. Only observed
/// features are stored, so every frequency is at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub doc_id: String,
    pub n: usize,
    pub counts: BTreeMap<String, u64>,
}

impl FeatureVector {
    /// Builds a vector from explicit counts, checking the invariants: order
    /// at least 1, frequencies at least 1, and every key made of exactly
    /// `n` space-separated words.
    pub fn from_counts(doc_id: &str, n: usize, counts: BTreeMap<String, u64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder);
        }
        for (feature, &count) in &counts {
            if count == 0 {
                return Err(Error::Config(format!(
                    "feature {feature:?} has zero frequency"
                )));
            }
            let words = feature.split(' ').collect::<Vec<_>>();
            if words.len() != n || words.iter().any(|w| w.is_empty()) {
                return Err(Error::Config(format!(
                    "feature {feature:?} is not {n} space-separated words"
                )));
            }
        }
        Ok(FeatureVector {
            doc_id: doc_id.to_string(),
            n,
            counts,
        })
    }

    /// Convenience constructor for literal `(feature, count)` pairs.
    pub fn from_pairs<'a, I>(doc_id: &str, n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, u64)>,
    {
        let counts = pairs.into_iter().map(|(f, c)| (f.to_string(), c)).collect();
        Self::from_counts(doc_id, n, counts)
    }

    /// Frequency of `feature`, 0 when absent.
    pub fn get(&self, feature: &str) -> u64 {
        self.counts.get(feature).copied().unwrap_or(0)
    }

    /// Sum of all frequencies: `max(0, token_count - n + 1)` for the stream
    /// the vector came from.
    pub fn total_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of distinct features.
    pub fn num_features(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

pub(crate) fn check_orders(a: &FeatureVector, b: &FeatureVector) -> Result<()> {
    if a.n != b.n {
        return Err(Error::OrderMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

/// Counts every width-`n` window of the token stream. Windows slide over
/// the whole stream as one contiguous sequence, including across positions
/// where punctuation or stop words were removed upstream.
pub fn build_ngrams(stream: &TokenStream, n: usize) -> Result<FeatureVector> {
    if n < 1 {
        return Err(Error::InvalidOrder);
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    if stream.tokens.len() >= n {
        for window in stream.tokens.windows(n) {
            *counts.entry(window.join(" ")).or_insert(0) += 1;
        }
    }
    Ok(FeatureVector {
        doc_id: stream.doc_id.clone(),
        n,
        counts,
    })
}

/// Lexicographically sorted union of both key sets. Downstream metrics
/// treat a feature absent from one vector as frequency 0.
pub fn vocabulary_union(a: &FeatureVector, b: &FeatureVector) -> Result<Vec<String>> {
    check_orders(a, b)?;
    let union: BTreeSet<&String> = a.counts.keys().chain(b.counts.keys()).collect();
    Ok(union.into_iter().cloned().collect())
}
