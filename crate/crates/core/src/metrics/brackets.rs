use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MetricError;
use crate::structures::{ConstituencyTree, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketOptions {
    /// Drop the span covering the whole sentence.
    pub exclude_whole_sentence: bool,
}

impl Default for BracketOptions {
    fn default() -> Self {
        BracketOptions {
            exclude_whole_sentence: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketCounts {
    pub matched: u64,
    pub predicted: u64,
    pub gold: u64,
}

impl BracketCounts {
    pub fn prf(&self) -> Prf {
        let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { 100.0 * a as f64 / b as f64 };
        let precision = ratio(self.matched, self.predicted);
        let recall = ratio(self.matched, self.gold);
        let f = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Prf { precision, recall, f }
    }
}

impl std::ops::AddAssign for BracketCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.matched += rhs.matched;
        self.predicted += rhs.predicted;
        self.gold += rhs.gold;
    }
}

/// Percentages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

fn span_multiset(t: &ConstituencyTree, opts: BracketOptions) -> BTreeMap<Span, u64> {
    let whole = Span::new(0, t.leaf_count() - 1);
    let mut m = BTreeMap::new();
    for s in t.spans() {
        if s.width() < 2 || (opts.exclude_whole_sentence && s == whole) {
            continue;
        }
        *m.entry(s).or_insert(0) += 1;
    }
    m
}

/// Unlabeled span counts over spans of width at least 2.
pub fn bracket_counts(
    pred: &ConstituencyTree,
    gold: &ConstituencyTree,
    opts: BracketOptions,
) -> Result<BracketCounts, MetricError> {
    if pred.leaf_count() != gold.leaf_count() {
        return Err(MetricError::LengthMismatch(pred.leaf_count(), gold.leaf_count()));
    }
    let p = span_multiset(pred, opts);
    let g = span_multiset(gold, opts);
    let matched = p
        .iter()
        .map(|(s, &c)| c.min(g.get(s).copied().unwrap_or(0)))
        .sum();
    Ok(BracketCounts {
        matched,
        predicted: p.values().sum(),
        gold: g.values().sum(),
    })
}

pub fn bracket_prf(pred: &ConstituencyTree, gold: &ConstituencyTree, opts: BracketOptions) -> Result<Prf, MetricError> {
    bracket_counts(pred, gold, opts).map(|c| c.prf())
}
