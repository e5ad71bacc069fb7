use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{Counts, MetricReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScoreError {
    #[error("missing scores for: {}", .0.join(", "))]
    MissingScores(Vec<String>),
    #[error("score for {id}/{variant} is {value}, expected a finite non-negative number")]
    InvalidScore { id: String, variant: Variant, value: f64 },
    #[error("duplicate score for {0}/{1}")]
    Duplicate(String, Variant),
    #[error("distance buckets must be strictly increasing and start at 2 or above")]
    BadBuckets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Pos,
    Neg,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Pos => "pos",
            Variant::Neg => "neg",
        })
    }
}

/// Sentence scores where lower means more likely (perplexity or NLL).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreFile {
    scores: HashMap<(String, Variant), f64>,
}

impl ScoreFile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: impl Into<String>, variant: Variant, value: f64) -> Result<(), ScoreError> {
        let id = id.into();
        if !value.is_finite() || value < 0.0 {
            return Err(ScoreError::InvalidScore { id, variant, value });
        }
        if self.scores.contains_key(&(id.clone(), variant)) {
            return Err(ScoreError::Duplicate(id, variant));
        }
        self.scores.insert((id, variant), value);
        Ok(())
    }

    pub fn get(&self, id: &str, variant: Variant) -> Option<f64> {
        self.scores.get(&(id.to_string(), variant)).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Entries sorted by id then variant.
    pub fn entries(&self) -> Vec<(&str, Variant, f64)> {
        let mut v: Vec<_> = self.scores.iter().map(|((id, var), s)| (id.as_str(), *var, *s)).collect();
        v.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));
        v
    }
}

/// Bucket lower bounds; the last bucket is open-ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBuckets {
    lower_bounds: Vec<usize>,
}

impl Default for DistanceBuckets {
    /// `2`, `3-4`, `5-8`, `9-16`, `17+`
    fn default() -> Self {
        DistanceBuckets {
            lower_bounds: vec![2, 3, 5, 9, 17],
        }
    }
}

impl DistanceBuckets {
    pub fn new(lower_bounds: Vec<usize>) -> Result<Self, ScoreError> {
        if lower_bounds.is_empty()
            || lower_bounds[0] < 2
            || lower_bounds.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(ScoreError::BadBuckets);
        }
        Ok(DistanceBuckets { lower_bounds })
    }

    pub fn len(&self) -> usize {
        self.lower_bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower_bounds.is_empty()
    }

    /// Index of the bucket holding `distance`; distances below the first
    /// bound fall into the first bucket.
    pub fn bucket_of(&self, distance: usize) -> usize {
        self.lower_bounds
            .iter()
            .rposition(|&lo| lo <= distance)
            .unwrap_or(0)
    }

    pub fn label(&self, idx: usize) -> String {
        let lo = self.lower_bounds[idx];
        match self.lower_bounds.get(idx + 1) {
            None => format!("{lo}+"),
            Some(&next) if next == lo + 1 => lo.to_string(),
            Some(&next) => format!("{lo}-{}", next - 1),
        }
    }
}

impl FromStr for DistanceBuckets {
    type Err = ScoreError;

    /// Comma separated lower bounds, e.g. `2,3,5,9,17`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bounds = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| ScoreError::BadBuckets))
            .collect::<Result<Vec<_>, _>>()?;
        DistanceBuckets::new(bounds)
    }
}

/// What the scorer needs to know about a pair. `subtask` is free text so
/// externally supplied pair sets can use their own category labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMeta {
    pub id: String,
    pub subtask: String,
    pub distance: Option<usize>,
}

/// Pair accuracy: a pair is correct when its positive scores strictly lower
/// than its negative. Reported overall, per subtask, per distance bucket and
/// per subtask and bucket.
pub fn score_benchmark(
    pairs: &[PairMeta],
    scores: &ScoreFile,
    buckets: &DistanceBuckets,
) -> Result<MetricReport, ScoreError> {
    let mut missing = Vec::new();
    for p in pairs {
        for v in [Variant::Pos, Variant::Neg] {
            if scores.get(&p.id, v).is_none() {
                missing.push(format!("{}/{v}", p.id));
            }
        }
    }
    if !missing.is_empty() {
        return Err(ScoreError::MissingScores(missing));
    }

    let mut overall = Counts::default();
    let mut by_subtask: BTreeMap<&str, Counts> = BTreeMap::new();
    let mut by_bucket: BTreeMap<usize, Counts> = BTreeMap::new();
    let mut by_both: BTreeMap<(&str, usize), Counts> = BTreeMap::new();
    for p in pairs {
        let pos = scores.get(&p.id, Variant::Pos).expect("checked");
        let neg = scores.get(&p.id, Variant::Neg).expect("checked");
        let c = Counts {
            correct: (pos < neg) as u64,
            total: 1,
        };
        overall += c;
        *by_subtask.entry(&p.subtask).or_default() += c;
        if let Some(d) = p.distance {
            let b = buckets.bucket_of(d);
            *by_bucket.entry(b).or_default() += c;
            *by_both.entry((&p.subtask, b)).or_default() += c;
        }
    }

    let mut report = MetricReport::new("minimal_pairs").with_config(buckets);
    report.push_score("overall", overall.percent());
    report.set_count("pairs", overall.total);
    for (t, c) in &by_subtask {
        report.push_score(format!("subtask/{t}"), c.percent());
        report.set_count(format!("subtask/{t}"), c.total);
    }
    for (b, c) in &by_bucket {
        let label = buckets.label(*b);
        report.push_score(format!("distance/{label}"), c.percent());
        report.set_count(format!("distance/{label}"), c.total);
    }
    for ((t, b), c) in &by_both {
        let label = buckets.label(*b);
        report.push_score(format!("subtask/{t}/distance/{label}"), c.percent());
        report.set_count(format!("subtask/{t}/distance/{label}"), c.total);
    }
    Ok(report)
}
