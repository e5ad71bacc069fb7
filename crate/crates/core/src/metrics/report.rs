use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Provenance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Score {
    pub name: String,
    pub value: f64,
}

/// Output of every metric. `scores` are percentages in `[0, 100]`; `stats`
/// hold other real-valued quantities (entropies, probabilities).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub metric: String,
    pub scores: Vec<Score>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stats: Vec<Score>,
    pub counts: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sources: Vec<Provenance>,
    pub version: String,
    pub config_hash: String,
}

impl MetricReport {
    pub fn new(metric: impl Into<String>) -> Self {
        MetricReport {
            metric: metric.into(),
            scores: Vec::new(),
            stats: Vec::new(),
            counts: BTreeMap::new(),
            sources: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: String::new(),
        }
    }

    /// Records the SHA-256 of the config's JSON serialization.
    pub fn with_config<C: Serialize + ?Sized>(mut self, config: &C) -> Self {
        self.config_hash = config_hash(config);
        self
    }

    pub fn push_score(&mut self, name: impl Into<String>, value: f64) {
        debug_assert!((0.0..=100.0).contains(&value), "score {value} outside [0, 100]");
        self.scores.push(Score {
            name: name.into(),
            value,
        });
    }

    pub fn push_stat(&mut self, name: impl Into<String>, value: f64) {
        self.stats.push(Score {
            name: name.into(),
            value,
        });
    }

    pub fn set_count(&mut self, name: impl Into<String>, value: u64) {
        self.counts.insert(name.into(), value);
    }

    pub fn score(&self, name: &str) -> Option<f64> {
        self.scores.iter().find(|s| s.name == name).map(|s| s.value)
    }

    pub fn stat(&self, name: &str) -> Option<f64> {
        self.stats.iter().find(|s| s.name == name).map(|s| s.value)
    }

    pub fn count(&self, name: &str) -> Option<u64> {
        self.counts.get(name).copied()
    }

    /// Plain-text rendering, one value per line.
    pub fn to_text(&self) -> String {
        let w = self
            .scores
            .iter()
            .chain(&self.stats)
            .map(|s| s.name.len())
            .chain(self.counts.keys().map(String::len))
            .max()
            .unwrap_or(0)
            .max(20);
        let mut out = format!("metric: {}\n", self.metric);
        for s in &self.scores {
            out.push_str(&format!("  {:<w$} {:>8.2}\n", s.name, s.value));
        }
        for s in &self.stats {
            out.push_str(&format!("  {:<w$} {:>12.6}\n", s.name, s.value));
        }
        for (k, v) in &self.counts {
            out.push_str(&format!("  {k:<w$} {v:>8}\n"));
        }
        out
    }
}

pub(crate) fn config_hash<C: Serialize + ?Sized>(config: &C) -> String {
    let json = serde_json::to_vec(config).expect("config serializes");
    hex::encode(Sha256::digest(&json))
}
