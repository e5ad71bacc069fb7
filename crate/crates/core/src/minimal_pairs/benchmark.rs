use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scoring::DistanceBuckets;
use super::{perturb, MinimalPair, PerturbError, PerturbOptions, Subtask};
use crate::formal_lang::{recognize, LanguageSpec, Sequence};
use crate::rng::stream_rng;

const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    pub seed: u64,
    /// `None` means every subtask the language supports.
    pub subtasks: Option<Vec<Subtask>>,
    /// Pairs wanted per subtask; `None` takes one pair per source sequence.
    pub per_subtask: Option<usize>,
    /// Cap per subtask and distance bucket.
    pub per_bucket: Option<usize>,
    pub buckets: DistanceBuckets,
    pub perturb: PerturbOptions,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            seed: 0,
            subtasks: None,
            per_subtask: None,
            per_bucket: None,
            buckets: DistanceBuckets::default(),
            perturb: PerturbOptions::default(),
        }
    }
}

/// A quota that could not be filled from the corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shortfall {
    pub subtask: Subtask,
    /// Bucket label, or `None` for the subtask total.
    pub bucket: Option<String>,
    pub wanted: usize,
    pub got: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark {
    pub pairs: Vec<MinimalPair>,
    pub shortfalls: Vec<Shortfall>,
    /// Sequences for which no ungrammatical variant was found.
    pub skipped: usize,
}

impl Benchmark {
    /// Checks every positive is accepted, every negative rejected and both
    /// have equal length.
    pub fn verify(&self, spec: &LanguageSpec) -> Result<(), PerturbError> {
        for p in &self.pairs {
            if !recognize(spec, &p.positive.tokens).is_accept() {
                return Err(PerturbError::Verification(p.id.clone(), "positive is rejected".into()));
            }
            if recognize(spec, &p.negative).is_accept() {
                return Err(PerturbError::Verification(p.id.clone(), "negative is accepted".into()));
            }
            if p.negative.len() != p.positive.len() {
                return Err(PerturbError::Verification(p.id.clone(), "length changed".into()));
            }
        }
        Ok(())
    }
}

/// Subtasks available for a language. Asking for `typemismatch` on a
/// single-type language is an error.
pub fn resolve_subtasks(spec: &LanguageSpec, requested: Option<&[Subtask]>) -> Result<Vec<Subtask>, PerturbError> {
    let single_type = spec.type_count() < 2;
    match requested {
        None => Ok(Subtask::ALL
            .into_iter()
            .filter(|t| !(single_type && *t == Subtask::TypeMismatch))
            .collect()),
        Some(list) => {
            if single_type && list.contains(&Subtask::TypeMismatch) {
                return Err(PerturbError::UnsupportedSubtask {
                    language: spec.name(),
                    subtask: Subtask::TypeMismatch,
                });
            }
            let mut out = list.to_vec();
            out.sort();
            out.dedup();
            Ok(out)
        }
    }
}

/// Builds at most one pair per (sequence, subtask), walking the corpus in
/// order until quotas are met. Pair `i` of subtask `t` uses its own random
/// stream, so the result depends only on the inputs and `cfg.seed`.
pub fn build_benchmark(corpus: &[Sequence], spec: &LanguageSpec, cfg: &BenchmarkConfig) -> Result<Benchmark, PerturbError> {
    let subtasks = resolve_subtasks(spec, cfg.subtasks.as_deref())?;
    let mut pairs = Vec::new();
    let mut shortfalls = Vec::new();
    let mut skipped = 0;

    for &subtask in &subtasks {
        let quota = cfg.per_subtask.unwrap_or(corpus.len());
        let mut per_bucket = vec![0usize; cfg.buckets.len()];
        let mut got = 0;
        let mut start = 0;
        while got < quota && start < corpus.len() {
            let end = (start + CHUNK).min(corpus.len());
            let candidates: Vec<Result<MinimalPair, PerturbError>> = (start..end)
                .into_par_iter()
                .map(|i| {
                    let stream = (i as u64) * Subtask::ALL.len() as u64 + subtask as u64;
                    let mut rng = stream_rng(cfg.seed, stream);
                    perturb(subtask, spec, &corpus[i], &mut rng, &cfg.perturb)
                })
                .collect();
            for cand in candidates {
                if got >= quota {
                    break;
                }
                let pair = match cand {
                    Ok(p) => p,
                    Err(PerturbError::UnsupportedSubtask { language, subtask }) => {
                        return Err(PerturbError::UnsupportedSubtask { language, subtask })
                    }
                    Err(e) => {
                        info!("skipping: {e}");
                        skipped += 1;
                        continue;
                    }
                };
                let b = cfg.buckets.bucket_of(pair.distance);
                if cfg.per_bucket.is_some_and(|cap| per_bucket[b] >= cap) {
                    continue;
                }
                per_bucket[b] += 1;
                got += 1;
                pairs.push(pair);
            }
            start = end;
        }
        if cfg.per_subtask.is_some() && got < quota {
            warn!("{subtask}: only {got} of {quota} pairs could be built");
            shortfalls.push(Shortfall {
                subtask,
                bucket: None,
                wanted: quota,
                got,
            });
        }
        if let Some(cap) = cfg.per_bucket {
            for (b, &n) in per_bucket.iter().enumerate() {
                if n < cap && got < quota {
                    shortfalls.push(Shortfall {
                        subtask,
                        bucket: Some(cfg.buckets.label(b)),
                        wanted: cap,
                        got: n,
                    });
                }
            }
        }
    }
    if skipped > 0 {
        warn!("{skipped} sequence(s) skipped: too short or no ungrammatical variant found");
    }
    let bench = Benchmark {
        pairs,
        shortfalls,
        skipped,
    };
    bench.verify(spec)?;
    Ok(bench)
}
