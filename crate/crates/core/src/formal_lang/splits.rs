use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{LanguageSpec, Sequence};
use crate::rng::stream_rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitSize {
    Tokens(usize),
    /// Fraction of the eligible token count.
    Fraction(f64),
}

impl SplitSize {
    fn target(self, available: usize) -> usize {
        match self {
            SplitSize::Tokens(n) => n,
            SplitSize::Fraction(f) => (available as f64 * f).round() as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitConfig {
    pub seed: u64,
    pub validation: SplitSize,
    pub generalization: SplitSize,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            seed: 0,
            validation: SplitSize::Tokens(100_000),
            generalization: SplitSize::Tokens(100_000),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Splits {
    pub train: Vec<Sequence>,
    pub validation: Vec<Sequence>,
    pub length_generalization: Vec<Sequence>,
}

fn tokens(seqs: &[Sequence]) -> usize {
    seqs.iter().map(Sequence::len).sum()
}

impl Splits {
    pub fn token_counts(&self) -> (usize, usize, usize) {
        (
            tokens(&self.train),
            tokens(&self.validation),
            tokens(&self.length_generalization),
        )
    }
}

/// Partitions sequences by length. Sequences up to `max_len_train` go to
/// train or validation (a seeded random subset sized by `cfg.validation`);
/// sequences in `(max_len_train, max_len_gen]` go to length generalization
/// until `cfg.generalization` tokens are collected. Longer ones are dropped.
pub fn make_splits(sequences: &[Sequence], spec: &LanguageSpec, cfg: &SplitConfig) -> Splits {
    let mut short = Vec::new();
    let mut long = Vec::new();
    for (i, s) in sequences.iter().enumerate() {
        if s.len() <= spec.max_len_train {
            short.push(i);
        } else if s.len() <= spec.max_len_gen {
            long.push(i);
        }
    }

    let short_tokens: usize = short.iter().map(|&i| sequences[i].len()).sum();
    let target = cfg.validation.target(short_tokens);
    let mut order = short.clone();
    order.shuffle(&mut stream_rng(cfg.seed, 0));
    let mut in_validation = vec![false; sequences.len()];
    let mut taken = 0;
    for &i in &order {
        if taken >= target {
            break;
        }
        in_validation[i] = true;
        taken += sequences[i].len();
    }

    let mut splits = Splits::default();
    for &i in &short {
        if in_validation[i] {
            splits.validation.push(sequences[i].clone());
        } else {
            splits.train.push(sequences[i].clone());
        }
    }

    let long_tokens: usize = long.iter().map(|&i| sequences[i].len()).sum();
    let gen_target = cfg.generalization.target(long_tokens);
    let mut taken = 0;
    for &i in &long {
        if taken >= gen_target {
            break;
        }
        taken += sequences[i].len();
        splits.length_generalization.push(sequences[i].clone());
    }
    splits
}
