//! Grammaticality minimal pairs built by perturbing well-formed bracket
//! strings, and accuracy scoring stratified by subtask and bracket distance.

mod benchmark;
mod perturb;
mod scoring;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use benchmark::{build_benchmark, resolve_subtasks, Benchmark, BenchmarkConfig, Shortfall};
pub use perturb::{
    apply_bracketswap, apply_randomswap, apply_typemismatch, perturb, perturb_bracketswap, perturb_randomswap,
    perturb_typemismatch, PerturbOptions,
};
pub use scoring::{score_benchmark, DistanceBuckets, PairMeta, ScoreError, ScoreFile, Variant};

use crate::formal_lang::{LangError, Sequence, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subtask {
    BracketSwap,
    RandomSwap,
    TypeMismatch,
}

impl Subtask {
    pub const ALL: [Subtask; 3] = [Subtask::BracketSwap, Subtask::RandomSwap, Subtask::TypeMismatch];

    pub fn name(self) -> &'static str {
        match self {
            Subtask::BracketSwap => "bracketswap",
            Subtask::RandomSwap => "randomswap",
            Subtask::TypeMismatch => "typemismatch",
        }
    }
}

impl fmt::Display for Subtask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subtask {
    type Err = PerturbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Subtask::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| PerturbError::UnknownSubtask(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PerturbError {
    #[error("typemismatch is not available for {language}: it has a single bracket type")]
    UnsupportedSubtask { language: String, subtask: Subtask },
    #[error("unknown subtask {0:?}")]
    UnknownSubtask(String),
    #[error("sequence {0} has no matched pair to perturb")]
    NoEdges(String),
    #[error("sequence {id} is too short for {subtask} ({len} tokens)")]
    TooShort { id: String, subtask: Subtask, len: usize },
    #[error("no ungrammatical {subtask} perturbation of {id} found in {attempts} attempts")]
    NoRejectingPerturbation { id: String, subtask: Subtask, attempts: usize },
    #[error("pair {0}: re-verification failed: {1}")]
    Verification(String, String),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// A grammatical sequence and an ungrammatical variant of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalPair {
    pub id: String,
    pub positive: Sequence,
    pub negative: Vec<Token>,
    pub subtask: Subtask,
    /// Span width of the perturbed positions; 2 for adjacent brackets.
    pub distance: usize,
    /// Positions that differ between positive and negative.
    pub positions: Vec<usize>,
}

impl MinimalPair {
    pub fn meta(&self) -> PairMeta {
        PairMeta {
            id: self.id.clone(),
            subtask: self.subtask.name().to_string(),
            distance: Some(self.distance),
        }
    }
}
