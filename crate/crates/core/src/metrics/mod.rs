//! Evaluation of induced structures: attachment scores, bracketing
//! precision/recall/F, and the four structure-quality axes (consistency,
//! triviality, evolution, annotation similarity) plus head-distribution
//! diagnostics.

mod attachment;
mod axes;
mod brackets;
mod diagnostics;
mod report;
mod structure_set;

use thiserror::Error;

pub use attachment::{uas, uas_counts, uas_undirected, uas_undirected_counts, Counts};
pub use axes::{
    annotation_similarity, annotation_similarity_corpus, consistency, consistency_across, evolution,
    triviality_profile, Averaging, MetricOptions,
};
pub use brackets::{bracket_counts, bracket_prf, BracketCounts, BracketOptions, Prf};
pub use diagnostics::{head_diagnostics, percentile, DiagnosticOptions};
pub use report::{MetricReport, Score};
pub use structure_set::{Family, Provenance, Structure, StructureKind, StructureSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("token {0} has no gold edge and is not excluded")]
    UncoveredToken(usize),
    #[error("token {0} is covered by more than one gold edge")]
    DoublyCovered(usize),
    #[error("gold edge ({0}, {1}) is out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("structure kind mismatch: {0} vs {1}")]
    KindMismatch(String, String),
    #[error("duplicate sequence id {0:?}")]
    DuplicateId(String),
    #[error("no shared sequence ids between the structure sets")]
    NoSharedIds,
    #[error("no checkpoint step is shared by both series")]
    NoCommonCheckpoint,
    #[error("need at least two checkpoints, got {0}")]
    TooFewCheckpoints(usize),
    #[error("sequence {id}: {message}")]
    Sequence { id: String, message: String },
}
