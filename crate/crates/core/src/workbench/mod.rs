//! Interchange files, validation, charts and the command-line front end.

pub mod cli;
pub mod io;
pub mod plot;
mod records;
mod validate;

use std::path::Path;

use thiserror::Error;

pub use records::{CorpusRecord, MatrixEncoding, PairRecord, RecordKind, ScoreRecord, StructureRecord};
pub use validate::{validate_file, validate_reader, Diagnostic, Schema, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RecordError {
    #[error("{0}")]
    Io(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{file}:{line}: {message}")]
    At { file: String, line: usize, message: String },
}

impl RecordError {
    pub(crate) fn at(self, path: &Path, line: usize) -> RecordError {
        RecordError::At {
            file: path.display().to_string(),
            line,
            message: self.to_string(),
        }
    }
}
