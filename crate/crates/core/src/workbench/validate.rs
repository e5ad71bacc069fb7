use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::io::{open_reader, Records};
use super::{CorpusRecord, PairRecord, RecordError, ScoreRecord, StructureRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Schema {
    Corpus,
    Structure,
    Score,
    Pair,
}

impl FromStr for Schema {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corpus" => Ok(Schema::Corpus),
            "structure" => Ok(Schema::Structure),
            "score" => Ok(Schema::Score),
            "pair" => Ok(Schema::Pair),
            _ => Err(format!("unknown schema {s:?} (expected corpus, structure, score or pair)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub records: usize,
    pub valid: usize,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

trait Checked: DeserializeOwned {
    /// Key that must be unique within a file.
    fn key(&self) -> String;
    fn check(&self) -> Result<(), RecordError>;
}

impl Checked for CorpusRecord {
    fn key(&self) -> String {
        self.id.clone()
    }

    fn check(&self) -> Result<(), RecordError> {
        CorpusRecord::check(self)
    }
}

impl Checked for StructureRecord {
    fn key(&self) -> String {
        format!("{} ({} step {})", self.id, self.model, self.step)
    }

    fn check(&self) -> Result<(), RecordError> {
        self.to_structure().map(|_| ())
    }
}

impl Checked for ScoreRecord {
    fn key(&self) -> String {
        format!("{}/{}", self.id, self.variant)
    }

    fn check(&self) -> Result<(), RecordError> {
        if self.score.is_finite() && self.score >= 0.0 {
            Ok(())
        } else {
            Err(RecordError::Invalid(format!("{}: score {} is not a finite non-negative number", self.id, self.score)))
        }
    }
}

impl Checked for PairRecord {
    fn key(&self) -> String {
        self.id.clone()
    }

    fn check(&self) -> Result<(), RecordError> {
        PairRecord::check(self)
    }
}

fn run<T: Checked, R: BufRead>(reader: R) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut seen = HashSet::new();
    for (line, rec) in Records::<T, R>::new(reader) {
        report.records += 1;
        let outcome = rec.and_then(|r| {
            r.check()?;
            let key = r.key();
            if !seen.insert(key.clone()) {
                return Err(RecordError::Invalid(format!("duplicate record {key}")));
            }
            Ok(())
        });
        match outcome {
            Ok(()) => report.valid += 1,
            Err(e) => report.diagnostics.push(Diagnostic {
                line,
                message: e.to_string(),
            }),
        }
    }
    report
}

/// Parses and checks every line, collecting one diagnostic per bad line.
pub fn validate_reader<R: BufRead>(reader: R, schema: Schema) -> ValidationReport {
    match schema {
        Schema::Corpus => run::<CorpusRecord, R>(reader),
        Schema::Structure => run::<StructureRecord, R>(reader),
        Schema::Score => run::<ScoreRecord, R>(reader),
        Schema::Pair => run::<PairRecord, R>(reader),
    }
}

pub fn validate_file(path: &Path, schema: Schema) -> std::io::Result<ValidationReport> {
    Ok(validate_reader(open_reader(path)?, schema))
}
