//! Line-delimited JSON record types. One record per line, UTF-8.

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use super::RecordError;
use crate::formal_lang::{LanguageSpec, Sequence, Token};
use crate::metrics::{Provenance, Structure};
use crate::minimal_pairs::{MinimalPair, PairMeta, Variant};
use crate::structures::{actions_to_tree, is_projective, ActionSequence, ConstituencyTree, HeadList, HeadMatrix};

/// `{id, tokens, gold_edges, gold_tree}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub id: String,
    pub tokens: Vec<String>,
    pub gold_edges: Vec<[usize; 2]>,
    pub gold_tree: String,
}

impl CorpusRecord {
    pub fn from_sequence(seq: &Sequence) -> Self {
        CorpusRecord {
            id: seq.id.clone(),
            tokens: seq.tokens.iter().map(Token::to_string).collect(),
            gold_edges: seq.gold_edges.iter().map(|&(a, b)| [a, b]).collect(),
            gold_tree: seq.gold_tree.to_string(),
        }
    }

    pub fn parse_tokens(&self) -> Result<Vec<Token>, RecordError> {
        self.tokens
            .iter()
            .map(|t| t.parse().map_err(|e| RecordError::Invalid(format!("{e}"))))
            .collect()
    }

    /// Language-independent checks: tokens parse, edges pair each open with
    /// a later close and cover every position once without crossing, and
    /// the tree spans the token sequence.
    pub fn check(&self) -> Result<(), RecordError> {
        let tokens = self.parse_tokens()?;
        let n = tokens.len();
        if n == 0 {
            return Err(RecordError::Invalid("empty token list".into()));
        }
        let mut covered = vec![false; n];
        for &[a, b] in &self.gold_edges {
            if a >= b || b >= n {
                return Err(RecordError::Invalid(format!("gold edge [{a}, {b}] is out of order or range")));
            }
            if !tokens[a].is_open() || tokens[b].is_open() {
                return Err(RecordError::Invalid(format!("gold edge [{a}, {b}] does not join an open to a close")));
            }
            for p in [a, b] {
                if std::mem::replace(&mut covered[p], true) {
                    return Err(RecordError::Invalid(format!("position {p} is in two gold edges")));
                }
            }
        }
        if let Some(p) = covered.iter().position(|c| !c) {
            return Err(RecordError::Invalid(format!("position {p} has no gold edge")));
        }
        let edges: Vec<(usize, usize)> = self.gold_edges.iter().map(|&[a, b]| (a, b)).collect();
        if !is_projective(&edges) {
            return Err(RecordError::Invalid("gold edges cross".into()));
        }
        let tree: ConstituencyTree = self.gold_tree.parse().map_err(|e| RecordError::Invalid(format!("{e}")))?;
        if tree.leaf_count() != n {
            return Err(RecordError::Invalid(format!(
                "gold tree covers {} tokens, sequence has {n}",
                tree.leaf_count()
            )));
        }
        Ok(())
    }

    /// Conversion without a language: runs [`CorpusRecord::check`] and keeps
    /// the stored gold structures.
    pub fn to_gold_sequence(&self) -> Result<Sequence, RecordError> {
        self.check().map_err(|e| invalid(&self.id, e))?;
        Ok(Sequence {
            id: self.id.clone(),
            tokens: self.parse_tokens()?,
            gold_edges: self.gold_edges.iter().map(|&[a, b]| (a, b)).collect(),
            gold_tree: self.gold_tree.parse().map_err(|e| invalid(&self.id, e))?,
        })
    }

    /// Full conversion: the string must be in the language and the stored
    /// gold structures must equal the derived ones.
    pub fn to_sequence(&self, spec: &LanguageSpec) -> Result<Sequence, RecordError> {
        let tokens = self.parse_tokens()?;
        let seq = Sequence::from_tokens(spec, self.id.clone(), tokens)
            .map_err(|e| RecordError::Invalid(format!("{}: {e}", self.id)))?;
        let edges: Vec<(usize, usize)> = self.gold_edges.iter().map(|&[a, b]| (a, b)).collect();
        if edges != seq.gold_edges {
            return Err(RecordError::Invalid(format!("{}: gold edges disagree with the bracketing", self.id)));
        }
        if self.gold_tree != seq.gold_tree.to_string() {
            return Err(RecordError::Invalid(format!("{}: gold tree disagrees with the bracketing", self.id)));
        }
        Ok(seq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    HeadMatrix,
    HeadList,
    Tree,
    Actions,
}

/// How head matrices are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatrixEncoding {
    #[default]
    Dense,
    /// Keep the `m` largest entries of each row, as `[column, value]` pairs.
    TopM(usize),
}

/// `{id, kind, payload, has_bos, has_eos, model, step}`.
///
/// Payloads: `head_matrix` is a list of rows, or `{"top_m": m, "rows":
/// [[[col, value], ...], ...]}` when row-sparse; `head_list` lists one head
/// position (or null) per frame position; `tree` is a bracketed string;
/// `actions` is a list of `"GEN"` / `"COMP"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureRecord {
    pub id: String,
    pub kind: RecordKind,
    pub payload: Value,
    #[serde(default)]
    pub has_bos: bool,
    #[serde(default)]
    pub has_eos: bool,
    pub model: String,
    pub step: u64,
}

#[derive(Deserialize)]
struct SparseMatrix {
    top_m: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

fn invalid(id: &str, what: impl std::fmt::Display) -> RecordError {
    RecordError::Invalid(format!("{id}: {what}"))
}

impl StructureRecord {
    pub fn from_structure(id: impl Into<String>, s: &Structure, provenance: &Provenance, encoding: MatrixEncoding) -> Self {
        let (kind, payload, has_bos, has_eos) = match s {
            Structure::HeadMatrix(h) => (RecordKind::HeadMatrix, matrix_payload(h, encoding), h.has_bos(), h.has_eos()),
            Structure::HeadList(h) => (
                RecordKind::HeadList,
                serde_json::to_value(h.to_frame(false, false)).expect("serializable"),
                false,
                false,
            ),
            Structure::Tree(t) => (RecordKind::Tree, Value::String(t.to_string()), false, false),
        };
        StructureRecord {
            id: id.into(),
            kind,
            payload,
            has_bos,
            has_eos,
            model: provenance.model.clone(),
            step: provenance.step,
        }
    }

    /// Head list record in frame coordinates with boundary flags.
    pub fn from_head_list(id: impl Into<String>, h: &HeadList, has_bos: bool, has_eos: bool, provenance: &Provenance) -> Self {
        StructureRecord {
            id: id.into(),
            kind: RecordKind::HeadList,
            payload: serde_json::to_value(h.to_frame(has_bos, has_eos)).expect("serializable"),
            has_bos,
            has_eos,
            model: provenance.model.clone(),
            step: provenance.step,
        }
    }

    pub fn from_actions(id: impl Into<String>, a: &ActionSequence, provenance: &Provenance) -> Self {
        StructureRecord {
            id: id.into(),
            kind: RecordKind::Actions,
            payload: serde_json::to_value(a).expect("serializable"),
            has_bos: false,
            has_eos: false,
            model: provenance.model.clone(),
            step: provenance.step,
        }
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::new(self.model.clone(), self.step)
    }

    /// Decodes the payload. Action sequences decode to their tree.
    pub fn to_structure(&self) -> Result<Structure, RecordError> {
        let id = &self.id;
        match self.kind {
            RecordKind::HeadMatrix => {
                let rows = if self.payload.is_object() {
                    let sparse: SparseMatrix =
                        serde_json::from_value(self.payload.clone()).map_err(|e| invalid(id, e))?;
                    let n = sparse.rows.len();
                    let mut dense = vec![vec![0.0; n]; n];
                    for (i, row) in sparse.rows.iter().enumerate() {
                        if row.len() > sparse.top_m {
                            return Err(invalid(id, format!("row {i} has more than top_m = {} entries", sparse.top_m)));
                        }
                        for &(j, v) in row {
                            if j >= n {
                                return Err(invalid(id, format!("row {i} has column {j} outside 0..{n}")));
                            }
                            dense[i][j] = v;
                        }
                    }
                    dense
                } else {
                    serde_json::from_value::<Vec<Vec<f64>>>(self.payload.clone()).map_err(|e| invalid(id, e))?
                };
                HeadMatrix::from_rows(rows, self.has_bos, self.has_eos)
                    .map(Structure::HeadMatrix)
                    .map_err(|e| invalid(id, e))
            }
            RecordKind::HeadList => {
                let frame: Vec<Option<usize>> =
                    serde_json::from_value(self.payload.clone()).map_err(|e| invalid(id, e))?;
                HeadList::from_frame(&frame, self.has_bos, self.has_eos)
                    .map(Structure::HeadList)
                    .map_err(|e| invalid(id, e))
            }
            RecordKind::Tree => {
                let text = self.payload.as_str().ok_or_else(|| invalid(id, "tree payload must be a string"))?;
                text.parse().map(Structure::Tree).map_err(|e| invalid(id, e))
            }
            RecordKind::Actions => {
                let actions: ActionSequence =
                    serde_json::from_value(self.payload.clone()).map_err(|e| invalid(id, e))?;
                actions_to_tree(&actions).map(Structure::Tree).map_err(|e| invalid(id, e))
            }
        }
    }
}

fn matrix_payload(h: &HeadMatrix, encoding: MatrixEncoding) -> Value {
    let n = h.n();
    match encoding {
        MatrixEncoding::Dense => {
            let rows: Vec<&[f64]> = (0..n).map(|i| h.row(i)).collect();
            serde_json::to_value(rows).expect("finite values")
        }
        MatrixEncoding::TopM(m) => {
            let rows: Vec<Vec<(usize, f64)>> = (0..n)
                .map(|i| {
                    let mut entries: Vec<(usize, f64)> =
                        h.row(i).iter().copied().enumerate().filter(|&(_, v)| v > 0.0).collect();
                    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
                    entries.truncate(m);
                    entries.sort_by_key(|e| e.0);
                    entries
                })
                .collect();
            serde_json::json!({ "top_m": m, "rows": rows })
        }
    }
}

/// `{id, variant, score}`; `score` is written as a shortest round-trip
/// decimal and may be read from a number or a numeric string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub id: String,
    pub variant: Variant,
    #[serde(deserialize_with = "number_or_string")]
    pub score: f64,
}

fn number_or_string<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(v) => Ok(v),
        Raw::Text(s) => s.trim().parse().map_err(serde::de::Error::custom),
    }
}

/// `{id, subtask, distance, pos_tokens, neg_tokens}`. Tokens are free text
/// so external pair sets fit the same format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub id: String,
    pub subtask: String,
    pub distance: Option<usize>,
    pub pos_tokens: Vec<String>,
    pub neg_tokens: Vec<String>,
}

impl PairRecord {
    pub fn from_pair(p: &MinimalPair) -> Self {
        PairRecord {
            id: p.id.clone(),
            subtask: p.subtask.name().to_string(),
            distance: Some(p.distance),
            pos_tokens: p.positive.tokens.iter().map(Token::to_string).collect(),
            neg_tokens: p.negative.iter().map(Token::to_string).collect(),
        }
    }

    pub fn meta(&self) -> PairMeta {
        PairMeta {
            id: self.id.clone(),
            subtask: self.subtask.clone(),
            distance: self.distance,
        }
    }

    pub fn check(&self) -> Result<(), RecordError> {
        if self.id.is_empty() {
            return Err(RecordError::Invalid("empty pair id".into()));
        }
        if self.pos_tokens.is_empty() || self.neg_tokens.is_empty() {
            return Err(RecordError::Invalid(format!("{}: empty pair member", self.id)));
        }
        if self.distance.is_some_and(|d| d < 2) {
            return Err(RecordError::Invalid(format!("{}: distance below 2", self.id)));
        }
        Ok(())
    }
}
