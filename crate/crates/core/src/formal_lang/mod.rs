//! Dyck-k and Dyck-u bracketing languages: tokens, recognition, gold
//! structures, corpus generation and evaluation splits.

mod enumerate;
mod generator;
mod gold;
mod recognizer;
mod splits;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::enumerate;
pub use generator::{generate, generate_sequence, unspecified_rates, Corpus, GenConfig};
pub use gold::{gold_constituency, gold_dependencies, match_pairs};
pub use recognizer::{recognize, Recognition, RejectReason};
pub use splits::{make_splits, SplitConfig, SplitSize, Splits};

use crate::structures::ConstituencyTree;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LangError {
    #[error("invalid language spec: {0}")]
    InvalidSpec(String),
    #[error("invalid generation config: {0}")]
    InvalidConfig(String),
    #[error("length window [{min}, {max}] cannot be satisfied: {reason}")]
    UnsatisfiableWindow {
        min: usize,
        max: usize,
        reason: String,
    },
    #[error("cannot parse token {0:?}")]
    BadToken(String),
    #[error("sequence rejected: {0}")]
    Rejected(RejectReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Open,
    Close,
}

/// Bracket type. Dyck-k uses `Typed(1..=k)`; Dyck-u additionally has the
/// unspecified type `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketType {
    Typed(u32),
    Unspecified,
}

impl fmt::Display for BracketType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketType::Typed(t) => write!(f, "{t}"),
            BracketType::Unspecified => f.write_str("u"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub side: Side,
    pub ty: BracketType,
}

impl Token {
    pub const fn open(ty: u32) -> Self {
        Token {
            side: Side::Open,
            ty: BracketType::Typed(ty),
        }
    }

    pub const fn close(ty: u32) -> Self {
        Token {
            side: Side::Close,
            ty: BracketType::Typed(ty),
        }
    }

    pub const fn open_u() -> Self {
        Token {
            side: Side::Open,
            ty: BracketType::Unspecified,
        }
    }

    pub const fn close_u() -> Self {
        Token {
            side: Side::Close,
            ty: BracketType::Unspecified,
        }
    }

    pub fn is_open(&self) -> bool {
        self.side == Side::Open
    }

    pub fn with_type(self, ty: BracketType) -> Self {
        Token { ty, ..self }
    }
}

/// Tokens render as `(23`, `)4`, `(u`. A bare `(` or `)` parses as type 1.
impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_open() { '(' } else { ')' };
        write!(f, "{c}{}", self.ty)
    }
}

impl FromStr for Token {
    type Err = LangError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let side = match chars.next() {
            Some('(') => Side::Open,
            Some(')') => Side::Close,
            _ => return Err(LangError::BadToken(s.to_string())),
        };
        let rest = chars.as_str();
        let ty = match rest {
            "" => BracketType::Typed(1),
            "u" => BracketType::Unspecified,
            digits => match digits.parse::<u32>() {
                Ok(t) if t > 0 && digits.bytes().all(|b| b.is_ascii_digit()) => {
                    BracketType::Typed(t)
                }
                _ => return Err(LangError::BadToken(s.to_string())),
            },
        };
        Ok(Token { side, ty })
    }
}

/// Parses a whitespace separated token string such as `"(23 (4 )4 )23"`.
pub fn parse_tokens(s: &str) -> Result<Vec<Token>, LangError> {
    s.split_whitespace().map(str::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LanguageKind {
    DyckK { k: u32 },
    DyckU,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub kind: LanguageKind,
    pub max_depth: usize,
    pub max_len_train: usize,
    pub max_len_gen: usize,
}

impl LanguageSpec {
    pub fn dyck_k(k: u32, max_depth: usize, max_len_train: usize, max_len_gen: usize) -> Result<Self, LangError> {
        LanguageSpec {
            kind: LanguageKind::DyckK { k },
            max_depth,
            max_len_train,
            max_len_gen,
        }
        .validated()
    }

    pub fn dyck_u(max_depth: usize, max_len_train: usize, max_len_gen: usize) -> Result<Self, LangError> {
        LanguageSpec {
            kind: LanguageKind::DyckU,
            max_depth,
            max_len_train,
            max_len_gen,
        }
        .validated()
    }

    /// Depth 7, training length 96, generalization length 192.
    pub fn standard(kind: LanguageKind) -> Self {
        LanguageSpec {
            kind,
            max_depth: 7,
            max_len_train: 96,
            max_len_gen: 192,
        }
    }

    pub fn validated(self) -> Result<Self, LangError> {
        if let LanguageKind::DyckK { k } = self.kind {
            if k == 0 {
                return Err(LangError::InvalidSpec("k must be positive".into()));
            }
        }
        if self.max_depth == 0 {
            return Err(LangError::InvalidSpec("max_depth must be positive".into()));
        }
        if self.max_len_train == 0 || self.max_len_train % 2 != 0 {
            return Err(LangError::InvalidSpec(format!(
                "max_len_train must be even and positive, got {}",
                self.max_len_train
            )));
        }
        if self.max_len_gen % 2 != 0 {
            return Err(LangError::InvalidSpec(format!(
                "max_len_gen must be even, got {}",
                self.max_len_gen
            )));
        }
        if self.max_len_gen < self.max_len_train {
            return Err(LangError::InvalidSpec(format!(
                "max_len_gen {} is below max_len_train {}",
                self.max_len_gen, self.max_len_train
            )));
        }
        Ok(self)
    }

    pub fn name(&self) -> String {
        match self.kind {
            LanguageKind::DyckK { k } => format!("dyck-{k}"),
            LanguageKind::DyckU => "dyck-u".to_string(),
        }
    }

    /// Number of distinct surface bracket types.
    pub fn type_count(&self) -> usize {
        match self.kind {
            LanguageKind::DyckK { k } => k as usize,
            LanguageKind::DyckU => 3,
        }
    }

    pub fn surface_types(&self) -> Vec<BracketType> {
        match self.kind {
            LanguageKind::DyckK { k } => (1..=k).map(BracketType::Typed).collect(),
            LanguageKind::DyckU => vec![
                BracketType::Typed(1),
                BracketType::Typed(2),
                BracketType::Unspecified,
            ],
        }
    }

    pub fn in_alphabet(&self, token: &Token) -> bool {
        match (self.kind, token.ty) {
            (LanguageKind::DyckK { k }, BracketType::Typed(t)) => (1..=k).contains(&t),
            (LanguageKind::DyckK { .. }, BracketType::Unspecified) => false,
            (LanguageKind::DyckU, BracketType::Typed(t)) => t == 1 || t == 2,
            (LanguageKind::DyckU, BracketType::Unspecified) => true,
        }
    }

    /// Whether a close bracket of type `close` may match an open bracket of
    /// type `open`.
    pub fn compatible(&self, open: BracketType, close: BracketType) -> bool {
        match self.kind {
            LanguageKind::DyckK { .. } => open == close,
            LanguageKind::DyckU => {
                open == close
                    || open == BracketType::Unspecified
                    || close == BracketType::Unspecified
            }
        }
    }

    /// Renders tokens as a space separated string. Dyck-1 uses bare brackets.
    pub fn render(&self, tokens: &[Token]) -> String {
        let bare = matches!(self.kind, LanguageKind::DyckK { k: 1 });
        tokens
            .iter()
            .map(|t| {
                if bare {
                    if t.is_open() { "(" } else { ")" }.to_string()
                } else {
                    t.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromStr for LanguageKind {
    type Err = LangError;

    /// Accepts `dyck-u`, `dyck-<k>`, with `_` or `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let rest = norm
            .strip_prefix("dyck-")
            .ok_or_else(|| LangError::InvalidSpec(format!("unknown language {s:?}")))?;
        if rest == "u" {
            return Ok(LanguageKind::DyckU);
        }
        match rest.parse::<u32>() {
            Ok(k) if k > 0 => Ok(LanguageKind::DyckK { k }),
            _ => Err(LangError::InvalidSpec(format!("unknown language {s:?}"))),
        }
    }
}

/// A bracket string with its gold structures.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    pub id: String,
    pub tokens: Vec<Token>,
    /// Matched pairs `(open, close)`, sorted by open position.
    pub gold_edges: Vec<(usize, usize)>,
    pub gold_tree: ConstituencyTree,
}

impl Sequence {
    /// Builds a sequence from tokens, deriving gold structures.
    pub fn from_tokens(spec: &LanguageSpec, id: impl Into<String>, tokens: Vec<Token>) -> Result<Self, LangError> {
        let gold_edges = gold_dependencies(spec, &tokens)?;
        let gold_tree = gold::tree_from_pairs(tokens.len(), &gold_edges);
        Ok(Sequence {
            id: id.into(),
            tokens,
            gold_edges,
            gold_tree,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}
