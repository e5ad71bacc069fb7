//! Structure algebra shared by the metrics: head matrices and head lists,
//! constituency trees, binarization, shift-reduce encodings and the
//! degenerate baselines.

mod actions;
mod baselines;
mod graph;
mod heads;
mod tree;
mod words;

use thiserror::Error;

pub use actions::{actions_to_tree, tree_to_actions, Action, ActionSequence};
pub use baselines::{trivial_constituency, trivial_dependency, Branching, DependencyBaseline};
pub use graph::{is_connected_tree, is_projective};
pub use heads::{decode_heads, Head, HeadList, HeadMatrix};
pub use tree::{binarize, ConstituencyTree, Factoring, Node, Span};
pub use words::{aggregate_word_heads, WordSpans};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("head matrix: {0}")]
    Matrix(String),
    #[error("head list: {0}")]
    HeadList(String),
    #[error("word spans: {0}")]
    WordSpans(String),
    #[error("malformed tree: {0}")]
    Tree(String),
    #[error("malformed action sequence: {0}")]
    Actions(String),
}
