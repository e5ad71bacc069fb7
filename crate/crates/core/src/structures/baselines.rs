use serde::{Deserialize, Serialize};

use super::{ConstituencyTree, Head, HeadList, Node, Span, StructureError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DependencyBaseline {
    /// Every head is BOS.
    First,
    /// Every head is EOS.
    Last,
    /// Head is the previous token; the first token attaches to BOS.
    Prev,
    /// Head is the next token; the last token attaches to EOS.
    Next,
}

impl DependencyBaseline {
    pub const ALL: [DependencyBaseline; 4] = [
        DependencyBaseline::First,
        DependencyBaseline::Last,
        DependencyBaseline::Prev,
        DependencyBaseline::Next,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DependencyBaseline::First => "first",
            DependencyBaseline::Last => "last",
            DependencyBaseline::Prev => "prev",
            DependencyBaseline::Next => "next",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branching {
    Left,
    Right,
}

impl Branching {
    pub const ALL: [Branching; 2] = [Branching::Left, Branching::Right];

    pub fn name(self) -> &'static str {
        match self {
            Branching::Left => "left_branching",
            Branching::Right => "right_branching",
        }
    }
}

pub fn trivial_dependency(n: usize, kind: DependencyBaseline) -> HeadList {
    let heads = (0..n)
        .map(|i| {
            Some(match kind {
                DependencyBaseline::First => Head::Bos,
                DependencyBaseline::Last => Head::Eos,
                DependencyBaseline::Prev if i == 0 => Head::Bos,
                DependencyBaseline::Prev => Head::Token(i - 1),
                DependencyBaseline::Next if i + 1 == n => Head::Eos,
                DependencyBaseline::Next => Head::Token(i + 1),
            })
        })
        .collect();
    HeadList::new(heads).expect("baseline heads are valid")
}

/// Left-branching: every prefix is a constituent. Right-branching: every
/// suffix is.
pub fn trivial_constituency(n: usize, branch: Branching) -> Result<ConstituencyTree, StructureError> {
    if n == 0 {
        return Err(StructureError::Tree("empty yield".into()));
    }
    let root = match branch {
        Branching::Left => (1..n).fold(Node::leaf(0), |acc, j| {
            Node::from_parts(Span::new(0, j), vec![acc, Node::leaf(j)])
        }),
        Branching::Right => (0..n - 1).rev().fold(Node::leaf(n - 1), |acc, i| {
            Node::from_parts(Span::new(i, n - 1), vec![Node::leaf(i), acc])
        }),
    };
    ConstituencyTree::new(root)
}
