use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StructureError;

/// Inclusive token span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn width(&self) -> usize {
        self.end - self.start + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    span: Span,
    children: Vec<Node>,
}

impl Node {
    pub fn leaf(pos: usize) -> Self {
        Node {
            span: Span::new(pos, pos),
            children: Vec::new(),
        }
    }

    /// Internal node over `children`, which must be adjacent and non-empty.
    pub fn new(children: Vec<Node>) -> Result<Self, StructureError> {
        let (first, last) = match (children.first(), children.last()) {
            (Some(f), Some(l)) => (f.span.start, l.span.end),
            _ => return Err(StructureError::Tree("internal node without children".into())),
        };
        for pair in children.windows(2) {
            if pair[0].span.end + 1 != pair[1].span.start {
                return Err(StructureError::Tree(format!(
                    "children {:?} and {:?} are not adjacent",
                    pair[0].span, pair[1].span
                )));
            }
        }
        Ok(Node {
            span: Span::new(first, last),
            children,
        })
    }

    pub(crate) fn from_parts(span: Span, children: Vec<Node>) -> Self {
        Node { span, children }
    }

    pub fn span(&self) -> Span {
        self.span
    }

    pub fn children(&self) -> &[Node] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn validate(&self) -> Result<(), StructureError> {
        if self.is_leaf() {
            if self.span.start != self.span.end {
                return Err(StructureError::Tree(format!("leaf spans {:?}", self.span)));
            }
            return Ok(());
        }
        let mut expected = self.span.start;
        for c in &self.children {
            if c.span.start != expected {
                return Err(StructureError::Tree(format!(
                    "child {:?} of {:?} should start at {expected}",
                    c.span, self.span
                )));
            }
            c.validate()?;
            expected = c.span.end + 1;
        }
        if expected != self.span.end + 1 {
            return Err(StructureError::Tree(format!("children do not cover {:?}", self.span)));
        }
        Ok(())
    }

    fn collect_spans(&self, out: &mut Vec<Span>) {
        if self.is_leaf() {
            return;
        }
        out.push(self.span);
        for c in &self.children {
            c.collect_spans(out);
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return write!(f, "{}", self.span.start);
        }
        f.write_str("(")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            c.write(f)?;
        }
        f.write_str(")")
    }
}

/// Rooted ordered tree over token positions `0..n`.
///
/// Textual form: leaves are positions, internal nodes are parenthesized,
/// e.g. `(0 (1 (2 3) 4) (5 6) 7)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstituencyTree {
    root: Node,
}

impl ConstituencyTree {
    pub fn new(root: Node) -> Result<Self, StructureError> {
        if root.span.start != 0 {
            return Err(StructureError::Tree(format!("root starts at {}", root.span.start)));
        }
        root.validate()?;
        Ok(ConstituencyTree { root })
    }

    pub(crate) fn from_root_unchecked(root: Node) -> Self {
        ConstituencyTree { root }
    }

    /// One root over `n` leaves.
    pub fn flat(n: usize) -> Result<Self, StructureError> {
        match n {
            0 => Err(StructureError::Tree("empty yield".into())),
            1 => Ok(ConstituencyTree { root: Node::leaf(0) }),
            _ => Ok(ConstituencyTree {
                root: Node::from_parts(Span::new(0, n - 1), (0..n).map(Node::leaf).collect()),
            }),
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn leaf_count(&self) -> usize {
        self.root.span.end + 1
    }

    /// Spans of all internal nodes, pre-order. Duplicates from unary
    /// chains are kept.
    pub fn spans(&self) -> Vec<Span> {
        let mut out = Vec::new();
        self.root.collect_spans(&mut out);
        out
    }

    pub fn is_binary(&self) -> bool {
        fn check(n: &Node) -> bool {
            n.is_leaf() || (n.children.len() == 2 && n.children.iter().all(check))
        }
        check(&self.root)
    }
}

impl fmt::Display for ConstituencyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.write(f)
    }
}

impl FromStr for ConstituencyTree {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = TreeParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let root = parser.node()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(StructureError::Tree(format!("trailing input at byte {}", parser.pos)));
        }
        ConstituencyTree::new(root)
    }
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn node(&mut self) -> Result<Node, StructureError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => children.push(self.node()?),
                        None => return Err(StructureError::Tree("unbalanced parentheses".into())),
                    }
                }
                Node::new(children)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                text.parse()
                    .map(Node::leaf)
                    .map_err(|_| StructureError::Tree(format!("bad leaf {text:?}")))
            }
            Some(c) => Err(StructureError::Tree(format!(
                "unexpected {:?} at byte {}",
                *c as char, self.pos
            ))),
            None => Err(StructureError::Tree("unexpected end of input".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factoring {
    /// `(((c1 c2) c3) c4)`
    Left,
    /// `(c1 (c2 (c3 c4)))`
    Right,
}

/// Splits every node with more than two children into a binary chain.
/// Unary nodes are kept as they are.
pub fn binarize(tree: &ConstituencyTree, mode: Factoring) -> ConstituencyTree {
    fn go(node: &Node, mode: Factoring) -> Node {
        if node.children.len() <= 2 {
            return Node::from_parts(node.span, node.children.iter().map(|c| go(c, mode)).collect());
        }
        let mut kids: Vec<Node> = node.children.iter().map(|c| go(c, mode)).collect();
        match mode {
            Factoring::Left => {
                let mut rest = kids.drain(..);
                let mut acc = rest.next().expect("more than two children");
                let last = rest.next_back().expect("more than two children");
                for next in rest {
                    acc = Node::from_parts(Span::new(acc.span.start, next.span.end), vec![acc, next]);
                }
                Node::from_parts(node.span, vec![acc, last])
            }
            Factoring::Right => {
                let mut rest = kids.drain(..);
                let first = rest.next().expect("more than two children");
                let mut acc = rest.next_back().expect("more than two children");
                for prev in rest.rev() {
                    acc = Node::from_parts(Span::new(prev.span.start, acc.span.end), vec![prev, acc]);
                }
                Node::from_parts(node.span, vec![first, acc])
            }
        }
    }
    ConstituencyTree::from_root_unchecked(go(&tree.root, mode))
}
