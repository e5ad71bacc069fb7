use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ConstituencyTree, Node, Span, StructureError};

/// Shift-reduce action: `Gen` shifts the next token onto the stack, `Comp`
/// combines the top two stack constituents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    #[serde(rename = "GEN")]
    Gen,
    #[serde(rename = "COMP")]
    Comp,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Gen => "GEN",
            Action::Comp => "COMP",
        })
    }
}

impl FromStr for Action {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "GEN" => Ok(Action::Gen),
            "COMP" => Ok(Action::Comp),
            other => Err(StructureError::Actions(format!("unknown action {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionSequence(pub Vec<Action>);

impl ActionSequence {
    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    pub fn gen_count(&self) -> usize {
        self.0.iter().filter(|a| **a == Action::Gen).count()
    }
}

impl From<Vec<Action>> for ActionSequence {
    fn from(v: Vec<Action>) -> Self {
        ActionSequence(v)
    }
}

/// Replays the actions on a stack and returns the single remaining
/// constituent as a binary tree.
pub fn actions_to_tree(actions: &ActionSequence) -> Result<ConstituencyTree, StructureError> {
    let mut stack: Vec<Node> = Vec::new();
    let mut next = 0;
    for (step, a) in actions.0.iter().enumerate() {
        match a {
            Action::Gen => {
                stack.push(Node::leaf(next));
                next += 1;
            }
            Action::Comp => {
                if stack.len() < 2 {
                    return Err(StructureError::Actions(format!(
                        "COMP at step {step} with {} constituent(s) on the stack",
                        stack.len()
                    )));
                }
                let right = stack.pop().expect("checked");
                let left = stack.pop().expect("checked");
                let span = Span::new(left.span().start, right.span().end);
                stack.push(Node::from_parts(span, vec![left, right]));
            }
        }
    }
    match stack.len() {
        1 => Ok(ConstituencyTree::from_root_unchecked(stack.pop().expect("one element"))),
        k => Err(StructureError::Actions(format!(
            "{k} constituents left on the stack, expected 1"
        ))),
    }
}

/// Post-order encoding of a binary tree.
pub fn tree_to_actions(tree: &ConstituencyTree) -> Result<ActionSequence, StructureError> {
    fn go(node: &Node, out: &mut Vec<Action>) -> Result<(), StructureError> {
        match node.children() {
            [] => out.push(Action::Gen),
            [l, r] => {
                go(l, out)?;
                go(r, out)?;
                out.push(Action::Comp);
            }
            kids => {
                return Err(StructureError::Actions(format!(
                    "node {:?} has {} children; only binary trees have a shift-reduce encoding",
                    node.span(),
                    kids.len()
                )))
            }
        }
        Ok(())
    }
    let mut out = Vec::with_capacity(2 * tree.leaf_count());
    go(tree.root(), &mut out)?;
    Ok(ActionSequence(out))
}
