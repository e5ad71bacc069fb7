use super::{recognize, LangError, LanguageSpec, Recognition, Token};
use crate::structures::{ConstituencyTree, Node, Span};

/// For each position, the position of its matching bracket. Fails when the
/// string is not accepted.
pub fn match_pairs(spec: &LanguageSpec, tokens: &[Token]) -> Result<Vec<usize>, LangError> {
    if let Recognition::Reject(reason) = recognize(spec, tokens) {
        return Err(LangError::Rejected(reason));
    }
    let mut partner = vec![0; tokens.len()];
    let mut stack = Vec::new();
    for (pos, tok) in tokens.iter().enumerate() {
        if tok.is_open() {
            stack.push(pos);
        } else {
            // recognize() guarantees the stack is non-empty here
            let open = stack.pop().expect("accepted string");
            partner[open] = pos;
            partner[pos] = open;
        }
    }
    Ok(partner)
}

/// Undirected edges between each open bracket and its matching close,
/// as `(open, close)` sorted by open position.
pub fn gold_dependencies(spec: &LanguageSpec, tokens: &[Token]) -> Result<Vec<(usize, usize)>, LangError> {
    let partner = match_pairs(spec, tokens)?;
    Ok(tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_open())
        .map(|(i, _)| (i, partner[i]))
        .collect())
}

/// One node per matched pair spanning both brackets. Its children are the
/// two bracket leaves and the nodes of directly nested pairs. Strings with
/// several top-level pairs get an extra sentence-level root.
pub fn gold_constituency(spec: &LanguageSpec, tokens: &[Token]) -> Result<ConstituencyTree, LangError> {
    if tokens.is_empty() {
        return Err(LangError::InvalidConfig("empty sequence has no constituency tree".into()));
    }
    let edges = gold_dependencies(spec, tokens)?;
    Ok(tree_from_pairs(tokens.len(), &edges))
}

/// `pairs` must be a well-nested perfect matching of `0..n`, n > 0.
pub(crate) fn tree_from_pairs(n: usize, pairs: &[(usize, usize)]) -> ConstituencyTree {
    let mut close_of = vec![None; n];
    for &(o, c) in pairs {
        close_of[o] = Some(c);
    }
    let mut stack: Vec<(usize, Vec<Node>)> = Vec::new();
    let mut top = Vec::new();
    for pos in 0..n {
        if close_of[pos].is_some() {
            stack.push((pos, vec![Node::leaf(pos)]));
            continue;
        }
        let (open, mut children) = stack.pop().expect("well-nested pairs");
        children.push(Node::leaf(pos));
        let node = Node::from_parts(Span::new(open, pos), children);
        match stack.last_mut() {
            Some((_, parent)) => parent.push(node),
            None => top.push(node),
        }
    }
    let root = if top.len() == 1 {
        top.pop().unwrap()
    } else {
        Node::from_parts(Span::new(0, n - 1), top)
    };
    ConstituencyTree::from_root_unchecked(root)
}
