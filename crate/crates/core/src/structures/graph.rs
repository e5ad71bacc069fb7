use super::{Head, HeadList};

/// True iff the head edges between content tokens form a single spanning
/// tree (connected and acyclic, counting a mutual pair as a cycle).
/// Attachments to BOS/EOS are not edges of this graph.
pub fn is_connected_tree(h: &HeadList) -> bool {
    let n = h.len();
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for (i, head) in h.heads().iter().enumerate() {
        if let Some(Head::Token(j)) = *head {
            adj[i].push(j);
            adj[j].push(i);
            edges += 1;
        }
    }
    if edges != n - 1 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == n
}

/// True iff no two edges `(i, j)`, `(p, q)` satisfy `i < p < j < q`.
/// Edge orientation is ignored.
pub fn is_projective(edges: &[(usize, usize)]) -> bool {
    let mut sorted: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    sorted.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    let mut open: Vec<usize> = Vec::new();
    for (start, end) in sorted {
        while open.last().is_some_and(|&e| e <= start) {
            open.pop();
        }
        if open.last().is_some_and(|&e| end > e) {
            return false;
        }
        open.push(end);
    }
    true
}
