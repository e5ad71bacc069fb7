//! Brute-force oracles shared by the integration tests. None of these call
//! into the library's own checking code.
#![allow(dead_code)]

use rand::Rng;
use silmbench::formal_lang::{BracketType, Side, Token};
use silmbench::structures::{ConstituencyTree, Head, HeadList, Node};

/// `None` for Dyck-u, `Some(k)` for Dyck-k.
pub type Lang = Option<u32>;

fn surface(t: &Token) -> (bool, Option<u32>) {
    let ty = match t.ty {
        BracketType::Typed(n) => Some(n),
        BracketType::Unspecified => None,
    };
    (t.side == Side::Open, ty)
}

fn in_alphabet(lang: Lang, ty: Option<u32>) -> bool {
    match (lang, ty) {
        (Some(k), Some(t)) => (1..=k).contains(&t),
        (Some(_), None) => false,
        (None, Some(t)) => t == 1 || t == 2,
        (None, None) => true,
    }
}

/// Stack simulation. Returns the maximum stack height if the string is
/// well nested, `None` otherwise.
pub fn simulate(lang: Lang, tokens: &[Token]) -> Option<usize> {
    let mut stack: Vec<Option<u32>> = Vec::new();
    let mut depth = 0;
    for t in tokens {
        let (open, ty) = surface(t);
        if !in_alphabet(lang, ty) {
            return None;
        }
        if open {
            stack.push(ty);
            depth = depth.max(stack.len());
        } else {
            let top = stack.pop()?;
            let ok = match lang {
                Some(_) => top == ty,
                None => top.is_none() || ty.is_none() || top == ty,
            };
            if !ok {
                return None;
            }
        }
    }
    if stack.is_empty() {
        Some(depth)
    } else {
        None
    }
}

/// Every token of the alphabet: opens then closes.
pub fn alphabet(lang: Lang) -> Vec<Token> {
    let types: Vec<BracketType> = match lang {
        Some(k) => (1..=k).map(BracketType::Typed).collect(),
        None => vec![BracketType::Typed(1), BracketType::Typed(2), BracketType::Unspecified],
    };
    let mut out: Vec<Token> = types.iter().map(|&ty| Token { side: Side::Open, ty }).collect();
    out.extend(types.iter().map(|&ty| Token { side: Side::Close, ty }));
    out
}

/// The `index`-th string of length `len` over `alpha` (base-|alpha| digits).
pub fn nth_string(alpha: &[Token], len: usize, mut index: u64) -> Vec<Token> {
    let b = alpha.len() as u64;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(alpha[(index % b) as usize]);
        index /= b;
    }
    out
}

/// No two edges `(i, j)`, `(p, q)` with `i < p < j < q`.
pub fn crossing_free(edges: &[(usize, usize)]) -> bool {
    for &(a, b) in edges {
        for &(c, d) in edges {
            let (i, j) = (a.min(b), a.max(b));
            let (p, q) = (c.min(d), c.max(d));
            if i < p && p < j && j < q {
                return false;
            }
        }
    }
    true
}

/// Internal-node spans `(start, end)` read directly off the bracketed text.
pub fn spans_from_text(text: &str) -> Vec<(usize, usize)> {
    let mut starts: Vec<usize> = Vec::new();
    let mut spans = Vec::new();
    let mut leaves = 0usize;
    let mut in_number = false;
    for c in text.chars() {
        match c {
            '(' => {
                starts.push(leaves);
                in_number = false;
            }
            ')' => {
                let s = starts.pop().expect("balanced");
                spans.push((s, leaves - 1));
                in_number = false;
            }
            d if d.is_ascii_digit() => {
                if !in_number {
                    leaves += 1;
                    in_number = true;
                }
            }
            _ => in_number = false,
        }
    }
    spans
}

pub fn leaf_count(text: &str) -> usize {
    text.split(|c: char| !c.is_ascii_digit()).filter(|s| !s.is_empty()).count()
}

fn build(rng: &mut impl Rng, lo: usize, hi: usize, max_children: usize) -> Node {
    if lo == hi {
        return Node::leaf(lo);
    }
    let width = hi - lo + 1;
    let c = rng.gen_range(2..=max_children.min(width));
    let mut cuts: Vec<usize> = (lo + 1..=hi).collect();
    // choose c - 1 distinct cut points
    for i in 0..c - 1 {
        let j = rng.gen_range(i..cuts.len());
        cuts.swap(i, j);
    }
    let mut cuts: Vec<usize> = cuts[..c - 1].to_vec();
    cuts.sort();
    let mut children = Vec::with_capacity(c);
    let mut start = lo;
    for cut in cuts.into_iter().chain(std::iter::once(hi + 1)) {
        children.push(build(rng, start, cut - 1, max_children));
        start = cut;
    }
    Node::new(children).expect("contiguous children")
}

/// Random tree over `n` leaves with nodes of 2..=`max_children` children.
pub fn random_tree(rng: &mut impl Rng, n: usize, max_children: usize) -> ConstituencyTree {
    ConstituencyTree::new(build(rng, 0, n - 1, max_children)).expect("valid tree")
}

pub fn random_heads(rng: &mut impl Rng, n: usize) -> HeadList {
    let heads = (0..n)
        .map(|i| match rng.gen_range(0..10) {
            0 => None,
            1 => Some(Head::Bos),
            2 => Some(Head::Eos),
            _ if n == 1 => Some(Head::Bos),
            _ => {
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                Some(Head::Token(j))
            }
        })
        .collect();
    HeadList::new(heads).expect("valid heads")
}

/// Random perfect matching over `n` (even) positions.
pub fn random_matching(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let mut pos: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        pos.swap(i, rng.gen_range(0..=i));
    }
    pos.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect()
}

pub fn percent(correct: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * correct as f64 / total as f64
    }
}
