use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{MinimalPair, PerturbError, Subtask};
use crate::formal_lang::{recognize, BracketType, LanguageSpec, Sequence, Side, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbOptions {
    /// Candidate perturbations tried before giving up on a sequence.
    pub max_attempts: usize,
    /// Which bracket of the pair `typemismatch` rewrites.
    pub mismatch_side: Side,
}

impl Default for PerturbOptions {
    fn default() -> Self {
        PerturbOptions {
            max_attempts: 64,
            mismatch_side: Side::Close,
        }
    }
}

/// Swaps the two brackets of a matched pair.
pub fn apply_bracketswap(tokens: &[Token], edge: (usize, usize)) -> Vec<Token> {
    let mut out = tokens.to_vec();
    out.swap(edge.0, edge.1);
    out
}

pub fn apply_randomswap(tokens: &[Token], p: usize, q: usize) -> Vec<Token> {
    let mut out = tokens.to_vec();
    out.swap(p, q);
    out
}

/// Replaces the type of the token at `pos`.
pub fn apply_typemismatch(tokens: &[Token], pos: usize, ty: BracketType) -> Vec<Token> {
    let mut out = tokens.to_vec();
    out[pos] = out[pos].with_type(ty);
    out
}

fn rejected(spec: &LanguageSpec, tokens: &[Token]) -> bool {
    !recognize(spec, tokens).is_accept()
}

fn pair(seq: &Sequence, subtask: Subtask, negative: Vec<Token>, lo: usize, hi: usize) -> MinimalPair {
    MinimalPair {
        id: format!("{}:{}", seq.id, subtask.name()),
        positive: seq.clone(),
        negative,
        subtask,
        distance: hi - lo + 1,
        positions: vec![lo, hi],
    }
}

fn no_luck(seq: &Sequence, subtask: Subtask, attempts: usize) -> PerturbError {
    PerturbError::NoRejectingPerturbation {
        id: seq.id.clone(),
        subtask,
        attempts,
    }
}

/// Swaps the brackets of a randomly chosen matched pair, trying pairs in
/// random order until the result is rejected.
pub fn perturb_bracketswap<R: Rng>(
    spec: &LanguageSpec,
    seq: &Sequence,
    rng: &mut R,
    opts: &PerturbOptions,
) -> Result<MinimalPair, PerturbError> {
    if seq.gold_edges.is_empty() {
        return Err(PerturbError::NoEdges(seq.id.clone()));
    }
    let mut edges = seq.gold_edges.clone();
    edges.shuffle(rng);
    for &(i, j) in edges.iter().take(opts.max_attempts) {
        let negative = apply_bracketswap(&seq.tokens, (i, j));
        if rejected(spec, &negative) {
            return Ok(pair(seq, Subtask::BracketSwap, negative, i, j));
        }
    }
    Err(no_luck(seq, Subtask::BracketSwap, edges.len().min(opts.max_attempts)))
}

/// Swaps two positions holding different tokens; the first swap whose result
/// is rejected wins.
pub fn perturb_randomswap<R: Rng>(
    spec: &LanguageSpec,
    seq: &Sequence,
    rng: &mut R,
    opts: &PerturbOptions,
) -> Result<MinimalPair, PerturbError> {
    let n = seq.len();
    if n < 4 {
        return Err(PerturbError::TooShort {
            id: seq.id.clone(),
            subtask: Subtask::RandomSwap,
            len: n,
        });
    }
    for _ in 0..opts.max_attempts {
        // Dyck strings always contain both an open and a close, so this ends
        let (p, q) = loop {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if seq.tokens[a] != seq.tokens[b] {
                break (a.min(b), a.max(b));
            }
        };
        let negative = apply_randomswap(&seq.tokens, p, q);
        if rejected(spec, &negative) {
            return Ok(pair(seq, Subtask::RandomSwap, negative, p, q));
        }
    }
    Err(no_luck(seq, Subtask::RandomSwap, opts.max_attempts))
}

/// Rewrites one bracket of a matched pair to a different surface type.
pub fn perturb_typemismatch<R: Rng>(
    spec: &LanguageSpec,
    seq: &Sequence,
    rng: &mut R,
    opts: &PerturbOptions,
) -> Result<MinimalPair, PerturbError> {
    if spec.type_count() < 2 {
        return Err(PerturbError::UnsupportedSubtask {
            language: spec.name(),
            subtask: Subtask::TypeMismatch,
        });
    }
    if seq.gold_edges.is_empty() {
        return Err(PerturbError::NoEdges(seq.id.clone()));
    }
    let types = spec.surface_types();
    for _ in 0..opts.max_attempts {
        let &(i, j) = seq.gold_edges.choose(rng).expect("non-empty");
        let pos = match opts.mismatch_side {
            Side::Open => i,
            Side::Close => j,
        };
        let current = seq.tokens[pos].ty;
        let others: Vec<BracketType> = types.iter().copied().filter(|&t| t != current).collect();
        let ty = *others.choose(rng).expect("at least two types");
        let negative = apply_typemismatch(&seq.tokens, pos, ty);
        if rejected(spec, &negative) {
            return Ok(MinimalPair {
                positions: vec![pos],
                ..pair(seq, Subtask::TypeMismatch, negative, i, j)
            });
        }
    }
    Err(no_luck(seq, Subtask::TypeMismatch, opts.max_attempts))
}

pub fn perturb<R: Rng>(
    subtask: Subtask,
    spec: &LanguageSpec,
    seq: &Sequence,
    rng: &mut R,
    opts: &PerturbOptions,
) -> Result<MinimalPair, PerturbError> {
    match subtask {
        Subtask::BracketSwap => perturb_bracketswap(spec, seq, rng, opts),
        Subtask::RandomSwap => perturb_randomswap(spec, seq, rng, opts),
        Subtask::TypeMismatch => perturb_typemismatch(spec, seq, rng, opts),
    }
}
