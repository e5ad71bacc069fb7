use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gold, recognize, BracketType, LangError, LanguageKind, LanguageSpec, Sequence, Token};
use crate::rng::stream_rng;

const BATCH: u64 = 2048;
const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub target_tokens: usize,
    /// Probability of opening a new pair when opening is allowed.
    pub p_open: f64,
    /// Inclusive token length window.
    pub length_window: (usize, usize),
    /// Sequence ids are `{id_prefix}-{index}`; defaults to the language name.
    #[serde(default)]
    pub id_prefix: Option<String>,
}

impl GenConfig {
    pub fn new(seed: u64, target_tokens: usize, length_window: (usize, usize)) -> Self {
        GenConfig {
            seed,
            target_tokens,
            p_open: 0.5,
            length_window,
            id_prefix: None,
        }
    }

    pub fn with_p_open(mut self, p_open: f64) -> Self {
        self.p_open = p_open;
        self
    }

    pub fn with_id_prefix(mut self, prefix: impl Into<String>) -> Self {
        self.id_prefix = Some(prefix.into());
        self
    }

    /// Even-rounded `(min, max)` window actually reachable by the sampler.
    fn effective_window(&self, spec: &LanguageSpec) -> Result<(usize, usize), LangError> {
        if !(self.p_open > 0.0 && self.p_open < 1.0) {
            return Err(LangError::InvalidConfig(format!(
                "p_open must lie in (0, 1), got {}",
                self.p_open
            )));
        }
        let (min, max) = self.length_window;
        if min < 2 {
            return Err(LangError::InvalidConfig(format!("min_len must be at least 2, got {min}")));
        }
        let lo = min + min % 2;
        let hi = max - max % 2;
        if lo > hi {
            return Err(LangError::UnsatisfiableWindow {
                min,
                max,
                reason: "no even length inside the window".into(),
            });
        }
        // any even length is reachable at depth 1, so only a zero depth bound blocks it
        if spec.max_depth == 0 {
            return Err(LangError::UnsatisfiableWindow {
                min,
                max,
                reason: "max_depth is zero".into(),
            });
        }
        Ok((lo, hi))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub spec: LanguageSpec,
    pub sequences: Vec<Sequence>,
}

impl Corpus {
    pub fn new(spec: LanguageSpec, sequences: Vec<Sequence>) -> Self {
        Corpus { spec, sequences }
    }

    pub fn token_count(&self) -> usize {
        self.sequences.iter().map(Sequence::len).sum()
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }
}

/// Generates sequences until `cfg.target_tokens` is reached. Sequence `i`
/// depends only on `(spec, cfg, i)`, so the output is the same for any
/// rayon pool size.
pub fn generate(spec: &LanguageSpec, cfg: &GenConfig) -> Result<Corpus, LangError> {
    let spec = spec.clone().validated()?;
    cfg.effective_window(&spec)?;
    let mut sequences = Vec::new();
    let mut tokens = 0;
    let mut next = 0u64;
    while tokens < cfg.target_tokens {
        let batch = (next..next + BATCH)
            .into_par_iter()
            .map(|i| generate_sequence(&spec, cfg, i))
            .collect::<Result<Vec<_>, _>>()?;
        next += BATCH;
        for seq in batch {
            if tokens >= cfg.target_tokens {
                break;
            }
            tokens += seq.len();
            sequences.push(seq);
        }
    }
    Ok(Corpus::new(spec, sequences))
}

/// Draws the sequence with the given index.
pub fn generate_sequence(spec: &LanguageSpec, cfg: &GenConfig, index: u64) -> Result<Sequence, LangError> {
    let (lo, hi) = cfg.effective_window(spec)?;
    let mut rng = stream_rng(cfg.seed, index);
    let prefix = cfg.id_prefix.clone().unwrap_or_else(|| spec.name());
    for _ in 0..MAX_ATTEMPTS {
        let (tokens, mut edges) = derive(spec, cfg.p_open, lo, hi, &mut rng);
        let ok = match recognize(spec, &tokens).depth() {
            Some(d) => d <= spec.max_depth && (lo..=hi).contains(&tokens.len()),
            None => false,
        };
        if ok {
            edges.sort_unstable();
            let gold_tree = gold::tree_from_pairs(tokens.len(), &edges);
            return Ok(Sequence {
                id: format!("{prefix}-{index:07}"),
                tokens,
                gold_edges: edges,
                gold_tree,
            });
        }
    }
    Err(LangError::UnsatisfiableWindow {
        min: cfg.length_window.0,
        max: cfg.length_window.1,
        reason: format!("no valid sequence after {MAX_ATTEMPTS} attempts"),
    })
}

fn draw_pair<R: Rng>(spec: &LanguageSpec, rng: &mut R) -> (Token, Token) {
    match spec.kind {
        LanguageKind::DyckK { k } => {
            let t = rng.gen_range(1..=k);
            (Token::open(t), Token::close(t))
        }
        LanguageKind::DyckU => {
            let t = rng.gen_range(1..=2);
            let open = if rng.gen_bool(0.5) { Token::open_u() } else { Token::open(t) };
            let close = if rng.gen_bool(0.5) { Token::close_u() } else { Token::close(t) };
            (open, close)
        }
    }
}

/// Depth-bounded stochastic derivation. Top-level stopping is only allowed
/// once `lo` tokens are emitted, and opening is only allowed while every
/// pending pair can still be closed within `hi`.
fn derive<R: Rng>(
    spec: &LanguageSpec,
    p_open: f64,
    lo: usize,
    hi: usize,
    rng: &mut R,
) -> (Vec<Token>, Vec<(usize, usize)>) {
    let mut tokens = Vec::new();
    let mut edges = Vec::new();
    let mut stack: Vec<(usize, Token)> = Vec::new();
    loop {
        let len = tokens.len();
        let open = if stack.is_empty() {
            if len >= lo && (len + 2 > hi || !rng.gen_bool(p_open)) {
                break;
            }
            true
        } else {
            let can_open = stack.len() < spec.max_depth && len + stack.len() + 2 <= hi;
            can_open && rng.gen_bool(p_open)
        };
        if open {
            let (o, c) = draw_pair(spec, rng);
            stack.push((len, c));
            tokens.push(o);
        } else {
            let (o, c) = stack.pop().expect("non-empty stack");
            edges.push((o, len));
            tokens.push(c);
        }
    }
    (tokens, edges)
}

/// Fraction of open and close brackets rendered as `u`.
pub fn unspecified_rates(sequences: &[Sequence]) -> (f64, f64) {
    let (mut opens, mut closes, mut u_open, mut u_close) = (0usize, 0usize, 0usize, 0usize);
    for t in sequences.iter().flat_map(|s| &s.tokens) {
        let u = t.ty == BracketType::Unspecified;
        if t.is_open() {
            opens += 1;
            u_open += u as usize;
        } else {
            closes += 1;
            u_close += u as usize;
        }
    }
    (
        u_open as f64 / opens.max(1) as f64,
        u_close as f64 / closes.max(1) as f64,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_lang::LanguageKind;
    use crate::structures::is_projective;

    #[test]
    fn dyck_1_length_two_is_single_pair() {
        let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 1 });
        let cfg = GenConfig::new(3, 200, (2, 2));
        let corpus = generate(&spec, &cfg).unwrap();
        assert_eq!(corpus.token_count(), 200);
        for s in &corpus.sequences {
            assert_eq!(spec.render(&s.tokens), "( )");
        }
    }

    #[test]
    fn generated_sequences_are_sound() {
        let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 64 });
        let cfg = GenConfig::new(11, 100_000, (2, 96));
        let corpus = generate(&spec, &cfg).unwrap();
        assert!(corpus.token_count() >= 100_000);
        for s in &corpus.sequences {
            let depth = recognize(&spec, &s.tokens).depth().expect("accepted");
            assert!(depth <= 7);
            assert!(s.len() <= 96);
            assert!(is_projective(&s.gold_edges));
            assert_eq!(s.gold_edges.len() * 2, s.len());
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = LanguageSpec::standard(LanguageKind::DyckU);
        let cfg = GenConfig::new(7, 5_000, (2, 96));
        assert_eq!(generate(&spec, &cfg).unwrap(), generate(&spec, &cfg).unwrap());
        let other = GenConfig::new(8, 5_000, (2, 96));
        assert_ne!(generate(&spec, &cfg).unwrap(), generate(&spec, &other).unwrap());
    }

    #[test]
    fn independent_of_thread_count() {
        let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 2 });
        let cfg = GenConfig::new(5, 20_000, (2, 96));
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| generate(&spec, &cfg).unwrap());
        let b = four.install(|| generate(&spec, &cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn generalization_window_respected() {
        let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 2 });
        let cfg = GenConfig::new(1, 10_000, (97, 192));
        let corpus = generate(&spec, &cfg).unwrap();
        assert!(corpus.sequences.iter().all(|s| s.len() > 96 && s.len() <= 192));
    }

    #[test]
    fn bad_windows_are_config_errors() {
        let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 2 });
        assert!(matches!(
            generate(&spec, &GenConfig::new(1, 10, (5, 5))),
            Err(LangError::UnsatisfiableWindow { .. })
        ));
        assert!(matches!(
            generate(&spec, &GenConfig::new(1, 10, (1, 10))),
            Err(LangError::InvalidConfig(_))
        ));
        assert!(generate(&spec, &GenConfig::new(1, 10, (2, 10)).with_p_open(1.0)).is_err());
    }

    #[test]
    fn zero_target_is_empty() {
        let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 2 });
        assert!(generate(&spec, &GenConfig::new(1, 0, (2, 10))).unwrap().is_empty());
    }
}
