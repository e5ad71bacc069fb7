use std::ops::Range;

use super::{Head, HeadList, HeadMatrix, StructureError};

/// Contiguous, disjoint, covering groups of content positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSpans {
    words: Vec<Range<usize>>,
}

impl WordSpans {
    pub fn from_lengths(lengths: &[usize]) -> Result<Self, StructureError> {
        let mut start = 0;
        let mut words = Vec::with_capacity(lengths.len());
        for (w, &len) in lengths.iter().enumerate() {
            if len == 0 {
                return Err(StructureError::WordSpans(format!("word {w} is empty")));
            }
            words.push(start..start + len);
            start += len;
        }
        Ok(WordSpans { words })
    }

    pub fn from_ranges(ranges: Vec<Range<usize>>) -> Result<Self, StructureError> {
        let mut expected = 0;
        for (w, r) in ranges.iter().enumerate() {
            if r.is_empty() {
                return Err(StructureError::WordSpans(format!("word {w} is empty")));
            }
            if r.start != expected {
                return Err(StructureError::WordSpans(format!(
                    "word {w} starts at {} but the previous word ended at {expected}",
                    r.start
                )));
            }
            expected = r.end;
        }
        Ok(WordSpans { words: ranges })
    }

    /// Every token is its own word.
    pub fn singletons(n: usize) -> Self {
        WordSpans {
            words: (0..n).map(|i| i..i + 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn token_count(&self) -> usize {
        self.words.last().map_or(0, |r| r.end)
    }

    pub fn words(&self) -> &[Range<usize>] {
        &self.words
    }
}

/// Word-level heads: each word's head is the other word (or boundary token)
/// receiving the largest summed head mass from the word's tokens. Mass
/// inside the word itself is ignored.
pub fn aggregate_word_heads(h: &HeadMatrix, spans: &WordSpans) -> Result<HeadList, StructureError> {
    if spans.token_count() != h.content_len() {
        return Err(StructureError::WordSpans(format!(
            "spans cover {} tokens but the matrix has {} content tokens",
            spans.token_count(),
            h.content_len()
        )));
    }
    let offset = h.has_bos() as usize;
    let row_mass = |w: &Range<usize>, cols: Range<usize>| -> f64 {
        w.clone()
            .map(|i| cols.clone().map(|j| h.get(i + offset, j)).sum::<f64>())
            .sum()
    };

    let mut heads = Vec::with_capacity(spans.len());
    for (w, word) in spans.words().iter().enumerate() {
        let mut candidates: Vec<(Head, f64)> = Vec::with_capacity(spans.len() + 1);
        if h.has_bos() {
            candidates.push((Head::Bos, row_mass(word, 0..1)));
        }
        for (v, other) in spans.words().iter().enumerate() {
            if v != w {
                candidates.push((Head::Token(v), row_mass(word, other.start + offset..other.end + offset)));
            }
        }
        if h.has_eos() {
            candidates.push((Head::Eos, row_mass(word, h.n() - 1..h.n())));
        }
        let mut best: Option<(Head, f64)> = None;
        for (head, mass) in candidates {
            if mass > 0.0 && best.map_or(true, |(_, b)| mass > b) {
                best = Some((head, mass));
            }
        }
        heads.push(best.map(|(head, _)| head));
    }
    HeadList::new(heads)
}
