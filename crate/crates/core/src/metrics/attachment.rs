use serde::{Deserialize, Serialize};

use super::MetricError;
use crate::structures::{Head, HeadList};

/// Correct and evaluated counts; percentages are derived from pooled counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub correct: u64,
    pub total: u64,
}

impl Counts {
    pub fn percent(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.correct as f64 / self.total as f64
        }
    }
}

impl std::ops::AddAssign for Counts {
    fn add_assign(&mut self, rhs: Self) {
        self.correct += rhs.correct;
        self.total += rhs.total;
    }
}

fn check_mask(mask: Option<&[bool]>, n: usize) -> Result<(), MetricError> {
    match mask {
        Some(m) if m.len() != n => Err(MetricError::LengthMismatch(m.len(), n)),
        _ => Ok(()),
    }
}

pub fn uas_counts(pred: &HeadList, reference: &HeadList, mask: Option<&[bool]>) -> Result<Counts, MetricError> {
    if pred.len() != reference.len() {
        return Err(MetricError::LengthMismatch(pred.len(), reference.len()));
    }
    check_mask(mask, pred.len())?;
    let mut c = Counts::default();
    for (i, (p, r)) in pred.heads().iter().zip(reference.heads()).enumerate() {
        if mask.is_some_and(|m| !m[i]) {
            continue;
        }
        c.total += 1;
        if p.is_some() && p == r {
            c.correct += 1;
        }
    }
    Ok(c)
}

/// Percentage of masked tokens whose head matches the reference. A missing
/// head never matches.
pub fn uas(pred: &HeadList, reference: &HeadList, mask: Option<&[bool]>) -> Result<f64, MetricError> {
    uas_counts(pred, reference, mask).map(|c| c.percent())
}

pub fn uas_undirected_counts(
    pred: &HeadList,
    gold: &[(usize, usize)],
    exclude: Option<&[bool]>,
) -> Result<Counts, MetricError> {
    let n = pred.len();
    check_mask(exclude, n)?;
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for &(a, b) in gold {
        if a >= n || b >= n {
            return Err(MetricError::EdgeOutOfRange(a, b));
        }
        for (x, y) in [(a, b), (b, a)] {
            if partner[x].replace(y).is_some() {
                return Err(MetricError::DoublyCovered(x));
            }
        }
    }
    let mut c = Counts::default();
    for i in 0..n {
        if exclude.is_some_and(|m| m[i]) {
            continue;
        }
        let p = partner[i].ok_or(MetricError::UncoveredToken(i))?;
        c.total += 1;
        if pred.get(i) == Some(Head::Token(p)) {
            c.correct += 1;
        }
    }
    Ok(c)
}

/// Attachment score against undirected gold edges: token `i` is correct when
/// `{i, head(i)}` is a gold edge in either orientation.
pub fn uas_undirected(pred: &HeadList, gold: &[(usize, usize)], exclude: Option<&[bool]>) -> Result<f64, MetricError> {
    uas_undirected_counts(pred, gold, exclude).map(|c| c.percent())
}
