use serde::{Deserialize, Serialize};

use super::StructureError;

/// The head chosen for a token: a content token or one of the boundary tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Head {
    Bos,
    Token(usize),
    Eos,
}

/// Dense `n × n` head scores in frame coordinates: position 0 is BOS when
/// `has_bos`, position `n - 1` is EOS when `has_eos`. Row `i` scores the
/// candidate heads of position `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadMatrix {
    n: usize,
    values: Vec<f64>,
    has_bos: bool,
    has_eos: bool,
}

impl HeadMatrix {
    pub fn new(n: usize, values: Vec<f64>, has_bos: bool, has_eos: bool) -> Result<Self, StructureError> {
        if values.len() != n * n {
            return Err(StructureError::Matrix(format!(
                "expected {} values for n = {n}, got {}",
                n * n,
                values.len()
            )));
        }
        if n < has_bos as usize + has_eos as usize {
            return Err(StructureError::Matrix(format!("n = {n} cannot hold the boundary tokens")));
        }
        for (idx, &v) in values.iter().enumerate() {
            let (i, j) = (idx / n, idx % n);
            if !v.is_finite() || v < 0.0 {
                return Err(StructureError::Matrix(format!("entry ({i}, {j}) = {v} is not a non-negative number")));
            }
            if i == j && v != 0.0 {
                return Err(StructureError::Matrix(format!("diagonal entry ({i}, {i}) = {v} is not zero")));
            }
        }
        Ok(HeadMatrix {
            n,
            values,
            has_bos,
            has_eos,
        })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>, has_bos: bool, has_eos: bool) -> Result<Self, StructureError> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(StructureError::Matrix(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        Self::new(n, rows.into_iter().flatten().collect(), has_bos, has_eos)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_bos(&self) -> bool {
        self.has_bos
    }

    pub fn has_eos(&self) -> bool {
        self.has_eos
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Frame positions of the content tokens.
    pub fn content_range(&self) -> std::ops::Range<usize> {
        self.has_bos as usize..self.n - self.has_eos as usize
    }

    pub fn content_len(&self) -> usize {
        self.content_range().len()
    }

    /// Maps a frame position to a head.
    pub fn head_at(&self, pos: usize) -> Head {
        if self.has_bos && pos == 0 {
            Head::Bos
        } else if self.has_eos && pos == self.n - 1 {
            Head::Eos
        } else {
            Head::Token(pos - self.has_bos as usize)
        }
    }
}

/// One optional head per content token.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeadList {
    heads: Vec<Option<Head>>,
}

impl HeadList {
    pub fn new(heads: Vec<Option<Head>>) -> Result<Self, StructureError> {
        let n = heads.len();
        for (i, h) in heads.iter().enumerate() {
            if let Some(Head::Token(j)) = *h {
                if j == i {
                    return Err(StructureError::HeadList(format!("token {i} is its own head")));
                }
                if j >= n {
                    return Err(StructureError::HeadList(format!("token {i} has head {j} outside 0..{n}")));
                }
            }
        }
        Ok(HeadList { heads })
    }

    /// Builds from frame-indexed heads (the layout of a head matrix).
    /// Boundary positions' own entries are ignored.
    pub fn from_frame(frame: &[Option<usize>], has_bos: bool, has_eos: bool) -> Result<Self, StructureError> {
        let n = frame.len();
        let lo = has_bos as usize;
        let hi = n
            .checked_sub(has_eos as usize)
            .filter(|&hi| hi >= lo)
            .ok_or_else(|| StructureError::HeadList(format!("{n} positions cannot hold the boundary tokens")))?;
        let mut heads = Vec::with_capacity(hi - lo);
        for (i, h) in frame[lo..hi].iter().enumerate() {
            let head = match *h {
                None => None,
                Some(p) if p >= n => {
                    return Err(StructureError::HeadList(format!(
                        "position {} has head {p} outside 0..{n}",
                        i + lo
                    )))
                }
                Some(0) if has_bos => Some(Head::Bos),
                Some(p) if has_eos && p == n - 1 => Some(Head::Eos),
                Some(p) => Some(Head::Token(p - lo)),
            };
            heads.push(head);
        }
        Self::new(heads)
    }

    /// Frame-indexed heads; boundary rows are `None`.
    pub fn to_frame(&self, has_bos: bool, has_eos: bool) -> Vec<Option<usize>> {
        let n = self.heads.len();
        let lo = has_bos as usize;
        let eos = n + lo;
        let mut frame: Vec<Option<usize>> = self
            .heads
            .iter()
            .map(|h| {
                h.map(|h| match h {
                    Head::Bos => 0,
                    Head::Eos => eos,
                    Head::Token(j) => j + lo,
                })
            })
            .collect();
        if has_bos {
            frame.insert(0, None);
        }
        if has_eos {
            frame.push(None);
        }
        frame
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn heads(&self) -> &[Option<Head>] {
        &self.heads
    }

    pub fn get(&self, i: usize) -> Option<Head> {
        self.heads[i]
    }
}

/// Per content row, the highest-scoring head (lowest frame index on ties).
/// All-zero rows decode to no head. The result need not be connected or
/// rooted.
pub fn decode_heads(h: &HeadMatrix) -> HeadList {
    let heads = h
        .content_range()
        .map(|i| {
            let mut best: Option<(usize, f64)> = None;
            for (j, &v) in h.row(i).iter().enumerate() {
                if j == i || v <= 0.0 {
                    continue;
                }
                if best.map_or(true, |(_, b)| v > b) {
                    best = Some((j, v));
                }
            }
            best.map(|(j, _)| h.head_at(j))
        })
        .collect();
    HeadList { heads }
}
