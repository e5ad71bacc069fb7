use serde::{Deserialize, Serialize};

use super::{MetricError, MetricReport, Structure, StructureSet};
use crate::structures::{decode_heads, is_connected_tree, HeadMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticOptions {
    /// A row counts as confident when its maximum exceeds this.
    pub confident_threshold: f64,
    /// Probe for near-uniform rows: share of row maxima below this value.
    pub uniform_probe: f64,
    /// Quantile of the row maxima to report, in `(0, 1]`.
    pub percentile: f64,
}

impl Default for DiagnosticOptions {
    fn default() -> Self {
        DiagnosticOptions {
            confident_threshold: 0.6,
            uniform_probe: 0.17,
            percentile: 0.9,
        }
    }
}

/// Nearest-rank quantile of `values` (sorted in place).
pub fn percentile(values: &mut [f64], q: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let rank = (q * values.len() as f64).ceil() as usize;
    Some(values[rank.clamp(1, values.len()) - 1])
}

/// Per content row: (max probability, entropy in nats) after normalizing the
/// row to sum to one. All-zero rows yield `None`.
fn row_stats(h: &HeadMatrix) -> Vec<Option<(f64, f64)>> {
    h.content_range()
        .map(|i| {
            let row = h.row(i);
            let total: f64 = row.iter().sum();
            if total <= 0.0 {
                return None;
            }
            let mut max = 0.0f64;
            let mut entropy = 0.0;
            for &v in row {
                let p = v / total;
                max = max.max(p);
                if p > 0.0 {
                    entropy -= p * p.ln();
                }
            }
            Some((max, entropy))
        })
        .collect()
}

/// Shape of the head distributions: how peaked the per-token rows are and
/// how often the decoded structure is a spanning tree.
pub fn head_diagnostics(s: &StructureSet, opts: &DiagnosticOptions) -> Result<MetricReport, MetricError> {
    let mut maxima = Vec::new();
    let mut entropy_sum = 0.0;
    let mut zero_rows = 0u64;
    let mut trees = 0u64;
    let mut matrices = 0u64;
    for (_, item) in s.iter() {
        let Structure::HeadMatrix(h) = item else {
            return Err(MetricError::KindMismatch("head_matrix".into(), item.kind().to_string()));
        };
        matrices += 1;
        for stat in row_stats(h) {
            match stat {
                Some((m, e)) => {
                    maxima.push(m);
                    entropy_sum += e;
                }
                None => zero_rows += 1,
            }
        }
        if is_connected_tree(&decode_heads(h)) {
            trees += 1;
        }
    }

    let rows = maxima.len();
    let pct = |k: usize, n: usize| if n == 0 { 0.0 } else { 100.0 * k as f64 / n as f64 };
    let mut report = MetricReport::new("head_diagnostics").with_config(opts);
    report.push_score(
        "rows_max_above_threshold",
        pct(maxima.iter().filter(|&&m| m > opts.confident_threshold).count(), rows),
    );
    report.push_score(
        "rows_max_below_probe",
        pct(maxima.iter().filter(|&&m| m < opts.uniform_probe).count(), rows),
    );
    report.push_score("connected_trees", pct(trees as usize, matrices as usize));
    let mean_max = if rows == 0 { 0.0 } else { maxima.iter().sum::<f64>() / rows as f64 };
    report.push_stat("mean_row_max", mean_max);
    report.push_stat("row_max_percentile", percentile(&mut maxima, opts.percentile).unwrap_or(0.0));
    report.push_stat("mean_row_entropy", if rows == 0 { 0.0 } else { entropy_sum / rows as f64 });
    report.set_count("matrices", matrices);
    report.set_count("rows", rows as u64);
    report.set_count("zero_rows", zero_rows);
    report.sources = vec![s.provenance.clone()];
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{Provenance, StructureKind};

    fn set(ms: Vec<HeadMatrix>) -> StructureSet {
        StructureSet::from_items(
            Provenance::new("m", 0),
            StructureKind::HeadMatrix,
            ms.into_iter().enumerate().map(|(i, m)| (format!("s{i}"), Structure::HeadMatrix(m))),
        )
        .unwrap()
    }

    fn uniform(n: usize) -> HeadMatrix {
        let v = 1.0 / (n - 1) as f64;
        HeadMatrix::from_rows(
            (0..n).map(|i| (0..n).map(|j| if i == j { 0.0 } else { v }).collect()).collect(),
            false,
            false,
        )
        .unwrap()
    }

    #[test]
    fn one_hot_rows() {
        // chain: every token attaches to its left neighbour, token 0 to token 1
        let n = 5;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if (i == 0 && j == 1) || (i > 0 && j == i - 1) { 1.0 } else { 0.0 }).collect())
            .collect();
        let r = head_diagnostics(&set(vec![HeadMatrix::from_rows(rows, false, false).unwrap()]), &DiagnosticOptions::default()).unwrap();
        assert_eq!(r.score("rows_max_above_threshold"), Some(100.0));
        assert_eq!(r.stat("mean_row_entropy"), Some(0.0));
        // 0 <-> 1 is a mutual pair, so not a tree
        assert_eq!(r.score("connected_trees"), Some(0.0));
    }

    #[test]
    fn uniform_rows() {
        let r = head_diagnostics(&set(vec![uniform(8)]), &DiagnosticOptions::default()).unwrap();
        assert!((r.stat("row_max_percentile").unwrap() - 1.0 / 7.0).abs() < 1e-12);
        assert!((r.stat("mean_row_entropy").unwrap() - 7f64.ln()).abs() < 1e-12);
        assert_eq!(r.score("rows_max_below_probe"), Some(100.0));
        assert_eq!(r.score("rows_max_above_threshold"), Some(0.0));
    }

    #[test]
    fn nearest_rank() {
        let mut v = vec![0.5, 0.1, 0.9, 0.3];
        assert_eq!(percentile(&mut v, 0.9), Some(0.9));
        assert_eq!(percentile(&mut v, 0.5), Some(0.3));
        assert_eq!(percentile(&mut [], 0.5), None);
    }

    #[test]
    fn zero_rows_counted() {
        let m = HeadMatrix::new(2, vec![0.0; 4], false, false).unwrap();
        let r = head_diagnostics(&set(vec![m]), &DiagnosticOptions::default()).unwrap();
        assert_eq!(r.count("zero_rows"), Some(2));
        assert_eq!(r.count("rows"), Some(0));
    }
}
