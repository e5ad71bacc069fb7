use std::collections::BTreeSet;

use log::warn;
use serde::{Deserialize, Serialize};

use super::attachment::{uas_counts, uas_undirected_counts, Counts};
use super::brackets::{bracket_counts, BracketCounts, BracketOptions, Prf};
use super::{Family, MetricError, MetricReport, Structure, StructureSet};
use crate::formal_lang::Sequence;
use crate::structures::{trivial_constituency, trivial_dependency, Branching, ConstituencyTree, DependencyBaseline, HeadList};

/// How per-sequence results are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Averaging {
    /// Pooled counts over the corpus.
    Micro,
    /// Mean of per-sequence scores.
    Macro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricOptions {
    pub brackets: BracketOptions,
    pub dependency_averaging: Averaging,
    pub constituency_averaging: Averaging,
}

impl Default for MetricOptions {
    fn default() -> Self {
        MetricOptions {
            brackets: BracketOptions::default(),
            dependency_averaging: Averaging::Macro,
            constituency_averaging: Averaging::Micro,
        }
    }
}

struct DependencyAgg {
    averaging: Averaging,
    pooled: Counts,
    sum: f64,
    n: u64,
}

impl DependencyAgg {
    fn new(averaging: Averaging) -> Self {
        DependencyAgg {
            averaging,
            pooled: Counts::default(),
            sum: 0.0,
            n: 0,
        }
    }

    fn add(&mut self, c: Counts) {
        self.pooled += c;
        if c.total > 0 {
            self.sum += c.percent();
            self.n += 1;
        }
    }

    fn value(&self) -> f64 {
        match self.averaging {
            Averaging::Micro => self.pooled.percent(),
            Averaging::Macro if self.n == 0 => 0.0,
            Averaging::Macro => self.sum / self.n as f64,
        }
    }
}

struct ConstituencyAgg {
    averaging: Averaging,
    pooled: BracketCounts,
    sums: (f64, f64, f64),
    n: u64,
}

impl ConstituencyAgg {
    fn new(averaging: Averaging) -> Self {
        ConstituencyAgg {
            averaging,
            pooled: BracketCounts::default(),
            sums: (0.0, 0.0, 0.0),
            n: 0,
        }
    }

    fn add(&mut self, c: BracketCounts) {
        self.pooled += c;
        // sentences with nothing to compare do not enter the per-sentence mean
        if c.predicted + c.gold > 0 {
            let p = c.prf();
            self.sums.0 += p.precision;
            self.sums.1 += p.recall;
            self.sums.2 += p.f;
            self.n += 1;
        }
    }

    fn value(&self) -> Prf {
        match self.averaging {
            Averaging::Micro => self.pooled.prf(),
            Averaging::Macro if self.n == 0 => Prf {
                precision: 0.0,
                recall: 0.0,
                f: 0.0,
            },
            Averaging::Macro => {
                let n = self.n as f64;
                Prf {
                    precision: self.sums.0 / n,
                    recall: self.sums.1 / n,
                    f: self.sums.2 / n,
                }
            }
        }
    }
}

enum Similarity {
    Uas(f64),
    Brackets(Prf),
}

impl Similarity {
    /// UAS or bracketing F.
    fn headline(&self) -> f64 {
        match self {
            Similarity::Uas(u) => *u,
            Similarity::Brackets(p) => p.f,
        }
    }

    fn write(&self, report: &mut MetricReport) {
        match self {
            Similarity::Uas(u) => report.push_score("uas", *u),
            Similarity::Brackets(p) => {
                report.push_score("precision", p.precision);
                report.push_score("recall", p.recall);
                report.push_score("f", p.f);
            }
        }
    }
}

struct Comparison {
    similarity: Similarity,
    shared: u64,
    skipped: u64,
}

fn seq_err(id: &str, e: MetricError) -> MetricError {
    MetricError::Sequence {
        id: id.to_string(),
        message: e.to_string(),
    }
}

fn heads_of(s: &Structure) -> HeadList {
    s.heads().expect("dependency structure")
}

fn tree_of(s: &Structure) -> &ConstituencyTree {
    s.tree().expect("constituency structure")
}

/// Compares `pred` against `reference` over their shared ids. Ids present on
/// one side only, or with an empty structure, are skipped.
fn compare(pred: &StructureSet, reference: &StructureSet, opts: &MetricOptions) -> Result<Comparison, MetricError> {
    let family = pred.kind().family();
    if family != reference.kind().family() {
        return Err(MetricError::KindMismatch(pred.kind().to_string(), reference.kind().to_string()));
    }
    let mut dep = DependencyAgg::new(opts.dependency_averaging);
    let mut con = ConstituencyAgg::new(opts.constituency_averaging);
    let (mut shared, mut skipped) = (0u64, 0u64);
    for (id, p) in pred.iter() {
        let Some(r) = reference.get(id) else {
            skipped += 1;
            continue;
        };
        if p.is_empty() || r.is_empty() {
            skipped += 1;
            continue;
        }
        shared += 1;
        match family {
            Family::Dependency => dep.add(uas_counts(&heads_of(p), &heads_of(r), None).map_err(|e| seq_err(id, e))?),
            Family::Constituency => {
                con.add(bracket_counts(tree_of(p), tree_of(r), opts.brackets).map_err(|e| seq_err(id, e))?)
            }
        }
    }
    skipped += reference.iter().filter(|(id, _)| pred.get(id).is_none()).count() as u64;
    if shared == 0 {
        return Err(MetricError::NoSharedIds);
    }
    if skipped > 0 {
        warn!(
            "{skipped} sequence(s) skipped comparing {}@{} with {}@{}",
            pred.provenance.model, pred.provenance.step, reference.provenance.model, reference.provenance.step
        );
    }
    let similarity = match family {
        Family::Dependency => Similarity::Uas(dep.value()),
        Family::Constituency => Similarity::Brackets(con.value()),
    };
    Ok(Comparison {
        similarity,
        shared,
        skipped,
    })
}

fn report_for(metric: &str, c: &Comparison, sources: &[&StructureSet], opts: &MetricOptions) -> MetricReport {
    let mut report = MetricReport::new(metric).with_config(opts);
    c.similarity.write(&mut report);
    report.set_count("sequences", c.shared);
    report.set_count("skipped", c.skipped);
    report.sources = sources.iter().map(|s| s.provenance.clone()).collect();
    report
}

/// Agreement between two structure sets: UAS for dependency structures,
/// bracketing F (with P and R) for trees.
pub fn consistency(a: &StructureSet, b: &StructureSet, opts: &MetricOptions) -> Result<MetricReport, MetricError> {
    let c = compare(a, b, opts)?;
    Ok(report_for("consistency", &c, &[a, b], opts))
}

/// Consistency at the largest checkpoint step present in both series.
pub fn consistency_across(
    series_a: &[StructureSet],
    series_b: &[StructureSet],
    opts: &MetricOptions,
) -> Result<MetricReport, MetricError> {
    let steps_b: BTreeSet<u64> = series_b.iter().map(|s| s.provenance.step).collect();
    let step = series_a
        .iter()
        .map(|s| s.provenance.step)
        .filter(|s| steps_b.contains(s))
        .max()
        .ok_or(MetricError::NoCommonCheckpoint)?;
    let a = series_a.iter().find(|s| s.provenance.step == step).expect("step present");
    let b = series_b.iter().find(|s| s.provenance.step == step).expect("step present");
    let mut report = consistency(a, b, opts)?;
    report.set_count("step", step);
    Ok(report)
}

/// Similarity of every structure to the degenerate baselines: first, last,
/// prev and next heads for dependencies; left- and right-branching trees
/// for constituency.
pub fn triviality_profile(s: &StructureSet, opts: &MetricOptions) -> Result<MetricReport, MetricError> {
    let mut report = MetricReport::new("triviality").with_config(opts);
    let mut scored = 0u64;
    let mut skipped = 0u64;
    match s.kind().family() {
        Family::Dependency => {
            let mut aggs: Vec<DependencyAgg> = DependencyBaseline::ALL
                .iter()
                .map(|_| DependencyAgg::new(opts.dependency_averaging))
                .collect();
            for (id, item) in s.iter() {
                if item.is_empty() {
                    skipped += 1;
                    continue;
                }
                scored += 1;
                let heads = heads_of(item);
                for (agg, kind) in aggs.iter_mut().zip(DependencyBaseline::ALL) {
                    let baseline = trivial_dependency(heads.len(), kind);
                    agg.add(uas_counts(&heads, &baseline, None).map_err(|e| seq_err(id, e))?);
                }
            }
            for (agg, kind) in aggs.iter().zip(DependencyBaseline::ALL) {
                report.push_score(kind.name(), agg.value());
            }
        }
        Family::Constituency => {
            let mut aggs: Vec<ConstituencyAgg> = Branching::ALL
                .iter()
                .map(|_| ConstituencyAgg::new(opts.constituency_averaging))
                .collect();
            for (id, item) in s.iter() {
                if item.is_empty() {
                    skipped += 1;
                    continue;
                }
                scored += 1;
                let tree = tree_of(item);
                for (agg, branch) in aggs.iter_mut().zip(Branching::ALL) {
                    let baseline = trivial_constituency(tree.leaf_count(), branch).expect("non-empty tree");
                    agg.add(bracket_counts(tree, &baseline, opts.brackets).map_err(|e| seq_err(id, e))?);
                }
            }
            for (agg, branch) in aggs.iter().zip(Branching::ALL) {
                report.push_score(branch.name(), agg.value().f);
            }
        }
    }
    report.set_count("sequences", scored);
    report.set_count("skipped", skipped);
    report.sources = vec![s.provenance.clone()];
    Ok(report)
}

/// Similarity between each pair of adjacent checkpoints, plus the mean over
/// the last ten adjacent pairs (fewer if the series is shorter).
pub fn evolution(series: &[StructureSet], opts: &MetricOptions) -> Result<MetricReport, MetricError> {
    if series.len() < 2 {
        return Err(MetricError::TooFewCheckpoints(series.len()));
    }
    let mut ordered: Vec<&StructureSet> = series.iter().collect();
    ordered.sort_by_key(|s| s.provenance.step);
    let mut report = MetricReport::new("evolution").with_config(opts);
    let mut values = Vec::with_capacity(ordered.len() - 1);
    let mut skipped = 0;
    for pair in ordered.windows(2) {
        let c = compare(pair[1], pair[0], opts)?;
        skipped += c.skipped;
        let v = c.similarity.headline();
        report.push_score(format!("{}->{}", pair[0].provenance.step, pair[1].provenance.step), v);
        values.push(v);
    }
    let tail = &values[values.len().saturating_sub(10)..];
    report.push_score("last10_mean", tail.iter().sum::<f64>() / tail.len() as f64);
    report.set_count("checkpoints", ordered.len() as u64);
    report.set_count("skipped", skipped);
    report.sources = ordered.iter().map(|s| s.provenance.clone()).collect();
    Ok(report)
}

/// Similarity to reference structures (e.g. external parser output), with
/// `reference` in the gold role.
pub fn annotation_similarity(
    s: &StructureSet,
    reference: &StructureSet,
    opts: &MetricOptions,
) -> Result<MetricReport, MetricError> {
    let c = compare(s, reference, opts)?;
    Ok(report_for("annotation_similarity", &c, &[s, reference], opts))
}

/// Similarity to the gold structures of a generated corpus: undirected UAS
/// against matched-bracket edges, or bracketing P/R/F against gold trees.
pub fn annotation_similarity_corpus(
    s: &StructureSet,
    corpus: &[Sequence],
    opts: &MetricOptions,
) -> Result<MetricReport, MetricError> {
    let family = s.kind().family();
    let mut dep = DependencyAgg::new(opts.dependency_averaging);
    let mut con = ConstituencyAgg::new(opts.constituency_averaging);
    let (mut shared, mut skipped) = (0u64, 0u64);
    for seq in corpus {
        let Some(item) = s.get(&seq.id).filter(|i| !i.is_empty()) else {
            skipped += 1;
            continue;
        };
        shared += 1;
        match family {
            Family::Dependency => {
                let heads = heads_of(item);
                if heads.len() != seq.len() {
                    return Err(seq_err(&seq.id, MetricError::LengthMismatch(heads.len(), seq.len())));
                }
                dep.add(uas_undirected_counts(&heads, &seq.gold_edges, None).map_err(|e| seq_err(&seq.id, e))?);
            }
            Family::Constituency => con.add(
                bracket_counts(tree_of(item), &seq.gold_tree, opts.brackets).map_err(|e| seq_err(&seq.id, e))?,
            ),
        }
    }
    if shared == 0 {
        return Err(MetricError::NoSharedIds);
    }
    if skipped > 0 {
        warn!("{skipped} corpus sequence(s) have no induced structure");
    }
    let similarity = match family {
        Family::Dependency => Similarity::Uas(dep.value()),
        Family::Constituency => Similarity::Brackets(con.value()),
    };
    let c = Comparison {
        similarity,
        shared,
        skipped,
    };
    Ok(report_for("annotation_similarity", &c, &[s], opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{Provenance, StructureKind};
    use crate::structures::Head;

    fn dep_set(model: &str, step: u64, items: &[(&str, Vec<Option<Head>>)]) -> StructureSet {
        StructureSet::from_items(
            Provenance::new(model, step),
            StructureKind::HeadList,
            items
                .iter()
                .map(|(id, h)| (id.to_string(), Structure::HeadList(HeadList::new(h.clone()).unwrap()))),
        )
        .unwrap()
    }

    fn tree_set(model: &str, step: u64, items: &[(&str, &str)]) -> StructureSet {
        StructureSet::from_items(
            Provenance::new(model, step),
            StructureKind::Tree,
            items
                .iter()
                .map(|(id, t)| (id.to_string(), Structure::Tree(t.parse().unwrap()))),
        )
        .unwrap()
    }

    const T: fn(usize) -> Option<Head> = |i| Some(Head::Token(i));

    #[test]
    fn self_consistency_is_100() {
        let a = dep_set("m", 1, &[("s1", vec![T(1), T(0), Some(Head::Bos)]), ("s2", vec![None, T(0)])]);
        let r = consistency(&a, &a, &MetricOptions::default()).unwrap();
        // s2 has a missing head, which never matches: (100 + 50) / 2
        assert_eq!(r.score("uas"), Some(75.0));
        let b = dep_set("m", 1, &[("s1", vec![T(1), T(0), Some(Head::Bos)])]);
        assert_eq!(consistency(&b, &b, &MetricOptions::default()).unwrap().score("uas"), Some(100.0));
    }

    #[test]
    fn disjoint_ids_error() {
        let a = dep_set("a", 1, &[("s1", vec![T(1), T(0)])]);
        let b = dep_set("b", 1, &[("s2", vec![T(1), T(0)])]);
        assert_eq!(consistency(&a, &b, &MetricOptions::default()), Err(MetricError::NoSharedIds));
    }

    #[test]
    fn kind_mismatch_error() {
        let a = dep_set("a", 1, &[("s1", vec![T(1), T(0)])]);
        let b = tree_set("b", 1, &[("s1", "(0 1)")]);
        assert!(matches!(consistency(&a, &b, &MetricOptions::default()), Err(MetricError::KindMismatch(..))));
    }

    #[test]
    fn macro_versus_micro() {
        let a = dep_set("a", 1, &[("s1", vec![T(1), T(0)]), ("s2", vec![T(1), T(0), T(1), T(2)])]);
        let b = dep_set("b", 1, &[("s1", vec![T(1), T(0)]), ("s2", vec![T(1), T(0), T(0), T(0)])]);
        let mut opts = MetricOptions::default();
        assert_eq!(consistency(&a, &b, &opts).unwrap().score("uas"), Some(75.0));
        opts.dependency_averaging = Averaging::Micro;
        let micro = consistency(&a, &b, &opts).unwrap().score("uas").unwrap();
        assert!((micro - 100.0 * 4.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn consistency_picks_largest_shared_step() {
        let a = vec![
            dep_set("a", 1000, &[("s", vec![T(1), T(0)])]),
            dep_set("a", 2000, &[("s", vec![T(1), T(0)])]),
            dep_set("a", 3000, &[("s", vec![T(1), T(0)])]),
        ];
        let b = vec![
            dep_set("b", 1000, &[("s", vec![T(1), T(0)])]),
            dep_set("b", 2000, &[("s", vec![T(1), Some(Head::Bos)])]),
        ];
        let r = consistency_across(&a, &b, &MetricOptions::default()).unwrap();
        assert_eq!(r.count("step"), Some(2000));
        assert_eq!(r.score("uas"), Some(50.0));
        assert_eq!(consistency_across(&a[2..], &b, &MetricOptions::default()), Err(MetricError::NoCommonCheckpoint));
    }

    #[test]
    fn triviality_rows() {
        let s = dep_set(
            "m",
            1,
            &[
                ("a", vec![Some(Head::Bos), T(0), T(1)]),
                ("b", vec![Some(Head::Bos), T(0), T(1), T(2)]),
            ],
        );
        let r = triviality_profile(&s, &MetricOptions::default()).unwrap();
        let names: Vec<&str> = r.scores.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["first", "last", "prev", "next"]);
        assert_eq!(r.score("prev"), Some(100.0));
        assert_eq!(r.score("next"), Some(0.0));
    }

    #[test]
    fn left_branching_trees_score_left() {
        let s = tree_set("m", 1, &[("a", "(((0 1) 2) 3)"), ("b", "((0 1) 2)")]);
        let r = triviality_profile(&s, &MetricOptions::default()).unwrap();
        assert_eq!(r.score("left_branching"), Some(100.0));
        assert_eq!(r.score("right_branching"), Some(0.0));
    }

    #[test]
    fn evolution_values() {
        let sets = vec![
            dep_set("m", 2000, &[("s", vec![T(1), T(0)])]),
            dep_set("m", 1000, &[("s", vec![T(1), T(0)])]),
            dep_set("m", 3000, &[("s", vec![T(1), Some(Head::Eos)])]),
        ];
        let r = evolution(&sets, &MetricOptions::default()).unwrap();
        assert_eq!(r.score("1000->2000"), Some(100.0));
        assert_eq!(r.score("2000->3000"), Some(50.0));
        assert_eq!(r.score("last10_mean"), Some(75.0));
        assert_eq!(evolution(&sets[..1], &MetricOptions::default()), Err(MetricError::TooFewCheckpoints(1)));
    }

    #[test]
    fn skipped_sequences_are_counted() {
        let a = dep_set("a", 1, &[("s1", vec![T(1), T(0)]), ("s2", vec![])]);
        let b = dep_set("b", 1, &[("s1", vec![T(1), T(0)]), ("s2", vec![T(1), T(0)]), ("s3", vec![T(1), T(0)])]);
        let r = consistency(&a, &b, &MetricOptions::default()).unwrap();
        assert_eq!(r.score("uas"), Some(100.0));
        assert_eq!(r.count("skipped"), Some(2));
        assert_eq!(r.count("sequences"), Some(1));
    }
}
