//! Consistency, triviality and evolution over two toy "models" whose head
//! lists drift across checkpoints.

use silmbench::metrics::{consistency_across, evolution, triviality_profile, MetricOptions, Provenance, Structure, StructureKind, StructureSet};
use silmbench::structures::{trivial_dependency, DependencyBaseline, Head, HeadList};

/// Heads pointing at the next token, except that the first `k` tokens point to BOS.
fn drifting(n: usize, k: usize) -> HeadList {
    let base = trivial_dependency(n, DependencyBaseline::Next);
    let heads = base
        .heads()
        .iter()
        .enumerate()
        .map(|(i, &h)| if i < k { Some(Head::Bos) } else { h })
        .collect();
    HeadList::new(heads).expect("valid heads")
}

fn series(model: &str, shift: usize) -> Vec<StructureSet> {
    (1..=5u64)
        .map(|step| {
            let items = (0..20).map(|i| {
                let n = 6 + i % 5;
                (format!("s{i}"), Structure::HeadList(drifting(n, (step as usize + shift) % n)))
            });
            StructureSet::from_items(Provenance::new(model, step * 1000), StructureKind::HeadList, items).unwrap()
        })
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = MetricOptions::default();
    let a = series("seed-a", 0);
    let b = series("seed-b", 1);
    print!("{}", consistency_across(&a, &b, &opts)?.to_text());
    print!("{}", triviality_profile(a.last().unwrap(), &opts)?.to_text());
    print!("{}", evolution(&a, &opts)?.to_text());
    Ok(())
}
