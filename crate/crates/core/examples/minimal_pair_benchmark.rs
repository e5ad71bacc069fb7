//! Builds a minimal-pair benchmark and scores it with two toy scorers.
//!
//! The "oracle" gives grammatical strings a lower score; the "length" scorer
//! only looks at string length and so ties on every pair.

use silmbench::formal_lang::{generate, recognize, GenConfig, LanguageKind, LanguageSpec};
use silmbench::minimal_pairs::{build_benchmark, score_benchmark, BenchmarkConfig, DistanceBuckets, ScoreFile, Variant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 2 });
    let corpus = generate(&spec, &GenConfig::new(1, 100_000, (2, 96)))?;
    let cfg = BenchmarkConfig {
        seed: 1,
        per_subtask: Some(500),
        ..BenchmarkConfig::default()
    };
    let bench = build_benchmark(&corpus.sequences, &spec, &cfg)?;
    println!("{} pairs, {} skipped", bench.pairs.len(), bench.skipped);
    let p = &bench.pairs[0];
    println!("{}\n  + {}\n  - {}", p.id, spec.render(&p.positive.tokens), spec.render(&p.negative));

    let metas: Vec<_> = bench.pairs.iter().map(|p| p.meta()).collect();
    let mut oracle = ScoreFile::new();
    let mut length = ScoreFile::new();
    for p in &bench.pairs {
        for (v, toks) in [(Variant::Pos, &p.positive.tokens), (Variant::Neg, &p.negative)] {
            let s = if recognize(&spec, toks).is_accept() { 1.0 } else { 2.0 };
            oracle.insert(&p.id, v, s)?;
            length.insert(&p.id, v, toks.len() as f64)?;
        }
    }
    let buckets = DistanceBuckets::default();
    print!("{}", score_benchmark(&metas, &oracle, &buckets)?.to_text());
    println!("length scorer overall: {:.1}", score_benchmark(&metas, &length, &buckets)?.score("overall").unwrap());
    Ok(())
}
