mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{crossing_free, random_heads, random_tree, simulate, spans_from_text, Lang};
use silmbench::formal_lang::{generate, generate_sequence, recognize, unspecified_rates, BracketType, GenConfig, LanguageKind, LanguageSpec, Sequence};
use silmbench::metrics::{
    annotation_similarity, bracket_prf, triviality_profile, uas, MetricOptions, Provenance, Structure, StructureKind,
    StructureSet,
};
use silmbench::minimal_pairs::{perturb, score_benchmark, DistanceBuckets, PairMeta, PerturbOptions, ScoreFile, Subtask, Variant};
use silmbench::structures::{
    actions_to_tree, aggregate_word_heads, binarize, decode_heads, tree_to_actions, trivial_constituency,
    trivial_dependency, Branching, DependencyBaseline, Factoring, Head, HeadMatrix, WordSpans,
};

fn language(i: usize) -> (LanguageSpec, Lang) {
    match i % 4 {
        0 => (LanguageSpec::standard(LanguageKind::DyckK { k: 1 }), Some(1)),
        1 => (LanguageSpec::standard(LanguageKind::DyckK { k: 2 }), Some(2)),
        2 => (LanguageSpec::standard(LanguageKind::DyckK { k: 64 }), Some(64)),
        _ => (LanguageSpec::standard(LanguageKind::DyckU), None),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> HeadMatrix {
    let values = (0..n * n)
        .map(|k| {
            if k / n == k % n || rng.gen_bool(0.2) {
                0.0
            } else {
                // few distinct values so ties happen
                rng.gen_range(0..4) as f64 / 4.0
            }
        })
        .collect();
    HeadMatrix::new(n, values, false, false).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_sequences_are_sound(seed: u64, index in 0u64..1_000_000, lang in 0usize..4, max_depth in 1usize..8) {
        let (mut spec, oracle) = language(lang);
        spec.max_depth = max_depth;
        let seq = generate_sequence(&spec, &GenConfig::new(seed, 0, (2, 96)), index).unwrap();
        let depth = simulate(oracle, &seq.tokens);
        prop_assert!(depth.is_some_and(|d| d <= max_depth));
        prop_assert_eq!(recognize(&spec, &seq.tokens).depth(), depth);
        prop_assert!(crossing_free(&seq.gold_edges));
        prop_assert!(seq.len() >= 2 && seq.len() <= 96);
    }

    #[test]
    fn decode_never_picks_the_diagonal(seed: u64, n in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_matrix(&mut rng, n);
        for (i, head) in decode_heads(&h).heads().iter().enumerate() {
            prop_assert_ne!(*head, Some(Head::Token(i)));
            if let Some(Head::Token(j)) = head {
                // lowest index among the row maxima
                let row = h.row(i);
                let max = row.iter().cloned().fold(f64::MIN, f64::max);
                prop_assert_eq!(row[*j], max);
                prop_assert!(row[..*j].iter().all(|&v| v < max));
            }
        }
    }

    #[test]
    fn word_heads_never_point_to_themselves(seed: u64, lengths in prop::collection::vec(1usize..4, 1..8)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n: usize = lengths.iter().sum();
        let h = random_matrix(&mut rng, n);
        let words = WordSpans::from_lengths(&lengths).unwrap();
        let heads = aggregate_word_heads(&h, &words).unwrap();
        prop_assert_eq!(heads.len(), lengths.len());
        for (w, head) in heads.heads().iter().enumerate() {
            prop_assert_ne!(*head, Some(Head::Token(w)));
        }
    }

    #[test]
    fn binarize_keeps_yield_and_spans(seed: u64, n in 1usize..=12, width in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng, n, width);
        let spans = spans_from_text(&tree.to_string());
        for mode in [Factoring::Left, Factoring::Right] {
            let bin = binarize(&tree, mode);
            prop_assert!(bin.is_binary());
            prop_assert_eq!(bin.leaf_count(), n);
            let out = spans_from_text(&bin.to_string());
            prop_assert!(spans.iter().all(|s| out.contains(s)));
        }
    }

    #[test]
    fn actions_round_trip(seed: u64, n in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng, n, 2);
        let actions = tree_to_actions(&tree).unwrap();
        prop_assert_eq!(actions_to_tree(&actions).unwrap(), tree);
    }

    #[test]
    fn similarity_is_symmetric_and_bounded(seed: u64, n in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_heads(&mut rng, n), random_heads(&mut rng, n));
        let ab = uas(&a, &b, None).unwrap();
        prop_assert_eq!(ab, uas(&b, &a, None).unwrap());
        prop_assert!((0.0..=100.0).contains(&ab));

        let (s, t) = (random_tree(&mut rng, n, 3), random_tree(&mut rng, n, 3));
        let st = bracket_prf(&s, &t, Default::default()).unwrap();
        let ts = bracket_prf(&t, &s, Default::default()).unwrap();
        prop_assert_eq!(st.f, ts.f);
        for v in [st.precision, st.recall, st.f] {
            prop_assert!((0.0..=100.0).contains(&v));
        }
        prop_assert_eq!(st.f == 0.0, st.precision == 0.0 || st.recall == 0.0);
    }

    #[test]
    fn perfect_sequences_never_lower_the_score(seed: u64, count in 1usize..8, trees: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let opts = MetricOptions::default();
        let kind = if trees { StructureKind::Tree } else { StructureKind::HeadList };
        let mut pred = StructureSet::new(Provenance::new("p", 0), kind);
        let mut gold = StructureSet::new(Provenance::new("g", 0), kind);
        for i in 0..count {
            let n = rng.gen_range(1..=10);
            let (p, g) = if trees {
                (Structure::Tree(random_tree(&mut rng, n, 3)), Structure::Tree(random_tree(&mut rng, n, 3)))
            } else {
                (Structure::HeadList(random_heads(&mut rng, n)), Structure::HeadList(random_heads(&mut rng, n)))
            };
            pred.insert(format!("s{i}"), p).unwrap();
            gold.insert(format!("s{i}"), g).unwrap();
        }
        let headline = if trees { "f" } else { "uas" };
        let before = annotation_similarity(&pred, &gold, &opts).unwrap().score(headline).unwrap();
        let n = rng.gen_range(3..=10);
        let same = if trees {
            Structure::Tree(random_tree(&mut rng, n, 3))
        } else {
            // a missing head never matches, so a perfect sequence has every head set
            let heads = loop {
                let h = random_heads(&mut rng, n);
                if h.heads().iter().all(Option::is_some) {
                    break h;
                }
            };
            Structure::HeadList(heads)
        };
        pred.insert("extra", same.clone()).unwrap();
        gold.insert("extra", same).unwrap();
        let after = annotation_similarity(&pred, &gold, &opts).unwrap().score(headline).unwrap();
        prop_assert!(after >= before - 1e-9, "{before} -> {after}");
    }

    #[test]
    fn trivial_baselines_score_full_on_themselves(n in 1usize..40) {
        let opts = MetricOptions::default();
        for kind in DependencyBaseline::ALL {
            let set = StructureSet::from_items(
                Provenance::new("t", 0),
                StructureKind::HeadList,
                [("s".to_string(), Structure::HeadList(trivial_dependency(n, kind)))],
            ).unwrap();
            prop_assert_eq!(triviality_profile(&set, &opts).unwrap().score(kind.name()), Some(100.0));
        }
    }

    #[test]
    fn branching_baselines_share_only_the_sentence(n in 2usize..40) {
        let left = trivial_constituency(n, Branching::Left).unwrap();
        let right = trivial_constituency(n, Branching::Right).unwrap();
        let ls = spans_from_text(&left.to_string());
        let rs = spans_from_text(&right.to_string());
        let shared: Vec<(usize, usize)> = ls.iter().copied().filter(|s| rs.contains(s)).collect();
        prop_assert_eq!(shared, vec![(0, n - 1)]);
        prop_assert_eq!(left == right, n == 2);
    }

    #[test]
    fn perturbations_keep_their_invariants(seed: u64, index in 0u64..100_000, lang in 0usize..4, sub in 0usize..3) {
        let (spec, oracle) = language(lang);
        let subtask = Subtask::ALL[sub];
        let seq = generate_sequence(&spec, &GenConfig::new(seed, 0, (4, 96)), index).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index);
        match perturb(subtask, &spec, &seq, &mut rng, &PerturbOptions::default()) {
            Ok(p) => {
                prop_assert!(simulate(oracle, &p.positive.tokens).is_some());
                prop_assert!(simulate(oracle, &p.negative).is_none());
                prop_assert_eq!(p.negative.len(), p.positive.len());
                prop_assert!(p.distance >= 2);
                if subtask == Subtask::BracketSwap {
                    let (i, j) = (p.positions[0], p.positions[1]);
                    prop_assert!(seq.gold_edges.contains(&(i, j)));
                    prop_assert_eq!(p.distance, j - i + 1);
                }
            }
            Err(e) => {
                let unsupported = spec.type_count() < 2 && subtask == Subtask::TypeMismatch;
                let gave_up = matches!(e, silmbench::minimal_pairs::PerturbError::NoRejectingPerturbation { .. });
                prop_assert!(unsupported || gave_up, "{e}");
            }
        }
    }

    #[test]
    fn pair_accuracy_ignores_monotone_rescaling(seed: u64, pairs in 1usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let metas: Vec<PairMeta> = (0..pairs)
            .map(|i| PairMeta {
                id: format!("p{i}"),
                subtask: ["a", "b"][i % 2].to_string(),
                distance: Some(rng.gen_range(2..30)),
            })
            .collect();
        let raw: Vec<(f64, f64)> = (0..pairs)
            .map(|_| (rng.gen_range(0..5) as f64 * 0.5, rng.gen_range(0..5) as f64 * 0.5))
            .collect();
        let transforms: [fn(f64) -> f64; 3] = [|x| x, |x| (x * 0.7).exp() * 3.0 + 1.0, |x| x.sqrt() + x * x * x];
        let mut reports = Vec::new();
        for f in transforms {
            let mut s = ScoreFile::new();
            for (m, &(p, n)) in metas.iter().zip(&raw) {
                s.insert(&m.id, Variant::Pos, f(p)).unwrap();
                s.insert(&m.id, Variant::Neg, f(n)).unwrap();
            }
            reports.push(score_benchmark(&metas, &s, &DistanceBuckets::default()).unwrap().scores);
        }
        prop_assert_eq!(&reports[0], &reports[1]);
        prop_assert_eq!(&reports[0], &reports[2]);
    }
}

#[test]
fn generation_is_deterministic() {
    let spec = LanguageSpec::standard(LanguageKind::DyckU);
    let cfg = GenConfig::new(7, 50_000, (2, 96));
    assert_eq!(generate(&spec, &cfg).unwrap(), generate(&spec, &cfg).unwrap());
}

#[test]
fn dyck_u_surface_rates() {
    let spec = LanguageSpec::standard(LanguageKind::DyckU);
    let corpus = generate(&spec, &GenConfig::new(3, 500_000, (2, 96))).unwrap();
    let pairs: usize = corpus.sequences.iter().map(|s| s.len() / 2).sum();
    assert!(pairs >= 100_000, "{pairs} pairs");

    let (mut open_u, mut close_u) = (0usize, 0usize);
    for s in &corpus.sequences {
        for t in &s.tokens {
            if t.ty == BracketType::Unspecified {
                if t.is_open() {
                    open_u += 1;
                } else {
                    close_u += 1;
                }
            }
        }
    }
    let (ro, rc) = (open_u as f64 / pairs as f64, close_u as f64 / pairs as f64);
    assert!((ro - 0.5).abs() <= 0.01, "open u rate {ro}");
    assert!((rc - 0.5).abs() <= 0.01, "close u rate {rc}");
    assert_eq!(unspecified_rates(&corpus.sequences), (ro, rc));

    // the typed pairs underneath never mix 1 and 2
    let typed_mix = corpus.sequences.iter().flat_map(|s: &Sequence| {
        s.gold_edges.iter().map(move |&(a, b)| (s.tokens[a].ty, s.tokens[b].ty))
    });
    for (a, b) in typed_mix {
        assert!(a == b || a == BracketType::Unspecified || b == BracketType::Unspecified);
    }
}
