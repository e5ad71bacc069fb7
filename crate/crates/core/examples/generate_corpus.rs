//! Generates a small Dyck-u corpus, splits it, and reports surface statistics.
//!
//! ```bash
//! cargo run --release --example generate_corpus
//! ```

use silmbench::formal_lang::{generate, make_splits, unspecified_rates, GenConfig, LanguageKind, LanguageSpec, SplitConfig, SplitSize};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = LanguageSpec::standard(LanguageKind::DyckU);
    let train = generate(&spec, &GenConfig::new(7, 200_000, (2, spec.max_len_train)))?;
    let long = generate(
        &spec,
        &GenConfig::new(8, 20_000, (spec.max_len_train + 1, spec.max_len_gen)).with_id_prefix("dyck-u-gen"),
    )?;
    println!("{}: {} sequences, {} tokens", spec.name(), train.len(), train.token_count());

    let (open_u, close_u) = unspecified_rates(&train.sequences);
    println!("open brackets rendered u: {open_u:.4}, close: {close_u:.4}");

    let mut all = train.sequences;
    all.extend(long.sequences);
    let cfg = SplitConfig {
        seed: 7,
        validation: SplitSize::Fraction(0.01),
        generalization: SplitSize::Tokens(20_000),
    };
    let splits = make_splits(&all, &spec, &cfg);
    let (t, v, g) = splits.token_counts();
    println!("train {t} tokens, validation {v}, length generalization {g}");
    println!("first sequence: {}", spec.render(&splits.train[0].tokens));
    Ok(())
}
