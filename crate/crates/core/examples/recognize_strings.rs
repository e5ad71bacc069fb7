//! Runs the recognizer on a few strings, and counts Dyck-1 strings by length.

use silmbench::formal_lang::{enumerate, parse_tokens, recognize, LanguageKind, LanguageSpec, Recognition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dyck64 = LanguageSpec::standard(LanguageKind::DyckK { k: 64 });
    let dycku = LanguageSpec::standard(LanguageKind::DyckU);
    let cases = [
        (&dyck64, "(23 (4 (40 )40 )4 (51 )51 )23"),
        (&dyck64, "(23 (4 )40 (40 )4 (51 )51 )23"),
        (&dycku, "(u (2 (u )2 )u (1 )1 )1"),
        (&dycku, "(1 )2"),
        (&dycku, "(1 )u"),
    ];
    for (spec, text) in cases {
        match recognize(spec, &parse_tokens(text)?) {
            Recognition::Accept { depth } => println!("{:7} accept depth {depth}: {text}", spec.name()),
            Recognition::Reject(why) => println!("{:7} reject ({why}): {text}", spec.name()),
        }
    }

    let dyck1 = LanguageSpec::standard(LanguageKind::DyckK { k: 1 });
    let counts: Vec<usize> = (2..=10).step_by(2).map(|n| enumerate(&dyck1, n).len()).collect();
    println!("dyck-1 strings of length 2..10: {counts:?}");
    Ok(())
}
