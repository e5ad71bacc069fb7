//! Decodes a head matrix, scores it against gold bracket edges, and
//! compares it with the trivial baselines.

use silmbench::formal_lang::{gold_dependencies, parse_tokens, LanguageKind, LanguageSpec};
use silmbench::metrics::{uas, uas_undirected};
use silmbench::structures::{decode_heads, is_connected_tree, trivial_dependency, DependencyBaseline, HeadMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 2 });
    let tokens = parse_tokens("(1 (2 )2 )1")?;
    let gold = gold_dependencies(&spec, &tokens)?;

    // BOS, 4 tokens, EOS
    let h = HeadMatrix::from_rows(
        vec![
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.5, 0.0, 0.1, 0.1, 0.2, 0.1],
            vec![0.1, 0.2, 0.0, 0.6, 0.1, 0.0],
            vec![0.0, 0.1, 0.8, 0.0, 0.1, 0.0],
            vec![0.1, 0.7, 0.1, 0.1, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        ],
        true,
        true,
    )?;
    let heads = decode_heads(&h);
    println!("heads: {:?}", heads.heads());
    println!("connected tree: {}", is_connected_tree(&heads));
    println!("undirected UAS vs gold edges {gold:?}: {:.1}", uas_undirected(&heads, &gold, None)?);
    for kind in DependencyBaseline::ALL {
        let base = trivial_dependency(heads.len(), kind);
        println!("UAS vs {:5} baseline: {:.1}", kind.name(), uas(&heads, &base, None)?);
    }
    Ok(())
}
