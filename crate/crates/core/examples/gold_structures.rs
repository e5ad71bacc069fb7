//! Gold dependency edges and constituency tree of a bracket string.

use silmbench::formal_lang::{gold_constituency, gold_dependencies, parse_tokens, LanguageKind, LanguageSpec};
use silmbench::structures::is_projective;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 64 });
    let tokens = parse_tokens("(23 (4 (40 )40 )4 (51 )51 )23")?;
    let edges = gold_dependencies(&spec, &tokens)?;
    let tree = gold_constituency(&spec, &tokens)?;
    println!("tokens: {}", spec.render(&tokens));
    println!("edges:  {edges:?} (projective: {})", is_projective(&edges));
    println!("tree:   {tree}");
    for span in tree.spans() {
        println!("  span {}..={} width {}", span.start, span.end, span.width());
    }
    Ok(())
}
