//! Bracketing precision, recall and F against a gold tree, with and without
//! the whole-sentence span.

use silmbench::metrics::{bracket_prf, BracketOptions};
use silmbench::structures::{binarize, trivial_constituency, Branching, ConstituencyTree, Factoring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gold: ConstituencyTree = "(0 (1 (2 3) 4) (5 6) 7)".parse()?;
    let pred: ConstituencyTree = "((0 1) ((2 3) 4) ((5 6) 7))".parse()?;
    for exclude in [true, false] {
        let opts = BracketOptions { exclude_whole_sentence: exclude };
        let prf = bracket_prf(&pred, &gold, opts)?;
        println!(
            "exclude whole sentence {exclude}: P {:.1} R {:.1} F {:.1}",
            prf.precision, prf.recall, prf.f
        );
    }
    for branch in Branching::ALL {
        let base = trivial_constituency(gold.leaf_count(), branch)?;
        let f = bracket_prf(&base, &gold, BracketOptions::default())?.f;
        println!("{:16} {base}  F {f:.1}", branch.name());
    }
    println!("left-factored gold:  {}", binarize(&gold, Factoring::Left));
    println!("right-factored gold: {}", binarize(&gold, Factoring::Right));
    Ok(())
}
