//! Converts binary trees to GEN/COMP action sequences and back.

use silmbench::structures::{actions_to_tree, tree_to_actions, ActionSequence, ConstituencyTree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["(0 1)", "((0 1) 2)", "((0 1) ((2 3) 4))"] {
        let tree: ConstituencyTree = text.parse()?;
        let actions = tree_to_actions(&tree)?;
        let names: Vec<String> = actions.0.iter().map(|a| a.to_string()).collect();
        println!("{text:20} {}", names.join(" "));
        assert_eq!(actions_to_tree(&actions)?, tree);
    }
    let bad: ActionSequence = serde_json::from_str(r#"["GEN", "COMP"]"#)?;
    println!("[GEN, COMP] -> {}", actions_to_tree(&bad).unwrap_err());
    Ok(())
}
