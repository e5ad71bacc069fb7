//! Confidence diagnostics of head matrices: a peaked matrix against a
//! uniform one.

use silmbench::metrics::{head_diagnostics, DiagnosticOptions, Provenance, Structure, StructureKind, StructureSet};
use silmbench::structures::HeadMatrix;

fn matrix(n: usize, peak: f64) -> HeadMatrix {
    let rows = (0..n)
        .map(|i| {
            let target = (i + 1) % n;
            let rest = (1.0 - peak) / (n - 2) as f64;
            (0..n)
                .map(|j| if j == i { 0.0 } else if j == target { peak } else { rest })
                .collect()
        })
        .collect();
    HeadMatrix::from_rows(rows, false, false).expect("valid matrix")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let uniform = 1.0 / (n - 1) as f64;
    for (name, peak) in [("peaked", 0.9), ("uniform", uniform)] {
        let items = (0..4).map(|i| (format!("s{i}"), Structure::HeadMatrix(matrix(n, peak))));
        let set = StructureSet::from_items(Provenance::new(name, 0), StructureKind::HeadMatrix, items)?;
        print!("{}", head_diagnostics(&set, &DiagnosticOptions::default())?.to_text());
    }
    println!("ln 7 = {:.6}", 7f64.ln());
    Ok(())
}
