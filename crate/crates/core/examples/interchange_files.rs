//! Writes corpus, structure and score records, reads them back, and
//! validates them. Files ending in .gz are compressed.

use silmbench::formal_lang::{generate, GenConfig, LanguageKind, LanguageSpec};
use silmbench::metrics::{Provenance, Structure};
use silmbench::structures::{trivial_constituency, Branching};
use silmbench::workbench::io::{read_records, write_records};
use silmbench::workbench::{validate_file, CorpusRecord, MatrixEncoding, Schema, StructureRecord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("silmbench-interchange");
    let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 8 });
    let corpus = generate(&spec, &GenConfig::new(3, 5_000, (2, 32)))?;

    let records: Vec<CorpusRecord> = corpus.sequences.iter().map(CorpusRecord::from_sequence).collect();
    let corpus_path = dir.join("corpus.jsonl.gz");
    write_records(&corpus_path, &records)?;
    let back: Vec<CorpusRecord> = read_records(&corpus_path)?;
    assert_eq!(back, records);

    let prov = Provenance::new("right-branching", 0);
    let structures: Vec<StructureRecord> = corpus
        .sequences
        .iter()
        .map(|s| {
            let tree = trivial_constituency(s.len(), Branching::Right).expect("non-empty");
            StructureRecord::from_structure(&s.id, &Structure::Tree(tree), &prov, MatrixEncoding::Dense)
        })
        .collect();
    let structure_path = dir.join("structures.jsonl");
    write_records(&structure_path, &structures)?;

    for (path, schema) in [(&corpus_path, Schema::Corpus), (&structure_path, Schema::Structure)] {
        let report = validate_file(path, schema)?;
        println!("{}: {} of {} valid", path.display(), report.valid, report.records);
    }
    Ok(())
}
