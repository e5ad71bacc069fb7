//! Streaming readers and writers for record files. Paths ending in `.gz`
//! are gzip-compressed.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::marker::PhantomData;
use std::path::Path;

use flate2::read::MultiGzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::de::DeserializeOwned;
use serde::Serialize;

use super::RecordError;

fn is_gz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

pub fn open_reader(path: &Path) -> io::Result<Box<dyn BufRead>> {
    let file = File::open(path)?;
    Ok(if is_gz(path) {
        Box::new(BufReader::new(MultiGzDecoder::new(file)))
    } else {
        Box::new(BufReader::new(file))
    })
}

pub fn create_writer(path: &Path) -> io::Result<Box<dyn Write>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let file = File::create(path)?;
    Ok(if is_gz(path) {
        Box::new(BufWriter::new(GzEncoder::new(file, Compression::default())))
    } else {
        Box::new(BufWriter::new(file))
    })
}

/// One record per line, serialized compactly.
pub fn to_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("records serialize")
}

/// Iterates `(line_number, record)` over a line-delimited stream. Blank
/// lines are skipped; line numbers start at 1.
pub struct Records<T, R> {
    reader: R,
    line: usize,
    buf: String,
    _t: PhantomData<T>,
}

impl<T: DeserializeOwned, R: BufRead> Records<T, R> {
    pub fn new(reader: R) -> Self {
        Records {
            reader,
            line: 0,
            buf: String::new(),
            _t: PhantomData,
        }
    }
}

impl<T: DeserializeOwned, R: BufRead> Iterator for Records<T, R> {
    type Item = (usize, Result<T, RecordError>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            self.line += 1;
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some((self.line, Err(RecordError::Io(e.to_string())))),
            }
            let text = self.buf.trim_end_matches(['\n', '\r']);
            if text.trim().is_empty() {
                continue;
            }
            let parsed = serde_json::from_str(text).map_err(|e| RecordError::Json(e.to_string()));
            return Some((self.line, parsed));
        }
    }
}

pub fn records<T: DeserializeOwned>(path: &Path) -> io::Result<Records<T, Box<dyn BufRead>>> {
    Ok(Records::new(open_reader(path)?))
}

/// Reads every record, failing on the first malformed line.
pub fn read_records<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, RecordError> {
    let iter = records(path).map_err(|e| RecordError::Io(format!("{}: {e}", path.display())))?;
    iter.map(|(line, r)| r.map_err(|e| e.at(path, line))).collect()
}

pub fn write_records<'a, T: Serialize + 'a>(path: &Path, items: impl IntoIterator<Item = &'a T>) -> io::Result<()> {
    let mut w = create_writer(path)?;
    for item in items {
        w.write_all(to_line(item).as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::ScoreRecord;
    use crate::minimal_pairs::Variant;

    #[test]
    fn gzip_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let recs = vec![
            ScoreRecord { id: "a".into(), variant: Variant::Pos, score: 0.1 + 0.2 },
            ScoreRecord { id: "a".into(), variant: Variant::Neg, score: 3.0 },
        ];
        for name in ["s.jsonl", "s.jsonl.gz"] {
            let p = dir.path().join(name);
            write_records(&p, &recs).unwrap();
            let back: Vec<ScoreRecord> = read_records(&p).unwrap();
            assert_eq!(back, recs);
        }
        let plain = std::fs::read_to_string(dir.path().join("s.jsonl")).unwrap();
        assert!(plain.contains("0.30000000000000004"));
    }

    #[test]
    fn line_numbers_skip_blank_lines() {
        let text = "{\"id\":\"a\",\"variant\":\"pos\",\"score\":1}\n\n{\"id\":\n";
        let out: Vec<(usize, bool)> = Records::<ScoreRecord, _>::new(text.as_bytes())
            .map(|(l, r)| (l, r.is_ok()))
            .collect();
        assert_eq!(out, vec![(1, true), (3, false)]);
    }
}
