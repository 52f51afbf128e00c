//! Model file: full-tuple counts only, sorted for byte-reproducible output.
//!
//! ```text
//! ppbackoff-model v1
//! normalization=lower
//! 1<TAB>2<TAB>read<TAB>article<TAB>about<TAB>1
//! checksum=<sha256 of everything above>
//! ```

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{slot_words, FrequencyDatabase, Table};
use crate::corpus::{Configuration, Normalization};

pub const MODEL_HEADER: &str = "ppbackoff-model v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line 1: unsupported model version (expected '{MODEL_HEADER}')")]
    Version,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: negative count {value}")]
    NegativeCount { line: usize, value: String },
    #[error("line {line}: checksum mismatch")]
    Checksum { line: usize },
    #[error("model file is truncated: missing checksum line")]
    MissingChecksum,
    #[error("model file is not valid UTF-8")]
    Utf8,
}

fn malformed(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Malformed { line, message: message.into() }
}

fn body(db: &FrequencyDatabase) -> String {
    let mut lines: Vec<String> = db
        .full_tuples()
        .flat_map(|(table, words, counts)| {
            let kind_tag = table.tag();
            counts.iter().enumerate().filter(|(_, &n)| n > 0).map(move |(i, n)| {
                let mut fields = vec![kind_tag.to_string(), (i + 1).to_string()];
                fields.extend(words.iter().map(|w| w.to_string()));
                fields.push(n.to_string());
                fields.join("\t")
            })
        })
        .collect();
    lines.sort();
    let mut out = format!("{MODEL_HEADER}\nnormalization={}\n", db.normalization());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

impl FrequencyDatabase {
    /// Hash of the saved counts; identical training data gives identical
    /// fingerprints regardless of record order.
    pub fn fingerprint(&self) -> String {
        digest(&body(self))
    }
}

pub fn save_model(db: &FrequencyDatabase) -> String {
    let mut text = body(db);
    let sum = digest(&text);
    text.push_str("checksum=");
    text.push_str(&sum);
    text.push('\n');
    text
}

pub fn load_model(bytes: &[u8]) -> Result<FrequencyDatabase, ModelError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ModelError::Utf8)?;
    // (byte offset of line start, line without terminator)
    let mut lines = text.split_inclusive('\n').scan(0, |offset, l| {
        let start = *offset;
        *offset += l.len();
        Some((start, l.trim_end_matches('\n')))
    });

    if lines.next().map(|(_, l)| l) != Some(MODEL_HEADER) {
        return Err(ModelError::Version);
    }
    let normalization = lines
        .next()
        .and_then(|(_, l)| l.strip_prefix("normalization="))
        .ok_or_else(|| malformed(2, "expected 'normalization=<lower|none>'"))?
        .parse::<Normalization>()
        .map_err(|e| malformed(2, e))?;

    let mut db = FrequencyDatabase::new(normalization);
    let mut previous: Option<&str> = None;
    for (lineno, (start, line)) in (3..).zip(lines.by_ref()) {
        if let Some(sum) = line.strip_prefix("checksum=") {
            if digest(&text[..start]) != sum {
                return Err(ModelError::Checksum { line: lineno });
            }
            if lines.any(|(_, l)| !l.is_empty()) {
                return Err(malformed(lineno + 1, "content after checksum line"));
            }
            return Ok(db);
        }
        if previous.is_some_and(|p| p >= line) {
            return Err(malformed(lineno, "lines not in sorted order or duplicated"));
        }
        parse_count_line(&mut db, line, lineno)?;
        previous = Some(line);
    }
    Err(ModelError::MissingChecksum)
}

fn parse_count_line(db: &mut FrequencyDatabase, line: &str, lineno: usize) -> Result<(), ModelError> {
    let fields: Vec<&str> = line.split('\t').collect();
    let table =
        fields.first().and_then(|t| Table::from_tag(t)).ok_or_else(|| malformed(lineno, "unknown table tag"))?;
    let arity = table.full_mask().len();
    if fields.len() != arity + 3 {
        return Err(malformed(lineno, format!("expected {} fields, found {}", arity + 3, fields.len())));
    }
    let code: u8 = fields[1].parse().map_err(|_| malformed(lineno, "config is not an integer"))?;
    let config = Configuration::new(table.config_kind(), code).map_err(|e| malformed(lineno, e.to_string()))?;
    let raw = fields[arity + 2];
    if raw.starts_with('-') {
        return Err(ModelError::NegativeCount { line: lineno, value: raw.to_string() });
    }
    let n: u64 = raw.parse().map_err(|_| malformed(lineno, format!("bad count {raw:?}")))?;
    if n == 0 {
        return Err(malformed(lineno, "zero count"));
    }
    let words = &fields[2..arity + 2];
    for w in words {
        if w.is_empty() {
            return Err(malformed(lineno, "empty word"));
        }
        if !db.normalization().admits(w) {
            return Err(malformed(lineno, format!("word {w:?} violates normalization '{}'", db.normalization())));
        }
    }
    // full-mask slots are a prefix of the slot order for every table
    db.add_full(table, &slot_words(words), config.index(), n);
    Ok(())
}
