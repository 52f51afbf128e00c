//! Extracted VP instances and the tab-separated tuple file.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::config::{ConfigError, Configuration, Kind};

pub const TUPLE_HEADER: &str = "ppbackoff-tuples v1";

/// Word normalization applied at extraction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// Case-fold to lowercase.
    #[default]
    Lower,
    /// Keep tokens as they appear.
    Preserve,
}

impl Normalization {
    pub fn apply(self, word: &str) -> String {
        match self {
            Normalization::Lower => word.to_lowercase(),
            Normalization::Preserve => word.to_string(),
        }
    }

    pub fn admits(self, word: &str) -> bool {
        match self {
            Normalization::Lower => word.to_lowercase() == word,
            Normalization::Preserve => true,
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Lower => "lower",
            Normalization::Preserve => "none",
        })
    }
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Normalization, String> {
        match s {
            "lower" => Ok(Normalization::Lower),
            "none" => Ok(Normalization::Preserve),
            other => Err(format!("unknown normalization '{other}' (expected lower|none)")),
        }
    }
}

/// Head words of a VP: the verb, then alternating noun and preposition heads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Heads {
    pub v: String,
    pub n1: String,
    pub p1: String,
    pub n2: Option<String>,
    pub p2: Option<String>,
    pub n3: Option<String>,
    pub p3: Option<String>,
}

impl Heads {
    pub fn pp1(v: &str, n1: &str, p1: &str) -> Heads {
        Heads { v: v.into(), n1: n1.into(), p1: p1.into(), n2: None, p2: None, n3: None, p3: None }
    }

    pub fn pp2(v: &str, n1: &str, p1: &str, n2: &str, p2: &str) -> Heads {
        Heads { n2: Some(n2.into()), p2: Some(p2.into()), ..Heads::pp1(v, n1, p1) }
    }

    pub fn pp3(words: [&str; 7]) -> Heads {
        let [v, n1, p1, n2, p2, n3, p3] = words;
        Heads { n3: Some(n3.into()), p3: Some(p3.into()), ..Heads::pp2(v, n1, p1, n2, p2) }
    }

    /// The kind implied by which optional words are present, if consistent.
    pub fn kind(&self) -> Option<Kind> {
        match (&self.n2, &self.p2, &self.n3, &self.p3) {
            (None, None, None, None) => Some(Kind::One),
            (Some(_), Some(_), None, None) => Some(Kind::Two),
            (Some(_), Some(_), Some(_), Some(_)) => Some(Kind::Three),
            _ => None,
        }
    }

    /// The `k`-th noun head (1-based).
    pub fn noun(&self, k: usize) -> Option<&str> {
        match k {
            1 => Some(&self.n1),
            2 => self.n2.as_deref(),
            3 => self.n3.as_deref(),
            _ => None,
        }
    }

    /// The `k`-th preposition (1-based).
    pub fn preposition(&self, k: usize) -> Option<&str> {
        match k {
            1 => Some(&self.p1),
            2 => self.p2.as_deref(),
            3 => self.p3.as_deref(),
            _ => None,
        }
    }

    /// Heads of the first `kind` PPs.
    pub fn project(&self, kind: Kind) -> Heads {
        let keep2 = kind >= Kind::Two;
        let keep3 = kind >= Kind::Three;
        Heads {
            v: self.v.clone(),
            n1: self.n1.clone(),
            p1: self.p1.clone(),
            n2: self.n2.clone().filter(|_| keep2),
            p2: self.p2.clone().filter(|_| keep2),
            n3: self.n3.clone().filter(|_| keep3),
            p3: self.p3.clone().filter(|_| keep3),
        }
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        [Some(self.v.as_str()), Some(&self.n1), Some(&self.p1)]
            .into_iter()
            .flatten()
            .chain([&self.n2, &self.p2, &self.n3, &self.p3].into_iter().filter_map(|w| w.as_deref()))
    }
}

/// One extracted VP with its gold configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleRecord {
    pub id: String,
    pub config: Configuration,
    pub heads: Heads,
    /// Object of the last preposition; only the 4-gram estimator reads it.
    pub final_noun: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("head words do not match kind {0}")]
    KindMismatch(Kind),
    #[error("invalid word {0:?}: words must be non-empty and free of tabs and newlines")]
    BadWord(String),
    #[error("invalid id {0:?}")]
    BadId(String),
}

fn valid_word(w: &str) -> bool {
    !w.is_empty() && !w.contains(['\t', '\n', '\r'])
}

impl TupleRecord {
    pub fn kind(&self) -> Kind {
        self.config.kind()
    }

    pub fn validate(&self) -> Result<(), RecordError> {
        if !valid_word(&self.id) {
            return Err(RecordError::BadId(self.id.clone()));
        }
        if self.heads.kind() != Some(self.kind()) {
            return Err(RecordError::KindMismatch(self.kind()));
        }
        for w in self.heads.words().chain(self.final_noun.as_deref()) {
            if !valid_word(w) {
                return Err(RecordError::BadWord(w.to_string()));
            }
        }
        Ok(())
    }

    /// View of this VP restricted to its first `kind` PPs. The object of the
    /// last retained preposition becomes the final noun.
    pub fn project(&self, kind: Kind) -> Option<TupleRecord> {
        let config = self.config.prefix(kind)?;
        let final_noun = if kind == self.kind() {
            self.final_noun.clone()
        } else {
            self.heads.noun(kind.pp_count() + 1).map(str::to_string)
        };
        Some(TupleRecord { id: self.id.clone(), config, heads: self.heads.project(kind), final_noun })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleFileError {
    #[error("line 1: missing or unsupported header (expected '{TUPLE_HEADER}')")]
    Header,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: field 'config': {source}")]
    ConfigRange { line: usize, source: ConfigError },
    #[error("line {line}: {source}")]
    Record { line: usize, source: RecordError },
    #[error("file is not valid UTF-8")]
    Utf8,
}

/// Serialize records; `read_tuple_file` inverts this exactly.
pub fn write_tuple_file(records: &[TupleRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(TUPLE_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&record_line(r, true));
        out.push('\n');
    }
    out
}

fn record_line(r: &TupleRecord, with_config: bool) -> String {
    let opt = |w: &Option<String>| w.clone().unwrap_or_default();
    let h = &r.heads;
    let mut fields = vec![r.id.clone(), r.kind().to_string()];
    if with_config {
        fields.push(r.config.to_string());
    }
    fields.extend([
        h.v.clone(),
        h.n1.clone(),
        h.p1.clone(),
        opt(&h.n2),
        opt(&h.p2),
        opt(&h.n3),
        opt(&h.p3),
        opt(&r.final_noun),
    ]);
    fields.join("\t")
}

pub fn read_tuple_file(bytes: &[u8]) -> Result<Vec<TupleRecord>, TupleFileError> {
    let text = std::str::from_utf8(bytes).map_err(|_| TupleFileError::Utf8)?;
    let mut lines = text.lines();
    if lines.next() != Some(TUPLE_HEADER) {
        return Err(TupleFileError::Header);
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if line.is_empty() {
            continue;
        }
        records.push(parse_record_line(line, lineno)?);
    }
    Ok(records)
}

/// A query for prediction: a tuple line without the config column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub id: String,
    pub kind: Kind,
    pub heads: Heads,
    pub final_noun: Option<String>,
}

/// Parse query lines (`id kind v n1 p1 n2 p2 n3 p3 final_noun`). Blank lines,
/// `#` comments and a leading tuple-file header are skipped.
pub fn read_queries(text: &str) -> Result<Vec<Query>, TupleFileError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() || line.starts_with('#') || (lineno == 1 && line == TUPLE_HEADER) {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 10 {
            return Err(malformed(lineno, format!("expected 10 tab-separated fields, found {}", fields.len())));
        }
        let kind = parse_kind(fields[1], lineno)?;
        let (heads, final_noun) = parse_words(&fields[2..], lineno)?;
        if heads.kind() != Some(kind) {
            return Err(TupleFileError::Record { line: lineno, source: RecordError::KindMismatch(kind) });
        }
        out.push(Query { id: fields[0].to_string(), kind, heads, final_noun });
    }
    Ok(out)
}

pub fn write_query_line(r: &TupleRecord) -> String {
    record_line(r, false)
}

fn malformed(line: usize, message: impl Into<String>) -> TupleFileError {
    TupleFileError::Malformed { line, message: message.into() }
}

fn parse_kind(field: &str, line: usize) -> Result<Kind, TupleFileError> {
    field
        .parse::<usize>()
        .ok()
        .and_then(Kind::from_pp_count)
        .ok_or_else(|| malformed(line, format!("field 'kind': expected 1, 2 or 3, found {field:?}")))
}

fn parse_words(fields: &[&str], line: usize) -> Result<(Heads, Option<String>), TupleFileError> {
    let opt = |s: &str| (!s.is_empty()).then(|| s.to_string());
    for (name, value) in ["v", "n1", "p1"].iter().zip(fields) {
        if value.is_empty() {
            return Err(malformed(line, format!("field '{name}' is empty")));
        }
    }
    let heads = Heads {
        v: fields[0].to_string(),
        n1: fields[1].to_string(),
        p1: fields[2].to_string(),
        n2: opt(fields[3]),
        p2: opt(fields[4]),
        n3: opt(fields[5]),
        p3: opt(fields[6]),
    };
    Ok((heads, opt(fields[7])))
}

fn parse_record_line(line: &str, lineno: usize) -> Result<TupleRecord, TupleFileError> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 11 {
        return Err(malformed(lineno, format!("expected 11 tab-separated fields, found {}", fields.len())));
    }
    let kind = parse_kind(fields[1], lineno)?;
    let code: u8 =
        fields[2].parse().map_err(|_| malformed(lineno, format!("field 'config': not an integer: {:?}", fields[2])))?;
    let config =
        Configuration::new(kind, code).map_err(|source| TupleFileError::ConfigRange { line: lineno, source })?;
    let (heads, final_noun) = parse_words(&fields[3..], lineno)?;
    let record = TupleRecord { id: fields[0].to_string(), config, heads, final_noun };
    record.validate().map_err(|source| TupleFileError::Record { line: lineno, source })?;
    Ok(record)
}
