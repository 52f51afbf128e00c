//! Frequency databases over head-word tuples.
//!
//! Every ingested tuple increments its full-tuple entry and each legal
//! sub-tuple entry of its table. Queries on absent keys return zero.

mod mask;
mod model;

use std::collections::HashMap;

use thiserror::Error;

use crate::corpus::{Kind, Normalization, TupleRecord};

pub use mask::{PatternMask, Slot, Table};
pub use model::{load_model, save_model, ModelError, MODEL_HEADER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountsError {
    #[error("mask {mask} is not a legal {table:?} mask")]
    IllegalMask { table: Table, mask: PatternMask },
    #[error("mask {mask} takes {expected} words, got {got}")]
    Arity { mask: PatternMask, expected: usize, got: usize },
    #[error("config {config} out of range for table {table:?}")]
    Config { table: Table, config: u8 },
    #[error("record {id}: word {word:?} is not normalized under policy '{policy}'")]
    Normalization { id: String, word: String, policy: Normalization },
    #[error("cannot merge databases with normalization '{0}' and '{1}'")]
    MixedNormalization(Normalization, Normalization),
    #[error("record {id}: {message}")]
    InvalidRecord { id: String, message: String },
}

/// Per-configuration counts for one key; the total is their sum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Evidence {
    counts: Vec<u64>,
}

impl Evidence {
    pub fn zero(num_configs: usize) -> Evidence {
        Evidence { counts: vec![0; num_configs] }
    }

    pub fn from_counts(counts: Vec<u64>) -> Evidence {
        Evidence { counts }
    }

    /// Count for the configuration at zero-based `index`.
    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(index).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    fn add(&mut self, other: &[u64]) {
        for (a, b) in self.counts.iter_mut().zip(other) {
            *a += b;
        }
    }
}

/// Words of a tuple indexed by [`Slot`]; unused slots are empty.
pub(crate) type SlotWords<'a> = [&'a str; 7];

fn key_for(mask: PatternMask, words: &SlotWords<'_>) -> String {
    let mut key = String::new();
    for (i, slot) in mask.slots().enumerate() {
        if i > 0 {
            key.push('\t');
        }
        key.push_str(words[slot as usize]);
    }
    key
}

pub(crate) fn slot_words<'a>(words: &[&'a str]) -> SlotWords<'a> {
    let mut out = [""; 7];
    for (o, w) in out.iter_mut().zip(words) {
        *o = w;
    }
    out
}

fn words_for_mask<'a>(mask: PatternMask, words: &[&'a str]) -> SlotWords<'a> {
    let mut out = [""; 7];
    for (slot, w) in mask.slots().zip(words) {
        out[slot as usize] = w;
    }
    out
}

/// Count tables for all kinds plus the 4-gram table. Immutable once built;
/// safe to share between reader threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyDatabase {
    normalization: Normalization,
    tables: HashMap<(Table, PatternMask), HashMap<String, Vec<u64>>>,
}

impl FrequencyDatabase {
    pub fn new(normalization: Normalization) -> FrequencyDatabase {
        FrequencyDatabase { normalization, tables: HashMap::new() }
    }

    /// Build from records. Multi-PP records also contribute the first-PP
    /// event they attest (to the kind-1 and 4-gram tables).
    pub fn build<'r, I>(records: I, normalization: Normalization) -> Result<FrequencyDatabase, CountsError>
    where
        I: IntoIterator<Item = &'r TupleRecord>,
    {
        let mut db = FrequencyDatabase::new(normalization);
        for r in records {
            db.ingest(r)?;
        }
        Ok(db)
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn ingest(&mut self, record: &TupleRecord) -> Result<(), CountsError> {
        record.validate().map_err(|e| CountsError::InvalidRecord { id: record.id.clone(), message: e.to_string() })?;
        for w in record.heads.words().chain(record.final_noun.as_deref()) {
            if !self.normalization.admits(w) {
                return Err(CountsError::Normalization {
                    id: record.id.clone(),
                    word: w.to_string(),
                    policy: self.normalization,
                });
            }
        }
        let h = &record.heads;
        fn opt(w: &Option<String>) -> &str {
            w.as_deref().unwrap_or("")
        }
        let words: SlotWords<'_> = [&h.v, &h.n1, &h.p1, opt(&h.n2), opt(&h.p2), opt(&h.n3), opt(&h.p3)];
        let kind = record.kind();
        self.add_full(Table::for_kind(kind), &words, record.config.index(), 1);

        if kind == Kind::One {
            if let Some(object) = record.final_noun.as_deref() {
                self.add_full(Table::Quad, &slot_words(&[&h.v, &h.n1, &h.p1, object]), record.config.index(), 1);
            }
        } else {
            let first = record.config.prefix(Kind::One).expect("prefix of a multi-PP config");
            self.add_full(Table::Pp1, &words, first.index(), 1);
            self.add_full(Table::Quad, &words, first.index(), 1);
        }
        Ok(())
    }

    /// Add `n` observations of a full tuple and all of its legal projections.
    pub(crate) fn add_full(&mut self, table: Table, words: &SlotWords<'_>, config_index: usize, n: u64) {
        let num_configs = table.num_configs();
        for mask in table.legal_masks() {
            let entry = self
                .tables
                .entry((table, mask))
                .or_default()
                .entry(key_for(mask, words))
                .or_insert_with(|| vec![0; num_configs]);
            entry[config_index] += n;
        }
    }

    pub(crate) fn lookup(&self, table: Table, mask: PatternMask, words: &SlotWords<'_>) -> Option<&[u64]> {
        self.tables.get(&(table, mask))?.get(&key_for(mask, words)).map(Vec::as_slice)
    }

    /// Pooled evidence over several masks of the same table.
    pub(crate) fn pooled(&self, table: Table, masks: &[PatternMask], words: &SlotWords<'_>) -> Evidence {
        let mut ev = Evidence::zero(table.num_configs());
        for &mask in masks {
            if let Some(c) = self.lookup(table, mask, words) {
                ev.add(c);
            }
        }
        ev
    }

    fn check_query(&self, table: Table, mask: PatternMask, words: &[&str]) -> Result<(), CountsError> {
        if !table.is_legal(mask) {
            return Err(CountsError::IllegalMask { table, mask });
        }
        if words.len() != mask.len() {
            return Err(CountsError::Arity { mask, expected: mask.len(), got: words.len() });
        }
        Ok(())
    }

    /// Per-configuration counts for `words` (given in slot order of `mask`).
    pub fn evidence(&self, table: Table, mask: PatternMask, words: &[&str]) -> Result<Evidence, CountsError> {
        self.check_query(table, mask, words)?;
        Ok(self.pooled(table, &[mask], &words_for_mask(mask, words)))
    }

    /// f(config, words): `config` is the 1-based configuration code.
    pub fn count(&self, table: Table, mask: PatternMask, words: &[&str], config: u8) -> Result<u64, CountsError> {
        if config == 0 || config as usize > table.num_configs() {
            return Err(CountsError::Config { table, config });
        }
        Ok(self.evidence(table, mask, words)?.count(config as usize - 1))
    }

    /// f(words), summed over configurations.
    pub fn total(&self, table: Table, mask: PatternMask, words: &[&str]) -> Result<u64, CountsError> {
        Ok(self.evidence(table, mask, words)?.total())
    }

    /// Full-tuple entries as (table, words, per-config counts).
    pub fn full_tuples(&self) -> impl Iterator<Item = (Table, Vec<&str>, &[u64])> {
        self.tables.iter().filter(|((table, mask), _)| table.full_mask() == *mask).flat_map(|((table, _), entries)| {
            entries.iter().map(move |(key, counts)| (*table, key.split('\t').collect(), counts.as_slice()))
        })
    }

    /// Every stored (table, mask, key) with its counts.
    pub fn entries(&self) -> impl Iterator<Item = (Table, PatternMask, Vec<&str>, &[u64])> {
        self.tables.iter().flat_map(|((table, mask), entries)| {
            entries.iter().map(move |(key, counts)| (*table, *mask, key.split('\t').collect(), counts.as_slice()))
        })
    }

    /// Recompute every sub-mask table from the full tuples and compare.
    pub fn projections_consistent(&self) -> bool {
        let mut rebuilt = FrequencyDatabase::new(self.normalization);
        for (table, words, counts) in self.full_tuples() {
            let words = words_for_mask(table.full_mask(), &words);
            for (i, &n) in counts.iter().enumerate() {
                if n > 0 {
                    rebuilt.add_full(table, &words, i, n);
                }
            }
        }
        rebuilt == *self
    }

    /// Fold another database into this one.
    pub fn merge(&mut self, other: &FrequencyDatabase) -> Result<(), CountsError> {
        if other.normalization != self.normalization {
            return Err(CountsError::MixedNormalization(self.normalization, other.normalization));
        }
        for ((table, mask), entries) in &other.tables {
            let target = self.tables.entry((*table, *mask)).or_default();
            for (key, counts) in entries {
                let slot = target.entry(key.clone()).or_insert_with(|| vec![0; counts.len()]);
                for (a, b) in slot.iter_mut().zip(counts) {
                    *a += b;
                }
            }
        }
        Ok(())
    }
}

/// Build a database from training records.
pub fn build_database(records: &[TupleRecord], normalization: Normalization) -> Result<FrequencyDatabase, CountsError> {
    FrequencyDatabase::build(records, normalization)
}
