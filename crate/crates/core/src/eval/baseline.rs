//! Lexically blind baselines: chance and most-frequent configuration.

use std::fmt::Write as _;

use thiserror::Error;

use super::report::{format_percent, Tally};
use crate::corpus::{Configuration, Kind, TupleRecord};
use crate::estimator::argmax_config;

/// Configuration frequencies for one kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigHistogram {
    pub kind: Kind,
    pub counts: Vec<u64>,
}

impl ConfigHistogram {
    pub fn new(kind: Kind) -> ConfigHistogram {
        ConfigHistogram { kind, counts: vec![0; kind.num_configs() as usize] }
    }

    pub fn from_counts(kind: Kind, counts: &[u64]) -> ConfigHistogram {
        assert_eq!(counts.len(), kind.num_configs() as usize, "one count per configuration");
        ConfigHistogram { kind, counts: counts.to_vec() }
    }

    pub fn add(&mut self, config: Configuration) {
        assert_eq!(config.kind(), self.kind);
        self.counts[config.index()] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Most frequent configuration, ties going to the lower attachment.
    pub fn most_frequent(&self) -> Option<Configuration> {
        (self.total() > 0).then(|| argmax_config(self.kind, &self.counts))
    }
}

/// Accuracy of guessing uniformly among the kind's configurations.
pub fn baseline_chance(kind: Kind) -> f64 {
    1.0 / kind.num_configs() as f64
}

/// Correct count when always predicting `train`'s most frequent
/// configuration on items distributed as `test`.
pub fn most_frequent_tally(train: &ConfigHistogram, test: &ConfigHistogram) -> Option<(Configuration, Tally)> {
    let guess = train.most_frequent()?;
    Some((guess, Tally::new(test.total(), test.counts[guess.index()])))
}

/// Training histograms as the database sees them: every VP contributes its
/// first-PP event to kind 1; kinds 2 and 3 count their own records.
pub fn training_histograms(train: &[TupleRecord]) -> [ConfigHistogram; 3] {
    let mut hist = Kind::ALL.map(ConfigHistogram::new);
    for r in train {
        hist[r.kind().index()].add(r.config);
        if r.kind() != Kind::One {
            hist[0].add(r.config.prefix(Kind::One).expect("first-PP prefix"));
        }
    }
    hist
}

pub fn test_histograms(test: &[TupleRecord]) -> [ConfigHistogram; 3] {
    let mut hist = Kind::ALL.map(ConfigHistogram::new);
    for r in test {
        hist[r.kind().index()].add(r.config);
    }
    hist
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineRow {
    pub kind: Kind,
    pub chance: f64,
    /// Most frequent training configuration and its score on the test items.
    pub most_frequent: Option<(Configuration, Tally)>,
}

/// Most-frequent and chance baselines per kind.
pub fn baseline_most_frequent(train: &[TupleRecord], test: &[TupleRecord]) -> Vec<BaselineRow> {
    let train_h = training_histograms(train);
    let test_h = test_histograms(test);
    Kind::ALL
        .iter()
        .map(|&kind| BaselineRow {
            kind,
            chance: baseline_chance(kind),
            most_frequent: most_frequent_tally(&train_h[kind.index()], &test_h[kind.index()]),
        })
        .collect()
}

pub fn render_baselines(rows: &[BaselineRow]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<16}", "");
    for r in rows {
        let _ = write!(out, "| {:>14} ", format!("PP{}({})", r.kind, r.kind.num_configs()));
    }
    out.push('\n');
    let mut line = |name: &str, cell: &dyn Fn(&BaselineRow) -> String| {
        let _ = write!(out, "{name:<16}");
        for r in rows {
            let _ = write!(out, "| {:>14} ", cell(r));
        }
        out.push('\n');
    };
    line("Total", &|r| r.most_frequent.map_or("0".into(), |(_, t)| t.total.to_string()));
    line("Most Frequent", &|r| r.most_frequent.map_or("-".into(), |(c, t)| format!("{}({})", t.correct, c)));
    line("Percent Correct", &|r| format_percent(r.most_frequent.and_then(|(_, t)| t.accuracy())));
    line("Chance", &|r| format_percent(Some(r.chance)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountTableError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("kind {kind}: counts sum to {sum}, declared total {declared}")]
    Sum { kind: Kind, sum: u64, declared: u64 },
    #[error("kind {kind}: config {code} missing")]
    Missing { kind: Kind, code: u8 },
}

/// Per-kind configuration counts with declared totals, read from lines
/// `kind<TAB>config<TAB>count` and `total<TAB>kind<TAB>count`. `#` starts a
/// comment. Every kind present must list all of its configurations and
/// match its declared total.
pub fn parse_count_table(text: &str) -> Result<Vec<ConfigHistogram>, CountTableError> {
    let mut hist: [Option<ConfigHistogram>; 3] = [None, None, None];
    let mut declared: [Option<u64>; 3] = [None; 3];
    let mut seen: Vec<(Kind, u8)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let bad = |m: String| CountTableError::Malformed { line, message: m };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let f: Vec<&str> = content.split_whitespace().collect();
        if f.len() != 3 {
            return Err(bad(format!("expected 3 fields, found {}", f.len())));
        }
        let kind_of =
            |s: &str| s.parse().ok().and_then(Kind::from_pp_count).ok_or_else(|| bad(format!("bad kind {s:?}")));
        let n: u64 = f[2].parse().map_err(|_| bad(format!("bad count {:?}", f[2])))?;
        if f[0] == "total" {
            declared[kind_of(f[1])?.index()] = Some(n);
            continue;
        }
        let kind = kind_of(f[0])?;
        let code: u8 = f[1].parse().map_err(|_| bad(format!("bad config {:?}", f[1])))?;
        let config = Configuration::new(kind, code).map_err(|e| bad(e.to_string()))?;
        if seen.contains(&(kind, code)) {
            return Err(bad(format!("duplicate config {code} for kind {kind}")));
        }
        seen.push((kind, code));
        hist[kind.index()].get_or_insert_with(|| ConfigHistogram::new(kind)).counts[config.index()] = n;
    }
    let mut out = Vec::new();
    for kind in Kind::ALL {
        let Some(h) = hist[kind.index()].take() else { continue };
        for c in Configuration::all(kind) {
            if !seen.contains(&(kind, c.code())) {
                return Err(CountTableError::Missing { kind, code: c.code() });
            }
        }
        if let Some(d) = declared[kind.index()] {
            if d != h.total() {
                return Err(CountTableError::Sum { kind, sum: h.total(), declared: d });
            }
        }
        out.push(h);
    }
    Ok(out)
}
