//! Backed-off attachment estimators.
//!
//! Each estimator walks its table's back-off levels from the full tuple
//! down, pooling the counts of every mask at a level, and stops at the
//! first level with a non-zero denominator. The chosen configuration is the
//! argmax of the pooled numerators. When all levels are empty, PP1 falls
//! back to noun attachment and PP2/PP3 fall back to the competitive
//! procedures in [`competitive`].

pub mod competitive;

use std::cmp::Ordering;
use std::fmt;

use crate::corpus::{Configuration, Heads, Kind};
use crate::counts::{slot_words, Evidence, FrequencyDatabase, SlotWords, Table};

pub use competitive::{competitive_pp2, competitive_pp3, find_best_configuration, Preference};

/// Depth in the estimation cascade at which a decision was made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackoffLevel {
    /// Level 0: the full tuple was observed.
    Full,
    /// Levels 1..: pooled sub-tuples.
    Backoff(u8),
    Competitive,
    /// No evidence at all; noun attachment for PP1.
    Default,
}

impl BackoffLevel {
    pub fn from_depth(depth: usize) -> BackoffLevel {
        if depth == 0 {
            BackoffLevel::Full
        } else {
            BackoffLevel::Backoff(depth as u8)
        }
    }

    pub fn label(self) -> String {
        match self {
            BackoffLevel::Full => "No back-off".into(),
            BackoffLevel::Backoff(n) => format!("Back-off {n}"),
            BackoffLevel::Competitive => "Competitive".into(),
            BackoffLevel::Default => "Default".into(),
        }
    }
}

impl fmt::Display for BackoffLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackoffLevel::Full => f.write_str("0"),
            BackoffLevel::Backoff(n) => write!(f, "{n}"),
            BackoffLevel::Competitive => f.write_str("competitive"),
            BackoffLevel::Default => f.write_str("default"),
        }
    }
}

impl std::str::FromStr for BackoffLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<BackoffLevel, String> {
        match s {
            "0" => Ok(BackoffLevel::Full),
            "competitive" => Ok(BackoffLevel::Competitive),
            "default" => Ok(BackoffLevel::Default),
            n => match n.parse::<u8>() {
                Ok(d) if d > 0 => Ok(BackoffLevel::Backoff(d)),
                _ => Err(format!("unknown back-off level {s:?}")),
            },
        }
    }
}

/// A first-PP preference consulted by a competitive decision.
#[derive(Debug, Clone, PartialEq)]
pub struct SitePreference {
    /// 1-based index of the noun the preference was computed against.
    pub noun: usize,
    pub preference: Preference,
    /// Count of the winning configuration at the level its decision used.
    pub support: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttachmentDecision {
    pub config: Configuration,
    /// p̂ per configuration code (index 0 is code 1).
    pub distribution: Vec<f64>,
    pub level: BackoffLevel,
    /// Pooled numerators at the level used; their sum is the denominator.
    /// All zero for competitive and default decisions.
    pub evidence: Evidence,
    /// Preferences behind a competitive decision, in the order consulted.
    pub preferences: Vec<SitePreference>,
}

impl AttachmentDecision {
    pub fn kind(&self) -> Kind {
        self.config.kind()
    }

    /// p̂ of the chosen configuration.
    pub fn probability(&self) -> f64 {
        self.distribution[self.config.index()]
    }

    pub fn denominator(&self) -> u64 {
        self.evidence.total()
    }

    /// Count backing the chosen configuration; zero for default decisions.
    pub fn support(&self) -> u64 {
        self.evidence.count(self.config.index())
    }

    fn degenerate(config: Configuration, level: BackoffLevel) -> AttachmentDecision {
        let n = config.kind().num_configs() as usize;
        let mut distribution = vec![0.0; n];
        distribution[config.index()] = 1.0;
        AttachmentDecision { config, distribution, level, evidence: Evidence::zero(n), preferences: Vec::new() }
    }
}

/// Argmax over configuration counts. Ties go to the lowest attachment: the
/// configuration whose site list is lexicographically latest under
/// `Verb < N1 < N2 < N3`.
pub fn argmax_config(kind: Kind, counts: &[u64]) -> Configuration {
    Configuration::all(kind)
        .max_by(|a, b| match counts[a.index()].cmp(&counts[b.index()]) {
            Ordering::Equal => a.sites().cmp(b.sites()),
            other => other,
        })
        .expect("every kind has configurations")
}

fn from_evidence(kind: Kind, depth: usize, evidence: Evidence) -> AttachmentDecision {
    let denominator = evidence.total() as f64;
    let distribution = evidence.counts().iter().map(|&n| n as f64 / denominator).collect();
    AttachmentDecision {
        config: argmax_config(kind, evidence.counts()),
        distribution,
        level: BackoffLevel::from_depth(depth),
        evidence,
        preferences: Vec::new(),
    }
}

/// Walk the back-off levels of `table`; `None` if every level is empty.
fn cascade(db: &FrequencyDatabase, table: Table, words: &SlotWords<'_>) -> Option<AttachmentDecision> {
    table.levels().iter().enumerate().find_map(|(depth, masks)| {
        let evidence = db.pooled(table, masks, words);
        (evidence.total() > 0).then(|| from_evidence(table.config_kind(), depth, evidence))
    })
}

fn noun_default() -> AttachmentDecision {
    let config = Configuration::new(Kind::One, 2).expect("noun attachment");
    let mut d = AttachmentDecision::degenerate(config, BackoffLevel::Default);
    d.distribution = vec![0.0, 1.0];
    d
}

/// Reference 4-gram estimator over (v, n1, p, n2): the full 4-tuple, then
/// the three 3-tuples with p, the three pairs with p, then p alone.
pub fn estimate_cb4(db: &FrequencyDatabase, v: &str, n1: &str, p: &str, n2: &str) -> AttachmentDecision {
    cascade(db, Table::Quad, &slot_words(&[v, n1, p, n2])).unwrap_or_else(noun_default)
}

/// First-PP attachment from (v, n1, p1): the triple, then (v,p)+(n,p)
/// pooled, then (p), then noun attachment.
pub fn estimate_pp1(db: &FrequencyDatabase, v: &str, n1: &str, p1: &str) -> AttachmentDecision {
    cascade(db, Table::Pp1, &slot_words(&[v, n1, p1])).unwrap_or_else(noun_default)
}

/// Two-PP attachment: the 5-tuple, three pooled 4-slot masks, three pooled
/// 3-slot masks, then the competitive estimate.
pub fn estimate_pp2(db: &FrequencyDatabase, v: &str, n1: &str, p1: &str, n2: &str, p2: &str) -> AttachmentDecision {
    cascade(db, Table::Pp2, &slot_words(&[v, n1, p1, n2, p2])).unwrap_or_else(|| competitive_pp2(db, v, n1, p1, n2, p2))
}

/// Three-PP attachment: the 7-tuple, the four 6-slot masks, the six 5-slot
/// masks, then the competitive estimate.
///
/// # Panics
/// If `heads` does not carry three PPs.
pub fn estimate_pp3(db: &FrequencyDatabase, heads: &Heads) -> AttachmentDecision {
    let words = pp3_words(heads);
    cascade(db, Table::Pp3, &slot_words(&words)).unwrap_or_else(|| competitive_pp3(db, heads))
}

pub(crate) fn pp3_words(heads: &Heads) -> [&str; 7] {
    fn need(w: &Option<String>) -> &str {
        w.as_deref().expect("three-PP heads")
    }
    [&heads.v, &heads.n1, &heads.p1, need(&heads.n2), need(&heads.p2), need(&heads.n3), need(&heads.p3)]
}

/// Dispatch on the number of PPs in `heads`.
///
/// # Panics
/// If the optional heads are inconsistent (e.g. `n2` without `p2`).
pub fn estimate(db: &FrequencyDatabase, heads: &Heads) -> AttachmentDecision {
    match heads.kind().expect("consistent heads") {
        Kind::One => estimate_pp1(db, &heads.v, &heads.n1, &heads.p1),
        Kind::Two => estimate_pp2(
            db,
            &heads.v,
            &heads.n1,
            &heads.p1,
            heads.n2.as_deref().unwrap_or_default(),
            heads.p2.as_deref().unwrap_or_default(),
        ),
        Kind::Three => estimate_pp3(db, heads),
    }
}
