use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::corpus::{Kind, TupleRecord};
use crate::counts::FrequencyDatabase;
use crate::estimator::{estimate, BackoffLevel};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub total: u64,
    pub correct: u64,
}

impl Tally {
    pub fn new(total: u64, correct: u64) -> Tally {
        assert!(correct <= total, "correct exceeds total");
        Tally { total, correct }
    }

    /// `None` for an empty tally.
    pub fn accuracy(&self) -> Option<f64> {
        (self.total > 0).then(|| self.correct as f64 / self.total as f64)
    }

    fn add(&mut self, correct: bool) {
        self.total += 1;
        self.correct += correct as u64;
    }
}

/// Percentage with one decimal, or `n/a` when undefined.
pub fn format_percent(accuracy: Option<f64>) -> String {
    match accuracy {
        Some(a) => format!("{:.1}%", a * 100.0),
        None => "n/a".to_string(),
    }
}

/// Totals and correct decisions per back-off level for one kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindReport {
    pub kind: Kind,
    pub rows: BTreeMap<BackoffLevel, Tally>,
}

impl KindReport {
    pub fn new(kind: Kind) -> KindReport {
        KindReport { kind, rows: BTreeMap::new() }
    }

    pub fn from_rows(kind: Kind, rows: &[(BackoffLevel, u64, u64)]) -> KindReport {
        KindReport { kind, rows: rows.iter().map(|&(level, t, c)| (level, Tally::new(t, c))).collect() }
    }

    pub fn record(&mut self, level: BackoffLevel, correct: bool) {
        self.rows.entry(level).or_default().add(correct);
    }

    pub fn total(&self) -> Tally {
        self.rows
            .values()
            .fold(Tally::default(), |acc, t| Tally { total: acc.total + t.total, correct: acc.correct + t.correct })
    }

    pub fn accuracy(&self) -> Option<f64> {
        self.total().accuracy()
    }

    pub fn row(&self, level: BackoffLevel) -> Option<Tally> {
        self.rows.get(&level).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    /// One entry per kind, in kind order.
    pub kinds: Vec<KindReport>,
}

impl Default for EvalReport {
    fn default() -> EvalReport {
        EvalReport { kinds: Kind::ALL.iter().map(|&k| KindReport::new(k)).collect() }
    }
}

const TABLE_LEVELS: [BackoffLevel; 4] =
    [BackoffLevel::Full, BackoffLevel::Backoff(1), BackoffLevel::Backoff(2), BackoffLevel::Competitive];

impl EvalReport {
    pub fn kind(&self, kind: Kind) -> &KindReport {
        &self.kinds[kind.index()]
    }

    pub fn kind_mut(&mut self, kind: Kind) -> &mut KindReport {
        &mut self.kinds[kind.index()]
    }

    /// Plain-text table: one row per back-off level, a Total/Correct column
    /// pair per kind.
    pub fn render_table(&self) -> String {
        let mut levels: Vec<BackoffLevel> = TABLE_LEVELS.to_vec();
        for k in &self.kinds {
            for level in k.rows.keys() {
                if !levels.contains(level) {
                    levels.push(*level);
                }
            }
        }
        levels.sort();

        let mut out = String::new();
        let _ = write!(out, "{:<12}", "");
        for k in &self.kinds {
            let _ = write!(out, "| {:^17} ", format!("PP{}", k.kind));
        }
        out.push('\n');
        let _ = write!(out, "{:<12}", "");
        for _ in &self.kinds {
            let _ = write!(out, "| {:>8} {:>8} ", "Total", "Correct");
        }
        out.push('\n');
        for level in levels {
            let _ = write!(out, "{:<12}", level.label());
            for k in &self.kinds {
                match k.row(level) {
                    Some(t) => {
                        let _ = write!(out, "| {:>8} {:>8} ", t.total, t.correct);
                    }
                    None if level == BackoffLevel::Competitive && k.kind == Kind::One => {
                        let _ = write!(out, "| {:>8} {:>8} ", "NA", "NA");
                    }
                    None => {
                        let _ = write!(out, "| {:>8} {:>8} ", 0, 0);
                    }
                }
            }
            out.push('\n');
        }
        let _ = write!(out, "{:<12}", "Total");
        for k in &self.kinds {
            let t = k.total();
            let _ = write!(out, "| {:>8} {:>8} ", t.total, t.correct);
        }
        out.push('\n');
        let _ = write!(out, "{:<12}", "Percent");
        for k in &self.kinds {
            let _ = write!(out, "| {:^17} ", format_percent(k.accuracy()));
        }
        out.push('\n');
        out
    }

    /// One `level<TAB>kind<TAB>total<TAB>correct` line per non-empty row.
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for k in &self.kinds {
            for (level, t) in &k.rows {
                let _ = writeln!(out, "{level}\t{}\t{}\t{}", k.kind, t.total, t.correct);
            }
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<EvalReport, String> {
        let mut report = EvalReport::default();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.is_empty()) {
            let err = |m: &str| format!("line {}: {m}", i + 1);
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(err("expected 4 fields"));
            }
            let level: BackoffLevel = f[0].parse().map_err(|e: String| err(&e))?;
            let kind = f[1].parse().ok().and_then(Kind::from_pp_count).ok_or_else(|| err("bad kind"))?;
            let total: u64 = f[2].parse().map_err(|_| err("bad total"))?;
            let correct: u64 = f[3].parse().map_err(|_| err("bad correct"))?;
            if correct > total {
                return Err(err("correct exceeds total"));
            }
            report.kind_mut(kind).rows.insert(level, Tally::new(total, correct));
        }
        Ok(report)
    }
}

/// Score the kind-appropriate estimator on every test item.
pub fn evaluate(db: &FrequencyDatabase, tests: &[TupleRecord]) -> EvalReport {
    let mut report = EvalReport::default();
    for item in tests {
        let decision = estimate(db, &item.heads);
        report.kind_mut(item.kind()).record(decision.level, decision.config == item.config);
    }
    report
}
