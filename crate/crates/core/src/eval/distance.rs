//! Attachment conditioned on preposition and distance from the verb.
//!
//! Every preposition occurrence is an event (p, d, low) where d is its
//! ordinal position and low means it attaches to any noun. For each (p, d)
//! cell the majority class is the prediction, scored on the same events.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::report::format_percent;
use crate::corpus::TupleRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentEvent {
    pub preposition: String,
    /// 1-based position of the preposition after the verb.
    pub distance: u8,
    pub low: bool,
}

pub fn attachment_events(records: &[TupleRecord]) -> impl Iterator<Item = AttachmentEvent> + '_ {
    records.iter().flat_map(|r| {
        r.config.sites().iter().enumerate().map(move |(i, site)| AttachmentEvent {
            preposition: r.heads.preposition(i + 1).expect("one preposition per site").to_string(),
            distance: i as u8 + 1,
            low: site.is_low(),
        })
    })
}

/// Event counts for one cell or summary column.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Cell {
    pub count: u64,
    pub low: u64,
}

impl Cell {
    fn add(&mut self, low: bool) {
        self.count += 1;
        self.low += low as u64;
    }

    /// Events predicted correctly by this cell's majority class.
    pub fn majority_correct(&self) -> u64 {
        self.low.max(self.count - self.low)
    }

    pub fn low_proportion(&self) -> Option<f64> {
        (self.count > 0).then(|| self.low as f64 / self.count as f64)
    }
}

/// Aggregated score over a group of cells.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub count: u64,
    pub correct: u64,
    pub low: u64,
}

impl Summary {
    fn absorb(&mut self, cell: &Cell) {
        self.count += cell.count;
        self.correct += cell.majority_correct();
        self.low += cell.low;
    }

    pub fn accuracy(&self) -> Option<f64> {
        (self.count > 0).then(|| self.correct as f64 / self.count as f64)
    }

    pub fn low_proportion(&self) -> Option<f64> {
        (self.count > 0).then(|| self.low as f64 / self.count as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DistanceTable {
    pub cells: BTreeMap<(String, u8), Cell>,
}

impl DistanceTable {
    pub fn from_events<I: IntoIterator<Item = AttachmentEvent>>(events: I) -> DistanceTable {
        let mut table = DistanceTable::default();
        for e in events {
            table.cells.entry((e.preposition, e.distance)).or_default().add(e.low);
        }
        table
    }

    /// Majority scores conditioned on (p, d), restricted to distance `d`.
    pub fn by_distance(&self, d: u8) -> Summary {
        let mut s = Summary::default();
        for cell in self.cells.iter().filter(|((_, dist), _)| *dist == d).map(|(_, c)| c) {
            s.absorb(cell);
        }
        s
    }

    /// Conditioned on (p, d), over all distances.
    pub fn total(&self) -> Summary {
        let mut s = Summary::default();
        for cell in self.cells.values() {
            s.absorb(cell);
        }
        s
    }

    /// Conditioned on the preposition alone.
    pub fn preposition_only(&self) -> Summary {
        let mut pooled: BTreeMap<&str, Cell> = BTreeMap::new();
        for ((p, _), c) in &self.cells {
            let e = pooled.entry(p).or_default();
            e.count += c.count;
            e.low += c.low;
        }
        let mut s = Summary::default();
        for cell in pooled.values() {
            s.absorb(cell);
        }
        s
    }

    pub fn render(&self) -> String {
        let cols: Vec<(String, Summary)> = (1..=3)
            .map(|d| (format!("{d} PP"), self.by_distance(d)))
            .chain([("Total".to_string(), self.total()), ("All".to_string(), self.preposition_only())])
            .collect();
        let mut out = String::new();
        let header = |out: &mut String, cols: &[(String, Summary)]| {
            let _ = write!(out, "{:<10}", "");
            for (name, _) in cols {
                let _ = write!(out, "| {name:>8} ");
            }
            out.push('\n');
        };
        let row = |out: &mut String, name: &str, cols: &[(String, Summary)], f: &dyn Fn(&Summary) -> String| {
            let _ = write!(out, "{name:<10}");
            for (_, s) in cols {
                let _ = write!(out, "| {:>8} ", f(s));
            }
            out.push('\n');
        };
        header(&mut out, &cols);
        row(&mut out, "Count", &cols, &|s| s.count.to_string());
        row(&mut out, "Correct", &cols, &|s| s.correct.to_string());
        row(&mut out, "%", &cols, &|s| format_percent(s.accuracy()));
        out.push('\n');
        let cols = &cols[..4];
        header(&mut out, cols);
        row(&mut out, "Count", cols, &|s| s.count.to_string());
        row(&mut out, "Low", cols, &|s| s.low.to_string());
        row(&mut out, "% Low", cols, &|s| format_percent(s.low_proportion()));
        out.push('\n');
        let _ = writeln!(out, "preposition\tdistance\tcount\tlow\tcorrect\taccuracy");
        for ((p, d), c) in &self.cells {
            let acc = format_percent((c.count > 0).then(|| c.majority_correct() as f64 / c.count as f64));
            let _ = writeln!(out, "{p}\t{d}\t{}\t{}\t{}\t{acc}", c.count, c.low, c.majority_correct());
        }
        out
    }
}

pub fn distance_analysis(records: &[TupleRecord]) -> DistanceTable {
    DistanceTable::from_events(attachment_events(records))
}
