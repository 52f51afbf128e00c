//! Brute-force reference estimator. Recounts raw records for every query
//! and walks the cascade with floating-point ratios. Shares nothing with
//! the library beyond the record type.

use ppbackoff::TupleRecord;

/// Attachment sites per code as digit strings: 0 = verb, k = noun k.
pub const PP2_SITES: [&str; 5] = ["00", "10", "12", "02", "11"];
pub const PP3_SITES: [&str; 14] =
    ["000", "003", "100", "103", "120", "121", "122", "123", "020", "022", "023", "110", "111", "113"];

/// Nouns open to p3 once the first two PPs are placed, per two-PP code.
const FRONTIER_NOUNS: [&[usize]; 5] = [&[3], &[3], &[1, 2, 3], &[2, 3], &[1, 3]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Depth(usize),
    Competitive,
    Default,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub code: u8,
    pub level: Level,
    pub support: u64,
}

struct Event {
    words: Vec<String>,
    code: u8,
}

pub struct Oracle {
    pp1: Vec<Event>,
    pp2: Vec<Event>,
    pp3: Vec<Event>,
}

fn sites_of(kind: usize, code: u8) -> &'static str {
    match kind {
        1 => ["0", "1"][code as usize - 1],
        2 => PP2_SITES[code as usize - 1],
        _ => PP3_SITES[code as usize - 1],
    }
}

fn raw_words(r: &TupleRecord) -> Vec<String> {
    let h = &r.heads;
    [Some(&h.v), Some(&h.n1), Some(&h.p1), h.n2.as_ref(), h.p2.as_ref(), h.n3.as_ref(), h.p3.as_ref()]
        .into_iter()
        .flatten()
        .cloned()
        .collect()
}

/// Word positions kept at each depth: all of them, then every way of
/// dropping one noun-or-verb position, then every way of dropping two.
/// Prepositions are never dropped.
fn masks(len: usize) -> Vec<Vec<Vec<usize>>> {
    let droppable: Vec<usize> = (0..len).filter(|&i| i == 0 || i % 2 == 1).collect();
    let all: Vec<usize> = (0..len).collect();
    let without = |gone: &[usize]| all.iter().copied().filter(|i| !gone.contains(i)).collect::<Vec<_>>();
    let mut one = Vec::new();
    let mut two = Vec::new();
    for (a, &x) in droppable.iter().enumerate() {
        one.push(without(&[x]));
        for &y in &droppable[a + 1..] {
            two.push(without(&[x, y]));
        }
    }
    vec![vec![all.clone()], one, two]
}

impl Oracle {
    pub fn new(records: &[TupleRecord]) -> Oracle {
        let mut o = Oracle { pp1: Vec::new(), pp2: Vec::new(), pp3: Vec::new() };
        for r in records {
            let words = raw_words(r);
            let kind = words.len() / 2;
            let code = r.config.code();
            let first = if sites_of(kind, code).starts_with('0') { 1 } else { 2 };
            o.pp1.push(Event { words: words[..3].to_vec(), code: first });
            match kind {
                2 => o.pp2.push(Event { words, code }),
                3 => o.pp3.push(Event { words, code }),
                _ => {}
            }
        }
        o
    }

    fn cascade(events: &[Event], kind: usize, query: &[&str]) -> Option<Verdict> {
        let n = [2, 5, 14][kind - 1];
        for (depth, level) in masks(query.len()).iter().enumerate() {
            let mut counts = vec![0u64; n];
            for mask in level {
                for e in events {
                    if mask.iter().all(|&i| e.words[i] == query[i]) {
                        counts[e.code as usize - 1] += 1;
                    }
                }
            }
            let total: u64 = counts.iter().sum();
            if total == 0 {
                continue;
            }
            let ratio = |i: usize| counts[i] as f64 / total as f64;
            let mut best = 0;
            for i in 1..n {
                let better = ratio(i) > ratio(best)
                    || (ratio(i) == ratio(best) && sites_of(kind, i as u8 + 1) > sites_of(kind, best as u8 + 1));
                if better {
                    best = i;
                }
            }
            return Some(Verdict { code: best as u8 + 1, level: Level::Depth(depth), support: counts[best] });
        }
        None
    }

    pub fn pp1(&self, v: &str, n1: &str, p1: &str) -> Verdict {
        Oracle::cascade(&self.pp1, 1, &[v, n1, p1]).unwrap_or(Verdict { code: 2, level: Level::Default, support: 0 })
    }

    pub fn pp2(&self, q: [&str; 5]) -> Verdict {
        if let Some(v) = Oracle::cascade(&self.pp2, 2, &q) {
            return v;
        }
        let [v, n1, p1, n2, p2] = q;
        let c1 = self.pp1(v, n1, p1);
        let c2 = self.pp1(v, n2, p2);
        let c3 = self.pp1(v, n1, p2);
        let code = match (c1.code, c2.code, c3.code) {
            (1, 1, _) => 1,
            (1, 2, _) => 4,
            (2, 1, 1) => 2,
            (2, 2, 1) => 3,
            (2, 1, 2) => 2,
            _ if c2.support < c3.support => 5,
            _ => 3,
        };
        Verdict { code, level: Level::Competitive, support: 0 }
    }

    pub fn pp3(&self, q: [&str; 7]) -> Verdict {
        if let Some(v) = Oracle::cascade(&self.pp3, 3, &q) {
            return v;
        }
        let prefix = self.pp2([q[0], q[1], q[2], q[3], q[4]]).code;
        let nouns = [q[1], q[3], q[5]];
        let mut site = 0;
        let mut best_support = 0;
        for &k in FRONTIER_NOUNS[prefix as usize - 1] {
            let pref = self.pp1(q[0], nouns[k - 1], q[6]);
            if pref.code == 2 && (site == 0 || pref.support >= best_support) {
                site = k;
                best_support = pref.support;
            }
        }
        let target = format!("{}{site}", PP2_SITES[prefix as usize - 1]);
        let code = PP3_SITES.iter().position(|s| *s == target).expect("legal extension") as u8 + 1;
        Verdict { code, level: Level::Competitive, support: 0 }
    }
}
