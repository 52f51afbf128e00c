//! Synthetic tuple corpora.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ppbackoff::{AttachmentSite, Configuration, Heads, Kind, TupleRecord};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-slot vocabularies of `size` words each.
pub struct Vocab {
    pub slots: [Vec<String>; 7],
}

impl Vocab {
    pub fn new(size: usize) -> Vocab {
        let names = ["v", "a", "p", "b", "q", "c", "r"];
        Vocab { slots: names.map(|n| (0..size).map(|i| format!("{n}{i}")).collect()) }
    }

    fn pick<R: Rng>(&self, rng: &mut R, slot: usize) -> String {
        self.slots[slot].choose(rng).expect("non-empty vocabulary").clone()
    }

    pub fn heads<R: Rng>(&self, rng: &mut R, kind: Kind) -> Heads {
        let w: Vec<String> = (0..7).map(|s| self.pick(rng, s)).collect();
        let mut h = Heads::pp3([&w[0], &w[1], &w[2], &w[3], &w[4], &w[5], &w[6]]);
        if kind != Kind::Three {
            h = h.project(kind);
        }
        h
    }

    pub fn final_noun<R: Rng>(&self, rng: &mut R, kind: Kind) -> Option<String> {
        // object of the last PP, drawn from the next noun slot
        let slot = [3, 5, 5][kind.index()];
        rng.random_bool(0.7).then(|| self.pick(rng, slot))
    }
}

pub fn random_kind<R: Rng>(rng: &mut R) -> Kind {
    *Kind::ALL.choose(rng).unwrap()
}

pub fn random_config<R: Rng>(rng: &mut R, kind: Kind) -> Configuration {
    Configuration::new(kind, rng.random_range(1..=kind.num_configs())).unwrap()
}

/// Up to `max_records` records over a vocabulary of up to `max_vocab` words per slot.
pub fn random_corpus<R: Rng>(rng: &mut R, max_records: usize, max_vocab: usize) -> (Vocab, Vec<TupleRecord>) {
    let vocab = Vocab::new(rng.random_range(1..=max_vocab));
    let n = rng.random_range(0..=max_records);
    let records = (0..n)
        .map(|i| {
            let kind = random_kind(rng);
            TupleRecord {
                id: format!("r{i}"),
                config: random_config(rng, kind),
                heads: vocab.heads(rng, kind),
                final_noun: vocab.final_noun(rng, kind),
            }
        })
        .collect();
    (vocab, records)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bias {
    Verb,
    NearNoun,
    FarNoun,
}

/// Corpus whose attachments follow per-preposition preferences: each
/// preposition picks its preferred site with probability `strength`,
/// otherwise one of the remaining legal sites uniformly.
pub fn biased_corpus(n: usize, strength: f64, seed: u64) -> Vec<TupleRecord> {
    let mut rng = rng(seed);
    let verbs: Vec<String> = (0..40).map(|i| format!("verb{i}")).collect();
    let nouns: Vec<String> = (0..60).map(|i| format!("noun{i}")).collect();
    let preps: Vec<(String, Bias)> =
        (0..12).map(|i| (format!("prep{i}"), [Bias::Verb, Bias::NearNoun, Bias::FarNoun][i % 3])).collect();

    (0..n)
        .map(|i| {
            let kind = match rng.random_range(0..10) {
                0..=5 => Kind::One,
                6..=8 => Kind::Two,
                _ => Kind::Three,
            };
            let mut sites: Vec<AttachmentSite> = Vec::new();
            let mut words: Vec<String> =
                vec![verbs.choose(&mut rng).unwrap().clone(), nouns.choose(&mut rng).unwrap().clone()];
            for _ in 0..kind.pp_count() {
                let (p, bias) = preps.choose(&mut rng).unwrap().clone();
                let frontier = ppbackoff::corpus::config::right_frontier_after(&sites);
                let noun_sites: Vec<AttachmentSite> = frontier.iter().copied().filter(|s| s.is_low()).collect();
                let preferred = match bias {
                    Bias::Verb => AttachmentSite::Verb,
                    Bias::NearNoun => *noun_sites.last().unwrap(),
                    Bias::FarNoun => noun_sites[0],
                };
                let site = if rng.random_bool(strength) {
                    preferred
                } else {
                    let others: Vec<AttachmentSite> = frontier.iter().copied().filter(|&s| s != preferred).collect();
                    *others.choose(&mut rng).unwrap_or(&preferred)
                };
                sites.push(site);
                words.push(p);
                words.push(nouns.choose(&mut rng).unwrap().clone());
            }
            let final_noun = words.pop();
            let w: Vec<&str> = words.iter().map(String::as_str).collect();
            let heads = match kind {
                Kind::One => Heads::pp1(w[0], w[1], w[2]),
                Kind::Two => Heads::pp2(w[0], w[1], w[2], w[3], w[4]),
                Kind::Three => Heads::pp3(w.try_into().unwrap()),
            };
            TupleRecord { id: format!("s{i}"), config: Configuration::from_sites(&sites).unwrap(), heads, final_noun }
        })
        .collect()
}
