//! Competitive backed-off estimates for the second and third PP.
//!
//! The earlier PPs are fixed first; each candidate noun for the last
//! preposition is then tested against the verb with the first-PP
//! estimator, and the winning preferences are mapped onto a configuration.

use super::{estimate_pp1, estimate_pp2, AttachmentDecision, BackoffLevel, SitePreference};
use crate::corpus::{AttachmentSite, Configuration, Heads, Kind};
use crate::counts::FrequencyDatabase;

/// A first-PP decision read as a preference: verb (C2 = 1) or noun (C2 = 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preference {
    Verb,
    Noun,
}

impl Preference {
    pub fn from_config(config: Configuration) -> Preference {
        assert_eq!(config.kind(), Kind::One, "preferences come from first-PP decisions");
        if config.code() == 1 {
            Preference::Verb
        } else {
            Preference::Noun
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Preference::Verb => 1,
            Preference::Noun => 2,
        }
    }
}

fn pp2(code: u8) -> Configuration {
    Configuration::new(Kind::Two, code).expect("valid two-PP code")
}

/// Map first-PP preferences onto a two-PP configuration.
///
/// `first` is the preference of p1 (w.r.t. n1), `vs_n2` that of p2 w.r.t.
/// n2 and `vs_n1` that of p2 w.r.t. n1. When both nouns win, the one with
/// more support takes p2; equal support goes to n2.
pub fn find_best_configuration(
    first: Preference,
    vs_n2: Preference,
    vs_n1: Preference,
    support_n2: u64,
    support_n1: u64,
) -> Configuration {
    use Preference::{Noun, Verb};
    match (first, vs_n2, vs_n1) {
        (Verb, Verb, _) => pp2(1),
        (Verb, Noun, _) => pp2(4),
        (Noun, Verb, Verb) => pp2(2),
        (Noun, Noun, Verb) => pp2(3),
        (Noun, Verb, Noun) => pp2(2),
        (Noun, Noun, Noun) => {
            if support_n2 < support_n1 {
                pp2(5)
            } else {
                pp2(3)
            }
        }
    }
}

fn preference(db: &FrequencyDatabase, v: &str, noun_index: usize, noun: &str, p: &str) -> SitePreference {
    let d = estimate_pp1(db, v, noun, p);
    SitePreference { noun: noun_index, preference: Preference::from_config(d.config), support: d.support() }
}

fn competitive(config: Configuration, preferences: Vec<SitePreference>) -> AttachmentDecision {
    let mut d = AttachmentDecision::degenerate(config, BackoffLevel::Competitive);
    d.preferences = preferences;
    d
}

pub fn competitive_pp2(db: &FrequencyDatabase, v: &str, n1: &str, p1: &str, n2: &str, p2: &str) -> AttachmentDecision {
    let first = preference(db, v, 1, n1, p1);
    let vs_n2 = preference(db, v, 2, n2, p2);
    let vs_n1 = preference(db, v, 1, n1, p2);
    let config =
        find_best_configuration(first.preference, vs_n2.preference, vs_n1.preference, vs_n2.support, vs_n1.support);
    competitive(config, vec![first, vs_n2, vs_n1])
}

/// Fix p1 and p2 with the two-PP estimator, then attach p3 to the verb or
/// to the right-frontier noun it prefers most strongly. Among nouns that
/// prefer noun attachment the largest support wins, ties going to the
/// rightmost noun.
///
/// # Panics
/// If `heads` does not carry three PPs.
pub fn competitive_pp3(db: &FrequencyDatabase, heads: &Heads) -> AttachmentDecision {
    let [v, n1, p1, n2, p2, _, p3] = super::pp3_words(heads);
    let prefix = estimate_pp2(db, v, n1, p1, n2, p2).config;

    let preferences: Vec<SitePreference> = prefix
        .right_frontier()
        .into_iter()
        .filter_map(AttachmentSite::noun_index)
        .map(|k| preference(db, v, k, heads.noun(k).expect("three-PP heads"), p3))
        .collect();

    let site = preferences
        .iter()
        .filter(|p| p.preference == Preference::Noun)
        .max_by_key(|p| (p.support, p.noun))
        .and_then(|p| AttachmentSite::noun(p.noun))
        .unwrap_or(AttachmentSite::Verb);

    let config = prefix.extend(site).expect("frontier sites extend the prefix");
    competitive(config, preferences)
}
