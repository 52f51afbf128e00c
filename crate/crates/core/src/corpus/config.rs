//! Attachment configurations for VPs with one, two or three PPs.
//!
//! A configuration is identified by its code within a kind (1..2, 1..5,
//! 1..14) and is equivalent to the list of attachment sites, one per
//! preposition in linear order.

use std::fmt;

use thiserror::Error;

/// Number of prepositional phrases in a VP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    One = 1,
    Two = 2,
    Three = 3,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::One, Kind::Two, Kind::Three];

    pub fn from_pp_count(n: usize) -> Option<Kind> {
        match n {
            1 => Some(Kind::One),
            2 => Some(Kind::Two),
            3 => Some(Kind::Three),
            _ => None,
        }
    }

    pub fn pp_count(self) -> usize {
        self as usize
    }

    /// 2, 5 and 14: the Catalan numbers C(2), C(3), C(4).
    pub fn num_configs(self) -> u8 {
        match self {
            Kind::One => 2,
            Kind::Two => 5,
            Kind::Three => 14,
        }
    }

    pub fn index(self) -> usize {
        self as usize - 1
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

/// The head a preposition attaches to. `N1` is the direct object, `N2` the
/// object of the first preposition, `N3` the object of the second.
///
/// The derived ordering (`Verb < N1 < N2 < N3`) runs from highest to lowest
/// attachment and is used for tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttachmentSite {
    Verb,
    N1,
    N2,
    N3,
}

impl AttachmentSite {
    /// Site of the `k`-th noun head (1-based).
    pub fn noun(k: usize) -> Option<AttachmentSite> {
        match k {
            1 => Some(AttachmentSite::N1),
            2 => Some(AttachmentSite::N2),
            3 => Some(AttachmentSite::N3),
            _ => None,
        }
    }

    /// 1-based noun index, `None` for the verb.
    pub fn noun_index(self) -> Option<usize> {
        match self {
            AttachmentSite::Verb => None,
            AttachmentSite::N1 => Some(1),
            AttachmentSite::N2 => Some(2),
            AttachmentSite::N3 => Some(3),
        }
    }

    pub fn is_low(self) -> bool {
        self != AttachmentSite::Verb
    }
}

impl fmt::Display for AttachmentSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AttachmentSite::Verb => "V",
            AttachmentSite::N1 => "N1",
            AttachmentSite::N2 => "N2",
            AttachmentSite::N3 => "N3",
        };
        f.write_str(s)
    }
}

use AttachmentSite::{Verb as V, N1, N2, N3};

const PP1_SITES: [[AttachmentSite; 1]; 2] = [[V], [N1]];

const PP2_SITES: [[AttachmentSite; 2]; 5] = [[V, V], [N1, V], [N1, N2], [V, N2], [N1, N1]];

const PP3_SITES: [[AttachmentSite; 3]; 14] = [
    [V, V, V],
    [V, V, N3],
    [N1, V, V],
    [N1, V, N3],
    [N1, N2, V],
    [N1, N2, N1],
    [N1, N2, N2],
    [N1, N2, N3],
    [V, N2, V],
    [V, N2, N2],
    [V, N2, N3],
    [N1, N1, V],
    [N1, N1, N1],
    [N1, N1, N3],
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("config {code} out of range for kind {kind} (allowed 1..{max})", max = kind.num_configs())]
    OutOfRange { kind: Kind, code: u8 },
}

/// One bracketing structure of a VP with `kind` PPs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    kind: Kind,
    code: u8,
}

impl Configuration {
    pub fn new(kind: Kind, code: u8) -> Result<Configuration, ConfigError> {
        if code == 0 || code > kind.num_configs() {
            return Err(ConfigError::OutOfRange { kind, code });
        }
        Ok(Configuration { kind, code })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn code(&self) -> u8 {
        self.code
    }

    /// Zero-based position of this configuration in its kind's code table.
    pub fn index(&self) -> usize {
        self.code as usize - 1
    }

    pub fn from_index(kind: Kind, index: usize) -> Configuration {
        assert!(index < kind.num_configs() as usize, "config index out of range");
        Configuration { kind, code: index as u8 + 1 }
    }

    pub fn all(kind: Kind) -> impl Iterator<Item = Configuration> {
        (1..=kind.num_configs()).map(move |code| Configuration { kind, code })
    }

    pub fn sites(&self) -> &'static [AttachmentSite] {
        match self.kind {
            Kind::One => &PP1_SITES[self.index()],
            Kind::Two => &PP2_SITES[self.index()],
            Kind::Three => &PP3_SITES[self.index()],
        }
    }

    pub fn from_sites(sites: &[AttachmentSite]) -> Option<Configuration> {
        let kind = Kind::from_pp_count(sites.len())?;
        Configuration::all(kind).find(|c| c.sites() == sites)
    }

    /// The configuration of the first `kind` prepositions.
    pub fn prefix(&self, kind: Kind) -> Option<Configuration> {
        if kind > self.kind {
            return None;
        }
        Configuration::from_sites(&self.sites()[..kind.pp_count()])
    }

    /// Sites the next preposition may attach to without crossing branches,
    /// ordered from the verb downwards.
    pub fn right_frontier(&self) -> Vec<AttachmentSite> {
        right_frontier_after(self.sites())
    }

    /// Attach one more preposition at `site`; `None` if the site is not on
    /// the right frontier or the result would exceed three PPs.
    pub fn extend(&self, site: AttachmentSite) -> Option<Configuration> {
        if !self.right_frontier().contains(&site) {
            return None;
        }
        let mut sites = self.sites().to_vec();
        sites.push(site);
        Configuration::from_sites(&sites)
    }

    pub fn attaches_low(&self, position: usize) -> bool {
        self.sites()[position].is_low()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

/// Right frontier after attaching prepositions at `sites` in order.
pub fn right_frontier_after(sites: &[AttachmentSite]) -> Vec<AttachmentSite> {
    let mut frontier = vec![V, N1];
    for (i, site) in sites.iter().enumerate() {
        let Some(pos) = frontier.iter().position(|s| s == site) else {
            return Vec::new();
        };
        frontier.truncate(pos + 1);
        match AttachmentSite::noun(i + 2) {
            Some(noun) => frontier.push(noun),
            None => break,
        }
    }
    frontier
}

/// Every non-crossing site assignment for `pp_count` prepositions, built by
/// attaching each preposition to one node of the current right frontier.
pub fn enumerate_site_assignments(pp_count: usize) -> Vec<Vec<AttachmentSite>> {
    let mut partial: Vec<Vec<AttachmentSite>> = vec![Vec::new()];
    for _ in 0..pp_count {
        let mut next = Vec::new();
        for sites in &partial {
            for site in right_frontier_after(sites) {
                let mut extended = sites.clone();
                extended.push(site);
                next.push(extended);
            }
        }
        partial = next;
    }
    partial
}
