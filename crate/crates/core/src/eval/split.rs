//! Nested stratified train/test splits.
//!
//! Test sets are drawn from the top down: the three-PP test set first, then
//! the two-PP test set grown around the VPs already chosen, then the
//! one-PP test set. Every VP with any test projection is removed from
//! training, so test3 ⊆ test2 ⊆ test1 and train ∩ test1 = ∅ by source id.

use std::collections::{BTreeMap, HashSet};

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::{Kind, TupleRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct SplitSpec {
    /// Test fraction per kind, indexed by `Kind::index`.
    pub fractions: [f64; 3],
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> SplitSpec {
        SplitSpec { fractions: [0.05, 0.10, 0.10], seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("test fraction for kind {kind} must lie in (0, 1), got {value}")]
    Fraction { kind: Kind, value: String },
    #[error("duplicate record id {0:?}")]
    DuplicateId(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Split {
    pub train: Vec<TupleRecord>,
    /// One-PP views of every test VP.
    pub test1: Vec<TupleRecord>,
    /// Two-PP views of the test VPs with at least two PPs.
    pub test2: Vec<TupleRecord>,
    pub test3: Vec<TupleRecord>,
}

impl Split {
    pub fn test(&self, kind: Kind) -> &[TupleRecord] {
        match kind {
            Kind::One => &self.test1,
            Kind::Two => &self.test2,
            Kind::Three => &self.test3,
        }
    }

    /// All test views, one-PP first.
    pub fn all_tests(&self) -> Vec<TupleRecord> {
        self.test1.iter().chain(&self.test2).chain(&self.test3).cloned().collect()
    }
}

/// Per-stratum quota: `round(fraction × stratum size)`.
pub fn stratum_quota(fraction: f64, size: usize) -> usize {
    (fraction * size as f64).round() as usize
}

pub fn stratified_split(records: &[TupleRecord], spec: &SplitSpec) -> Result<Split, SplitError> {
    for kind in Kind::ALL {
        let f = spec.fractions[kind.index()];
        if !(f > 0.0 && f < 1.0) {
            return Err(SplitError::Fraction { kind, value: f.to_string() });
        }
    }
    let mut ids = HashSet::new();
    for r in records {
        if !ids.insert(r.id.as_str()) {
            return Err(SplitError::DuplicateId(r.id.clone()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut selected = vec![false; records.len()];

    for kind in [Kind::Three, Kind::Two, Kind::One] {
        let mut strata: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for (i, r) in records.iter().enumerate() {
            if let Some(c) = r.config.prefix(kind) {
                strata.entry(c.code()).or_default().push(i);
            }
        }
        let fraction = spec.fractions[kind.index()];
        for (code, members) in strata {
            let quota = stratum_quota(fraction, members.len());
            if quota == 0 {
                warn!(
                    "kind {kind} config {code}: stratum of {} too small for a test item at fraction {fraction}",
                    members.len()
                );
            }
            let forced = members.iter().filter(|&&i| selected[i]).count();
            if forced > quota {
                warn!("kind {kind} config {code}: {forced} nested test items exceed the stratum quota of {quota}");
            }
            let mut free: Vec<usize> = members.into_iter().filter(|&i| !selected[i]).collect();
            free.shuffle(&mut rng);
            for i in free.into_iter().take(quota.saturating_sub(forced)) {
                selected[i] = true;
            }
        }
    }

    let mut split = Split::default();
    for (r, &chosen) in records.iter().zip(&selected) {
        if !chosen {
            split.train.push(r.clone());
            continue;
        }
        for kind in Kind::ALL {
            if let Some(view) = r.project(kind) {
                match kind {
                    Kind::One => split.test1.push(view),
                    Kind::Two => split.test2.push(view),
                    Kind::Three => split.test3.push(view),
                }
            }
        }
    }
    Ok(split)
}
