#![allow(dead_code)]

pub mod oracle;
pub mod synth;

use std::path::PathBuf;

use ppbackoff::estimator::BackoffLevel;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn oracle_level(level: BackoffLevel) -> oracle::Level {
    match level {
        BackoffLevel::Full => oracle::Level::Depth(0),
        BackoffLevel::Backoff(n) => oracle::Level::Depth(n as usize),
        BackoffLevel::Competitive => oracle::Level::Competitive,
        BackoffLevel::Default => oracle::Level::Default,
    }
}
