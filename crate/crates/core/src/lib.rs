//! Prepositional-phrase attachment disambiguation for VPs with one, two or
//! three PPs, trained from bracketed parse trees.
//!
//! The pipeline is: read trees and extract head-word tuples ([`corpus`]),
//! count them into a [`counts::FrequencyDatabase`], and resolve attachments
//! with the backed-off cascades in [`estimator`]. When the multi-PP tables
//! run dry, later PPs are settled competitively from first-PP statistics.

pub mod cli;
pub mod corpus;
pub mod counts;
pub mod estimator;
pub mod eval;

pub use corpus::{AttachmentSite, Configuration, Heads, Kind, Normalization, TupleRecord};
pub use counts::{build_database, FrequencyDatabase};
pub use estimator::{estimate, AttachmentDecision, BackoffLevel};
