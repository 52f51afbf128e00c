//! Splitting, scoring, baselines and distance statistics.

pub mod baseline;
pub mod distance;
pub mod report;
pub mod split;

pub use baseline::{
    baseline_chance, baseline_most_frequent, parse_count_table, render_baselines, BaselineRow, ConfigHistogram,
    CountTableError,
};
pub use distance::{distance_analysis, AttachmentEvent, DistanceTable};
pub use report::{evaluate, format_percent, EvalReport, KindReport, Tally};
pub use split::{stratified_split, Split, SplitError, SplitSpec};
