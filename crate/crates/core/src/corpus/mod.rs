//! Treebank reading, VP classification and tuple records.

pub mod config;
pub mod extract;
pub mod record;
pub mod tree;

pub use config::{AttachmentSite, ConfigError, Configuration, Kind};
pub use extract::{classify_vp, extract_tuples, ExtractError, VpMatch};
pub use record::{
    read_queries, read_tuple_file, write_tuple_file, Heads, Normalization, Query, TupleFileError, TupleRecord,
};
pub use tree::{parse_bracketed_tree, parse_treebank, ParseError, Tree};
