//! Text formats, caching and the command line driver.

pub mod cache;
pub mod cli;
pub mod parse;
pub mod render;

pub use cache::{cache_key, Cache};
pub use parse::{parse_graph, parse_link, GraphDocument, LinkDocument, ParseError, ParseErrorKind};
pub use render::{invariants_from_json, invariants_json, invariants_tsv, serialize_word};
