//! Permutation groups and strings of involutions: validation, independence,
//! representation graphs, fracture analysis, explicit families and rank search.

pub mod blocks;
pub mod error;
pub mod group;
pub mod perm;
pub mod repgraph;
pub mod sggi;

pub use blocks::{minimal_block_system, BlockSystem, Primitivity};
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::{orbits, Parity, Permutation};
pub use repgraph::{from_graph, parse_graph, to_graph, Edge, RepGraph};
pub use sggi::{intersection_property, validate, Selector, Sggi, ValidationReport, Violation};
pub mod constructions;
pub mod fracture;
pub mod search;
pub use search::{exists_sggi, extend, max_rank_search, Outcome, SearchOptions, SearchResult};
