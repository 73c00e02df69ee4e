use thiserror::Error;

use crate::sggi::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {0} is not supported (must be 1..=255)")]
    BadDegree(usize),
    #[error("image sequence is not a bijection")]
    NotBijection,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive")]
    Intransitive,
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank {rank} exceeds the limit {limit}")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("not a string of involutions: {0}")]
    Invalid(ValidationReport),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} lies on two edges with label {label}")]
    MatchingViolation { vertex: usize, label: usize },
    #[error("duplicate edge {u} {v} with label {label}")]
    DuplicateEdge { u: usize, v: usize, label: usize },
    #[error("label {0} has no edges")]
    EmptyLabel(usize),
    #[error("label {label} out of range for {r} labels")]
    LabelOutOfRange { label: usize, r: usize },
    #[error("no fracture graph: G_{label} has as many orbits as G")]
    NoFracture { label: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("group is trivial")]
    TrivialGroup,
}

pub type Result<T> = std::result::Result<T, Error>;
