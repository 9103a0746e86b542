//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by network construction, ingestion and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// A node, layer or supra index fell outside the network.
    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    /// A network-level invariant was violated at construction time.
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    /// The input is structurally valid but the requested quantity is
    /// undefined on it (all-zero weights, too few nodes, zero variance, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The brute-force triangle enumeration refuses supra orders this large.
    #[error("network order {order} exceeds the brute-force limit of {limit}")]
    OversizeForOracle { order: usize, limit: usize },

    /// The CSV header row does not match the canonical edge-list contract.
    #[error("csv header mismatch: expected `{expected}`, got `{found}`")]
    HeaderMismatch { expected: String, found: String },

    /// Duplicate arcs were found while building with `MergePolicy::Error`.
    #[error("duplicate arcs under merge policy `error`: {0}")]
    DuplicateArcs(String),

    /// The operation would produce or operate on a network with nothing in it.
    #[error("empty network: {0}")]
    EmptyNetwork(String),

    /// Caller-supplied values failed validation (NaN ranks, mismatched
    /// entity sets, duplicate entities, ...).
    #[error("validation failed: {0}")]
    Validation(String),

    /// The requested coefficient family is not defined for this operation.
    #[error("unsupported coefficient family: {0}")]
    UnsupportedFamily(&'static str),

    /// An input file could not be opened.
    #[error("cannot open `{path}`: {source}")]
    InputFile {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
