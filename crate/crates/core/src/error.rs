use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by lattice, cone, facet and catalog operations.
#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: classes live over {left} and {right} points")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the zero class does not span a ray")]
    ZeroClass,

    #[error("cannot parse class {input:?}: {reason}")]
    ParseClass { input: String, reason: String },

    /// A documented precondition does not hold; the message names the failing inequality.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("projection to the orthogonal complement of K is singular at r = 9 (K^2 = 0)")]
    SingularProjection,

    #[error("class {class} is not of kind {kind}: {reason}")]
    Kind {
        class: String,
        kind: String,
        reason: String,
    },

    /// A catalog file failed to load; `line` is 1-based and `record` is the offending text.
    #[error("{}:{line}: {reason} (record {record:?})", path.display())]
    Catalog {
        path: PathBuf,
        line: usize,
        record: String,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
