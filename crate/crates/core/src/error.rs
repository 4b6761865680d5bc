use thiserror::Error;

/// Errors produced anywhere in the computation pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid product space: {0}")]
    InvalidSpace(String),

    #[error("operands live on different product spaces ({left} vs {right})")]
    SpaceMismatch { left: String, right: String },

    #[error("argument error: {0}")]
    Argument(String),

    #[error("element is not a unit: degree-0 part is {0}, expected 1")]
    NonUnit(String),

    #[error("cannot parse class {input:?}: {reason}")]
    ClassParse { input: String, reason: String },

    #[error("twisting a virtual class of rank {0} is unsupported")]
    VirtualTwist(i64),

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("slope undefined: lambda is zero")]
    SlopeUndefined,

    #[error("cannot parse bundle expression {input:?} at byte {position}: {reason}")]
    Expr {
        input: String,
        position: usize,
        reason: String,
    },

    #[error("{key}: unresolved bundle name `{name}`")]
    UnresolvedBundle { key: String, name: String },

    #[error("{key}: cyclic bundle definition ({chain})")]
    CyclicBundle { key: String, chain: String },

    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },

    /// An internal consistency check failed; the inputs were fine but the
    /// computed values disagree with an independent route.
    #[error("consistency check failed: {0}")]
    Check(String),
}

impl Error {
    pub fn at(self, stage: impl Into<String>) -> Error {
        Error::Stage {
            stage: stage.into(),
            source: Box::new(self),
        }
    }

    /// True when the error signals a failed internal consistency check
    /// rather than a problem with the user's input.
    pub fn is_internal(&self) -> bool {
        match self {
            Error::Check(_) => true,
            Error::Stage { source, .. } => source.is_internal(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
