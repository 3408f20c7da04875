use thiserror::Error;

/// Stage of the constructive pipeline that could not find a monochromatic clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureStage {
    /// Building level `level` of the sequence system.
    Sequence { level: usize },
    /// The pair coloring of the sequence indices.
    PairClique,
    /// A stand-alone Schur step.
    SchurStep,
}

impl std::fmt::Display for FailureStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailureStage::Sequence { level } => write!(f, "sequence level {level}"),
            FailureStage::PairClique => f.write_str("pair clique"),
            FailureStage::SchurStep => f.write_str("schur step"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: need 1 <= lo <= hi")]
    InvalidInterval { lo: u64, hi: u64 },

    #[error("domain of width {width} exceeds the supported maximum of {max}")]
    DomainTooLarge { width: u128, max: u64 },

    #[error("line {line}, offset {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ramsey failure at {stage}: no monochromatic clique within [1, {range}]")]
    RamseyFailure { stage: FailureStage, range: u64 },

    #[error("{what} not computable within budget")]
    CapExceeded { what: String },

    #[error("self-check failed: {0}")]
    SelfCheckFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            offset,
            message: message.into(),
        }
    }
}
