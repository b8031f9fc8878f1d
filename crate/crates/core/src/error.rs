use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("pullback map is not Laurent-invertible: {0}")]
    NotLaurentInvertible(String),

    #[error("scaling constants must be non-zero")]
    ZeroLambda,

    #[error("degenerate odd block")]
    DegenerateOddBlock,

    #[error("non-split transport unsupported")]
    NonSplitTransport,

    #[error("model is not maximally superconformal: {0}")]
    NotMaximal(String),

    #[error("missing transition or overlap data: {0}")]
    MissingData(String),

    #[error("jet polynomial is not first order: {0}")]
    HigherOrderJet(String),

    #[error("field is not good (max residual coefficient {max_residual})")]
    NotGood { max_residual: String },

    #[error("reality type undeclared for {0}")]
    UndeclaredType(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
