use thiserror::Error;

pub type Result<T> = std::result::Result<T, FrameError>;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    Dimension {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular frame: lower bound {lower:e} is below tolerance {tolerance:e}")]
    SingularFrame { lower: f64, tolerance: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("finite model constraint: {0}")]
    Model(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("truncation unsound: {0}")]
    Truncation(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn check_dim(expected: usize, got: usize, context: &'static str) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(FrameError::Dimension {
            expected,
            got,
            context,
        })
    }
}
