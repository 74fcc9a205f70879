use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error(
        "transfer function is improper (relative degree {0}) and has no state-space realization"
    )]
    ImproperInput(i32),
    #[error("frequency {0} rad/s coincides with an imaginary-axis pole")]
    PoleOnAxis(f64),
    #[error("signal grids do not match")]
    GridMismatch,
    #[error("system is externally positive; no negativity witness exists")]
    NoWitnessExists,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input signal: {0}")]
    InvalidInput(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
