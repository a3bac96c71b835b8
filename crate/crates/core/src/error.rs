use thiserror::Error;

/// Errors raised by curve construction, estimation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval: need a < b, got [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("too few points: got {got}, need at least {min}")]
    TooFewPoints { got: usize, min: usize },

    #[error("abscissae and ordinates differ in length ({xs} vs {ys})")]
    LengthMismatch { xs: usize, ys: usize },

    #[error("abscissae not strictly increasing at index {index}")]
    NotSorted { index: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("degenerate chord: both endpoints at x = {x}")]
    DegenerateChord { x: f64 },

    #[error("degenerate cubic: leading coefficient is zero")]
    DegenerateCubic,

    #[error("unsupported curve family for this operation: {0}")]
    UnsupportedFamily(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no sign change in [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error("orientation undetermined: data are numerically linear")]
    OrientationUndetermined,

    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("duplicate abscissa {x} on lines {first} and {second}")]
    DuplicateAbscissa { x: f64, first: u64, second: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
