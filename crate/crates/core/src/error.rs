use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected n={expected}, got n={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension n={0} (only 1 and 2 are supported)")]
    DimensionUnsupported(usize),

    #[error("frequency component {component} exceeds the representable range")]
    FrequencyOverflow { component: i128 },

    #[error("frequency {frequency} does not fit on a grid of size {grid} (need |xi_i| < M/2 on the positive side)")]
    FrequencyOutOfRange { frequency: String, grid: usize },

    #[error("grid size {0} is not a power of two >= 2")]
    BadGridSize(usize),

    #[error("work budget exceeded: {needed} products requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("invalid cutoff radii r={r}, R={big_r} (need 0 < r < R)")]
    BadRadii { r: f64, big_r: f64 },

    #[error("invalid dyadic range [{lo}, {hi}]: {reason}")]
    BadRange { lo: i64, hi: i64, reason: String },

    #[error("direction vector must be nonzero")]
    ZeroDirection,

    #[error("dyadic exponent range too large: {0}")]
    RangeTooLarge(String),

    #[error("coefficient 2^(j*d) leaves the double-precision range (j={j}, d={d})")]
    CoefficientRange { j: i64, d: f64 },

    #[error("spectrum is empty away from the origin")]
    EmptySpectrum,

    #[error("input field is not real-valued (max imaginary part {0:e})")]
    NonRealInput(f64),

    #[error("F(0) must vanish, got F(0) = {0}")]
    FNotVanishingAtZero(f64),

    #[error("bandwidth {bandwidth} violates B <= 2^j0/20 = {limit}")]
    BandwidthViolation { bandwidth: i128, limit: f64 },

    #[error("window too large: {0} entries")]
    WindowTooLarge(usize),

    #[error("multiplier cannot be serialized: {0}")]
    NotSerializable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
