use thiserror::Error;

/// Errors raised by family construction and the geometric computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {what}[{index}]: {value}")]
    NonFinite {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: C has {c} entries, F has {f}")]
    LengthMismatch { c: usize, f: usize },

    #[error("sample space needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("F is constant; {{1, F}} must be linearly independent")]
    ConstantStatistic,

    #[error("invalid range: alpha0 = {alpha0} must be strictly below alphap = {alphap}")]
    InvalidRange { alpha0: f64, alphap: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("families live on sample spaces of different sizes ({left} vs {right})")]
    IncompatibleFamilies { left: usize, right: usize },

    #[error("family file: {0}")]
    Parse(String),

    #[error("degenerate family at theta = {theta}: variance {variance:e} underflows")]
    Degenerate { theta: f64, variance: f64 },
}

impl Error {
    /// True for errors caused by bad inputs, as opposed to a computation
    /// that could not be carried out on valid inputs.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Degenerate { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn ensure_finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite {
            what,
            index: 0,
            value,
        })
    }
}
