use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid necklace: {0}")]
    InvalidNecklace(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{context}: did not converge (relative residual {residual:.3e})")]
    NumericFailure { context: &'static str, residual: f64 },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("degenerate case: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} eigenvalues within tolerance of the origin; the digraph has no spanning converging tree")]
    NoSpanningTree(usize),

    #[error("predicate does not change between r = {lo} and r = {hi}")]
    Bracket { lo: f64, hi: f64 },

    #[error("invalid frequency variable: {0}")]
    InvalidFrequencyVariable(String),
}

impl Error {
    /// True for failures of floating-point machinery rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NumericFailure { .. })
    }
}
