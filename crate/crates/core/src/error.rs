use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient specification is malformed.
    #[error("invalid coefficient spec: {0}")]
    Spec(String),

    /// Index past the last coefficient of a finite specification.
    #[error("index {n} is beyond the horizon {horizon} of this coefficient sequence")]
    Horizon { n: usize, horizon: usize },

    /// The q-step trace sits at a band edge (|Δ| = 2), so the eigenvalues coincide.
    #[error("degenerate block {block}: discriminant {delta} is within 1e-12 of ±2")]
    DegenerateBlock { block: usize, delta: f64 },

    #[error("block {block}: lower-left entry C = {c:e} vanishes, eigenvector frame is singular")]
    NonDiagonalizable { block: usize, c: f64 },

    #[error("x = {x} is outside the band interior of block {block} (|Δ| = {delta_abs})")]
    OutsideBand { x: f64, block: usize, delta_abs: f64 },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("m-function has a pole at z = {0}")]
    Pole(num_complex::Complex64),

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }
}
