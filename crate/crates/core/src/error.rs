use thiserror::Error;

/// Everything that can go wrong in the loop / filter / representation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("evaluation point is off the unit circle (|z| - 1 = {0:e})")]
    OffCircle(f64),

    #[error("matrix polynomial is not unitary on the circle (defect {0:e})")]
    NonUnitary(f64),

    #[error("determinant is not a monomial (residual {0:e})")]
    NotMonomial(f64),

    #[error("loop has degree zero, nothing to peel")]
    DegreeZero,

    #[error("rank of the top coefficient is ambiguous (singular value {0:e})")]
    RankAmbiguous(f64),

    #[error("not an orthogonal projection (defect {0:e})")]
    InvalidProjection(f64),

    #[error("factorization check failed (residual {0:e})")]
    FactorizationCheck(f64),

    #[error("row data violates the orthogonality relation at lag {lag} (residual {residual:e})")]
    RowConditionViolated { lag: usize, residual: f64 },

    #[error("low-pass candidate violates the QMF sum condition (residual {0:e})")]
    QmfConditionViolated(f64),

    #[error("filter bank fails the QMF unitarity check (defect {0:e})")]
    BankNotUnitary(f64),

    #[error("invalid dimension: {0}")]
    WrongDimension(String),

    #[error("input vector is not a unit vector (|x| - 1 = {0:e})")]
    NonUnitInput(f64),

    #[error("corner subspace leak at basis index {0}")]
    CornerLeak(i64),

    #[error("isometry relation fails on the corner (residual {0:e})")]
    IsometryDefect(f64),

    #[error("scale mismatch: {0} vs {1}")]
    ScaleMismatch(usize, usize),

    #[error("lambda0 is 1 but the block form fails (residual {0:e})")]
    BlockFormViolated(f64),

    #[error("low-pass condition m0(1) = sqrt(N) fails (residual {0:e})")]
    LowPassViolated(f64),

    #[error("cascade grid of {0} samples exceeds the sample budget")]
    CascadeTooLarge(usize),

    #[error("eigen-solver failure: {0}")]
    EigenFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn shape(expected: impl Into<String>, got: impl Into<String>) -> Self {
        Error::ShapeMismatch { expected: expected.into(), got: got.into() }
    }
}
