use thiserror::Error;

pub type Result<T> = std::result::Result<T, QssError>;

#[derive(Debug, Clone, Error)]
pub enum QssError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("trace is not one: |Tr - 1| = {deviation:e}")]
    NotUnitTrace { deviation: f64 },
    #[error("matrix is not traceless: |Tr| = {deviation:e}")]
    NotTraceless { deviation: f64 },
    #[error("matrix is not positive definite: smallest eigenvalue = {min_eigenvalue:e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("dimension {n} is too small (need n >= {min})")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tangent data is attached to a different base point")]
    BaseMismatch,
    #[error("Hermitian eigendecomposition did not converge")]
    DecompositionFailed,
    #[error("matrix is outside the SLD image: |Tr(rho Xi + Xi rho)| = {deviation:e}")]
    NotInSldSpace { deviation: f64 },
    #[error("negative time {t} requested but negative times are disabled")]
    NegativeTimeDisabled { t: f64 },
    #[error("invalid step: {reason}")]
    InvalidStep { reason: String },
    #[error("integration failed at t = {time}: {reason}")]
    StepTooLarge { time: f64, reason: String },
    #[error("component {index} is zero ({value:e}); vector lies outside every orthant chart")]
    ZeroComponent { index: usize, value: f64 },
    #[error("vector is not on the unit sphere: |‖w‖ - 1| = {deviation:e}")]
    NotOnSphere { deviation: f64 },
    #[error("sign vector entries must be exactly +1 or -1 (index {index})")]
    InvalidSign { index: usize },
    #[error("point is not in the open simplex: {reason}")]
    NotInSimplex { reason: String },
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },
    #[error(
        "search budget exhausted after {evaluations} evaluations (best residual {best_residual:e})"
    )]
    SearchBudgetExhausted {
        evaluations: usize,
        best_residual: f64,
        best: Box<crate::verify::ConjectureProbeResult>,
    },
}
