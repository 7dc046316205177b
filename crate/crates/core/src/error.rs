use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the origin is a branch point and has no surface representation")]
    BranchPoint,
    #[error("angle {theta} lies on a sector boundary (integer multiple of pi)")]
    SectorBoundary { theta: f64 },
    #[error("invalid contour parameters: {0}")]
    ContourParameter(String),
    #[error("series evaluation at |z| = {rho} exceeds the cutoff {cutoff}")]
    SeriesDomain { rho: f64, cutoff: f64 },
    #[error("integer order {nu} is not supported by the J(+nu)/J(-nu) construction")]
    IntegerOrder { nu: f64 },
    #[error("asymptotic expansion requested at |z| = {rho} below the minimum {min}")]
    AsymptoticDomain { rho: f64, min: f64 },
    #[error("label M = {m} is a multiple of 2N = {two_n}")]
    ForbiddenLabel { m: i64, two_n: i64 },
    #[error("start point at theta = {theta} is not in sector S_0")]
    Sector { theta: f64 },
    #[error("step size underflow at s = {s} (h = {step:e})")]
    Stiffness { s: f64, step: f64 },
    #[error("coefficient decomposition failed: {0}")]
    Decomposition(String),
    #[error("eigenvalues {a} and {b} are too close to separate eigenvectors")]
    Degeneracy { a: f64, b: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Whether the error comes from a numerical breakdown rather than from
    /// bad parameters.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Stiffness { .. } | Error::Decomposition(_) | Error::Degeneracy { .. }
        )
    }
}
