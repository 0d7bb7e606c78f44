use thiserror::Error;

/// Errors raised by the algebra, geometry and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a quaternion of modulus {0:e}")]
    ZeroDivision(f64),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("expansion center {0} is real; odd coefficients need a genuine sphere")]
    DegenerateCenter(String),

    #[error("point {0} is real; the spherical derivative is undefined there")]
    RealPoint(String),

    #[error("point {0} lies on the zero set of the denominator symmetrization")]
    PoleOnSymmetrizationZeroSet(String),

    #[error("pole of the classical transformation at {0}")]
    PoleAtPoint(String),

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("matrix is singular (Dieudonne determinant {0:e})")]
    SingularMatrix(f64),

    #[error("composite denominator vanishes identically")]
    DegenerateComposite,

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("factor swap is singular")]
    DegenerateSwap,

    #[error("matrix is not in Sp(1,1) (defect {0:e})")]
    NotSp11(f64),

    #[error("point {0} is outside the open unit ball")]
    OutsideBall(String),

    #[error("geodesic endpoints coincide")]
    CoincidentPoints,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Parse failures are usage errors; everything else is a domain error.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
