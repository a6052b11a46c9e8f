use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arguments {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("expected a positive modulus, got {0}")]
    NonPositiveModulus(String),
    #[error("matrix has non-integral entries")]
    NotIntegral,
    #[error("determinant must be positive, got {0}")]
    NonPositiveDet(String),
    #[error("determinant must be 1, got {0}")]
    DetNotOne(String),
    #[error("zero matrix has no primitive representative")]
    ZeroMatrix,
    #[error("matrix is not upper triangular")]
    NotUpperTriangular,
    #[error("matrix is not in B1+ (need a > 0 and ad = 1)")]
    NotInB1Plus,
    #[error("lower-left entry must be positive")]
    NonPositiveC,
    #[error("undefined at weight-2 origin")]
    WeightTwoOrigin,
    #[error("weight must be at least {min}, got {got}")]
    BadWeight { min: usize, got: usize },
    #[error("radicand {0} is too large for exact square roots")]
    RadicandTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("convergence guard violated: {0}")]
    Guard(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
