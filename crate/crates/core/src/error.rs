use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("space mismatch: {0} vs {1}")]
    SpaceMismatch(&'static str, &'static str),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("closure exceeded bound {0}")]
    BoundExceeded(usize),

    #[error("element is central: every point is fixed")]
    CentralElement,

    #[error("eigenvalue outside the coefficient field (trace {0})")]
    EigenvalueOutsideField(String),

    #[error("zero pair has no image on the quadric")]
    ZeroPair,

    #[error("degenerate plane system: {0}")]
    Degenerate(String),

    #[error("unbalanced bidegree ({0},{1})")]
    UnbalancedBidegree(u32, u32),

    #[error("image under phi is zero")]
    PhiImageZero,

    #[error("image under phi is not a scalar multiple of the target")]
    NoSuchScalar,

    #[error("Reynolds sum vanished")]
    ZeroSum,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
