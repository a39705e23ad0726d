use thiserror::Error;

/// Errors raised by the exact-arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("denominator vanishes modulo {p}")]
    DenominatorCollision { p: u64 },
    #[error("substitution rule has no image for variable `{0}`")]
    MissingVariable(String),
    #[error("substitution rule is not block-homogeneous: {0}")]
    InhomogeneousRule(String),
    #[error("polynomials do not share a grading: {0}")]
    MixedDegree(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("dimension data does not fit a polynomial of degree at most 3")]
    NonPolynomialData,
    #[error("leading coefficient does not give a positive integer degree: {0}")]
    NonIntegerDegree(String),
    #[error("no admissible twist exists: {0}")]
    NoAdmissibleTwist(String),
    #[error("action is not diagonal on the given basis: {0}")]
    NonDiagonalizable(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate parameters: (0, 0) does not define a hyperplane")]
    DegenerateParameters,
    #[error("no member accepted after {0} draws")]
    RejectionExhausted(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("check `{check}` failed: {detail}")]
    Verification { check: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn verification(check: &str, detail: impl Into<String>) -> Error {
    Error::Verification { check: check.to_string(), detail: detail.into() }
}
