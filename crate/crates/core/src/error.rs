use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("split normal must be non-zero")]
    ZeroNormal,

    #[error("alpha·f = {0} is integral, so alpha is not in Z_f")]
    IntegralProduct(String),

    #[error("fractional part of f is zero; the GMI function is undefined")]
    IntegralGmiAnchor,

    #[error("degenerate pullback: {0}")]
    DegeneratePullback(String),

    #[error("lifted split needs a non-zero last normal coordinate")]
    MissingLiftCoordinate,

    #[error("lifting map undefined at column {0}")]
    IncompleteLifting(String),

    #[error("invalid corner relaxation: {0}")]
    InvalidRelaxation(String),

    #[error("duplicate column {0}")]
    DuplicateColumn(String),

    #[error("cut tables do not match the relaxation columns: {0}")]
    ColumnMismatch(String),

    #[error("point is not in the linear relaxation: {0}")]
    NotInLinearRelaxation(String),

    #[error("point violates the lattice-free split cut (value {0} < 1); no hull certificate exists")]
    CutViolated(String),

    #[error("the alpha-cut does not dominate the given cut at {0}")]
    NotDominated(String),

    #[error("period strategy needs a one-row relaxation, got n = {0}")]
    PeriodNeedsOneRow(usize),

    #[error("epsilon must be a positive rational, got {0}")]
    BadEpsilon(String),

    #[error("split closure LP is {0}")]
    ClosureLp(&'static str),

    #[error("malformed LP: {0}")]
    MalformedLp(String),

    #[error("LP certificate failed verification: {0}")]
    Certificate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
