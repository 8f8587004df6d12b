use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution for `{0}` is not a unit monomial but the variable carries a negative exponent")]
    NonInvertibleSubstitution(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("chart mismatch: `{0}` vs `{1}`")]
    ChartMismatch(String, String),
    #[error("element is not in the span of basis `{0}`")]
    NotInSpan(String),
    #[error("coordinates are not polynomial: {0}")]
    NotPolynomial(String),
    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("stratum is not obstructed: {0}")]
    NotObstructedStratum(String),
    #[error("rational part survives in the second chart: {residual}")]
    RationalPartSurvives { residual: String },
    #[error("Kodaira-Spencer map degenerate: rank {rank}, expected {expected}")]
    KsDegenerate { rank: usize, expected: usize },
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("truncation unstable between degree {0} and {1}")]
    TruncationUnstable(u32, u32),
    #[error("pair is not in D: {0}")]
    MembershipFails(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

pub type Result<T> = std::result::Result<T, Error>;
