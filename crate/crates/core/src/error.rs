use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by the kind of failure they report: invalid input,
/// violated mathematical hypotheses, and internal inconsistencies that should
/// never occur on valid data.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    // --- construction / parsing ---
    #[error("characteristic 2 unsupported")]
    CharacteristicTwo,
    #[error("characteristic 3 unsupported for {0}")]
    CharacteristicThree(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),

    // --- element / polynomial arithmetic ---
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero entry not allowed: {0}")]
    ZeroEntry(&'static str),
    #[error("operands live in different fields")]
    MismatchedFields,
    #[error("operation requires a finite field")]
    NotFinite,
    #[error("operation requires a prime base field")]
    NotPrimeBase,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial must be univariate in the marked variable")]
    NotUnivariate,
    #[error("polynomial has degree 0 in the eliminated variable")]
    DegreeZeroInVariable,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("embedding requires the target degree to be a multiple of the source degree")]
    BadEmbedding,

    // --- flag variety / charts ---
    #[error("pointed line is not a member of chart {0}")]
    NotInChart(String),
    #[error("span matrix does not have rank 2")]
    RankDeficient,
    #[error("marked point coefficients are both zero")]
    ZeroMarkedPoint,
    #[error("operation is only implemented for chart ((n,n+1),2)")]
    UnsupportedChart,

    // --- hypothesis violations (CLI exit code 3) ---
    #[error("hypersurface degree {d} is below the tangency threshold {min}")]
    DegreeTooSmall { d: usize, min: usize },
    #[error("curve is not smooth")]
    NotSmooth,
    #[error("non-general curve: hyperflex at a point of multiplicity {0}")]
    Hyperflex(usize),
    #[error("degenerate zero (non-reduced): Wronskian vanishes, reduced/separable hypotheses violated")]
    DegenerateZero,
    #[error("zero lies on the orienting divisor -- change coordinates")]
    OnOrientingDivisor,
    #[error("system has a positive-dimensional solution locus")]
    PositiveDimensional,
    #[error("contact order below {0}: not a zero of the jet section")]
    NotHighlyTangent(usize),
    #[error("odd top Chern number: hyperbolic Euler form requires an even count")]
    OddChernNumber,

    // --- internal inconsistencies (CLI exit code 4) ---
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to: 2 usage, 3 violated
    /// hypothesis, 4 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            DegreeTooSmall { .. } | NotSmooth | Hyperflex(_) | DegenerateZero
            | OnOrientingDivisor | PositiveDimensional | NotHighlyTangent(_)
            | OddChernNumber => 3,
            Internal(_) => 4,
            _ => 2,
        }
    }
}
