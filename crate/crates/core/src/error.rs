use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("p = 2 is not supported; the sum-rule polynomial needs p > 2")]
    EvenPrime,
    #[error("unsupported field parameters: {0}")]
    UnsupportedField(String),
    #[error("modulus polynomial is not irreducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("elements or rings do not match: {0}")]
    RingMismatch(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("presentation is not flat over W2: {0}")]
    NotFlat(String),
    #[error("degenerate localization: {0}")]
    DegenerateLocalization(String),
    #[error("map is not a well-defined algebra homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid total p-derivation: {0}")]
    InvalidDerivation(String),
    #[error("unsupported map shape for derivation lifting: {0}")]
    UnsupportedMap(String),
    #[error("invalid Frobenius lift: {0}")]
    InvalidLift(String),
    #[error("module map does not respect relations: {0}")]
    Inconsistent(String),
    #[error("gluing check failed: {0}")]
    Gluing(String),
    #[error("chart {0} is not smooth modulo p")]
    NotSmooth(String),
    #[error("chart {chart} has no splitting within degree bound {bound}")]
    ChartObstructed { chart: usize, bound: u32 },
    #[error("not a global section: {0}")]
    NotGlobalSection(String),
    #[error("cochains are not comparable: {0}")]
    Incomparable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
