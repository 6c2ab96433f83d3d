use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operation requires GF(4), got GF(2^{k})")]
    UnsupportedField { k: u32 },
    #[error("extension degree {k} outside supported range 1..=16")]
    UnsupportedDegree { k: u32 },
    #[error("modulus {modulus:#x} does not have degree {k}")]
    ModulusDegree { k: u32, modulus: u32 },
    #[error("modulus {modulus:#x} is reducible over GF(2)")]
    ReduciblePolynomial { modulus: u32 },
    #[error("PG({r},2^{k}) needs {bits} code bits, more than the supported {max}")]
    CodeTooWide { r: u32, k: u32, bits: u32, max: u32 },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("code {code:#x} is outside the code range of the geometry")]
    OutOfRange { code: u128 },
    #[error("scalar multiple by zero")]
    ZeroScalar,
    #[error("the two points are projectively equal")]
    SamePoint,
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("line {line}: coordinate {value} is not an element of GF({q})")]
    BadCoordinate { line: usize, value: u64, q: u64 },
    #[error("line {line}: expected {expected} coordinates, got {got}")]
    WrongArity { line: usize, expected: usize, got: usize },
    #[error("line {line}: point repeats line {first}")]
    DuplicatePoint { line: usize, first: usize },
    #[error("line {line}: zero vector is not a point")]
    ZeroPoint { line: usize },
    #[error("line {line}: cannot parse {token:?}")]
    BadToken { line: usize, token: String },
    #[error("header declares {declared} but geometry is {actual}")]
    GeometryMismatch { declared: String, actual: String },
    #[error("bad geometry {0:?}, expected r,q with q a power of two")]
    BadGeometry(String),
    #[error("{0}")]
    Io(String),

    #[error("input is not a cap: {0}")]
    InvalidInput(String),
    #[error("cap has {n} points but the geometry only has {m}")]
    CapTooLargeForGeometry { n: usize, m: u128 },
    #[error("geometry too large: {0}")]
    GeometryTooLarge(String),
}

/// Coarse error class, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    NotACap,
    Parse,
    Resource,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            InvalidInput(_) => ErrorClass::NotACap,
            UnsupportedField { .. }
            | UnsupportedDegree { .. }
            | CapTooLargeForGeometry { .. }
            | GeometryTooLarge(_)
            | CodeTooWide { .. } => ErrorClass::Resource,
            _ => ErrorClass::Parse,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
