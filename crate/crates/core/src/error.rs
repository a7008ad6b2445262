use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown subsystem `{0}`")]
    UnknownSubsystem(String),

    #[error("subsystem `{0}` appears more than once")]
    DuplicateSubsystem(String),

    #[error("unsupported subsystem dimension {0} (only 2 and 3 are supported)")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("Kraus operators are not trace preserving (max deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("measurement basis is not orthonormal (max deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("registers do not match")]
    RegisterMismatch,

    #[error("selection does not partition the register: {0}")]
    NotAPartition(String),

    #[error("subsystems are entangled with the rest of the register (purity {0})")]
    NotSeparable(f64),

    #[error("resource is not maximally entangled (entropy {entropy} ebits, need {required})")]
    NotMaximallyEntangled { entropy: f64, required: f64 },

    #[error("resource does not match the expected state (overlap {0})")]
    ResourceMismatch(f64),

    #[error("input is outside the symmetric two-qubit subspace (weight {0:e} outside)")]
    NotSymmetric(f64),

    #[error("unknown protocol kind `{0}`")]
    UnknownKind(String),

    #[error("probe set is not the canonical {{H, V, D, R}} set")]
    InvalidProbeSet,

    #[error("visibility product p*eta = {0} is outside [0, 1]")]
    InvalidVisibility(f64),

    #[error("sample count {0} is below the minimum of 1000")]
    TooFewSamples(usize),

    #[error("linear system is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
