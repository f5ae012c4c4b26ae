use thiserror::Error;

/// Errors raised by circuit construction, simulation and estimation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{requested} qubits exceeds the simulator cap of {cap}")]
    QubitCap { requested: usize, cap: usize },
    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(f64),
    #[error("k = {0} is even and has no inverse modulo a power of two")]
    EvenMultiplier(u64),
    #[error("addend {addend} does not fit in {width} bits")]
    AddendOutOfRange { addend: u64, width: usize },
    #[error("sequence length bound {0} exceeds the enumeration limit of 16")]
    LengthBound(usize),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("one-body block is not hermitian at ({p}, {q}): {forward} vs {backward}")]
    NonHermitian { p: usize, q: usize, forward: f64, backward: f64 },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("r squared is zero; the inverse square root is singular")]
    SingularInput,
    #[error("initial guess outside the convergence basin (a0^2 r^2 = {0})")]
    OutsideBasin(f64),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("ladder span must be at least 2, got {0}")]
    SpanTooShort(usize),
    #[error("ancilla registers were not restored: retained weight {0}")]
    AncillaNotRestored(f64),
    #[error("circuit contains non-unitary operations")]
    NonUnitary,
    #[error("no point is feasible under the cost function")]
    Infeasible,
    #[error("io error: {0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
