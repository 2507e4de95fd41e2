use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("invalid intersection array: {0}")]
    InvalidArray(String),
    #[error("k_{index} = {value} is not an integer")]
    NonIntegral { index: usize, value: String },
    #[error("array is not realizable: {0}")]
    NotRealizable(String),
    #[error("multiplicity of eigenvalue {theta} is {raw}, not an integer")]
    MultiplicityNotIntegral { theta: String, raw: String },
    #[error("inconsistent spectrum: {0}")]
    InconsistentSpectrum(String),
    #[error("diameter {0} is below 3")]
    DiameterTooSmall(usize),
    #[error("a_1 = 0")]
    A1Zero,
    #[error("auxiliary parameter bound violated: {0}")]
    AuxBoundViolation(String),
    #[error("degenerate denominator at index {0}")]
    DegenerateDenominator(usize),
    #[error("epsilon identity fails at index {0}")]
    EpsilonIdentity(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("zero denominator at index {0}")]
    ZeroDenominator(usize),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("array is not tight")]
    NotTight,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("graph is not distance-regular: {0}")]
    NotDistanceRegular(String),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("edge partition bookkeeping failed: {0}")]
    Bookkeeping(String),
    #[error("count formula mismatch in {formula} at i = {i}, z = {z}: brute force {actual}, formula {expected}")]
    FormulaMismatch {
        formula: &'static str,
        i: usize,
        z: usize,
        actual: String,
        expected: String,
    },
    #[error("eigenvalue is trivial")]
    TrivialEigenvalue,
    #[error("rank cross-check failed: {0}")]
    RankMismatch(String),
    #[error("graph is not strongly regular: {0}")]
    NotStronglyRegular(String),
    #[error("line {line}: {detail}")]
    GraphParse { line: usize, detail: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("repeated edge {0} {1}")]
    MultiEdge(usize, usize),
    #[error("graph has {0} vertices; pass force to verify anyway")]
    TooLarge(usize),
    #[error("search budget of {0} candidates exceeded")]
    BudgetExceeded(u64),
    #[error("exact input required: {0}")]
    InexactInput(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
