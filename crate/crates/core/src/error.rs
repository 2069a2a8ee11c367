use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("groupoid axiom `{axiom}` violated: {detail}")]
    AxiomViolation { axiom: &'static str, detail: String },
    #[error("index {index} out of range for {what} (size {size})")]
    IndexError {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("elements {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("element set is not a subgroupoid: {0}")]
    NotSubgroupoid(String),
    #[error("element belongs to a different algebra (expected length {expected}, got {actual})")]
    GroupoidMismatch { expected: usize, actual: usize },
    #[error("groupoid is not a group bundle: element {0} has r != s")]
    NotGroupBundle(usize),
    #[error("element {0} is not a unit")]
    NotAUnit(usize),
    #[error("spectral gap below tolerance after {retries} reseeds (smallest gap {gap:e})")]
    NumericalDegeneracy { retries: usize, gap: f64 },
    #[error("ideal closure is not a sum of blocks: {0}")]
    ClosureNotIdeal(String),
    #[error("C(units) is not central: element {0} has r != s")]
    NotCentralInclusion(usize),
    #[error("functional is not positive: Gram eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("function is not positive definite: Gram eigenvalue {0:e}")]
    NotPositiveDefinite(f64),
    #[error("normalizer #{0} does not normalize the subalgebra")]
    NotANormalizer(usize),
    #[error("inclusion is not regular: {0}")]
    NotRegularInclusion(String),
    #[error("basis does not span a *-subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("inclusion is degenerate: {0}")]
    DegenerateInclusion(String),
    #[error("element has support outside the interior isotropy at element {0}")]
    SupportOutsideInteriorIsotropy(usize),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("corpus of {0} instances exceeds the hard cap of {1}")]
    BoundTooLarge(usize, usize),
    #[error("lattice of 2^{0} ideals is too large to enumerate")]
    LatticeTooLarge(usize),
    #[error("instance {id} ({name}) aborted: {detail}")]
    Instance { id: usize, name: String, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
