use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeCharacteristic(u64),
    #[error("degree too large: {0}")]
    DegreeTooLarge(String),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("vertices {0} and {1} are not opposite")]
    NotOpposite(String, String),
    #[error("chain broken at step {0}")]
    ChainBroken(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("difference set record is not verified")]
    UnverifiedInput,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("size guard exceeded: {0}")]
    SizeGuardExceeded(String),
    #[error("sphere truncated: {0}")]
    SphereTruncated(String),
    #[error("germ too shallow: {0}")]
    GermTooShallow(String),
    #[error("germ is not based at the given vertex")]
    GermNotBased,
    #[error("germs do not lie in a common flat: {0}")]
    NoCommonFlat(String),
    #[error("shape {0:?} is not regular")]
    NotRegular((u32, u32)),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("d = 0 is the trivial branch")]
    ZeroD,
    #[error("condition {bullet} failed: {detail}")]
    ConditionFailed { bullet: u8, detail: String },
    #[error("coset limit {0} exceeded")]
    CosetLimitExceeded(usize),
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("parse error: {0}")]
    Parse(String),
}
