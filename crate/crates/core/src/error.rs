use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller handed us something outside the supported domain.
    InvalidInput,
    /// Prime enumeration hit the hard ceiling.
    Ceiling,
    /// An internal invariant failed; this is a bug or a falsified identity.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element shape does not match the group tree")]
    ShapeMismatch,

    #[error("{what} has {size} elements, above the enumeration cap of {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: usize },

    #[error("matrix for {element} is not an automorphism of H: {reason}")]
    NotAutomorphism { element: String, reason: String },

    #[error("action closure is inconsistent at {element}: two words give different matrices")]
    InconsistentAction { element: String },

    #[error("action generators reach only {reached} of {order} group elements")]
    IncompleteAction { reached: usize, order: u64 },

    #[error("{divisor} does not divide {value}")]
    NotDividing { divisor: u64, value: u64 },

    #[error("{0} is not a fundamental negative discriminant")]
    NotFundamental(i64),

    #[error("|D| = {0} exceeds the supported bound of 10^7")]
    DiscriminantTooLarge(i64),

    #[error("form ({0}, {1}, {2}) is not primitive")]
    NonPrimitiveForm(i64, i64, i64),

    #[error("form ({0}, {1}, {2}) is not positive definite")]
    NonPositiveForm(i64, i64, i64),

    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),

    #[error("{0} is inert and has no degree-1 prime above it")]
    InertPrime(u64),

    #[error("objects belong to different class groups (D = {0} vs D = {1})")]
    ParentMismatch(i64, i64),

    #[error("subgroup is not contained in Gal(k(zeta_{modulus})/k)")]
    NotInGaloisGroup { modulus: u64 },

    #[error("no stable W-group below the prime ceiling {ceiling} ({detail})")]
    PrimeCeiling { ceiling: u64, detail: String },

    #[error("table is not a group: {0}")]
    NotAGroup(String),

    #[error("inadmissible group tree: {0}")]
    Inadmissible(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("corrupt trace: {0}")]
    CorruptTrace(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("group spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::PrimeCeiling { .. } => ErrorKind::Ceiling,
            Error::Internal(_) | Error::CorruptTrace(_) => ErrorKind::Internal,
            _ => ErrorKind::InvalidInput,
        }
    }
}
