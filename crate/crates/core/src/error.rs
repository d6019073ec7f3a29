use thiserror::Error;

/// Errors raised by poset, lattice and oracle operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relations force a cycle through element `{0}`")]
    Cycle(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("operation requires a nonempty poset")]
    EmptyPoset,
    #[error("size cap `{cap}` exceeded: {size} > {limit}")]
    SizeCapExceeded {
        cap: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("elements `{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("lattice was not built from the given poset")]
    MismatchedPair,
    #[error("poset is not simple")]
    NotSimple,
    #[error("arithmetic overflow in exact computation")]
    ArithmeticOverflow,
    #[error("h-polynomial did not stabilize: coefficient {index} is {value}")]
    StabilizationFailure { index: usize, value: i128 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(cap: &'static str, size: usize, limit: usize) -> Self {
        Error::SizeCapExceeded { cap, size, limit }
    }
}
