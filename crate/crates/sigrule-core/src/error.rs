//! Error type shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
///
/// The variants are coarse on purpose: callers mostly need to distinguish
/// "the input data is malformed" (`Load`), "the caller asked for something
/// impossible" (`InvalidArgument`, `UnknownAttribute`), "the quantity does
/// not exist for this table" (`Undefined`), and "a pairwise condition has no
/// meaning here" (`NotApplicable`). Undefined measures are reported through
/// `Undefined` and never silently mapped to `0.0` or NaN.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed dataset input. The message carries row/column coordinates
    /// where they exist.
    #[error("load error: {0}")]
    Load(String),

    /// A literal refers to an attribute the relation does not have.
    #[error("unknown attribute: {0}")]
    UnknownAttribute(String),

    /// A parameter is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested measure has no value on this table (degenerate
    /// marginal, empty antecedent, zero null probability, ...).
    #[error("measure undefined: {0}")]
    Undefined(String),

    /// A pairwise test whose precondition fails; distinct from a `false`
    /// answer so that callers never confuse "does not hold" with
    /// "cannot be asked".
    #[error("condition not applicable: {0}")]
    NotApplicable(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn undefined(msg: impl Into<String>) -> Self {
        Error::Undefined(msg.into())
    }

    pub(crate) fn load(msg: impl Into<String>) -> Self {
        Error::Load(msg.into())
    }

    pub(crate) fn not_applicable(msg: impl Into<String>) -> Self {
        Error::NotApplicable(msg.into())
    }
}
