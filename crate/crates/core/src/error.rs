use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Shape and precondition failures shared by every module.
///
/// Check-style operations (QLS validation, Hadamard validation, ...) report
/// property violations through their own structured types instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("invalid density matrix: {reason}")]
    InvalidDensity { reason: &'static str },
    #[error("not a Latin square: {reason}")]
    InvalidLatinSquare { reason: &'static str },
    #[error("state is not maximally entangled (partial-trace residual {residual:e})")]
    NotMaximallyEntangled { residual: f64 },
    #[error("family must have {expected} members, found {found}")]
    FamilyLength { expected: usize, found: usize },
    #[error("family needs at least 2 members, found {found}")]
    FamilyTooShort { found: usize },
    #[error("order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown fixture {name:?}; valid names: {valid:?}")]
    UnknownFixture {
        name: alloc::string::String,
        valid: &'static [&'static str],
    },
    #[error(transparent)]
    Ueb(#[from] crate::ueb::UebViolation),
}
