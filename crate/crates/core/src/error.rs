use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched arity: expected {expected} symplectic pairs, got {found}")]
    MismatchedArity { expected: usize, found: usize },
    #[error("matrix is not symplectic")]
    NonSymplecticMatrix,
    #[error("axis {axis} out of range for {n} symplectic pairs")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("generator {index} is not symplectic")]
    NonSymplecticGenerator { index: usize },
    #[error("group order exceeds cap {cap}")]
    OrderExceedsCap { cap: usize },
    #[error("element does not have finite order within {cap}")]
    NotFiniteOrder { cap: usize },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("unknown class key {0}")]
    UnknownClassKey(String),
    #[error("cochain is not normalized")]
    NotNormalized,
    #[error("cochain is not G-invariant")]
    NotInvariant,
    #[error("cochain family is not equivariant")]
    NotEquivariant,
    #[error("cochain basis does not match the complex: {0}")]
    BasisMismatch(String),
    #[error("eigenvalue equal to 1 in the moving block (pair {0})")]
    DegenerateAlpha(usize),
    #[error("cochain does not lie in the requested summand")]
    WrongSummand,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("window too small: {0}")]
    WindowTooSmall(usize),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
