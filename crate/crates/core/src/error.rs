use thiserror::Error;

/// Errors raised across the library.
///
/// Decoding failures are not errors: decoders return empty lists or `None`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("modulus degree {got} does not match extension degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficient {0} out of range for the field")]
    BadElement(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("duplicate interpolation point")]
    DuplicatePoint,
    #[error("field of size {q} exceeds the limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("message degree {degree} is not below k = {k}")]
    DegreeTooHigh { degree: usize, k: usize },
    #[error("enumeration of {size} items exceeds the limit {limit}")]
    CodeTooLarge { size: u128, limit: u128 },
    #[error("radius {t} exceeds the guaranteed list-decoding radius {max}")]
    RadiusTooLarge { t: usize, max: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("degenerate tower: h = 1 leaves h(a) = 0 at some a in F_q")]
    DegenerateTower,
    #[error("witness must have {expected} distinct points, got {got}")]
    WrongWitnessSize { expected: usize, got: usize },
    #[error("budget of {0} draws exceeded")]
    BudgetExceeded(u64),
    #[error("cannot factor {0} by trial division")]
    CannotFactor(u64),
    #[error("element is not in the subgroup generated by the base")]
    NotInSubgroup,
    #[error("relation does not hold in the extension field")]
    RelationCheck,
    #[error("solver failed on component {0}")]
    SolverFailed(usize),
    #[error("state dimension {dim} exceeds the limit {limit}")]
    StateTooLarge { dim: u128, limit: u128 },
    #[error("decoder returned no codeword for a basis vector")]
    DecoderNotTotal,
    #[error("value {0} outside the admissible range")]
    OutOfRange(f64),
    #[error("dual coset {0:?} has zero weight")]
    VanishingCoset(Vec<u32>),
    #[error("no coset member of exact weight up to {0}")]
    NoExactWeightSolution(usize),
    #[error("post-selection failed {0} times in a row")]
    PostSelectionFailed(u32),
    #[error("instance with {size} subsets exceeds the limit {limit}")]
    InstanceTooLarge { size: u128, limit: u128 },
    #[error("integer overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
