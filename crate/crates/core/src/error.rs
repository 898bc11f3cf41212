use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("division by a non-integer literal at byte {pos}")]
    NonIntegerDivisor { pos: usize },

    #[error("expected a homogeneous polynomial of degree {expected}, got {found}")]
    WrongDegree { expected: u32, found: String },

    #[error("polynomial degree {0} exceeds the supported maximum of 4")]
    DegreeTooLarge(usize),

    #[error("projective order exceeds the bound {bound}")]
    OrderExceedsBound { bound: u32 },

    #[error("unsupported transformation: {0}")]
    UnsupportedOrder(String),

    #[error("eigenvalues do not split completely (found multiplicities summing to {0})")]
    IncompleteSplit(usize),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("Gröbner computation exceeded the budget of {budget} pairs")]
    ResourceLimit { budget: usize },

    #[error("surface is not smooth")]
    NotSmooth,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fixed locus has more than one curve of positive genus")]
    MultiplePositiveGenus,

    #[error("fixed locus has a singular curve whose genus is not resolved")]
    UnresolvedGenus,

    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,

    #[error("not an imaginary quadratic minimal polynomial: {0}")]
    NotImaginaryQuadratic(String),

    #[error("invalid matrix text: {0}")]
    MatrixFormat(String),
}
