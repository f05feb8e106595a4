use thiserror::Error;

/// Errors raised by the algebra, rewriting and verification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("no star image for generator `{0}`")]
    MissingStarImage(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator `{name}` at {line}:{col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("word `{0}` is not in the supplied basis")]
    BasisIncomplete(String),
    #[error("rewrite budget exceeded: {rules} rules (cap {cap})")]
    BudgetExceeded { rules: usize, cap: usize },
    #[error("confluence certified only up to degree {have}, degree {needed} required")]
    ConfluenceNotCertified { needed: usize, have: usize },
    #[error("unknown algebra `{0}`")]
    UnknownName(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("linear system has a {0}-dimensional solution space; truncation too small")]
    NonUniqueSolution(usize),
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),
    #[error("invalid Galois witness: {0}")]
    InvalidWitness(String),
    #[error("gram matrix is not positive definite (smallest eigenvalue {0})")]
    NonPositiveGram(f64),
    #[error("Groebner degree cap {0} exceeded")]
    DegreeCapExceeded(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
