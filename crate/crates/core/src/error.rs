use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("polynomial is not homogeneous: found terms of degree {first} and {second}")]
    NonHomogeneous { first: u32, second: u32 },

    #[error("division by a non-literal at position {pos}")]
    NonLiteralDivision { pos: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("expected a polynomial in the {expected} variables, got {found}")]
    WrongVarSpace {
        expected: &'static str,
        found: &'static str,
    },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("degree {degree} is outside the tabulated range 0..={max}")]
    DegreeOutOfRange { degree: i64, max: i64 },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("not a complete intersection: the quotient is too large in degree {degree}")]
    NotCompleteIntersection { degree: usize },

    #[error("Lefschetz degree k = {k} is outside [0, T/2) for T = {socle_degree}")]
    KOutOfRange { k: usize, socle_degree: usize },

    #[error("the linear form must be nonzero")]
    ZeroLinearForm,

    #[error("expected a linear form, got degree {0}")]
    NotLinear(u32),

    #[error("the zero form has no associated geometry")]
    ZeroForm,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
