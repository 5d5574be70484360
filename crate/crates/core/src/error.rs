use thiserror::Error;

/// Errors raised while building, compiling or evaluating rotation circuits.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid register: {0}")]
    InvalidRegister(String),

    #[error("register size {n} exceeds the limit of {limit} qubits (set ROTCC_MAX_N to override)")]
    QubitLimit { n: usize, limit: usize },

    #[error("control mask {mask:#b} is out of range for a {n}-qubit register")]
    InvalidMask { mask: u32, n: usize },

    #[error("non-finite rotation angle {theta} on control mask {mask:#b}")]
    NonFiniteAngle { mask: u32, theta: f64 },

    #[error("polynomial has no coefficients")]
    EmptyPolynomial,

    #[error("non-finite polynomial coefficient a_{index} = {value}")]
    NonFiniteCoefficient { index: usize, value: f64 },

    #[error("enumerating {n}^{degree} control tuples exceeds the limit of {limit}")]
    EnumerationGuard { n: usize, degree: usize, limit: u64 },

    #[error("argument {x} is outside the domain of {function}")]
    Domain { function: String, x: f64 },

    #[error("{function} is undefined at argument {x} (mask {mask:#b})")]
    Undefined { function: String, x: f64, mask: u32 },

    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    #[error("every input was excluded from the error metrics")]
    AllExcluded,

    #[error("register mismatch: {0}")]
    RegisterMismatch(String),

    #[error("invalid expression `{expr}`: {reason}")]
    Expression { expr: String, reason: String },

    #[error("sweep stage n = {n}, budget = {budget} failed: {source}")]
    Stage { n: usize, budget: String, source: Box<Error> },

    #[error("malformed circuit document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
