use alloc::string::String;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("argument `{0}` must be positive")]
    NonPositive(&'static str),
    #[error("divisor keys do not match the divisors of n = {n}")]
    DivisorKeys { n: u64 },
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("conductors differ: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("function is not even modulo {n}: value at {k} differs from value at gcd({k}, {n})")]
    NotEven { n: u64, k: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("power series has zero constant term")]
    ZeroConstantTerm,
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("unknown arithmetic function `{0}`")]
    UnknownFunction(String),
    #[error("function `{name}` expects {expected} parameter(s)")]
    FunctionParams { name: String, expected: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("weight system ({a},{b},{c};{n}) is not regular")]
    NonRegularWeights { a: u64, b: u64, c: u64, n: u64 },
    #[error("rational function is not a cyclotomic product on the divisors of {n}")]
    NotCyclotomicProduct { n: u64 },
    #[error("example index {0} is out of range 1..=12")]
    ExampleIndex(u32),
    #[error("internal arithmetic error: {0}")]
    Internal(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
