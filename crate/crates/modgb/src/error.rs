use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator is divisible by the field modulus {0}")]
    DenominatorDivisibleByModulus(u64),
    #[error("operands belong to different ambient modules: {0}")]
    SpecMismatch(String),
    #[error("the submodule equals the whole free module; a proper submodule is required")]
    FullModule,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("homogenization of the zero element is undefined")]
    HomogenizeZero,
    #[error("regular sequence search failed: {0}")]
    RegularSequenceSearch(String),
    #[error("internal size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
