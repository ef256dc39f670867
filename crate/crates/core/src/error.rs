use thiserror::Error;

/// Errors produced by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("element is not real; its sign is undefined")]
    NotReal,
    #[error("sign certification did not separate the value from zero within {0} bits")]
    PrecisionExceeded(u32),
    #[error("order {from} does not divide {to}")]
    IncompatibleOrder { from: u32, to: u32 },
    #[error("matrix {0} is not unitary")]
    NotUnitary(usize),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("matrix is not Hermitian at entry ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("positivity ratio undefined: the polynomial has no nonzero eigenvalues")]
    EmptySpectrum,
    #[error("coefficient of x^{0} y^{1} is not an integer")]
    NonIntegerCoefficient(u32, u32),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
