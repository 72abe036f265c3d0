use thiserror::Error;

/// Errors raised by the arithmetic and decomposition layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfdError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by zero polynomial")]
    ZeroPolynomialDivision,
    #[error("gcd of zero polynomials")]
    ZeroGcd,
    #[error("zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("modulus mismatch")]
    ModulusMismatch,
    #[error("series truncation order mismatch")]
    OrderMismatch,
    #[error("element is not invertible modulo the factor (common factor {gcd})")]
    NotInvertible { gcd: String },
    #[error("method requires linear factors")]
    RequiresLinearFactors,
    #[error("denominator factors are not pairwise coprime and squarefree")]
    NotCoprime,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = PfdError> = std::result::Result<T, E>;
