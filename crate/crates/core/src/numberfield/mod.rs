//! Absolute number fields ℚ[x]/(f), their elements, primes and orders.

mod embedding;
mod field;
pub mod lattice;
pub mod linalg;
pub mod order;
pub mod primes;
mod roots;

pub use embedding::FieldEmbedding;
pub use field::{NfElement, NumberField};
pub use order::{integral_basis, IntegralBasis};
pub use primes::{element_valuation, factor_rational_prime, lies_over, PrimeFactor};
pub use roots::complex_roots;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberFieldError {
    #[error("defining polynomial is constant")]
    ConstantPolynomial,
    #[error("defining polynomial is not monic")]
    NotMonic,
    #[error("defining polynomial has non-integer coefficients")]
    NotIntegral,
    #[error("defining polynomial is reducible: {0}")]
    Reducible(String),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero element has no inverse or valuation")]
    ZeroElement,
    #[error("{0} is not prime")]
    CompositeModulus(u64),
    #[error("{0} divides the index of the equation order")]
    IndexDivisor(u64),
    #[error("arithmetic failure: {0}")]
    Arithmetic(String),
    #[error("not a root: {0}")]
    NotARoot(String),
}
