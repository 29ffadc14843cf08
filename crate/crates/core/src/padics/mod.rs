//! Capped-precision arithmetic in unramified extensions of ℚ_p.
//!
//! The logarithm uses the Iwasawa branch: log_p(p) = 0 and every root of
//! unity has logarithm zero.

mod embed;
mod hensel;
mod log;
mod number;
mod zq;

pub use embed::{padic_embeddings, padic_embeddings_in, PadicEmbedding, PadicEmbeddings};
pub use hensel::{hensel_lift, root_of_unity, teichmuller};
pub use log::{plog, plog_with_terms};
pub use number::{PadicContext, PadicJson, PadicNumber};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    CompositeModulus(u64),
    #[error("precision {0} is below the minimum of 10")]
    PrecisionTooSmall(u32),
    #[error("inertia degree must be positive")]
    InvalidDegree,
    #[error("value is not p-integral")]
    NotIntegral,
    #[error("no significant digits left")]
    PrecisionExhausted,
    #[error("value is not a unit")]
    NotAUnit,
    #[error("division by zero")]
    DivisionByZero,
    #[error("number belongs to a different p-adic context")]
    ContextMismatch,
    #[error("malformed digit data")]
    MalformedDigits,
    #[error("residue is not a simple root")]
    NotSimpleRoot,
    #[error("residue is not a root")]
    NoRoot,
    #[error("zero residue has no Teichmüller lift")]
    ZeroResidue,
    #[error("logarithm of zero")]
    ZeroInput,
    #[error("{0} ramifies or divides the index")]
    RamifiedPrime(u64),
    #[error("no primitive {m}-th root of unity in a residue field of size {q}")]
    NoRootOfUnity { m: u64, q: String },
    #[error("context degree {context} is not a multiple of {needed}")]
    DegreeMismatch { context: usize, needed: usize },
}
