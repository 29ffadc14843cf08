//! Galois groups as explicit automorphisms, Frobenius elements, characters
//! with cyclotomic values, and the dihedral structure around σ.
//!
//! Composition is that of maps: `a∘b` applies `b` first. If θ ↦ P_s(θ)
//! describes s, then P_{a∘b} = P_b(P_a(θ)), and on the labels of the p-adic
//! embeddings ι_j ∘ s = ι_{π_s(j)} with π_{a∘b} = π_b ∘ π_a.

mod character;
mod dihedral;
mod frobenius;
mod group;
mod reps;

pub use character::{Character, Cyclo};
pub use dihedral::{eta_value, heart_character, DihedralData, HeartCharacter};
pub use frobenius::{frobenius_at, prime_image};
pub use group::GaloisGroup;
pub use reps::{eigenspace_dims, multiplicity_bound, InducedCharacter, MultiplicityBound};

use crate::numberfield::NumberFieldError;
use crate::padics::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("{0} is not an automorphism")]
    NotAutomorphism(String),
    #[error("group of order {order} cannot be the Galois group of a degree-{degree} field")]
    NotGalois { order: usize, degree: usize },
    #[error("element {0} is not in the group")]
    UnknownElement(usize),
    #[error("{0} ramifies")]
    RamifiedPrime(u64),
    #[error("{0} is excluded")]
    ExcludedPrime(u64),
    #[error("no automorphism reduces to Frobenius modulo {0}")]
    NoFrobenius(u64),
    #[error("{0} divides a denominator of the automorphism data")]
    DenominatorDivisible(u64),
    #[error("character values are not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("element {0} lies outside the subgroup")]
    NotInSubgroup(usize),
    #[error("element {0} lies in Gal(H/M)")]
    ElementInGM(usize),
    #[error("invalid subgroup: {0}")]
    BadSubgroup(String),
    #[error("invalid σ: {0}")]
    BadSigma(String),
    #[error("invalid complex conjugation: {0}")]
    BadConjugation(String),
    #[error("τ is not an involution")]
    NonInvolution,
    #[error("eigenspace dimensions are not non-negative integers")]
    NonIntegralResult,
    #[error(transparent)]
    Field(#[from] NumberFieldError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
