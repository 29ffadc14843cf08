//! Exact arithmetic for dihedral weight-one Hilbert eigenforms.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`] — rationals, dense polynomials over ℚ and over finite fields,
//!   factorization modulo primes.
//! * [`numberfield`] — absolute number fields ℚ[x]/(f), norms, Kummer–Dedekind
//!   factorization and valuations, lattices for generator searches.
//! * [`padics`] — capped-precision unramified p-adic fields, Hensel lifting,
//!   Teichmüller lifts, the Iwasawa logarithm and p-adic embeddings.
//! * [`galois`] — Galois groups given by automorphism images, dihedral data,
//!   characters with exact cyclotomic values and Frobenius elements.
//! * [`deformation`] — tangent-space dimension and étaleness verdicts computed
//!   from a splitting profile.
//! * [`qexp`] — λ-units, eigen-projected unit logarithms and the coefficients of
//!   the generalized eigenform.

pub mod deformation;
pub mod exact;
pub mod galois;
pub mod numberfield;
pub mod padics;
pub mod qexp;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
