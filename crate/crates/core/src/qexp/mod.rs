//! Coefficients of the generalized eigenform at a weight-one theta point:
//! λ-units, their ψ♥-projected p-adic logarithms, the homomorphism Ψ′, and
//! the per-prime coefficient with its invariance checks.
//!
//! Conventions. `a∘b` applies b first; ι_j∘s = ι_{π_s(j)} on the p-adic
//! embedding labels. Products of group elements written multiplicatively
//! are read as g·h = h∘g, so η(s) = ψ(s∘σ), and Frob_{gλ} = g∘Frob_λ∘g⁻¹.
//! With these, Ψ′(h₀(u)) = ψ♥(h₀)⁻¹·Ψ′(u) for h₀ ∈ G″.

mod coefficient;
mod lambda;
mod setup;

pub use coefficient::{
    eigen_unit_log, frobenius_side_log, generalized_coefficient, generalized_coefficient_with, psi_prime,
    Classification, CoefficientOptions, CoefficientReport, LambdaValue,
};
pub use lambda::{find_lambda_unit, find_lambda_units, ideal_power_basis, LambdaUnit, SearchBound};
pub use setup::{CoefficientSetup, SetupSpec, StabilizedPrime};

use crate::galois::GaloisError;
use crate::numberfield::NumberFieldError;
use crate::padics::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QexpError {
    #[error("no λ-unit found with exponent h ≤ {max_h}")]
    BoundExceeded { max_h: u32 },
    #[error("λ has the wrong splitting shape: {0}")]
    PreconditionSplit(String),
    #[error("ψ♥ is trivial")]
    DegenerateCharacter,
    #[error("p-adic embedding data does not cover {0}")]
    EmbeddingGap(String),
    #[error("input is not a unit at every place above p")]
    NonUnitInput,
    #[error("{0} divides the tame level or p")]
    ExcludedPrime(u64),
    #[error("hypothesis fails: {0}")]
    HypothesisFailure(String),
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Field(#[from] NumberFieldError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::deformation::StabClass;
    use crate::exact::rat_frac;
    use crate::numberfield::{NfElement, NumberField};

    fn el(k: &NumberField, v: [(i64, i64); 8]) -> NfElement {
        k.element(v.iter().map(|&(a, b)| rat_frac(a, b)).collect()).unwrap()
    }

    /// D4 octic ℚ(X, i), X⁴ = X² + 1, over F = ℚ with M = ℚ(√5), p = 11.
    pub(crate) fn octic_spec() -> SetupSpec {
        let h = NumberField::from_ints(&[1, -2, 2, 2, -2, 2, 2, -2, 1]).unwrap();
        let x = el(&h, [(-3, 2), (1, 2), (0, 1), (-3, 2), (3, 2), (1, 2), (-1, 1), (1, 2)]);
        let g1 = el(&h, [(1, 1), (3, 2), (1, 1), (3, 2), (2, 1), (-1, 2), (0, 1), (1, 2)]);
        let g2 = el(&h, [(1, 1), (-3, 2), (0, 1), (3, 2), (-2, 1), (-1, 2), (1, 1), (-1, 2)]);
        let sigma = el(&h, [(1, 1), (-2, 1), (-1, 2), (1, 2), (-2, 1), (0, 1), (1, 2), (-1, 2)]);
        SetupSpec {
            base: NumberField::from_ints(&[0, 1]).unwrap(),
            base_image: h.zero(),
            m: NumberField::from_ints(&[-1, -1, 1]).unwrap(),
            m_image: h.mul(&x, &x),
            automorphisms: vec![g1.clone(), g2.clone(), sigma.clone()],
            sigma,
            psi_order: 2,
            psi_generators: vec![(g1, 1), (g2.clone(), 0)],
            conjugation: Some(g2),
            p: 11,
            precision: 30,
            stabilization: vec![StabClass::IPrime],
            alpha_weights: None,
            tame_level: vec![2, 5],
            search: SearchBound::default(),
            h,
        }
    }

    #[test]
    fn octic_setup() {
        let s = CoefficientSetup::new(octic_spec()).unwrap();
        assert_eq!(s.embeddings.len(), 8);
        assert_eq!(s.iprime.len(), 1);
        assert!(!s.heart.degenerate);
        assert!(s.heart_field_is_cm());
        let prof = s.splitting_profile(true, true);
        assert_eq!(prof.split_degree(), 1);
    }

    #[test]
    fn octic_inert_prime() {
        let s = CoefficientSetup::new(octic_spec()).unwrap();
        let r = generalized_coefficient(&s, 7).unwrap();
        assert_eq!(r.len(), 1);
        let r = &r[0];
        assert_eq!(r.classification, Classification::Inert);
        // Frob has order 4 at 7, so Σ_7 has two primes
        assert_eq!(r.per_lambda.len(), 2);
        assert!(r.invariance_ok);
        assert!(r.invariance_agreement.unwrap() >= 25);
        assert!(r.per_lambda.iter().all(|l| l.frobenius_side_agreement.unwrap() >= 25));
        assert!(!r.raw_value.as_ref().unwrap().is_zero());
    }

    #[test]
    fn octic_split_and_excluded() {
        let s = CoefficientSetup::new(octic_spec()).unwrap();
        let r = &generalized_coefficient(&s, 19).unwrap()[0];
        assert_eq!(r.classification, Classification::Split);
        assert!(r.raw_value.as_ref().unwrap().is_exact_zero());
        assert_eq!(r.classical_eigenvalues.len(), 2);
        for ell in [2, 5, 11] {
            assert_eq!(generalized_coefficient(&s, ell).unwrap()[0].classification, Classification::Excluded);
        }
    }
}
