//! Exact arithmetic substrate: rationals, polynomials over ℚ and over finite
//! fields, factorization modulo primes.
//!
//! Nothing here uses floating point.

mod ffield;
pub mod fpoly;
mod poly;
mod primality;
pub mod serde_str;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use ffield::{FiniteField, Fp, Fq};
pub use num_rational::BigRational;
pub use poly::{discriminant, poly_gcd, rat, rat_frac, resultant, Poly};
pub use primality::{factor_u64, is_prime, primes_in};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("polynomial vanishes modulo {0}")]
    ZeroModP(u64),
    #[error("coefficient denominator divisible by {0}")]
    DenominatorDivisibleByP(u64),
}

/// Reduces a rational to 𝔽_p; fails when `p` divides the denominator.
pub fn reduce_rational(c: &BigRational, p: u64) -> Result<u64, ExactError> {
    let pb = BigInt::from(p);
    let num = c.numer().mod_floor(&pb).to_u64().unwrap();
    let den = c.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return Err(ExactError::DenominatorDivisibleByP(p));
    }
    let k = Fp::new(p);
    Ok(k.mul(&num, &k.inv(&den).unwrap()))
}

/// Coefficients of `f` modulo `p`, trimmed.
pub fn reduce_poly(f: &Poly, p: u64) -> Result<Vec<u64>, ExactError> {
    let k = Fp::new(p);
    let v = f
        .coeffs()
        .iter()
        .map(|c| reduce_rational(c, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(fpoly::trim(&k, v))
}

/// Lifts a polynomial over 𝔽_p to ℤ[x] with coefficients in `[0, p)`.
pub fn lift_poly(g: &[u64]) -> Poly {
    Poly::from_bigints(&g.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}

/// Factors `f` over 𝔽_p into monic irreducibles with multiplicities.
///
/// The product of the factors equals `f mod p` up to the leading unit.
pub fn poly_factor_mod_p(f: &Poly, p: u64) -> Result<Vec<(Vec<u64>, usize)>, ExactError> {
    if !is_prime(p) {
        return Err(ExactError::CompositeModulus(p));
    }
    let fp = reduce_poly(f, p)?;
    if fp.is_empty() {
        return Err(ExactError::ZeroModP(p));
    }
    Ok(fpoly::factor(&Fp::new(p), &fp))
}

/// Outcome of the modular degree-pattern test for irreducibility over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityEvidence {
    /// No proper factor degree is compatible with every pattern seen.
    Irreducible,
    /// Some reduction mod a good prime has a repeated or missing structure that
    /// proves reducibility (only possible for non-squarefree input).
    Reducible,
    /// Degrees that every modular pattern still allows for a factor over ℚ.
    Undecided(Vec<usize>),
}

/// Degree-pattern evidence from factoring `f` modulo the first `trials` primes
/// that do not divide its discriminant.
///
/// A factor of degree `d` over ℚ forces `d` to be a subset sum of the factor
/// degrees modulo every good prime; intersecting those sets often leaves
/// nothing. Galois fields with non-cyclic group never become decided this way.
pub fn irreducibility_by_patterns(f: &Poly, trials: usize) -> IrreducibilityEvidence {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return IrreducibilityEvidence::Irreducible;
    }
    let disc = discriminant(f);
    if disc.is_zero() {
        return IrreducibilityEvidence::Reducible;
    }
    let den = f.denominator();
    let mut allowed: BTreeSet<usize> = (1..n).collect();
    let mut used = 0;
    let mut p = 2u64;
    while used < trials && p < 100_000 {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let pb = BigInt::from(p);
        if disc.numer().is_multiple_of(&pb) || den.is_multiple_of(&pb) || f.lead().unwrap().numer().is_multiple_of(&pb) {
            continue;
        }
        used += 1;
        let Ok(fs) = poly_factor_mod_p(f, p) else { continue };
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for (g, m) in &fs {
            let d = g.len() - 1;
            for _ in 0..*m {
                let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
                sums.extend(next);
            }
        }
        allowed.retain(|d| sums.contains(d));
        if allowed.is_empty() {
            return IrreducibilityEvidence::Irreducible;
        }
    }
    IrreducibilityEvidence::Undecided(allowed.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_mod_p_examples() {
        let f = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(poly_factor_mod_p(&f, 2).unwrap(), vec![(vec![1, 1], 2)]);
        assert_eq!(poly_factor_mod_p(&f, 5).unwrap(), vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        assert_eq!(poly_factor_mod_p(&f, 3).unwrap(), vec![(vec![1, 0, 1], 1)]);
        assert_eq!(poly_factor_mod_p(&f, 9), Err(ExactError::CompositeModulus(9)));
    }

    #[test]
    fn pattern_test() {
        assert_eq!(
            irreducibility_by_patterns(&Poly::from_ints(&[-2, 0, 0, 1]), 10),
            IrreducibilityEvidence::Irreducible
        );
        // (x^2 + 1)(x^2 + 2) keeps degree 2 alive forever
        let f = &Poly::from_ints(&[1, 0, 1]) * &Poly::from_ints(&[2, 0, 1]);
        assert_eq!(irreducibility_by_patterns(&f, 20), IrreducibilityEvidence::Undecided(vec![2]));
    }

    #[test]
    fn rational_reduction() {
        assert_eq!(reduce_rational(&rat_frac(1, 2), 7).unwrap(), 4);
        assert_eq!(reduce_rational(&rat_frac(-3, 2), 7).unwrap(), 2);
        assert!(reduce_rational(&rat_frac(1, 7), 7).is_err());
    }
}
