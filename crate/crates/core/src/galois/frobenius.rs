use num_bigint::BigUint;

use super::{GaloisError, GaloisGroup};
use crate::exact::{fpoly, reduce_poly, ExactError, Fp};
use crate::numberfield::{factor_rational_prime, NfElement, NumberFieldError, PrimeFactor};

fn reduce(x: &NfElement, ell: u64, modulus: &[u64]) -> Result<Vec<u64>, GaloisError> {
    let fp = Fp::new(ell);
    match reduce_poly(&x.to_poly(), ell) {
        Ok(v) => Ok(fpoly::rem(&fp, &v, modulus)),
        Err(ExactError::DenominatorDivisibleByP(_)) => Err(GaloisError::DenominatorDivisible(ell)),
        Err(e) => Err(GaloisError::Field(NumberFieldError::Arithmetic(e.to_string()))),
    }
}

fn check_prime(group: &GaloisGroup, ell: u64, excluded: &[u64]) -> Result<(), GaloisError> {
    if excluded.contains(&ell) {
        return Err(GaloisError::ExcludedPrime(ell));
    }
    let factors = match factor_rational_prime(group.field(), ell) {
        Ok(f) => f,
        Err(NumberFieldError::IndexDivisor(_)) => {
            // ℓ | [O : ℤ[θ]] forces ℓ² | disc(f); only excluded primes may do that
            return Err(GaloisError::RamifiedPrime(ell));
        }
        Err(e) => return Err(e.into()),
    };
    if factors.iter().any(|q| q.e > 1) {
        return Err(GaloisError::RamifiedPrime(ell));
    }
    if group.has_denominator_divisible_by(ell) {
        return Err(GaloisError::DenominatorDivisible(ell));
    }
    Ok(())
}

/// The Frobenius element at the prime λ = (ℓ, g(θ)): the unique s with
/// s(x) ≡ x^q mod λ, where q = ℓ^`q_exponent` is the size of the residue
/// field of ℓ in the base field.
pub fn frobenius_at(
    group: &GaloisGroup,
    lambda: &PrimeFactor,
    q_exponent: u32,
    excluded: &[u64],
) -> Result<usize, GaloisError> {
    let ell = lambda.residue_char;
    check_prime(group, ell, excluded)?;
    let fp = Fp::new(ell);
    let g = &lambda.local_generator;
    let q = BigUint::from(ell).pow(q_exponent);
    let target = fpoly::powmod(&fp, &[0, 1], &q, g);
    for s in 0..group.order() {
        if reduce(group.image(s), ell, g)? == target {
            return Ok(s);
        }
    }
    Err(GaloisError::NoFrobenius(ell))
}

/// Index in `primes` of s(λ) for the prime λ = `primes[lambda]` above ℓ.
pub fn prime_image(
    group: &GaloisGroup,
    s: usize,
    primes: &[PrimeFactor],
    lambda: usize,
) -> Result<usize, GaloisError> {
    let ell = primes[lambda].residue_char;
    let fp = Fp::new(ell);
    let g_lambda = &primes[lambda].local_generator;
    // s(λ) contains s(g_λ(θ)) = g_λ(P_s(θ))
    for (k, q) in primes.iter().enumerate() {
        let ps = reduce(group.image(s), ell, &q.local_generator)?;
        let v = g_lambda
            .iter()
            .rev()
            .fold(vec![], |acc: Vec<u64>, c| fpoly::add(&fp, &fpoly::mulmod(&fp, &acc, &ps, &q.local_generator), &[*c]));
        if fpoly::rem(&fp, &v, &q.local_generator).is_empty() {
            return Ok(k);
        }
    }
    Err(GaloisError::UnknownElement(s))
}
