use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{NfElement, NumberField};
use super::NumberFieldError;
use crate::exact::{fpoly, is_prime, lift_poly, poly_factor_mod_p, reduce_poly, ExactError, Fp, Poly};

/// A prime ideal (ℓ, g(θ)) of the maximal order, valid when ℓ does not divide
/// the index of ℤ[θ].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactor {
    pub residue_char: u64,
    /// Ramification index.
    pub e: usize,
    /// Inertia degree, equal to `deg g`.
    pub f: usize,
    /// Monic irreducible `g` over 𝔽_ℓ, ascending coefficients.
    pub local_generator: Vec<u64>,
    /// `(f mod ℓ) / g` over 𝔽_ℓ; its lift has valuation `e − 1` at this prime
    /// and at least the full ramification index at every other prime above ℓ.
    cofactor: Vec<u64>,
}

impl PrimeFactor {
    /// The generator lifted to ℤ[x] with coefficients in `[0, ℓ)`.
    pub fn generator_lift(&self) -> Poly {
        lift_poly(&self.local_generator)
    }

    pub fn generator_element(&self, k: &NumberField) -> NfElement {
        k.from_poly(&self.generator_lift())
    }

    /// Residue-field size exponent: |O/P| = ℓ^f.
    pub fn norm_exponent(&self) -> usize {
        self.f
    }
}

fn exact_err(e: ExactError) -> NumberFieldError {
    match e {
        ExactError::CompositeModulus(p) => NumberFieldError::CompositeModulus(p),
        other => NumberFieldError::Arithmetic(other.to_string()),
    }
}

/// Dedekind's criterion: does ℓ divide the index [O_K : ℤ[θ]]?
pub fn index_divisible_by(k: &NumberField, ell: u64) -> Result<bool, NumberFieldError> {
    let lb = BigInt::from(ell);
    if !(k.discriminant() % (&lb * &lb)).is_zero() {
        return Ok(false);
    }
    let fac = poly_factor_mod_p(k.poly(), ell).map_err(exact_err)?;
    let fp = Fp::new(ell);
    let mut g_full = Poly::one();
    let mut rad = vec![1u64];
    for (g, m) in &fac {
        g_full = &g_full * &lift_poly(g).pow(*m as u32);
        rad = fpoly::mul(&fp, &rad, g);
    }
    let diff = &g_full - k.poly();
    let big_f = diff.scale(&BigRational::from_integer(lb).recip());
    let fbar = reduce_poly(&big_f, ell).map_err(exact_err)?;
    let fmod = reduce_poly(k.poly(), ell).map_err(exact_err)?;
    let h = fpoly::div_rem(&fp, &fmod, &rad).0;
    let g1 = fpoly::gcd(&fp, &fbar, &rad);
    let g2 = fpoly::gcd(&fp, &g1, &h);
    Ok(g2.len() > 1)
}

/// Kummer–Dedekind factorization of ℓ.
///
/// ℓ is accepted when ℓ² ∤ disc(f) or Dedekind's criterion shows ℤ[θ] is
/// ℓ-maximal; otherwise the defining polynomial must be changed.
pub fn factor_rational_prime(k: &NumberField, ell: u64) -> Result<Vec<PrimeFactor>, NumberFieldError> {
    if !is_prime(ell) {
        return Err(NumberFieldError::CompositeModulus(ell));
    }
    if index_divisible_by(k, ell)? {
        return Err(NumberFieldError::IndexDivisor(ell));
    }
    factor_rational_prime_unchecked(k, ell)
}

/// As [`factor_rational_prime`] but trusting the caller that ℤ[θ] is
/// ℓ-maximal.
pub fn factor_rational_prime_unchecked(
    k: &NumberField,
    ell: u64,
) -> Result<Vec<PrimeFactor>, NumberFieldError> {
    let fac = poly_factor_mod_p(k.poly(), ell).map_err(exact_err)?;
    let fp = Fp::new(ell);
    let fmod = reduce_poly(k.poly(), ell).map_err(exact_err)?;
    Ok(fac
        .into_iter()
        .map(|(g, e)| {
            let cofactor = fpoly::div_rem(&fp, &fmod, &g).0;
            PrimeFactor {
                residue_char: ell,
                e,
                f: g.len() - 1,
                local_generator: g,
                cofactor,
            }
        })
        .collect())
}

/// Whether the prime `big` of a field K lies over the prime `small` of a
/// subfield, given the image in K of the subfield's generator.
///
/// `small` = (ℓ, g(y)) lies under `big` = (ℓ, G(θ)) iff g(image) ∈ `big`,
/// decided in 𝔽_ℓ[x]/(G). Fails when ℓ divides a denominator of `image`.
pub fn lies_over(image: &NfElement, small: &PrimeFactor, big: &PrimeFactor) -> Result<bool, NumberFieldError> {
    let ell = big.residue_char;
    if small.residue_char != ell {
        return Ok(false);
    }
    let fp = Fp::new(ell);
    let m = &big.local_generator;
    let r = fpoly::rem(&fp, &reduce_poly(&image.to_poly(), ell).map_err(exact_err)?, m);
    let v = small
        .local_generator
        .iter()
        .rev()
        .fold(Vec::new(), |acc: Vec<u64>, &c| fpoly::add(&fp, &fpoly::mulmod(&fp, &acc, &r, m), &[c]));
    Ok(fpoly::rem(&fp, &v, m).is_empty())
}

/// Exact P-adic valuation of a nonzero element.
///
/// The rational content contributes `e·v_ℓ`; the primitive remainder y is
/// repeatedly replaced by y·β/ℓ with β the lifted cofactor, which lowers
/// v_P by one and keeps y ℓ-integral, until y ∉ P.
pub fn element_valuation(k: &NumberField, x: &NfElement, p: &PrimeFactor) -> Result<i64, NumberFieldError> {
    if x.is_zero() {
        return Err(NumberFieldError::ZeroElement);
    }
    let ell = p.residue_char;
    let lb = BigInt::from(ell);
    let poly = x.to_poly();
    let content = poly.content();
    let mut vc = 0i64;
    let (mut num, mut den) = (content.numer().clone(), content.denom().clone());
    while num.is_multiple_of(&lb) {
        num /= &lb;
        vc += 1;
    }
    while den.is_multiple_of(&lb) {
        den /= &lb;
        vc -= 1;
    }
    let mut y = k.scale(x, &content.recip());
    let fp = Fp::new(ell);
    let beta = k.from_poly(&lift_poly(&p.cofactor));
    let linv = BigRational::from_integer(lb.clone()).recip();
    // v_P(y) ≤ v_ℓ(N(y)) / f bounds the loop.
    let norm = k.norm(&y).abs().to_integer();
    let mut guard = 0i64;
    let mut nn = norm;
    while !nn.is_zero() && nn.is_multiple_of(&lb) {
        nn /= &lb;
        guard += 1;
    }
    let mut count = 0i64;
    loop {
        let ybar = reduce_poly(&y.to_poly(), ell).map_err(exact_err)?;
        let in_p = fpoly::rem(&fp, &ybar, &p.local_generator).is_empty();
        if !in_p {
            break;
        }
        count += 1;
        if count > guard + 1 {
            return Err(NumberFieldError::Arithmetic("valuation loop exceeded norm bound".into()));
        }
        y = k.scale(&k.mul(&y, &beta), &linv);
    }
    Ok(p.e as i64 * vc + count)
}

/// Whether every prime above ℓ is unramified.
pub fn is_unramified(factors: &[PrimeFactor]) -> bool {
    factors.iter().all(|p| p.e == 1)
}

/// Σ e·f over the factors.
pub fn degree_sum(factors: &[PrimeFactor]) -> usize {
    factors.iter().map(|p| p.e * p.f).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn golden_primes_under_octic() {
        let m = NumberField::from_ints(&[-1, -1, 1]).unwrap();
        let k = NumberField::from_ints(&[1, -2, 2, 2, -2, 2, 2, -2, 1]).unwrap();
        let phi = k
            .element(
                [(2, 1), (-1, 2), (-1, 2), (5, 2), (-1, 1), (-3, 2), (3, 2), (-1, 2)]
                    .iter()
                    .map(|&(a, b)| crate::exact::rat_frac(a, b))
                    .collect(),
            )
            .unwrap();
        for ell in [3u64, 11, 19, 29, 41] {
            let small = factor_rational_prime(&m, ell).unwrap();
            let big = factor_rational_prime(&k, ell).unwrap();
            for b in &big {
                let under: Vec<_> = small.iter().filter(|s| lies_over(&phi, s, b).unwrap()).collect();
                assert_eq!(under.len(), 1, "ℓ = {ell}");
                assert_eq!(b.f % under[0].f, 0);
            }
        }
    }

    #[test]
    fn kummer_dedekind_examples() {
        let k = NumberField::from_ints(&[-1, -1, 1]).unwrap();
        let f11 = factor_rational_prime(&k, 11).unwrap();
        assert_eq!(f11.len(), 2);
        assert!(f11.iter().all(|p| p.e == 1 && p.f == 1));
        let f7 = factor_rational_prime(&k, 7).unwrap();
        assert_eq!((f7.len(), f7[0].e, f7[0].f), (1, 1, 2));
        let g = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let f2 = factor_rational_prime(&g, 2).unwrap();
        assert_eq!((f2.len(), f2[0].e, f2[0].f), (1, 2, 1));
    }

    #[test]
    fn index_divisors_are_rejected() {
        // Z[sqrt5] has index 2 in the maximal order
        let k = NumberField::from_ints(&[-5, 0, 1]).unwrap();
        assert_eq!(factor_rational_prime(&k, 2), Err(NumberFieldError::IndexDivisor(2)));
        // Z[sqrt(-5)] is maximal at 2 although 4 | disc = -20
        let k = NumberField::from_ints(&[5, 0, 1]).unwrap();
        let f2 = factor_rational_prime(&k, 2).unwrap();
        assert_eq!((f2.len(), f2[0].e), (1, 2));
    }

    #[test]
    fn valuations() {
        let g = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let p2 = &factor_rational_prime(&g, 2).unwrap()[0];
        assert_eq!(element_valuation(&g, &g.from_int_coords(&[1, 1]), p2).unwrap(), 1);
        assert_eq!(element_valuation(&g, &g.from_int_coords(&[2]), p2).unwrap(), 2);
        assert_eq!(element_valuation(&g, &g.from_rational(rat_frac(1, 4)), p2).unwrap(), -4);
        let p5 = factor_rational_prime(&g, 5).unwrap();
        // 2 + i has norm 5 and lies in exactly one of the two primes
        let a = g.from_int_coords(&[2, 1]);
        let v: Vec<i64> = p5.iter().map(|p| element_valuation(&g, &a, p).unwrap()).collect();
        assert_eq!(v.iter().sum::<i64>(), 1);
        assert_eq!(element_valuation(&g, &g.from_rational(rat(5)), &p5[0]).unwrap(), 1);
        assert_eq!(element_valuation(&g, &g.zero(), &p5[0]), Err(NumberFieldError::ZeroElement));
    }
}
