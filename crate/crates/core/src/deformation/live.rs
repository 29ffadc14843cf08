use super::{DeformationError, PrimeAboveP, SplittingProfile, StabClass};
use crate::numberfield::{factor_rational_prime, lies_over, FieldEmbedding, NfElement, NumberField};

/// Reads the splitting profile off the factorizations of p in F and M.
///
/// `base_image` is the image of F's generator in M; `stabilization` gives
/// one class per prime of F above p, in factorization order. `r` comes from
/// the signature of M.
pub fn profile_from_fields(
    base: &NumberField,
    m: &NumberField,
    base_image: &NfElement,
    p: u64,
    stabilization: &[StabClass],
    leopoldt_assumed: bool,
    p_regular: bool,
) -> Result<SplittingProfile, DeformationError> {
    let field = |e: crate::numberfield::NumberFieldError| DeformationError::Field(e.to_string());
    if m.degree() != 2 * base.degree() {
        return Err(DeformationError::InvalidProfile("M must be quadratic over F".into()));
    }
    FieldEmbedding::new(base.clone(), m.clone(), base_image.clone()).map_err(field)?;
    let f_primes = factor_rational_prime(base, p).map_err(field)?;
    let m_primes = factor_rational_prime(m, p).map_err(field)?;
    if stabilization.len() != f_primes.len() {
        return Err(DeformationError::InvalidProfile(format!(
            "{} stabilization classes for {} primes of F above p",
            stabilization.len(),
            f_primes.len()
        )));
    }
    let mut primes = Vec::with_capacity(f_primes.len());
    for (i, (pf, class)) in f_primes.iter().zip(stabilization).enumerate() {
        let mut over = 0;
        for q in &m_primes {
            if lies_over(base_image, pf, q).map_err(field)? {
                over += 1;
            }
        }
        let splits = over == 2;
        if splits == (*class == StabClass::None) {
            return Err(DeformationError::InvalidProfile(format!(
                "prime {i} of F above p: class {class:?} but splits_in_m = {splits}"
            )));
        }
        primes.push(PrimeAboveP { e: pf.e as u32, f: pf.f as u32, splits_in_m: splits, stab_class: *class });
    }
    let profile = SplittingProfile {
        n: base.degree() as u32,
        r: m.signature().1 as u32,
        primes,
        leopoldt_assumed,
        p_regular,
    };
    profile.validate()?;
    Ok(profile)
}
