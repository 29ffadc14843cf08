//! λ-units: elements α with (α) = λ^h, found as short vectors of the ideal
//! lattice λ^h under the T2 form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::QexpError;
use crate::numberfield::lattice::{hnf, lll_exact, lll_real, short_vectors};
use crate::numberfield::{element_valuation, IntegralBasis, NfElement, NumberField, PrimeFactor};

/// u_λ = α^{1/h}: the pair (α, h) with (α) = λ^h.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaUnit {
    pub lambda: PrimeFactor,
    pub alpha: NfElement,
    pub h: u32,
}

/// Limits of the λ-unit search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBound {
    /// Largest exponent h tried.
    pub max_h: u32,
    /// Multiples of the AM–GM lower bound n·N^{2/n} used as T2 radii, in
    /// increasing order.
    pub t2_scales: Vec<f64>,
    /// Enumeration stops once more lattice points than this would be listed.
    pub max_points: usize,
}

impl Default for SearchBound {
    fn default() -> Self {
        SearchBound { max_h: 6, t2_scales: vec![1.5, 2.0, 3.0, 4.0, 6.0], max_points: 20_000 }
    }
}

impl SearchBound {
    pub fn with_max_h(max_h: u32) -> Self {
        SearchBound { max_h, ..Self::default() }
    }
}

fn int_coords(ob: &IntegralBasis, x: &NfElement) -> Vec<BigInt> {
    ob.coordinates(x)
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer(), "element is not integral");
            c.to_integer()
        })
        .collect()
}

fn from_coords(k: &NumberField, ob: &IntegralBasis, c: &[BigInt]) -> NfElement {
    let mut x = k.zero();
    for (ci, w) in c.iter().zip(&ob.basis) {
        if !ci.is_zero() {
            x = k.add(&x, &k.scale(w, &BigRational::from_integer(ci.clone())));
        }
    }
    x
}

/// A ℤ-basis of λ^h in integral-basis coordinates, LLL-reduced.
///
/// λ^h = Σ_a ℓ^a g(θ)^{h−a} O, valid when ℓ does not divide the index of
/// ℤ[θ]; generators are reduced modulo ℓ^h O before the Hermite form.
pub fn ideal_power_basis(k: &NumberField, ob: &IntegralBasis, lambda: &PrimeFactor, h: u32) -> Vec<Vec<BigInt>> {
    let n = k.degree();
    let ell = BigInt::from(lambda.residue_char);
    let lh = ell.pow(h);
    let g = lambda.generator_element(k);
    let mut gpow = vec![k.one()];
    for _ in 0..h {
        let next = k.mul(gpow.last().unwrap(), &g);
        gpow.push(next);
    }
    let mut rows = Vec::with_capacity((h as usize + 2) * n);
    for a in 0..=h {
        let scale = ell.pow(a);
        for w in &ob.basis {
            let x = k.mul(&gpow[(h - a) as usize], w);
            rows.push(int_coords(ob, &x).into_iter().map(|c| (c * &scale).mod_floor(&lh)).collect());
        }
    }
    for i in 0..n {
        rows.push((0..n).map(|j| if i == j { lh.clone() } else { BigInt::zero() }).collect());
    }
    lll_exact(&hnf(&rows))
}

fn t2_vector(k: &NumberField, x: &NfElement) -> Vec<f64> {
    k.complex_values(x).iter().flat_map(|z| [z.re, z.im]).collect()
}

/// log|σ_j(x)| at every complex root.
fn log_abs(k: &NumberField, x: &NfElement) -> Vec<f64> {
    k.complex_values(x).iter().map(|z| z.norm().ln()).collect()
}

/// Whether β^{h_α}/α^{h_β} is a root of unity, i.e. has absolute value 1
/// at every embedding.
fn torsion_ratio(k: &NumberField, a: &LambdaUnit, b: &LambdaUnit) -> bool {
    let (la, lb) = (log_abs(k, &a.alpha), log_abs(k, &b.alpha));
    la.iter().zip(&lb).all(|(x, y)| (y * a.h as f64 - x * b.h as f64).abs() < 1e-6)
}

struct Candidate {
    t2: f64,
    coords: Vec<BigInt>,
    alpha: NfElement,
}

fn candidates_at(
    k: &NumberField,
    ob: &IntegralBasis,
    primes: &[PrimeFactor],
    idx: usize,
    h: u32,
    basis: &[Vec<BigInt>],
    real_basis: &[Vec<f64>],
    radius: f64,
    cap: usize,
) -> Result<Option<Vec<Candidate>>, QexpError> {
    let lambda = &primes[idx];
    let target = BigInt::from(lambda.residue_char).pow(h * lambda.f as u32);
    let target_f = target.to_f64().unwrap();
    let Some(points) = short_vectors(real_basis, radius, cap) else { return Ok(None) };
    let mut out = Vec::new();
    for (x, t2) in points {
        let coords: Vec<BigInt> = (0..basis[0].len())
            .map(|c| x.iter().zip(basis).map(|(xi, row)| BigInt::from(*xi) * &row[c]).sum())
            .collect();
        let alpha = from_coords(k, ob, &coords);
        let approx: f64 = k.complex_values(&alpha).iter().map(|z| z.norm()).product();
        if (approx / target_f - 1.0).abs() > 1e-3 {
            continue;
        }
        if k.norm(&alpha).abs() != BigRational::from_integer(target.clone()) {
            continue;
        }
        let mut ok = true;
        for (j, q) in primes.iter().enumerate() {
            let v = element_valuation(k, &alpha, q)?;
            if v != if j == idx { h as i64 } else { 0 } {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(Candidate { t2, coords, alpha });
        }
    }
    out.sort_by(|a, b| a.t2.total_cmp(&b.t2).then_with(|| a.coords.cmp(&b.coords)));
    Ok(Some(out))
}

/// Finds `count` λ-units for λ = `primes[idx]` whose pairwise ratios (after
/// matching exponents) are not roots of unity. `primes` must be every prime
/// above ℓ. The first unit has the least exponent h for which the search
/// finds anything; each unit is the T2-smallest admissible one.
pub fn find_lambda_units(
    k: &NumberField,
    ob: &IntegralBasis,
    primes: &[PrimeFactor],
    idx: usize,
    bound: &SearchBound,
    count: usize,
) -> Result<Vec<LambdaUnit>, QexpError> {
    if bound.max_h == 0 {
        return Err(QexpError::BoundExceeded { max_h: 0 });
    }
    let lambda = &primes[idx];
    let n = k.degree() as f64;
    let mut found: Vec<LambdaUnit> = Vec::new();
    for h in 1..=bound.max_h {
        let basis = ideal_power_basis(k, ob, lambda, h);
        let reals: Vec<Vec<f64>> = basis.iter().map(|c| t2_vector(k, &from_coords(k, ob, c))).collect();
        let (real_basis, u) = lll_real(&reals);
        let basis: Vec<Vec<BigInt>> = u
            .iter()
            .map(|row| {
                (0..basis[0].len())
                    .map(|c| row.iter().zip(&basis).map(|(ui, b)| BigInt::from(*ui) * &b[c]).sum())
                    .collect()
            })
            .collect();
        let norm = (lambda.residue_char as f64).powi((h as usize * lambda.f) as i32);
        let base = n * norm.powf(2.0 / n);
        for &scale in &bound.t2_scales {
            let Some(cands) =
                candidates_at(k, ob, primes, idx, h, &basis, &real_basis, scale * base, bound.max_points)?
            else {
                break;
            };
            for c in cands {
                let unit = LambdaUnit { lambda: lambda.clone(), alpha: c.alpha, h };
                if found.iter().all(|f| !torsion_ratio(k, f, &unit)) {
                    found.push(unit);
                    if found.len() == count {
                        return Ok(found);
                    }
                }
            }
        }
    }
    Err(QexpError::BoundExceeded { max_h: bound.max_h })
}

/// The T2-smallest λ-unit with the least exponent found.
pub fn find_lambda_unit(
    k: &NumberField,
    ob: &IntegralBasis,
    primes: &[PrimeFactor],
    idx: usize,
    bound: &SearchBound,
) -> Result<LambdaUnit, QexpError> {
    Ok(find_lambda_units(k, ob, primes, idx, bound, 1)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{factor_rational_prime, integral_basis};

    fn check(k: &NumberField, u: &LambdaUnit, primes: &[PrimeFactor], idx: usize) {
        for (j, q) in primes.iter().enumerate() {
            let want = if j == idx { u.h as i64 } else { 0 };
            assert_eq!(element_valuation(k, &u.alpha, q).unwrap(), want);
        }
    }

    #[test]
    fn gaussian_primes_are_principal() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let ob = integral_basis(&k).unwrap();
        let primes = factor_rational_prime(&k, 13).unwrap();
        for idx in 0..2 {
            let u = find_lambda_unit(&k, &ob, &primes, idx, &SearchBound::default()).unwrap();
            assert_eq!(u.h, 1);
            // 13 = (3 + 2i)(3 − 2i): a generator has T2 = 2·13
            assert!((k.t2(&u.alpha) - 26.0).abs() < 1e-9);
            check(&k, &u, &primes, idx);
        }
    }

    #[test]
    fn class_number_two() {
        // ℚ(√−5): the primes above 3 are not principal, their squares are
        let k = NumberField::from_ints(&[5, 0, 1]).unwrap();
        let ob = integral_basis(&k).unwrap();
        let primes = factor_rational_prime(&k, 3).unwrap();
        let u = find_lambda_unit(&k, &ob, &primes, 0, &SearchBound::default()).unwrap();
        assert_eq!(u.h, 2);
        assert_eq!(k.norm(&u.alpha), BigRational::from_integer(BigInt::from(9)));
        check(&k, &u, &primes, 0);
        assert!(matches!(
            find_lambda_unit(&k, &ob, &primes, 0, &SearchBound::with_max_h(1)),
            Err(QexpError::BoundExceeded { max_h: 1 })
        ));
        assert!(matches!(
            find_lambda_unit(&k, &ob, &primes, 0, &SearchBound::with_max_h(0)),
            Err(QexpError::BoundExceeded { max_h: 0 })
        ));
    }

    #[test]
    fn second_representative_differs_by_a_unit() {
        // ℚ(√2) has the fundamental unit 1 + √2
        let k = NumberField::from_ints(&[-2, 0, 1]).unwrap();
        let ob = integral_basis(&k).unwrap();
        let primes = factor_rational_prime(&k, 7).unwrap();
        let us = find_lambda_units(&k, &ob, &primes, 0, &SearchBound::default(), 2).unwrap();
        assert_eq!(us.len(), 2);
        for u in &us {
            check(&k, u, &primes, 0);
        }
        let q = k.mul(&k.pow(&us[1].alpha, us[0].h as i64).unwrap(), &k.pow(&us[0].alpha, -(us[1].h as i64)).unwrap());
        assert!(k.is_integral(&q) && k.norm(&q).abs() == BigRational::from_integer(BigInt::from(1)));
        assert!(!torsion_ratio(&k, &us[0], &us[1]));
    }
}
