use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::number::{PadicContext, PadicNumber};
use super::zq;
use super::PadicError;
use crate::exact::{FiniteField, Poly};

/// Coefficients of `f` reduced to integers modulo `m`, or `NotIntegral`.
fn integral_coeffs(f: &Poly, p: u64, m: &BigInt) -> Result<Vec<BigInt>, PadicError> {
    let bp = BigInt::from(p);
    f.coeffs()
        .iter()
        .map(|c| {
            if c.denom().is_multiple_of(&bp) {
                return Err(PadicError::NotIntegral);
            }
            let inv = c.denom().extended_gcd(m).x;
            Ok((c.numer() * inv).mod_floor(m))
        })
        .collect()
}

fn eval(coeffs: &[BigInt], x: &[BigInt], h: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let f = h.len() - 1;
    let mut acc = vec![BigInt::zero(); f];
    for c in coeffs.iter().rev() {
        acc = zq::mul(&acc, x, h, m);
        acc[0] += c;
        zq::reduce(&mut acc, m);
    }
    acc
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect()
}

/// The unique root of `f` in ℤ_q congruent to `r0`, to the context's
/// precision.
pub fn hensel_lift(f: &Poly, r0: &[u64], ctx: &PadicContext) -> Result<PadicNumber, PadicError> {
    let p = ctx.p();
    let n = ctx.precision();
    let h = ctx.modulus_lift();
    let k = ctx.residue_field();
    let full = ctx.pk(n);
    let c = integral_coeffs(f, p, &full)?;
    let dc = derivative(&c);
    let bp = BigInt::from(p);
    let mut x = zq::from_residue(r0);
    if !zq::to_residue(&eval(&c, &x, h, &bp), p).iter().all(|&v| v == 0) {
        return Err(PadicError::NoRoot);
    }
    if k.is_zero(&zq::to_residue(&eval(&dc, &x, h, &bp), p)) {
        return Err(PadicError::NotSimpleRoot);
    }
    let mut prec = 1u32;
    while prec < n {
        prec = (2 * prec).min(n);
        let m = ctx.pk(prec);
        let fx = eval(&c, &x, h, &m);
        let dfx = eval(&dc, &x, h, &m);
        let inv = zq::inv(&dfx, prec, p, h, k).ok_or(PadicError::NotSimpleRoot)?;
        let step = zq::mul(&fx, &inv, h, &m);
        x = x.iter().zip(&step).map(|(a, b)| a - b).collect();
        zq::reduce(&mut x, &m);
    }
    debug_assert!(eval(&c, &x, h, &full).iter().all(|v| v.is_zero()));
    Ok(ctx.from_integral(x, n))
}

/// The Teichmüller representative: the (q−1)-th root of unity with residue
/// `a`.
pub fn teichmuller(a: &[u64], ctx: &PadicContext) -> Result<PadicNumber, PadicError> {
    let k = ctx.residue_field();
    if a.len() != ctx.f() || k.is_zero(&a.to_vec()) {
        return Err(PadicError::ZeroResidue);
    }
    let p = ctx.p();
    let n = ctx.precision();
    let h = ctx.modulus_lift();
    let q1 = ctx.residue_size() - BigUint::one();
    let q2 = &q1 - BigUint::one();
    let q1i = BigInt::from(q1.clone());
    let mut x = zq::from_residue(a);
    let mut prec = 1u32;
    // Newton on x^{q-1} - 1
    while prec < n {
        prec = (2 * prec).min(n);
        let m = ctx.pk(prec);
        let y = zq::pow(&x, &q2, h, &m);
        let mut fx = zq::mul(&y, &x, h, &m);
        fx[0] -= 1;
        let mut d: Vec<BigInt> = y.iter().map(|c| c * &q1i).collect();
        zq::reduce(&mut d, &m);
        let inv = zq::inv(&d, prec, p, h, k).ok_or(PadicError::ZeroResidue)?;
        let step = zq::mul(&fx, &inv, h, &m);
        x = x.iter().zip(&step).map(|(a, b)| a - b).collect();
        zq::reduce(&mut x, &m);
    }
    Ok(ctx.from_integral(x, n))
}

/// ζ_m = ω(g)^{(q−1)/m} for the first primitive element g of the residue
/// field; fails unless m | q − 1.
pub fn root_of_unity(m: u64, ctx: &PadicContext) -> Result<PadicNumber, PadicError> {
    let q1 = ctx.residue_size() - BigUint::one();
    if m == 0 || !(&q1 % m).is_zero() {
        return Err(PadicError::NoRootOfUnity { m, q: ctx.residue_size().to_string() });
    }
    let g = ctx.residue_field().primitive_element();
    let w = teichmuller(&g, ctx)?;
    Ok(ctx.pow_big(&w, &(q1 / m)))
}
