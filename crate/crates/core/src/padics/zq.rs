//! Raw arithmetic in (ℤ/p^k)[y]/(h) on coefficient vectors of length f.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{FiniteField, Fq};

pub(crate) fn reduce(a: &mut [BigInt], m: &BigInt) {
    for c in a.iter_mut() {
        *c = c.mod_floor(m);
    }
}

/// Product modulo the monic lift `h` and modulo `m`.
pub(crate) fn mul(a: &[BigInt], b: &[BigInt], h: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let f = h.len() - 1;
    let mut prod = vec![BigInt::zero(); 2 * f - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (f..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..f {
            prod[k - f + j] -= &c * &h[j];
        }
    }
    prod.truncate(f);
    reduce(&mut prod, m);
    prod
}

pub(crate) fn one(f: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); f];
    v[0] = BigInt::one();
    v
}

pub(crate) fn pow(a: &[BigInt], e: &BigUint, h: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let f = h.len() - 1;
    let mut acc = one(f);
    reduce(&mut acc, m);
    let mut base = a.to_vec();
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = mul(&acc, &base, h, m);
        }
        if i + 1 < bits {
            base = mul(&base, &base, h, m);
        }
    }
    acc
}

pub(crate) fn to_residue(a: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    a.iter()
        .map(|c| {
            let r = c.mod_floor(&bp);
            r.iter_u64_digits().next().unwrap_or(0)
        })
        .collect()
}

pub(crate) fn from_residue(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Inverse of a unit modulo p^k by Newton iteration from the residue field.
pub(crate) fn inv(a: &[BigInt], k: u32, p: u64, h: &[BigInt], fq: &Fq) -> Option<Vec<BigInt>> {
    let r = fq.inv(&to_residue(a, p))?;
    let mut x = from_residue(&r);
    let bp = BigInt::from(p);
    let mut prec = 1u32;
    let two = {
        let mut t = one(h.len() - 1);
        t[0] = BigInt::from(2);
        t
    };
    while prec < k {
        prec = (2 * prec).min(k);
        let m = bp.pow(prec);
        let ax = mul(a, &x, h, &m);
        let mut t: Vec<BigInt> = two.iter().zip(&ax).map(|(u, v)| u - v).collect();
        reduce(&mut t, &m);
        x = mul(&x, &t, h, &m);
    }
    let m = bp.pow(k);
    reduce(&mut x, &m);
    Some(x)
}

/// `v_p` of an integer, capped at `cap`.
pub(crate) fn val_int(c: &BigInt, p: &BigInt, cap: u32) -> u32 {
    if c.is_zero() {
        return cap;
    }
    let mut c = c.clone();
    let mut v = 0;
    while v < cap {
        let (q, r) = c.div_rem(p);
        if !r.is_zero() {
            break;
        }
        c = q;
        v += 1;
    }
    v
}
