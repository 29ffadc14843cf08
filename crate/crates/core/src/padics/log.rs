use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::number::{PadicContext, PadicNumber};
use super::zq;
use super::PadicError;

/// Iwasawa logarithm. See [`plog_with_terms`].
pub fn plog(x: &PadicNumber, ctx: &PadicContext) -> Result<PadicNumber, PadicError> {
    plog_with_terms(x, ctx).map(|(v, _)| v)
}

/// Iwasawa logarithm together with the number of series terms summed.
///
/// For x = p^v·w, w a unit known mod p^r, the series is evaluated for
/// w^{q−1} = 1 + u and divided by q − 1. Terms run to the smallest K beyond
/// which every u^k/k vanishes mod p^r; the reported absolute precision is
/// r − ⌈log_p K⌉.
pub fn plog_with_terms(x: &PadicNumber, ctx: &PadicContext) -> Result<(PadicNumber, usize), PadicError> {
    let PadicNumber::Nonzero { unit, rel, .. } = x else {
        return Err(PadicError::ZeroInput);
    };
    let r = *rel;
    let p = ctx.p();
    let bp = BigInt::from(p);
    let h = ctx.modulus_lift();
    let q1 = ctx.residue_size() - BigUint::one();
    let mr = ctx.pk(r);
    let mut u = zq::pow(unit, &q1, h, &mr);
    u[0] -= 1;
    zq::reduce(&mut u, &mr);
    let vu = u.iter().map(|c| zq::val_int(c, &bp, r)).min().unwrap_or(r);
    if vu >= r {
        return Ok((PadicNumber::Zero { abs: r as i64 }, 0));
    }
    let floor_log = |k: u64| -> u32 {
        let mut t = 1u64;
        let mut e = 0;
        while t.saturating_mul(p) <= k {
            t *= p;
            e += 1;
        }
        e
    };
    let mut terms = 0u64;
    while (terms + 1) as i64 * vu as i64 - (floor_log(terms + 1) as i64) < r as i64 {
        terms += 1;
    }
    let guard = floor_log(terms.max(1));
    let mw = ctx.pk(r + guard);
    let mut acc = vec![BigInt::zero(); ctx.f()];
    let mut cur = zq::one(ctx.f());
    for k in 1..=terms {
        cur = zq::mul(&cur, &u, h, &mw);
        let (mut kk, mut vk) = (k, 0u32);
        while kk % p == 0 {
            kk /= p;
            vk += 1;
        }
        let pv = ctx.pk(vk);
        let kinv = BigInt::from(kk).extended_gcd(&mr).x;
        let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        for (a, c) in acc.iter_mut().zip(&cur) {
            debug_assert!(c.is_multiple_of(&pv));
            *a += &sign * (c / &pv) * &kinv;
        }
        zq::reduce(&mut acc, &mr);
    }
    let d = BigInt::from(q1).extended_gcd(&mr).x;
    let mut out: Vec<BigInt> = acc.iter().map(|c| c * &d).collect();
    zq::reduce(&mut out, &mr);
    let loss = ceil_log(terms.max(1), p);
    let known = r.saturating_sub(loss);
    Ok((ctx.normalize(out, 0, known), terms as usize))
}

fn ceil_log(k: u64, p: u64) -> u32 {
    let mut t = 1u64;
    let mut e = 0;
    while t < k {
        t = t.saturating_mul(p);
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_frac;
    use crate::padics::teichmuller;
    use num_rational::BigRational;

    #[test]
    fn log_of_one_and_roots_of_unity() {
        let ctx = PadicContext::new(7, 2, 20).unwrap();
        assert!(plog(&ctx.one(), &ctx).unwrap().is_zero());
        for a in [vec![1, 0], vec![3, 5], vec![0, 1]] {
            let w = teichmuller(&a, &ctx).unwrap();
            let l = plog(&w, &ctx).unwrap();
            assert!(l.is_zero());
            assert_eq!(l.absolute_precision(), Some(20));
        }
        assert_eq!(plog(&ctx.zero(), &ctx), Err(PadicError::ZeroInput));
        // log_p(p) = 0
        assert!(plog(&ctx.from_int(7), &ctx).unwrap().is_zero());
    }

    fn partial_sum(terms: i64) -> BigRational {
        // 7 - 7^2/2 + 7^3/3 - ... with exact rationals
        let mut s = BigRational::zero();
        for k in 1..=terms {
            let t = BigRational::from_integer(BigInt::from(7).pow(k as u32)) * rat_frac(1, k);
            s = if k % 2 == 1 { s + t } else { s - t };
        }
        s
    }

    #[test]
    fn partial_sum_oracle() {
        let ctx = PadicContext::new(7, 1, 10).unwrap();
        let (l8, terms) = plog_with_terms(&ctx.from_int(8), &ctx).unwrap();
        // ten terms are needed at N = 10, costing ⌈log_7 10⌉ = 2 digits
        assert_eq!(terms, 10);
        assert_eq!(l8.absolute_precision(), Some(8));
        assert_eq!(l8.valuation(), Some(1));
        let l64 = plog(&ctx.from_int(64), &ctx).unwrap();
        assert!(ctx.eq_to_precision(&l64, &ctx.mul(&ctx.from_int(2), &l8), 8));
        assert!(ctx.eq_to_precision(&l8, &ctx.from_rational(&partial_sum(12)), 8));
        // one more working digit certifies agreement mod 7^9
        let wide = PadicContext::new(7, 1, 11).unwrap();
        let l8w = plog(&wide.from_int(8), &wide).unwrap();
        assert!(l8w.absolute_precision().unwrap() >= 9);
        assert!(wide.eq_to_precision(&l8w, &wide.from_rational(&partial_sum(12)), 9));
    }
}
