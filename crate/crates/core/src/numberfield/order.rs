//! Integral basis of the maximal order.
//!
//! Starting from ℤ[θ], each prime q with q² | disc is sieved: an element
//! x = Σ v_i b_i / q with v ∈ 𝔽_q^n can only be integral if Tr(x b_j) ∈ ℤ
//! for every j, i.e. v lies in the kernel of the trace form mod q. Every
//! vector of that kernel is tested exactly through the characteristic
//! polynomial, and the order is enlarged until the sieve finds nothing new.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::field::{NfElement, NumberField};
use super::lattice::hnf;
use super::linalg::{det, kernel_mod_p, solve};
use super::NumberFieldError;
use crate::exact::is_prime;

/// Refuse to enumerate kernels with more vectors than this.
const MAX_KERNEL_SIZE: u64 = 1 << 16;

#[derive(Clone, Debug, Serialize)]
pub struct IntegralBasis {
    /// ℤ-basis of O_K in power-basis coordinates, in Hermite form.
    pub basis: Vec<NfElement>,
    /// [O_K : ℤ[θ]].
    #[serde(with = "crate::exact::serde_str::bigint")]
    pub index: BigInt,
    #[serde(with = "crate::exact::serde_str::bigint")]
    pub discriminant: BigInt,
}

impl IntegralBasis {
    /// Coordinates of `x` with respect to the integral basis.
    pub fn coordinates(&self, x: &NfElement) -> Vec<BigRational> {
        let n = self.basis.len();
        // columns are basis vectors
        let a: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| self.basis[j].coords[i].clone()).collect()).collect();
        solve(&a, &x.coords).expect("integral basis is nonsingular")
    }

    pub fn contains(&self, x: &NfElement) -> bool {
        self.coordinates(x).iter().all(|c| c.is_integer())
    }
}

/// Primes q with q² dividing `d`, by trial division up to 10⁶; a cofactor
/// beyond that must be 1, prime, or the square of a prime.
pub fn square_divisor_primes(d: &BigInt) -> Result<Vec<u64>, NumberFieldError> {
    let mut n = d.abs();
    let mut out = Vec::new();
    let mut q = 2u64;
    while q <= 1_000_000 && !n.is_one() {
        let bq = BigInt::from(q);
        if &bq * &bq > n {
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(&bq) {
            n /= &bq;
            e += 1;
        }
        if e >= 2 {
            out.push(q);
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Ok(out);
    }
    if let Some(v) = n.to_u64() {
        if is_prime(v) {
            return Ok(out);
        }
    }
    let s = n.sqrt();
    if &s * &s == n {
        if let Some(v) = s.to_u64().filter(|&v| is_prime(v)) {
            out.push(v);
            return Ok(out);
        }
    }
    if q > 1_000_000 && n < BigInt::from(1_000_000u64) * BigInt::from(1_000_000u64) {
        // cofactor below q² with no factor below q is prime
        return Ok(out);
    }
    Err(NumberFieldError::Arithmetic(format!("cannot factor discriminant cofactor {n}")))
}

fn to_lattice(basis: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let den = basis
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let rows = basis
        .iter()
        .map(|r| r.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    (rows, den)
}

fn from_lattice(rows: &[Vec<BigInt>], den: &BigInt) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|c| BigRational::new(c.clone(), den.clone())).collect())
        .collect()
}

/// Computes a ℤ-basis of the maximal order of `k`.
pub fn integral_basis(k: &NumberField) -> Result<IntegralBasis, NumberFieldError> {
    let n = k.degree();
    let mut basis: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for q in square_divisor_primes(k.discriminant())? {
        loop {
            let elems: Vec<NfElement> = basis.iter().map(|c| NfElement { coords: c.clone() }).collect();
            let found = sieve_once(k, &elems, q)?;
            let Some(x) = found else { break };
            let mut rows = basis.clone();
            rows.push(x.coords);
            let (lat, den) = to_lattice(&rows);
            basis = from_lattice(&hnf(&lat), &den);
        }
    }
    let vol = det(&basis).abs();
    let index = vol.recip().to_integer();
    let discriminant = k.discriminant() / (&index * &index);
    Ok(IntegralBasis {
        basis: basis.into_iter().map(|coords| NfElement { coords }).collect(),
        index,
        discriminant,
    })
}

/// Returns an integral element of (1/q)·B not already in B, if any.
fn sieve_once(k: &NumberField, b: &[NfElement], q: u64) -> Result<Option<NfElement>, NumberFieldError> {
    let n = b.len();
    let bq = BigInt::from(q);
    let mut tm = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i..n {
            let t = k.trace(&k.mul(&b[i], &b[j]));
            if !t.is_integer() {
                return Err(NumberFieldError::Arithmetic("trace form is not integral".into()));
            }
            let r = t.to_integer().mod_floor(&bq).to_u64().unwrap();
            tm[i][j] = r;
            tm[j][i] = r;
        }
    }
    let ker = kernel_mod_p(&tm, n, q);
    if ker.is_empty() {
        return Ok(None);
    }
    let total = (q as u128).checked_pow(ker.len() as u32).unwrap_or(u128::MAX);
    if total > MAX_KERNEL_SIZE as u128 {
        return Err(NumberFieldError::Arithmetic(format!(
            "trace kernel mod {q} has dimension {}, too large to enumerate",
            ker.len()
        )));
    }
    let qinv = BigRational::new(BigInt::one(), bq);
    let mut digits = vec![0u64; ker.len()];
    loop {
        // next nonzero combination, odometer over 𝔽_q^dim
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(None);
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        let v: Vec<u64> = (0..n)
            .map(|c| digits.iter().zip(&ker).fold(0u64, |acc, (&d, kv)| (acc + d * kv[c]) % q))
            .collect();
        let mut x = k.zero();
        for (vi, bi) in v.iter().zip(b) {
            if *vi != 0 {
                x = k.add(&x, &k.scale(bi, &BigRational::from_integer(BigInt::from(*vi))));
            }
        }
        let x = k.scale(&x, &qinv);
        if k.charpoly(&x).is_integral() {
            return Ok(Some(x));
        }
    }
}
