use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

/// A finite field together with its element representation.
///
/// Implementations are small context objects; elements are plain values that
/// only make sense relative to the context that produced them.
pub trait FiniteField: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    /// Every element, in a fixed order. Only sensible for small fields.
    fn elements(&self) -> Vec<Self::Elem>;

    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree() as u32)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique p-th root, `a^(q/p)`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let e = self.order() / BigUint::from(self.characteristic());
        self.pow(a, &e)
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// The prime field 𝔽_p, elements as reduced `u64`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// The caller guarantees primality; see [`crate::exact::is_prime`].
    pub fn new(p: u64) -> Self {
        assert!(p >= 2, "field characteristic must be at least 2");
        Fp { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

impl FiniteField for Fp {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| powmod(*a, self.p - 2, self.p))
    }
    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn elements(&self) -> Vec<u64> {
        (0..self.p).collect()
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// 𝔽_q = 𝔽_p[y]/(h) for a monic irreducible `h` of degree `f`.
///
/// Elements are coefficient vectors of length `f`, ascending in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    base: Fp,
    modulus: Vec<u64>,
}

impl Fq {
    /// `modulus` is monic, ascending, and irreducible over 𝔽_p (checked).
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        let base = Fp::new(p);
        assert!(modulus.len() >= 2 && *modulus.last().unwrap() == 1, "modulus must be monic of degree >= 1");
        assert!(
            super::fpoly::is_irreducible(&base, &modulus),
            "modulus must be irreducible over F_p"
        );
        Fq { base, modulus }
    }

    /// The lexicographically first monic irreducible polynomial of degree `f`
    /// (coefficients compared from the constant term upward).
    pub fn first_irreducible(p: u64, f: usize) -> Vec<u64> {
        let base = Fp::new(p);
        if f == 1 {
            return vec![0, 1];
        }
        let mut c = vec![0u64; f];
        loop {
            let mut cand = c.clone();
            cand.push(1);
            if super::fpoly::is_irreducible(&base, &cand) {
                return cand;
            }
            // odometer increment, constant term fastest
            let mut k = 0;
            loop {
                c[k] += 1;
                if c[k] < p {
                    break;
                }
                c[k] = 0;
                k += 1;
                assert!(k < f, "no irreducible polynomial found");
            }
        }
    }

    pub fn with_degree(p: u64, f: usize) -> Self {
        Self::new(p, Self::first_irreducible(p, f))
    }

    pub fn base(&self) -> &Fp {
        &self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of `y`.
    pub fn generator(&self) -> Vec<u64> {
        let mut g = self.zero();
        if self.degree() == 1 {
            g[0] = self.base.neg(&self.modulus[0]);
        } else {
            g[1] = 1;
        }
        g
    }

    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = a % self.base.p();
        v
    }

    /// A generator of the multiplicative group, the first in `elements()` order.
    pub fn primitive_element(&self) -> Vec<u64> {
        let q1 = self.order() - BigUint::one();
        let primes = small_prime_factors(&q1);
        self.elements()
            .into_iter()
            .skip(1)
            .find(|a| {
                primes
                    .iter()
                    .all(|r| self.pow(a, &(&q1 / r)) != self.one())
            })
            .expect("multiplicative group is cyclic")
    }
}

fn small_prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}

impl FiniteField for Fq {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p()
    }
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = self.degree();
        let p = self.base.p();
        let mut prod = vec![0u64; 2 * f];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
            }
        }
        for k in (f..2 * f).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for j in 0..f {
                    let t = mulmod(c, self.modulus[j], p);
                    prod[k - f + j] = (prod[k - f + j] + p - t) % p;
                }
            }
        }
        prod.truncate(f);
        prod
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let e = self.order() - BigUint::from(2u32);
        Some(self.pow(a, &e))
    }
    fn from_u64(&self, n: u64) -> Vec<u64> {
        self.embed(n)
    }
    fn random<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree()).map(|_| rng.gen_range(0..self.base.p())).collect()
    }
    fn elements(&self) -> Vec<Vec<u64>> {
        let p = self.base.p();
        let f = self.degree();
        let total = (p as usize).pow(f as u32);
        (0..total)
            .map(|mut n| {
                (0..f)
                    .map(|_| {
                        let d = (n % p as usize) as u64;
                        n /= p as usize;
                        d
                    })
                    .collect()
            })
            .collect()
    }
}
