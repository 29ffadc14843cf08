//! Dense polynomials over a [`FiniteField`] and their factorization.
//!
//! Polynomials are plain `Vec<K::Elem>` in ascending degree with no trailing
//! zeros; the zero polynomial is empty.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ffield::FiniteField;

pub fn trim<K: FiniteField>(k: &K, mut a: Vec<K::Elem>) -> Vec<K::Elem> {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<K: FiniteField>(a: &[K::Elem]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<K: FiniteField>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let n = a.len().max(b.len());
    let z = k.zero();
    trim(
        k,
        (0..n)
            .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub fn sub<K: FiniteField>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let nb: Vec<_> = b.iter().map(|c| k.neg(c)).collect();
    add(k, a, &nb)
}

pub fn mul<K: FiniteField>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

pub fn scale<K: FiniteField>(k: &K, a: &[K::Elem], c: &K::Elem) -> Vec<K::Elem> {
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

pub fn monic<K: FiniteField>(k: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(k, a, &k.inv(l).expect("nonzero leading coefficient")),
    }
}

pub fn div_rem<K: FiniteField>(
    k: &K,
    a: &[K::Elem],
    d: &[K::Elem],
) -> (Vec<K::Elem>, Vec<K::Elem>) {
    let dd = degree::<K>(d).expect("division by zero polynomial");
    let li = k.inv(&d[dd]).unwrap();
    let mut r = a.to_vec();
    if r.len() <= dd {
        return (Vec::new(), trim(k, r));
    }
    let mut q = vec![k.zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = k.mul(&r[i + dd], &li);
        if !k.is_zero(&c) {
            for (j, dc) in d.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, dc));
            }
        }
        q[i] = c;
    }
    r.truncate(dd);
    (trim(k, q), trim(k, r))
}

pub fn rem<K: FiniteField>(k: &K, a: &[K::Elem], d: &[K::Elem]) -> Vec<K::Elem> {
    div_rem(k, a, d).1
}

pub fn gcd<K: FiniteField>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let mut a = trim(k, a.to_vec());
    let mut b = trim(k, b.to_vec());
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

pub fn derivative<K: FiniteField>(k: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    trim(
        k,
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_u64(i as u64)))
            .collect(),
    )
}

pub fn eval<K: FiniteField>(k: &K, a: &[K::Elem], x: &K::Elem) -> K::Elem {
    a.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

pub fn mulmod<K: FiniteField>(
    k: &K,
    a: &[K::Elem],
    b: &[K::Elem],
    m: &[K::Elem],
) -> Vec<K::Elem> {
    rem(k, &mul(k, a, b), m)
}

pub fn powmod<K: FiniteField>(
    k: &K,
    a: &[K::Elem],
    e: &BigUint,
    m: &[K::Elem],
) -> Vec<K::Elem> {
    let base = rem(k, a, m);
    let mut acc = rem(k, &[k.one()], m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(k, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(k, &acc, &base, m);
        }
    }
    acc
}

fn x_poly<K: FiniteField>(k: &K) -> Vec<K::Elem> {
    vec![k.zero(), k.one()]
}

fn is_one<K: FiniteField>(k: &K, a: &[K::Elem]) -> bool {
    a.len() == 1 && a[0] == k.one()
}

/// Square-free decomposition of a monic polynomial: `(g, m)` pairs with each
/// `g` square-free, pairwise coprime, and `∏ g^m = f`.
pub fn squarefree_decomposition<K: FiniteField>(k: &K, f: &[K::Elem]) -> Vec<(Vec<K::Elem>, usize)> {
    let f = monic(k, f);
    let mut out = Vec::new();
    if degree::<K>(&f).unwrap_or(0) == 0 {
        return out;
    }
    let p = k.characteristic() as usize;
    let d = derivative(k, &f);
    if d.is_empty() {
        // f is a p-th power
        for (g, m) in squarefree_decomposition(k, &pth_root_poly(k, &f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = gcd(k, &f, &d);
    let mut w = div_rem(k, &f, &c).0;
    let mut i = 1;
    while !is_one(k, &w) {
        let y = gcd(k, &w, &c);
        let fac = div_rem(k, &w, &y).0;
        if !is_one(k, &fac) {
            out.push((fac, i));
        }
        w = y;
        c = div_rem(k, &c, &w).0;
        i += 1;
    }
    if !is_one(k, &c) {
        for (g, m) in squarefree_decomposition(k, &pth_root_poly(k, &c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn pth_root_poly<K: FiniteField>(k: &K, f: &[K::Elem]) -> Vec<K::Elem> {
    let p = k.characteristic() as usize;
    trim(k, f.iter().step_by(p).map(|c| k.pth_root(c)).collect())
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree<K: FiniteField>(k: &K, f: &[K::Elem]) -> Vec<(Vec<K::Elem>, usize)> {
    let q = k.order();
    let mut rest = monic(k, f);
    let mut out = Vec::new();
    let x = x_poly(k);
    let mut h = rem(k, &x, &rest);
    let mut d = 1;
    while degree::<K>(&rest).unwrap_or(0) >= 2 * d {
        h = powmod(k, &h, &q, &rest);
        let g = gcd(k, &sub(k, &h, &x), &rest);
        if !is_one(k, &g) {
            rest = div_rem(k, &rest, &g).0;
            h = rem(k, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = degree::<K>(&rest) {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

/// Splits a monic square-free product of irreducibles of common degree `d`.
///
/// Randomized splitting uses a fixed-seed generator, so output is
/// reproducible; factors come back sorted.
pub fn equal_degree<K: FiniteField>(k: &K, f: &[K::Elem], d: usize) -> Vec<Vec<K::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_f1e1d);
    let mut out = Vec::new();
    edf_rec(k, monic(k, f), d, &mut rng, &mut out);
    out.sort();
    out
}

fn edf_rec<K: FiniteField>(
    k: &K,
    f: Vec<K::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<K::Elem>>,
) {
    let n = degree::<K>(&f).unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f);
        return;
    }
    let q = k.order();
    let p = k.characteristic();
    loop {
        let a = trim(k, (0..n).map(|_| k.random(rng)).collect());
        if degree::<K>(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace down to F_2: a + a^2 + ... + a^(2^(kd - 1))
            let steps = k.degree() * d;
            let mut t = rem(k, &a, &f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = mulmod(k, &t, &t, &f);
                acc = add(k, &acc, &t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            sub(k, &powmod(k, &a, &e, &f), &[k.one()])
        };
        let g = gcd(k, &b, &f);
        let dg = degree::<K>(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_rem(k, &f, &g).0;
            edf_rec(k, g, d, rng, out);
            edf_rec(k, monic(k, &h), d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients).
pub fn factor<K: FiniteField>(k: &K, f: &[K::Elem]) -> Vec<(Vec<K::Elem>, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(k, f) {
        for (h, d) in distinct_degree(k, &g) {
            for irr in equal_degree(k, &h, d) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

pub fn is_irreducible<K: FiniteField>(k: &K, f: &[K::Elem]) -> bool {
    let n = match degree::<K>(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let f = monic(k, f);
    if !is_one(k, &gcd(k, &f, &derivative(k, &f))) {
        return false;
    }
    let dd = distinct_degree(k, &f);
    dd.len() == 1 && dd[0].1 == n
}

/// Distinct roots of `f` in the field, sorted.
pub fn roots<K: FiniteField>(k: &K, f: &[K::Elem]) -> Vec<K::Elem> {
    let mut out: Vec<K::Elem> = factor(k, f)
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| k.neg(&g[0]))
        .collect();
    out.sort();
    out
}
