//! Small dense exact linear algebra over ℚ and 𝔽_p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{rat, FiniteField, Fp, Poly};

pub type QMatrix = Vec<Vec<BigRational>>;

/// Determinant by fraction-free (Bareiss) elimination after clearing
/// denominators row by row.
pub fn det(m: &QMatrix) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigRational::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let d = Poly::new(row.clone()).denominator();
            scale *= BigRational::from_integer(d.clone());
            row.iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigRational::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    BigRational::from_integer(sign * &a[n - 1][n - 1]) / scale
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            s += &a[i][t] * &b[t][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Characteristic polynomial det(xI − A) by Faddeev–LeVerrier.
pub fn charpoly(a: &QMatrix) -> Poly {
    let n = a.len();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk: QMatrix = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mat_mul(a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / rat(k as i64);
    }
    Poly::new(c)
}

/// Solves `A x = b` for square invertible `A` by Gauss–Jordan elimination.
pub fn solve(a: &QMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of the right kernel `{x : A x = 0}` over 𝔽_p.
pub fn kernel_mod_p(a: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let k = Fp::new(p);
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, pr);
        let inv = k.inv(&m[row][col]).unwrap();
        for v in m[row].iter_mut() {
            *v = k.mul(v, &inv);
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..ncols {
                    let t = k.mul(&f, &m[row][c]);
                    m[r][c] = k.sub(&m[r][c], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(&m[r][fc]);
            }
            v
        })
        .collect()
}
