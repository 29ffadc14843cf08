//! Integer lattices: Hermite normal form, LLL reduction and short-vector
//! enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns a basis in upper-triangular echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(ncols) = rows.first().map(|r| r.len()) else { return Vec::new() };
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|v| !v.is_zero())).cloned().collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..ncols {
        // gcd-combine every remaining row into one pivot row for this column
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for row in m.drain(..) {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let e = p[col].extended_gcd(&row[col]);
                    let (a, b) = (&p[col] / &e.gcd, &row[col] / &e.gcd);
                    let new_p: Vec<BigInt> = p.iter().zip(&row).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let other: Vec<BigInt> = p.iter().zip(&row).map(|(x, y)| &b * x - &a * y).collect();
                    if other.iter().any(|v| !v.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        m = rest;
        if let Some(mut p) = pivot {
            if p[col].is_negative() {
                p.iter_mut().for_each(|v| *v = -v.clone());
            }
            out.push(p);
        }
    }
    // reduce entries above pivots
    for i in 0..out.len() {
        let pc = out[i].iter().position(|v| !v.is_zero()).unwrap();
        let pv = out[i][pc].clone();
        for k in 0..i {
            let q = out[k][pc].div_floor(&pv);
            if !q.is_zero() {
                let row_i = out[i].clone();
                for (x, y) in out[k].iter_mut().zip(&row_i) {
                    *x -= &q * y;
                }
            }
        }
    }
    out
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact LLL (δ = 3/4) with respect to the standard inner product.
pub fn lll_exact(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    let mut b: Vec<Vec<BigInt>> = basis.to_vec();
    if n <= 1 {
        return b;
    }
    let to_q = |v: &Vec<BigInt>| -> Vec<BigRational> { v.iter().cloned().map(BigRational::from_integer).collect() };
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let gso = |b: &Vec<Vec<BigInt>>| {
        let mut bs: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let bi = to_q(&b[i]);
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = dot_q(&bi, &bs[j]) / &norms[j];
                let m = mu[i][j].clone();
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= &m * y;
                }
            }
            norms.push(dot_q(&v, &v));
            bs.push(v);
        }
        (mu, norms)
    };
    let (mut mu, mut norms) = gso(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let qq = BigRational::from_integer(q);
                for l in 0..=j {
                    let t = if l == j { BigRational::one() } else { mu[j][l].clone() };
                    mu[k][l] -= &qq * t;
                }
            }
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let r = gso(&b);
            mu = r.0;
            norms = r.1;
            k = (k - 1).max(1);
        }
    }
    b
}

fn round(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Floating LLL on real basis vectors, returning the reduced vectors and the
/// unimodular integer transform `U` with `reduced = U · input`.
pub fn lll_real(vectors: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<i64>>) {
    let n = vectors.len();
    let mut b = vectors.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let dot = |a: &[f64], c: &[f64]| a.iter().zip(c).map(|(x, y)| x * y).sum::<f64>();
    let gso = |b: &Vec<Vec<f64>>| {
        let mut bs: Vec<Vec<f64>> = Vec::new();
        let mut mu = vec![vec![0.0; n]; n];
        let mut norms = Vec::new();
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / norms[j];
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= mu[i][j] * y;
                }
            }
            norms.push(dot(&v, &v));
            bs.push(v);
        }
        (mu, norms)
    };
    let mut k = 1;
    let mut iterations = 0;
    while k < n && iterations < 100_000 {
        iterations += 1;
        let (mut mu, norms) = gso(&b);
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let qi = q as i64;
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
                let uj = u[j].clone();
                for (x, y) in u[k].iter_mut().zip(&uj) {
                    *x -= qi * y;
                }
                for l in 0..=j {
                    let t = if l == j { 1.0 } else { mu[j][l] };
                    mu[k][l] -= q * t;
                }
            }
        }
        if norms[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (b, u)
}

/// All nonzero integer vectors `x` (up to sign) with `‖Σ x_i b_i‖² ≤ bound`,
/// by Fincke–Pohst enumeration. Returns `None` if more than `cap` vectors
/// would be produced.
pub fn short_vectors(basis: &[Vec<f64>], bound: f64, cap: usize) -> Option<Vec<(Vec<i64>, f64)>> {
    let n = basis.len();
    let dot = |a: &[f64], c: &[f64]| a.iter().zip(c).map(|(x, y)| x * y).sum::<f64>();
    let gram: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| dot(&basis[i], &basis[j])).collect()).collect();
    // q[i][i] = Cholesky diagonal, q[i][j] (j > i) = normalized off-diagonal
    let mut q = gram.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let bound = bound * (1.0 + 1e-9);
    fn rec(
        i: usize,
        rem: f64,
        x: &mut Vec<i64>,
        q: &[Vec<f64>],
        out: &mut Vec<(Vec<i64>, f64)>,
        cap: usize,
        total: f64,
    ) -> bool {
        let n = x.len();
        let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let r = (rem / q[i][i]).max(0.0).sqrt();
        let lo = (c - r - 1e-9).ceil() as i64;
        let hi = (c + r + 1e-9).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 - c;
            let used = q[i][i] * t * t;
            if used > rem + 1e-9 * total {
                continue;
            }
            if i == 0 {
                if x.iter().all(|&a| a == 0) {
                    continue;
                }
                // keep one of ±x: last nonzero coordinate positive
                if *x.iter().rev().find(|&&a| a != 0).unwrap() < 0 {
                    continue;
                }
                out.push((x.clone(), total - (rem - used)));
                if out.len() > cap {
                    return false;
                }
            } else if !rec(i - 1, rem - used, x, q, out, cap, total) {
                return false;
            }
        }
        x[i] = 0;
        true
    }
    if n == 0 {
        return Some(out);
    }
    if !rec(n - 1, bound, &mut x, &q, &mut out, cap, bound) {
        return None;
    }
    Some(out)
}

/// Converts an exact rational vector to floating point.
pub fn to_f64(v: &[BigRational]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn hnf_of_redundant_generators() {
        let h = hnf(&bi(&[&[4, 0], &[0, 6], &[2, 3]]));
        assert_eq!(h, bi(&[&[2, 3], &[0, 6]]));
        let h = hnf(&bi(&[&[3, 1], &[1, 1]]));
        assert_eq!(h, bi(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn lll_finds_short_basis() {
        let b = lll_exact(&bi(&[&[1, 0, 0], &[1000, 1, 0], &[7001, 7, 1]]));
        for v in &b {
            let n: i64 = v.iter().map(|x| x.to_i64().unwrap().pow(2)).sum();
            assert!(n <= 2, "vector {v:?} not short");
        }
    }

    #[test]
    fn enumeration_counts_z2_points() {
        let basis = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        // points of Z^2 with norm <= 2, up to sign: (1,0),(0,1),(1,1),(-1,1)
        let v = short_vectors(&basis, 2.0, 100).unwrap();
        assert_eq!(v.len(), 4);
        assert!(short_vectors(&basis, 100.0, 5).is_none());
    }

    #[test]
    fn real_lll_tracks_transform() {
        let vecs = vec![vec![1.0, 0.0], vec![1000.0, 1.0]];
        let (red, u) = lll_real(&vecs);
        for (r, row) in red.iter().zip(&u) {
            let recon: Vec<f64> = (0..2).map(|c| row[0] as f64 * vecs[0][c] + row[1] as f64 * vecs[1][c]).collect();
            assert!((recon[0] - r[0]).abs() < 1e-9 && (recon[1] - r[1]).abs() < 1e-9);
        }
        assert!(red.iter().all(|r| r.iter().map(|x| x * x).sum::<f64>() <= 1.0 + 1e-9));
    }
}
