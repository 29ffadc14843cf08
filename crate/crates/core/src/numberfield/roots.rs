//! Floating-point complex roots, used only for the T2 form and as numeric
//! hints that are always re-verified exactly.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::exact::Poly;

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration followed by Newton polishing.
///
/// Returned order: real roots ascending, then each complex root with positive
/// imaginary part followed by its conjugate, sorted by real part.
pub fn complex_roots(f: &Poly) -> Vec<Complex64> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lead = f.lead().unwrap().to_f64().unwrap();
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap() / lead).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, t)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *r);
            if dp.norm() > 0.0 {
                *r -= p / dp;
            }
        }
    }
    let scale = 1e-9 * radius;
    let mut real: Vec<f64> = z.iter().filter(|r| r.im.abs() <= scale).map(|r| r.re).collect();
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut upper: Vec<Complex64> = z.iter().filter(|r| r.im > scale).cloned().collect();
    upper.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let mut out: Vec<Complex64> = real.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    for u in upper {
        out.push(u);
        out.push(u.conj());
    }
    if out.len() != n {
        // fall back to the raw iterates if the conjugate pairing failed
        return z;
    }
    out
}
