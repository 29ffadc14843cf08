use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{charpoly, det};
use super::roots::complex_roots;
use super::NumberFieldError;
use crate::exact::{discriminant, irreducibility_by_patterns, IrreducibilityEvidence, Poly};

/// K = ℚ[x]/(f) for a monic integral irreducible `f`.
#[derive(Clone)]
pub struct NumberField {
    poly: Poly,
    int_poly: Vec<BigInt>,
    discriminant: BigInt,
    roots: OnceLock<Vec<Complex64>>,
    power_sums: OnceLock<Vec<BigRational>>,
}

/// An element of a [`NumberField`] as power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NfElement {
    #[serde(with = "crate::exact::serde_str::rational_vec")]
    pub coords: Vec<BigRational>,
}

impl NfElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    /// Common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.to_poly().denominator()
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_poly().to_string().replace('x', "θ");
        write!(f, "{s}")
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField").field("poly", &self.poly.to_string()).finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Validates the defining polynomial: monic, integral, nonzero
    /// discriminant, irreducible over ℚ.
    pub fn new(poly: Poly) -> Result<Self, NumberFieldError> {
        let n = poly.degree().ok_or(NumberFieldError::ConstantPolynomial)?;
        if n == 0 {
            return Err(NumberFieldError::ConstantPolynomial);
        }
        if !poly.is_monic() {
            return Err(NumberFieldError::NotMonic);
        }
        let int_poly = poly.to_integer_coeffs().ok_or(NumberFieldError::NotIntegral)?;
        let disc = discriminant(&poly);
        if disc.is_zero() {
            return Err(NumberFieldError::Reducible("repeated roots".into()));
        }
        let field = NumberField {
            poly,
            int_poly,
            discriminant: disc.to_integer(),
            roots: OnceLock::new(),
            power_sums: OnceLock::new(),
        };
        field.certify_irreducible()?;
        Ok(field)
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, NumberFieldError> {
        Self::new(Poly::from_ints(coeffs))
    }

    /// Modular degree patterns first; when those cannot decide (Galois fields
    /// with non-cyclic group), every subset of complex roots of a still-allowed
    /// size is multiplied out and any near-integral candidate is tested by
    /// exact division.
    fn certify_irreducible(&self) -> Result<(), NumberFieldError> {
        let allowed = match irreducibility_by_patterns(&self.poly, 40) {
            IrreducibilityEvidence::Irreducible => return Ok(()),
            IrreducibilityEvidence::Reducible => {
                return Err(NumberFieldError::Reducible("not squarefree".into()))
            }
            IrreducibilityEvidence::Undecided(d) => d,
        };
        let n = self.degree();
        let roots = self.complex_roots();
        for &d in allowed.iter().filter(|&&d| 2 * d <= n) {
            let mut found = None;
            for_each_subset(n, d, &mut |subset| {
                if found.is_some() {
                    return;
                }
                if let Some(g) = near_integral_factor(roots, subset) {
                    if self.poly.rem(&g).is_zero() {
                        found = Some(g);
                    }
                }
            });
            if let Some(g) = found {
                return Err(NumberFieldError::Reducible(format!("factor {g}")));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.int_poly.len() - 1
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn int_poly(&self) -> &[BigInt] {
        &self.int_poly
    }

    /// Discriminant of the defining polynomial.
    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn element(&self, coords: Vec<BigRational>) -> Result<NfElement, NumberFieldError> {
        if coords.len() != self.degree() {
            return Err(NumberFieldError::DimensionMismatch {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        Ok(NfElement { coords })
    }

    pub fn from_poly(&self, p: &Poly) -> NfElement {
        let r = p.rem(&self.poly);
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), BigRational::zero());
        NfElement { coords }
    }

    pub fn from_int_coords(&self, coords: &[i64]) -> NfElement {
        self.from_poly(&Poly::from_ints(coords))
    }

    pub fn from_rational(&self, c: BigRational) -> NfElement {
        self.from_poly(&Poly::constant(c))
    }

    pub fn zero(&self) -> NfElement {
        NfElement { coords: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> NfElement {
        self.from_rational(BigRational::one())
    }

    /// The generator θ.
    pub fn gen(&self) -> NfElement {
        self.from_poly(&Poly::x())
    }

    pub fn add(&self, a: &NfElement, b: &NfElement) -> NfElement {
        NfElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &NfElement, b: &NfElement) -> NfElement {
        NfElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &NfElement) -> NfElement {
        NfElement { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &NfElement, c: &BigRational) -> NfElement {
        NfElement { coords: a.coords.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, a: &NfElement, b: &NfElement) -> NfElement {
        self.from_poly(&(&a.to_poly() * &b.to_poly()))
    }

    /// Inverse via Cayley–Hamilton on the characteristic polynomial.
    pub fn inv(&self, a: &NfElement) -> Result<NfElement, NumberFieldError> {
        if a.is_zero() {
            return Err(NumberFieldError::ZeroElement);
        }
        let cp = self.charpoly(a);
        let c0 = cp.coeff(0);
        // a * (a^{n-1} + c_{n-1} a^{n-2} + ... + c_1) = -c_0
        let q = Poly::new(cp.coeffs()[1..].to_vec());
        let s = self.eval_poly(&q, a);
        Ok(self.scale(&s, &(-c0.recip())))
    }

    pub fn pow(&self, a: &NfElement, e: i64) -> Result<NfElement, NumberFieldError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(acc)
    }

    /// `p(a)` for a polynomial `p` over ℚ.
    pub fn eval_poly(&self, p: &Poly, a: &NfElement) -> NfElement {
        let ap = a.to_poly();
        let mut acc = Poly::zero();
        for c in p.coeffs().iter().rev() {
            acc = (&(&acc * &ap) + &Poly::constant(c.clone())).rem(&self.poly);
        }
        self.from_poly(&acc)
    }

    /// Replaces θ by `image` in `a`; this is the action of the automorphism
    /// θ ↦ image when `image` is a root of the defining polynomial.
    pub fn substitute(&self, a: &NfElement, image: &NfElement) -> NfElement {
        self.eval_poly(&a.to_poly(), image)
    }

    /// Column `j` holds the coordinates of `a·θ^j`.
    pub fn mul_matrix(&self, a: &NfElement) -> Vec<Vec<BigRational>> {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = a.clone();
        let theta = self.gen();
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = self.mul(&cur, &theta);
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self, a: &NfElement) -> BigRational {
        det(&self.mul_matrix(a))
    }

    /// Tr(θ^k) for k < n, from Newton's identities on the defining polynomial.
    fn power_sums(&self) -> &[BigRational] {
        self.power_sums.get_or_init(|| {
            let n = self.degree();
            let c = self.poly.coeffs();
            // e-coefficients: f = x^n + c_{n-1} x^{n-1} + ...
            let mut p = vec![BigRational::from_integer(BigInt::from(n))];
            for k in 1..n {
                let mut s = -BigRational::from_integer(BigInt::from(k)) * &c[n - k];
                for i in 1..k {
                    s -= &c[n - i] * &p[k - i];
                }
                p.push(s);
            }
            p
        })
    }

    pub fn trace(&self, a: &NfElement) -> BigRational {
        a.coords.iter().zip(self.power_sums()).filter(|(x, _)| !x.is_zero()).map(|(x, s)| x * s).sum()
    }

    /// Characteristic polynomial of multiplication by `a`, from the traces of
    /// its powers.
    pub fn charpoly(&self, a: &NfElement) -> Poly {
        let n = self.degree();
        let mut traces = Vec::with_capacity(n);
        let mut cur = a.clone();
        for k in 0..n {
            if k > 0 {
                cur = self.mul(&cur, a);
            }
            traces.push(self.trace(&cur));
        }
        // x^n + e_1 x^{n-1} + ...: k e_k = -Σ_{i=1}^{k} e_{k-i} p_i
        let mut e = vec![BigRational::one()];
        for k in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &e[k - i] * &traces[i - 1];
            }
            e.push(-s / BigRational::from_integer(BigInt::from(k)));
        }
        Poly::new(e.into_iter().rev().collect())
    }

    /// Characteristic polynomial through the multiplication matrix.
    pub fn charpoly_by_matrix(&self, a: &NfElement) -> Poly {
        charpoly(&self.mul_matrix(a))
    }

    /// An element is an algebraic integer iff its characteristic polynomial
    /// has integer coefficients.
    pub fn is_integral(&self, a: &NfElement) -> bool {
        a.coords.iter().all(|c| c.is_integer()) || self.charpoly(a).is_integral()
    }

    /// `(r1, r2)`: real embeddings and pairs of complex embeddings, counted
    /// exactly with a Sturm sequence.
    pub fn signature(&self) -> (usize, usize) {
        let real = sturm_real_roots(&self.poly);
        (real, (self.degree() - real) / 2)
    }

    /// Numerical complex roots of the defining polynomial, in a fixed order:
    /// real roots ascending, then complex roots with positive imaginary part
    /// each followed by its conjugate.
    pub fn complex_roots(&self) -> &[Complex64] {
        self.roots.get_or_init(|| complex_roots(&self.poly))
    }

    /// Values of `a` at every complex root.
    pub fn complex_values(&self, a: &NfElement) -> Vec<Complex64> {
        let c: Vec<f64> = a.coords.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        self.complex_roots()
            .iter()
            .map(|z| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k))
            .collect()
    }

    /// T2(a) = Σ |σ(a)|² over all complex embeddings.
    pub fn t2(&self, a: &NfElement) -> f64 {
        self.complex_values(a).iter().map(|v| v.norm_sqr()).sum()
    }
}

fn sturm_real_roots(f: &Poly) -> usize {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    let changes = |signs: Vec<i32>| {
        let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sgn = |c: &BigRational| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 };
    let at_pos: Vec<i32> = seq.iter().map(|p| sgn(p.lead().unwrap())).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| {
            let s = sgn(p.lead().unwrap());
            if p.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

fn near_integral_factor(roots: &[Complex64], subset: &[usize]) -> Option<Poly> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * roots[i];
        }
        c = next;
    }
    let mut ints = Vec::with_capacity(c.len());
    for z in &c {
        let r = z.re.round();
        let tol = 1e-6 * (1.0 + z.re.abs());
        if (z.re - r).abs() > tol || z.im.abs() > tol || !r.is_finite() {
            return None;
        }
        ints.push(BigInt::from(r as i128));
    }
    Some(Poly::from_bigints(&ints))
}
