use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::zq;
use super::PadicError;
use crate::exact::{is_prime, FiniteField, Fq};

/// The working field ℚ_q = ℚ_p[y]/(h), q = p^f, with unit parts capped at
/// p^N.
#[derive(Clone, Debug)]
pub struct PadicContext {
    p: u64,
    f: usize,
    precision: u32,
    residue: Fq,
    /// Monic lift of the residue-field modulus, coefficients in [0, p).
    modulus: Vec<BigInt>,
    bp: BigInt,
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.precision == other.precision
    }
}

impl Eq for PadicContext {}

/// An element of ℚ_q known to finite precision.
///
/// `Nonzero { val, unit, rel }` stands for p^val · unit with `unit` a unit of
/// ℤ_q known modulo p^rel; its absolute precision is `val + rel`.
/// `Zero { abs }` is zero modulo p^abs, `ExactZero` is exactly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadicNumber {
    ExactZero,
    Zero { abs: i64 },
    Nonzero { val: i64, unit: Vec<BigInt>, rel: u32 },
}

impl PadicNumber {
    /// `None` for every flavour of zero.
    pub fn valuation(&self) -> Option<i64> {
        match self {
            PadicNumber::Nonzero { val, .. } => Some(*val),
            _ => None,
        }
    }

    /// The exponent k such that the value is known modulo p^k; `None` when
    /// exact.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self {
            PadicNumber::ExactZero => None,
            PadicNumber::Zero { abs } => Some(*abs),
            PadicNumber::Nonzero { val, rel, .. } => Some(val + *rel as i64),
        }
    }

    /// Exact zero or zero to its precision.
    pub fn is_zero(&self) -> bool {
        !matches!(self, PadicNumber::Nonzero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, PadicNumber::ExactZero)
    }
}

/// The report form: base-p digits of each unit coefficient, least
/// significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub p: u64,
    pub f: usize,
    /// Absent for zero values.
    pub valuation: Option<i64>,
    pub unit_digits: Vec<Vec<u64>>,
    /// Absolute precision; absent for an exact zero.
    pub precision: Option<i64>,
}

impl PadicContext {
    /// Uses the lexicographically first irreducible polynomial of degree `f`
    /// mod p for the unramified extension.
    pub fn new(p: u64, f: usize, precision: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::CompositeModulus(p));
        }
        if precision < 10 {
            return Err(PadicError::PrecisionTooSmall(precision));
        }
        if f == 0 {
            return Err(PadicError::InvalidDegree);
        }
        let residue = Fq::with_degree(p, f);
        let modulus = residue.modulus().iter().map(|&c| BigInt::from(c)).collect();
        Ok(PadicContext { p, f, precision, residue, modulus, bp: BigInt::from(p) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    /// Cap on relative precision.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue_field(&self) -> &Fq {
        &self.residue
    }

    /// The same field at a different precision cap.
    pub fn with_precision(&self, precision: u32) -> Result<Self, PadicError> {
        Self::new(self.p, self.f, precision)
    }

    /// q = p^f.
    pub fn residue_size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f as u32)
    }

    pub(crate) fn modulus_lift(&self) -> &[BigInt] {
        &self.modulus
    }

    pub(crate) fn pk(&self, k: u32) -> BigInt {
        self.bp.pow(k)
    }

    /// Builds p^shift · c from integral coordinates `c` known modulo
    /// p^known, extracting the exact valuation.
    pub(crate) fn normalize(&self, mut c: Vec<BigInt>, shift: i64, known: u32) -> PadicNumber {
        let m = self.pk(known);
        zq::reduce(&mut c, &m);
        let v = c.iter().map(|x| zq::val_int(x, &self.bp, known)).min().unwrap_or(known);
        if v >= known {
            return PadicNumber::Zero { abs: shift + known as i64 };
        }
        let rel = known - v;
        let pv = self.pk(v);
        let mr = self.pk(rel);
        let unit = c.into_iter().map(|x| (x / &pv).mod_floor(&mr)).collect();
        PadicNumber::Nonzero { val: shift + v as i64, unit, rel }
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber::ExactZero
    }

    pub fn one(&self) -> PadicNumber {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> PadicNumber {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PadicNumber {
        self.from_rational(&BigRational::from_integer(n.clone()))
    }

    /// A rational number, to full relative precision.
    pub fn from_rational(&self, x: &BigRational) -> PadicNumber {
        if x.is_zero() {
            return PadicNumber::ExactZero;
        }
        let n = self.precision;
        let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
        let mut val = 0i64;
        while num.is_multiple_of(&self.bp) {
            num /= &self.bp;
            val += 1;
        }
        while den.is_multiple_of(&self.bp) {
            den /= &self.bp;
            val -= 1;
        }
        let m = self.pk(n);
        let dinv = den.mod_floor(&m).extended_gcd(&m).x.mod_floor(&m);
        let mut unit = vec![BigInt::zero(); self.f];
        unit[0] = (num * dinv).mod_floor(&m);
        PadicNumber::Nonzero { val, unit, rel: n }
    }

    /// The canonical digit lift of a residue-field element, to full
    /// precision (not the Teichmüller lift).
    pub fn from_residue(&self, a: &[u64]) -> PadicNumber {
        self.normalize(zq::from_residue(a), 0, self.precision)
    }

    /// An integral element from coordinates in the basis 1, y, …, y^{f−1}
    /// known modulo p^known.
    pub fn from_integral(&self, coords: Vec<BigInt>, known: u32) -> PadicNumber {
        assert_eq!(coords.len(), self.f, "coordinate count must equal the inertia degree");
        self.normalize(coords, 0, known.min(self.precision))
    }

    /// Residue of an integral element; errors for negative valuation.
    pub fn residue(&self, x: &PadicNumber) -> Result<Vec<u64>, PadicError> {
        match x {
            PadicNumber::Nonzero { val, unit, .. } => match val.cmp(&0) {
                std::cmp::Ordering::Less => Err(PadicError::NotIntegral),
                std::cmp::Ordering::Equal => Ok(zq::to_residue(unit, self.p)),
                std::cmp::Ordering::Greater => Ok(self.residue.zero()),
            },
            PadicNumber::Zero { abs } if *abs <= 0 => Err(PadicError::PrecisionExhausted),
            _ => Ok(self.residue.zero()),
        }
    }

    /// Integral coordinates of p^{-shift}·x modulo p^k for k ≤ absolute
    /// precision − shift; `None` if x is not p^shift-divisible to that
    /// precision.
    pub(crate) fn coords_mod(&self, x: &PadicNumber, shift: i64, k: u32) -> Option<Vec<BigInt>> {
        let m = self.pk(k);
        match x {
            PadicNumber::ExactZero => Some(vec![BigInt::zero(); self.f]),
            PadicNumber::Zero { abs } => (*abs - shift >= k as i64).then(|| vec![BigInt::zero(); self.f]),
            PadicNumber::Nonzero { val, unit, rel } => {
                let e = val - shift;
                if e < 0 || e + (*rel as i64) < (k as i64) {
                    return None;
                }
                if e >= k as i64 {
                    return Some(vec![BigInt::zero(); self.f]);
                }
                let pe = self.pk(e as u32);
                Some(unit.iter().map(|c| (c * &pe).mod_floor(&m)).collect())
            }
        }
    }

    pub fn neg(&self, x: &PadicNumber) -> PadicNumber {
        match x {
            PadicNumber::Nonzero { val, unit, rel } => {
                let m = self.pk(*rel);
                PadicNumber::Nonzero {
                    val: *val,
                    unit: unit.iter().map(|c| (-c).mod_floor(&m)).collect(),
                    rel: *rel,
                }
            }
            z => z.clone(),
        }
    }

    pub fn add(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        use PadicNumber::*;
        match (a, b) {
            (ExactZero, x) | (x, ExactZero) => x.clone(),
            (Zero { abs: x }, Zero { abs: y }) => Zero { abs: *x.min(y) },
            (Zero { abs }, n @ Nonzero { .. }) | (n @ Nonzero { .. }, Zero { abs }) => {
                let nabs = n.absolute_precision().unwrap();
                let v = n.valuation().unwrap();
                let abs = (*abs).min(nabs);
                if abs <= v {
                    return Zero { abs };
                }
                self.truncate(n, abs)
            }
            (Nonzero { val: va, .. }, Nonzero { val: vb, .. }) => {
                let vmin = *va.min(vb);
                let abs = a.absolute_precision().unwrap().min(b.absolute_precision().unwrap());
                let k = (abs - vmin) as u32;
                let ca = self.coords_mod(a, vmin, k).unwrap();
                let cb = self.coords_mod(b, vmin, k).unwrap();
                let c = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
                self.normalize(c, vmin, k)
            }
        }
    }

    pub fn sub(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        use PadicNumber::*;
        match (a, b) {
            (ExactZero, _) | (_, ExactZero) => ExactZero,
            (Zero { abs: x }, Zero { abs: y }) => Zero { abs: x + y },
            (Zero { abs }, Nonzero { val, .. }) | (Nonzero { val, .. }, Zero { abs }) => Zero { abs: abs + val },
            (Nonzero { val: va, unit: ua, rel: ra }, Nonzero { val: vb, unit: ub, rel: rb }) => {
                let rel = *ra.min(rb);
                let m = self.pk(rel);
                let unit = zq::mul(ua, ub, &self.modulus, &m);
                Nonzero { val: va + vb, unit, rel }
            }
        }
    }

    pub fn inv(&self, x: &PadicNumber) -> Result<PadicNumber, PadicError> {
        match x {
            PadicNumber::Nonzero { val, unit, rel } => {
                let u = zq::inv(unit, *rel, self.p, &self.modulus, &self.residue).ok_or(PadicError::NotAUnit)?;
                Ok(PadicNumber::Nonzero { val: -val, unit: u, rel: *rel })
            }
            _ => Err(PadicError::DivisionByZero),
        }
    }

    pub fn div(&self, a: &PadicNumber, b: &PadicNumber) -> Result<PadicNumber, PadicError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, x: &PadicNumber, e: i64) -> Result<PadicNumber, PadicError> {
        if e == 0 {
            return Ok(self.one());
        }
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        Ok(self.pow_big(&base, &BigUint::from(e.unsigned_abs())))
    }

    pub fn pow_big(&self, x: &PadicNumber, e: &BigUint) -> PadicNumber {
        use PadicNumber::*;
        if e.is_zero() {
            return self.one();
        }
        match x {
            ExactZero => ExactZero,
            Zero { abs } => Zero { abs: abs * e.to_i64().unwrap_or(i64::MAX / 4).max(1) },
            Nonzero { val, unit, rel } => {
                let m = self.pk(*rel);
                let u = zq::pow(unit, e, &self.modulus, &m);
                Nonzero { val: val * e.to_i64().unwrap_or(0), unit: u, rel: *rel }
            }
        }
    }

    /// Reduces the absolute precision to at most `abs`.
    pub fn truncate(&self, x: &PadicNumber, abs: i64) -> PadicNumber {
        match x {
            PadicNumber::ExactZero => PadicNumber::Zero { abs },
            PadicNumber::Zero { abs: a } => PadicNumber::Zero { abs: (*a).min(abs) },
            PadicNumber::Nonzero { val, unit, rel } => {
                if abs <= *val {
                    return PadicNumber::Zero { abs };
                }
                let r = ((abs - val) as u32).min(*rel);
                let m = self.pk(r);
                PadicNumber::Nonzero { val: *val, unit: unit.iter().map(|c| c.mod_floor(&m)).collect(), rel: r }
            }
        }
    }

    /// Moves a number from another context over the same field, keeping at
    /// most this context's relative precision.
    pub fn import(&self, x: &PadicNumber) -> PadicNumber {
        match x {
            PadicNumber::Nonzero { val, rel, .. } if *rel > self.precision => {
                self.truncate(x, val + self.precision as i64)
            }
            other => other.clone(),
        }
    }

    /// The exponent k with a ≡ b mod p^k as far as the data shows; `None`
    /// when both are exactly equal.
    pub fn agreement(&self, a: &PadicNumber, b: &PadicNumber) -> Option<i64> {
        match self.sub(a, b) {
            PadicNumber::ExactZero => None,
            PadicNumber::Zero { abs } => Some(abs),
            PadicNumber::Nonzero { val, .. } => Some(val),
        }
    }

    /// a ≡ b modulo p^k, with k not exceeding what both operands know.
    pub fn eq_to_precision(&self, a: &PadicNumber, b: &PadicNumber, k: i64) -> bool {
        self.agreement(a, b).is_none_or(|m| m >= k)
    }

    pub fn to_json(&self, x: &PadicNumber) -> PadicJson {
        let digits = |c: &BigInt, n: u32| -> Vec<u64> {
            let mut c = c.clone();
            (0..n)
                .map(|_| {
                    let (q, r) = c.div_mod_floor(&self.bp);
                    c = q;
                    r.to_u64().unwrap()
                })
                .collect()
        };
        match x {
            PadicNumber::ExactZero => PadicJson { p: self.p, f: self.f, valuation: None, unit_digits: vec![], precision: None },
            PadicNumber::Zero { abs } => {
                PadicJson { p: self.p, f: self.f, valuation: None, unit_digits: vec![], precision: Some(*abs) }
            }
            PadicNumber::Nonzero { val, unit, rel } => PadicJson {
                p: self.p,
                f: self.f,
                valuation: Some(*val),
                unit_digits: unit.iter().map(|c| digits(c, *rel)).collect(),
                precision: Some(val + *rel as i64),
            },
        }
    }

    pub fn from_json(&self, j: &PadicJson) -> Result<PadicNumber, PadicError> {
        if j.p != self.p || j.f != self.f {
            return Err(PadicError::ContextMismatch);
        }
        match (j.valuation, j.precision) {
            (_, None) => Ok(PadicNumber::ExactZero),
            (None, Some(abs)) => Ok(PadicNumber::Zero { abs }),
            (Some(val), Some(abs)) => {
                let rel = (abs - val) as u32;
                if j.unit_digits.len() != self.f || j.unit_digits.iter().any(|d| d.len() != rel as usize) {
                    return Err(PadicError::MalformedDigits);
                }
                let unit: Vec<BigInt> = j
                    .unit_digits
                    .iter()
                    .map(|ds| ds.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &self.bp + BigInt::from(d)))
                    .collect();
                if unit.iter().all(|c| c.is_multiple_of(&self.bp)) {
                    return Err(PadicError::MalformedDigits);
                }
                Ok(PadicNumber::Nonzero { val, unit, rel })
            }
        }
    }

    /// Whether the value is a unit (valuation 0).
    pub fn is_unit(&self, x: &PadicNumber) -> bool {
        x.valuation() == Some(0)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicNumber::ExactZero => write!(f, "0"),
            PadicNumber::Zero { abs } => write!(f, "O(p^{abs})"),
            PadicNumber::Nonzero { val, unit, rel } => {
                let parts: Vec<String> = unit.iter().map(|c| c.to_string()).collect();
                write!(f, "p^{val}·[{}] + O(p^{})", parts.join(", "), val + *rel as i64)
            }
        }
    }
}
