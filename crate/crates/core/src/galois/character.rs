use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{GaloisError, GaloisGroup};

/// The root of unity ζ_m^k, ζ_m = e^{2πi/m}.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Cyclo {
    pub order: u32,
    pub exponent: u32,
}

impl Cyclo {
    pub fn new(order: u32, exponent: i64) -> Self {
        assert!(order > 0, "root of unity of order zero");
        Cyclo { order, exponent: exponent.rem_euclid(order as i64) as u32 }
    }

    pub fn one() -> Self {
        Cyclo { order: 1, exponent: 0 }
    }

    /// Same value with the smallest possible `order`.
    pub fn reduced(self) -> Self {
        let g = (self.order as u64).gcd(&(self.exponent as u64)) as u32;
        let g = if self.exponent == 0 { self.order } else { g };
        Cyclo { order: self.order / g, exponent: self.exponent / g }
    }

    fn lift(self, m: u32) -> i64 {
        (self.exponent as i64) * (m / self.order) as i64
    }

    pub fn mul(self, other: Cyclo) -> Cyclo {
        let m = (self.order as u64).lcm(&(other.order as u64)) as u32;
        Cyclo::new(m, self.lift(m) + other.lift(m))
    }

    pub fn inv(self) -> Cyclo {
        Cyclo::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(self, e: i64) -> Cyclo {
        Cyclo::new(self.order, self.exponent as i64 * e)
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    /// Multiplicative order of the value.
    pub fn multiplicative_order(self) -> u32 {
        self.reduced().order
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.exponent as f64 / self.order as f64)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.reduced(), other.reduced());
        a.order == b.order && a.exponent == b.exponent
    }
}

impl Eq for Cyclo {}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        match (r.order, r.exponent) {
            (1, _) => write!(f, "1"),
            (2, 1) => write!(f, "-1"),
            (m, 1) => write!(f, "ζ{m}"),
            (m, k) => write!(f, "ζ{m}^{k}"),
        }
    }
}

/// A homomorphism from a subgroup of a Galois group to μ_m, stored as
/// exponents of ζ_m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    m: u32,
    values: BTreeMap<usize, u32>,
}

impl Character {
    /// Extends the assignment `generator ↦ ζ_m^k` multiplicatively to the
    /// subgroup the generators span, checking that it is well defined.
    pub fn from_generators(group: &GaloisGroup, m: u32, gens: &[(usize, i64)]) -> Result<Self, GaloisError> {
        if m == 0 {
            return Err(GaloisError::NotMultiplicative("order zero".into()));
        }
        for &(g, _) in gens {
            if g >= group.order() {
                return Err(GaloisError::UnknownElement(g));
            }
        }
        let exps: Vec<(usize, u32)> =
            gens.iter().map(|&(g, k)| (g, k.rem_euclid(m as i64) as u32)).collect();
        let mut values = BTreeMap::from([(0usize, 0u32)]);
        let mut stack = vec![0usize];
        while let Some(a) = stack.pop() {
            let va = values[&a];
            for &(g, k) in &exps {
                let b = group.compose(a, g);
                let vb = (va + k) % m;
                match values.get(&b) {
                    Some(&old) if old != vb => {
                        return Err(GaloisError::NotMultiplicative(format!(
                            "element {b} receives both ζ{m}^{old} and ζ{m}^{vb}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        values.insert(b, vb);
                        stack.push(b);
                    }
                }
            }
        }
        Ok(Character { m, values })
    }

    /// Builds a character from a complete table, verifying multiplicativity.
    pub fn from_table(group: &GaloisGroup, m: u32, values: BTreeMap<usize, u32>) -> Result<Self, GaloisError> {
        let values: BTreeMap<usize, u32> = values.into_iter().map(|(g, k)| (g, k % m)).collect();
        for (&a, &va) in &values {
            for (&b, &vb) in &values {
                let c = group.compose(a, b);
                match values.get(&c) {
                    Some(&vc) if vc == (va + vb) % m => {}
                    Some(_) => return Err(GaloisError::NotMultiplicative(format!("at ({a}, {b})"))),
                    None => return Err(GaloisError::BadSubgroup(format!("domain not closed at ({a}, {b})"))),
                }
            }
        }
        Ok(Character { m, values })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// The domain, sorted.
    pub fn domain(&self) -> Vec<usize> {
        self.values.keys().copied().collect()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.values.contains_key(&g)
    }

    pub fn exponent(&self, g: usize) -> Result<u32, GaloisError> {
        self.values.get(&g).copied().ok_or(GaloisError::NotInSubgroup(g))
    }

    pub fn value(&self, g: usize) -> Result<Cyclo, GaloisError> {
        Ok(Cyclo::new(self.m, self.exponent(g)? as i64))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|&k| k == 0)
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u32 {
        let g = self.values.values().fold(self.m as u64, |acc, &k| acc.gcd(&(k as u64)));
        (self.m as u64 / g) as u32
    }

    pub fn pow(&self, e: i64) -> Character {
        let m = self.m as i64;
        Character {
            m: self.m,
            values: self.values.iter().map(|(&g, &k)| (g, (k as i64 * e).rem_euclid(m) as u32)).collect(),
        }
    }

    pub fn inverse(&self) -> Character {
        self.pow(-1)
    }

    /// g ↦ χ(s⁻¹∘g∘s), defined when s normalizes the domain.
    pub fn twist(&self, group: &GaloisGroup, s: usize) -> Result<Character, GaloisError> {
        let si = group.inverse(s);
        let values = self
            .values
            .keys()
            .map(|&g| Ok((g, self.exponent(group.product(&[si, g, s]))?)))
            .collect::<Result<_, GaloisError>>()?;
        Ok(Character { m: self.m, values })
    }

    /// Pointwise quotient of two characters on the same domain.
    pub fn divide(&self, other: &Character) -> Result<Character, GaloisError> {
        if self.domain() != other.domain() {
            return Err(GaloisError::BadSubgroup("characters on different domains".into()));
        }
        let m = (self.m as u64).lcm(&(other.m as u64)) as u32;
        let values = self
            .values
            .keys()
            .map(|&g| {
                let v = self.value(g).unwrap().mul(other.value(g).unwrap().inv());
                (g, Cyclo::new(m, v.lift(m)).exponent)
            })
            .collect();
        Ok(Character { m, values })
    }

    /// Elements of the domain where the character is trivial.
    pub fn kernel(&self) -> Vec<usize> {
        self.values.iter().filter(|(_, &k)| k == 0).map(|(&g, _)| g).collect()
    }
}
