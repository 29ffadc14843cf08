use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::GaloisError;
use crate::numberfield::{NfElement, NumberField};
use crate::padics::PadicEmbeddings;

/// Gal(K/ℚ) for a Galois field K, element 0 being the identity.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    field: NumberField,
    images: Vec<NfElement>,
    compose: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GaloisGroup {
    /// Closes the given automorphisms (images of θ) under composition.
    /// Elements are numbered in breadth-first order from the identity.
    pub fn from_generators(field: &NumberField, generators: &[NfElement]) -> Result<Self, GaloisError> {
        Self::from_generators_relative(field, generators, field.degree())
    }

    /// As [`GaloisGroup::from_generators`] for Gal(K/F) with
    /// `relative_degree` = [K:F]; the caller checks that F is fixed.
    pub fn from_generators_relative(
        field: &NumberField,
        generators: &[NfElement],
        relative_degree: usize,
    ) -> Result<Self, GaloisError> {
        for g in generators {
            if g.coords.len() != field.degree() || !field.eval_poly(field.poly(), g).is_zero() {
                return Err(GaloisError::NotAutomorphism(g.to_string()));
            }
        }
        let mut images = vec![field.gen()];
        let mut index: BTreeMap<Vec<String>, usize> = BTreeMap::new();
        let key = |x: &NfElement| x.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        index.insert(key(&images[0]), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for g in generators {
                // a∘g: θ ↦ P_g(P_a(θ))
                let img = field.substitute(g, &images[a]);
                let k = key(&img);
                if let std::collections::btree_map::Entry::Vacant(e) = index.entry(k) {
                    if images.len() >= relative_degree {
                        return Err(GaloisError::NotGalois { order: images.len() + 1, degree: relative_degree });
                    }
                    e.insert(images.len());
                    queue.push_back(images.len());
                    images.push(img);
                }
            }
        }
        if images.len() != relative_degree {
            return Err(GaloisError::NotGalois { order: images.len(), degree: relative_degree });
        }
        let n = images.len();
        let mut compose = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let img = field.substitute(&images[b], &images[a]);
                compose[a][b] = *index.get(&key(&img)).ok_or_else(|| GaloisError::NotAutomorphism(img.to_string()))?;
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| compose[a][b] == 0).unwrap()).collect();
        Ok(GaloisGroup { field: field.clone(), images, compose, inverse })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// P_s(θ).
    pub fn image(&self, s: usize) -> &NfElement {
        &self.images[s]
    }

    /// `a∘b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.compose[a][b]
    }

    /// Composite of a sequence, leftmost applied last.
    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(0, |acc, &e| self.compose(acc, e))
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `b∘a∘b⁻¹`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.product(&[b, a, self.inverse(b)])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.compose(x, a);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self, a: usize) -> bool {
        self.element_order(a) == 2
    }

    /// s(x).
    pub fn apply(&self, s: usize, x: &NfElement) -> NfElement {
        self.field.substitute(x, &self.images[s])
    }

    pub fn index_of_image(&self, img: &NfElement) -> Option<usize> {
        self.images.iter().position(|x| x == img)
    }

    /// Elements fixing `x`.
    pub fn stabilizer(&self, x: &NfElement) -> Vec<usize> {
        (0..self.order()).filter(|&s| &self.apply(s, x) == x).collect()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.compose(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn is_abelian(&self, elems: &[usize]) -> bool {
        elems.iter().all(|&a| elems.iter().all(|&b| self.compose(a, b) == self.compose(b, a)))
    }

    /// π_s on the labels of `emb`: ι_j ∘ s = ι_{π_s(j)}.
    pub fn permutations(&self, emb: &PadicEmbeddings) -> Result<Vec<Vec<usize>>, GaloisError> {
        (0..self.order())
            .map(|s| {
                (0..emb.len())
                    .map(|j| {
                        emb.image_label(j, &self.images[s])
                            .ok_or_else(|| GaloisError::NotAutomorphism(self.images[s].to_string()))
                    })
                    .collect()
            })
            .collect()
    }

    /// For every complex embedding z_j (in the field's root order) the
    /// element acting as complex conjugation there: P_τ(z_j) = z̄_j.
    pub fn complex_conjugations(&self) -> Vec<usize> {
        let roots = self.field.complex_roots().to_vec();
        let values: Vec<Vec<Complex64>> = self.images.iter().map(|x| self.field.complex_values(x)).collect();
        let scale = 1e-6 * (1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max));
        (0..roots.len())
            .filter(|&j| roots[j].im.abs() > scale)
            .filter_map(|j| (0..self.order()).find(|&s| (values[s][j] - roots[j].conj()).norm() < scale))
            .collect()
    }

    /// Whether P_s has a denominator divisible by ℓ.
    pub fn has_denominator_divisible_by(&self, ell: u64) -> bool {
        let l = BigInt::from(ell);
        self.images.iter().any(|x| (x.denominator() % &l).is_zero())
    }
}
