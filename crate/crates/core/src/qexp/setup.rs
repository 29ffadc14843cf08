use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{QexpError, SearchBound};
use crate::deformation::{PrimeAboveP, SplittingProfile, StabClass};
use crate::exact::is_prime;
use crate::galois::{heart_character, Character, DihedralData, GaloisGroup, HeartCharacter};
use crate::numberfield::{
    factor_rational_prime, integral_basis, lies_over, FieldEmbedding, IntegralBasis, NfElement, NumberField,
    PrimeFactor,
};
use crate::padics::{padic_embeddings_in, root_of_unity, PadicContext, PadicEmbeddings, PadicNumber};

/// Everything needed to build a [`CoefficientSetup`].
#[derive(Clone, Debug)]
pub struct SetupSpec {
    pub base: NumberField,
    /// Image of F's generator in H.
    pub base_image: NfElement,
    pub m: NumberField,
    /// Image of M's generator in H.
    pub m_image: NfElement,
    pub h: NumberField,
    /// Images of θ under generators of Gal(H/F).
    pub automorphisms: Vec<NfElement>,
    pub sigma: NfElement,
    pub psi_order: u32,
    /// (image of θ under a generator of G″, exponent of ζ_m).
    pub psi_generators: Vec<(NfElement, i64)>,
    /// The conjugation c, if the caller wants it checked.
    pub conjugation: Option<NfElement>,
    pub p: u64,
    pub precision: u32,
    /// One class per prime of F above p, in factorization order.
    pub stabilization: Vec<StabClass>,
    /// Rational α-weights, one per embedding in I′_F; all 1 when absent.
    pub alpha_weights: Option<Vec<BigRational>>,
    /// Primes dividing the tame level.
    pub tame_level: Vec<u64>,
    pub search: SearchBound,
}

/// A prime of F above p with its behaviour in M and its stabilization.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizedPrime {
    pub prime: PrimeFactor,
    pub splits_in_m: bool,
    pub class: StabClass,
    /// Indices (into the factorization of p in M) of the primes above it.
    pub m_primes: Vec<usize>,
}

/// The checked, precomputed state shared by every coefficient computation.
#[derive(Clone, Debug)]
pub struct CoefficientSetup {
    pub base: NumberField,
    pub base_image: NfElement,
    pub m: NumberField,
    pub m_image: NfElement,
    pub field: NumberField,
    pub order: IntegralBasis,
    pub dihedral: DihedralData,
    pub psi: Character,
    pub heart: HeartCharacter,
    pub conjugation: Option<usize>,
    pub p: u64,
    pub embeddings: PadicEmbeddings,
    /// π_s for every group element s.
    pub perms: Vec<Vec<usize>>,
    /// ζ_m^k for k < m, m the modulus of ψ♥.
    zeta_powers: Vec<PadicNumber>,
    pub p_primes: Vec<StabilizedPrime>,
    /// Embedding labels g_i forming I′_F.
    pub iprime: Vec<usize>,
    pub alpha_weights: Vec<PadicNumber>,
    pub excluded: BTreeSet<u64>,
    pub search: SearchBound,
}

fn invalid(m: impl Into<String>) -> QexpError {
    QexpError::InvalidSetup(m.into())
}

fn multiplicative_order(p: u64, m: u64) -> usize {
    let mut k = 1;
    let mut x = p % m;
    while x != 1 % m {
        x = ((x as u128 * p as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

impl CoefficientSetup {
    pub fn new(spec: SetupSpec) -> Result<Self, QexpError> {
        let h = spec.h.clone();
        FieldEmbedding::new(spec.base.clone(), h.clone(), spec.base_image.clone())?;
        FieldEmbedding::new(spec.m.clone(), h.clone(), spec.m_image.clone())?;
        if spec.m.degree() != 2 * spec.base.degree() {
            return Err(invalid("M must be quadratic over F"));
        }
        let rel = h.degree() / spec.base.degree();
        let group = GaloisGroup::from_generators_relative(&h, &spec.automorphisms, rel)?;
        for g in 0..group.order() {
            if group.apply(g, &spec.base_image) != spec.base_image {
                return Err(invalid("an automorphism moves F"));
            }
        }
        let sigma = group.index_of_image(&spec.sigma).ok_or_else(|| invalid("σ is not in the group"))?;
        let dihedral = DihedralData::new(group.clone(), &spec.m_image, sigma)?;

        let gens = spec
            .psi_generators
            .iter()
            .map(|(img, k)| {
                group.index_of_image(img).map(|g| (g, *k)).ok_or_else(|| invalid("ψ generator is not in the group"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let psi = Character::from_generators(&group, spec.psi_order, &gens)?;
        if psi.domain() != dihedral.subgroup_gm() {
            return Err(invalid("ψ generators must generate Gal(H/M)"));
        }
        let heart = heart_character(&psi, &dihedral)?;

        let conjugation = match &spec.conjugation {
            None => None,
            Some(img) => {
                let c = group.index_of_image(img).ok_or_else(|| invalid("c is not in the group"))?;
                dihedral.check_conjugation(c, &heart.character.kernel())?;
                Some(c)
            }
        };

        let p = spec.p;
        if !is_prime(p) {
            return Err(invalid(format!("p = {p} is not prime")));
        }
        if spec.tame_level.contains(&p) {
            return Err(QexpError::ExcludedPrime(p));
        }
        let m_order = heart.character.modulus().lcm(&psi.modulus()) as u64;
        if m_order.is_multiple_of(p) {
            return Err(QexpError::HypothesisFailure(format!("p divides the order {m_order} of ψ")));
        }
        let h_primes = factor_rational_prime(&h, p)?;
        if h_primes.iter().any(|q| q.e > 1) {
            return Err(QexpError::HypothesisFailure("p ramifies in H".into()));
        }
        let f = h_primes.iter().fold(multiplicative_order(p, m_order), |acc, q| acc.lcm(&q.f));
        let ctx = PadicContext::new(p, f, spec.precision)?;
        let embeddings = padic_embeddings_in(&h, &ctx)?;
        if !embeddings.residues_distinct() {
            return Err(QexpError::HypothesisFailure("p divides the discriminant of the defining polynomial".into()));
        }
        let perms = group.permutations(&embeddings)?;
        let zeta = root_of_unity(heart.character.modulus() as u64, &ctx)?;
        let mut zeta_powers = vec![ctx.one()];
        for _ in 1..heart.character.modulus() {
            zeta_powers.push(ctx.mul(zeta_powers.last().unwrap(), &zeta));
        }

        // primes of F and M above p, matched through the primes of H
        let f_primes = factor_rational_prime(&spec.base, p)?;
        let m_primes = factor_rational_prime(&spec.m, p)?;
        if spec.stabilization.len() != f_primes.len() {
            return Err(invalid(format!(
                "{} stabilization classes for {} primes of F above p",
                spec.stabilization.len(),
                f_primes.len()
            )));
        }
        let below = |img: &NfElement, small: &[PrimeFactor], q: &PrimeFactor| -> Result<usize, QexpError> {
            for (i, s) in small.iter().enumerate() {
                if lies_over(img, s, q)? {
                    return Ok(i);
                }
            }
            Err(invalid("a prime of H lies over no listed prime"))
        };
        let mut h_below = Vec::with_capacity(h_primes.len());
        for q in &h_primes {
            h_below.push((below(&spec.base_image, &f_primes, q)?, below(&spec.m_image, &m_primes, q)?));
        }
        let mut p_primes = Vec::new();
        for (i, (pf, class)) in f_primes.iter().zip(&spec.stabilization).enumerate() {
            let over: BTreeSet<usize> = h_below.iter().filter(|(a, _)| *a == i).map(|(_, b)| *b).collect();
            let splits = over.len() == 2;
            if splits == (*class == StabClass::None) {
                return Err(invalid(format!("prime {i} of F above p: class {class:?} but splits_in_m = {splits}")));
            }
            p_primes.push(StabilizedPrime {
                prime: pf.clone(),
                splits_in_m: splits,
                class: *class,
                m_primes: over.into_iter().collect(),
            });
        }

        // I′_F: for each prime in I′, the lowest labels over its first
        // prime of M, one per embedding of F
        let label_prime = |j: usize| -> usize {
            let g = &embeddings.place_factors[embeddings.embeddings[j].place_id];
            h_primes.iter().position(|q| &q.local_generator == g).expect("place factors match the factorization")
        };
        let mut iprime = Vec::new();
        for (i, sp) in p_primes.iter().enumerate() {
            if sp.class != StabClass::IPrime {
                continue;
            }
            let v = sp.m_primes[0];
            let mut seen = Vec::new();
            for j in 0..embeddings.len() {
                let q = label_prime(j);
                if h_below[q] != (i, v) {
                    continue;
                }
                let res = ctx.residue(&embeddings.evaluate(j, &spec.base_image))?;
                if !seen.contains(&res) {
                    seen.push(res);
                    iprime.push(j);
                }
            }
            if seen.len() != sp.prime.f {
                return Err(QexpError::EmbeddingGap(format!("prime {i} of F above p")));
            }
        }

        let alpha_weights = match &spec.alpha_weights {
            None => vec![ctx.one(); iprime.len()],
            Some(w) if w.len() == iprime.len() => w.iter().map(|x| ctx.from_rational(x)).collect(),
            Some(w) => return Err(invalid(format!("{} α-weights for {} embeddings in I′_F", w.len(), iprime.len()))),
        };

        let order = integral_basis(&h)?;
        let mut excluded: BTreeSet<u64> = spec.tame_level.iter().copied().collect();
        excluded.insert(p);

        Ok(CoefficientSetup {
            base: spec.base,
            base_image: spec.base_image,
            m: spec.m,
            m_image: spec.m_image,
            field: h,
            order,
            dihedral,
            psi,
            heart,
            conjugation,
            p,
            embeddings,
            perms,
            zeta_powers,
            p_primes,
            iprime,
            alpha_weights,
            excluded,
            search: spec.search,
        })
    }

    pub fn group(&self) -> &GaloisGroup {
        self.dihedral.group()
    }

    pub fn context(&self) -> &PadicContext {
        &self.embeddings.context
    }

    /// ζ_m^k in the working context, m the modulus of ψ♥.
    pub fn heart_value(&self, g: usize) -> Result<PadicNumber, QexpError> {
        Ok(self.zeta_powers[self.heart.character.exponent(g)? as usize].clone())
    }

    /// A root of unity of order dividing the modulus of ψ♥ or of ψ, in the
    /// working context.
    pub fn cyclo_value(&self, c: crate::galois::Cyclo) -> Result<PadicNumber, QexpError> {
        let ctx = self.context();
        let r = c.reduced();
        let q1 = ctx.residue_size() - num_bigint::BigUint::one();
        if (&q1 % r.order).bits() != 0 {
            return Err(QexpError::HypothesisFailure(format!("no {}-th roots of unity in the context", r.order)));
        }
        let z = root_of_unity(r.order as u64, ctx)?;
        Ok(ctx.pow(&z, r.exponent as i64)?)
    }

    /// Replaces the α-weights by arbitrary p-adic values.
    pub fn set_alpha_weights(&mut self, w: Vec<PadicNumber>) -> Result<(), QexpError> {
        if w.len() != self.iprime.len() {
            return Err(invalid("α-weight count must match I′_F"));
        }
        self.alpha_weights = w;
        Ok(())
    }

    /// The splitting profile read off the factorizations, with the given
    /// hypothesis assertions.
    pub fn splitting_profile(&self, leopoldt_assumed: bool, p_regular: bool) -> SplittingProfile {
        SplittingProfile {
            n: self.base.degree() as u32,
            r: self.m.signature().1 as u32,
            primes: self
                .p_primes
                .iter()
                .map(|sp| PrimeAboveP {
                    e: sp.prime.e as u32,
                    f: sp.prime.f as u32,
                    splits_in_m: sp.splits_in_m,
                    stab_class: sp.class,
                })
                .collect(),
            leopoldt_assumed,
            p_regular,
        }
    }

    /// d = |D_λ ∩ ker ψ♥| for the decomposition group D_λ of `primes[idx]`.
    pub fn decomposition_kernel_size(&self, primes: &[PrimeFactor], idx: usize) -> Result<usize, QexpError> {
        let g = self.group();
        let mut d = 0;
        for k in self.heart.character.kernel() {
            if crate::galois::prime_image(g, k, primes, idx)? == idx {
                d += 1;
            }
        }
        Ok(d)
    }

    /// Whether ψ♥(τ) = −1 at every complex conjugation, i.e. the field cut
    /// out by ψ♥ is CM.
    pub fn heart_field_is_cm(&self) -> bool {
        let minus_one = crate::galois::Cyclo::new(2, 1);
        !self.dihedral.conjugations().is_empty()
            && self.dihedral.conjugations().iter().all(|&c| self.heart.character.value(c).map(|v| v == minus_one).unwrap_or(false))
    }
}
