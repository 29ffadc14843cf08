use num_integer::Integer;

use super::hensel::hensel_lift;
use super::number::{PadicContext, PadicNumber};
use super::PadicError;
use crate::exact::{fpoly, poly_factor_mod_p, ExactError};

use crate::numberfield::{NfElement, NumberField};

/// One embedding K → ℚ_q, θ ↦ `root`.
#[derive(Clone, Debug)]
pub struct PadicEmbedding {
    pub root: PadicNumber,
    /// The residue of `root` in 𝔽_q.
    pub residue: Vec<u64>,
    /// Index of the irreducible factor of the defining polynomial mod p
    /// (equivalently, of the prime of K above p) this embedding induces.
    pub place_id: usize,
}

/// All p-adic embeddings of a field unramified at p, in a common context.
#[derive(Clone, Debug)]
pub struct PadicEmbeddings {
    pub field: NumberField,
    pub context: PadicContext,
    pub embeddings: Vec<PadicEmbedding>,
    /// Irreducible factors of the defining polynomial mod p, by place id.
    pub place_factors: Vec<Vec<u64>>,
}

fn exact_err(e: ExactError, p: u64) -> PadicError {
    match e {
        ExactError::CompositeModulus(q) => PadicError::CompositeModulus(q),
        _ => PadicError::RamifiedPrime(p),
    }
}

/// Embeddings in ℚ_{p^f} with f the lcm of the residue degrees.
pub fn padic_embeddings(k: &NumberField, p: u64, precision: u32) -> Result<PadicEmbeddings, PadicError> {
    let fac = poly_factor_mod_p(k.poly(), p).map_err(|e| exact_err(e, p))?;
    let f = fac.iter().fold(1usize, |acc, (g, _)| acc.lcm(&(g.len() - 1)));
    let ctx = PadicContext::new(p, f, precision)?;
    padic_embeddings_in(k, &ctx)
}

/// Embeddings in a caller-supplied context whose degree must be a multiple
/// of every residue degree.
pub fn padic_embeddings_in(k: &NumberField, ctx: &PadicContext) -> Result<PadicEmbeddings, PadicError> {
    let p = ctx.p();
    let fac = poly_factor_mod_p(k.poly(), p).map_err(|e| exact_err(e, p))?;
    if fac.iter().any(|(_, e)| *e > 1) {
        return Err(PadicError::RamifiedPrime(p));
    }
    let fq = ctx.residue_field();
    let mut embeddings = Vec::with_capacity(k.degree());
    let mut place_factors = Vec::with_capacity(fac.len());
    for (place_id, (g, _)) in fac.into_iter().enumerate() {
        let d = g.len() - 1;
        if !ctx.f().is_multiple_of(d) {
            return Err(PadicError::DegreeMismatch { context: ctx.f(), needed: d });
        }
        let gq: Vec<Vec<u64>> = g.iter().map(|&c| fq.embed(c)).collect();
        let roots = fpoly::roots(fq, &gq);
        debug_assert_eq!(roots.len(), d);
        for r in roots {
            let root = hensel_lift(k.poly(), &r, ctx)?;
            embeddings.push(PadicEmbedding { root, residue: r, place_id });
        }
        place_factors.push(g);
    }
    Ok(PadicEmbeddings { field: k.clone(), context: ctx.clone(), embeddings, place_factors })
}

impl PadicEmbeddings {
    pub fn len(&self) -> usize {
        self.embeddings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.embeddings.is_empty()
    }

    /// Image of `x` under embedding `j`.
    pub fn evaluate(&self, j: usize, x: &NfElement) -> PadicNumber {
        let ctx = &self.context;
        let r = &self.embeddings[j].root;
        let mut acc = ctx.zero();
        for c in x.coords.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, r), &ctx.from_rational(c));
        }
        acc
    }

    /// The embedding whose root reduces to `residue`.
    pub fn label_of_residue(&self, residue: &[u64]) -> Option<usize> {
        self.embeddings.iter().position(|e| e.residue == residue)
    }

    /// The label k with x(r_j) ≡ r_k mod p, for x the image of θ under a
    /// field automorphism.
    pub fn image_label(&self, j: usize, image_of_generator: &NfElement) -> Option<usize> {
        let v = self.evaluate(j, image_of_generator);
        let res = self.context.residue(&v).ok()?;
        self.label_of_residue(&res)
    }

    /// Labels grouped by place id.
    pub fn places(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.place_factors.len()];
        for (j, e) in self.embeddings.iter().enumerate() {
            out[e.place_id].push(j);
        }
        out
    }

    /// Whether distinct embeddings have distinct residues.
    pub fn residues_distinct(&self) -> bool {
        let mut r: Vec<&Vec<u64>> = self.embeddings.iter().map(|e| &e.residue).collect();
        r.sort();
        r.windows(2).all(|w| w[0] != w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let e5 = padic_embeddings(&k, 5, 12).unwrap();
        assert_eq!(e5.places(), vec![vec![0], vec![1]]);
        assert_eq!(e5.context.f(), 1);
        let mut res: Vec<u64> = e5.embeddings.iter().map(|e| e.residue[0]).collect();
        res.sort();
        assert_eq!(res, vec![2, 3]);
        let e3 = padic_embeddings(&k, 3, 12).unwrap();
        assert_eq!(e3.places(), vec![vec![0, 1]]);
        assert_eq!(e3.context.f(), 2);
        assert_eq!(padic_embeddings(&k, 2, 12).unwrap_err(), PadicError::RamifiedPrime(2));
    }

    #[test]
    fn rational_field() {
        let q = NumberField::from_ints(&[0, 1]).unwrap();
        let e = padic_embeddings(&q, 11, 10).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.embeddings[0].root.is_zero());
    }

    #[test]
    fn roots_satisfy_the_polynomial() {
        let k = NumberField::from_ints(&[1, -2, 2, 2, -2, 2, 2, -2, 1]).unwrap();
        let e = padic_embeddings(&k, 11, 30).unwrap();
        assert_eq!(e.len(), 8);
        assert!(e.residues_distinct());
        let ctx = &e.context;
        for emb in &e.embeddings {
            let mut acc = ctx.zero();
            for c in k.poly().coeffs().iter().rev() {
                acc = ctx.add(&ctx.mul(&acc, &emb.root), &ctx.from_rational(c));
            }
            assert!(acc.is_zero() && acc.absolute_precision().unwrap() >= 30);
        }
    }
}
