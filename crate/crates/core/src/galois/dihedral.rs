use serde::Serialize;

use super::{Character, Cyclo, GaloisError, GaloisGroup};
use crate::numberfield::NfElement;

/// Gal(H/F) with its index-two subgroup G″ = Gal(H/M) and a chosen σ ∉ G″.
#[derive(Clone, Debug)]
pub struct DihedralData {
    group: GaloisGroup,
    gm: Vec<usize>,
    sigma: usize,
    conjugations: Vec<usize>,
    m_totally_real: bool,
}

impl DihedralData {
    /// `m_generator` is the image in H of a generator of M; G″ is its
    /// stabilizer. Every invariant of the structure is checked here.
    pub fn new(group: GaloisGroup, m_generator: &NfElement, sigma: usize) -> Result<Self, GaloisError> {
        let n = group.order();
        if sigma >= n {
            return Err(GaloisError::UnknownElement(sigma));
        }
        let gm = group.stabilizer(m_generator);
        if gm.len() * 2 != n {
            return Err(GaloisError::BadSubgroup(format!("Gal(H/M) has order {} in a group of order {n}", gm.len())));
        }
        if gm.contains(&sigma) {
            return Err(GaloisError::BadSigma("σ fixes M".into()));
        }
        if group.compose(sigma, sigma) != 0 {
            return Err(GaloisError::BadSigma("σ is not an involution".into()));
        }
        for &g in &gm {
            if !gm.contains(&group.conjugate(g, sigma)) {
                return Err(GaloisError::BadSubgroup("not stable under conjugation by σ".into()));
            }
        }
        let mut gens = gm.clone();
        gens.push(sigma);
        if group.generated(&gens).len() != n {
            return Err(GaloisError::BadSubgroup("Gal(H/M) and σ do not generate".into()));
        }
        let field = group.field();
        let m_totally_real = field.complex_values(m_generator).iter().all(|z| z.im.abs() < 1e-8 * (1.0 + z.norm()));
        let conjugations = group.complex_conjugations();
        if m_totally_real && conjugations.iter().any(|c| !gm.contains(c)) {
            return Err(GaloisError::BadConjugation("complex conjugation moves a totally real M".into()));
        }
        Ok(DihedralData { group, gm, sigma, conjugations, m_totally_real })
    }

    pub fn group(&self) -> &GaloisGroup {
        &self.group
    }

    /// G″ = Gal(H/M), sorted.
    pub fn subgroup_gm(&self) -> &[usize] {
        &self.gm
    }

    pub fn in_gm(&self, g: usize) -> bool {
        self.gm.binary_search(&g).is_ok()
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Complex conjugation attached to each non-real complex embedding of H,
    /// in root order.
    pub fn conjugations(&self) -> &[usize] {
        &self.conjugations
    }

    pub fn m_totally_real(&self) -> bool {
        self.m_totally_real
    }

    /// Whether G″ is cyclic.
    pub fn gm_is_cyclic(&self) -> bool {
        self.gm.iter().any(|&g| self.group.element_order(g) == self.gm.len())
    }

    /// Checks that `c` acts as complex conjugation somewhere and commutes
    /// with every element up to `kernel`, i.e. is central in G/`kernel`.
    pub fn check_conjugation(&self, c: usize, kernel: &[usize]) -> Result<(), GaloisError> {
        if !self.conjugations.contains(&c) {
            return Err(GaloisError::BadConjugation(format!("{c} is not a complex conjugation of H")));
        }
        for g in 0..self.group.order() {
            let comm = self.group.product(&[g, c, self.group.inverse(g), self.group.inverse(c)]);
            if !kernel.contains(&comm) {
                return Err(GaloisError::BadConjugation(format!("{c} is not central modulo the kernel")));
            }
        }
        Ok(())
    }
}

/// ψ♥ = ψ/ψ^σ together with its degeneracy flags.
#[derive(Clone, Debug, Serialize)]
pub struct HeartCharacter {
    pub character: Character,
    /// ψ♥ is trivial: Ind ψ is reducible.
    pub degenerate: bool,
    /// ψ♥² is trivial.
    pub quadratic: bool,
}

/// ψ♥(g) = ψ(g)·ψ(σ⁻¹∘g∘σ)⁻¹ on G″.
pub fn heart_character(psi: &Character, d: &DihedralData) -> Result<HeartCharacter, GaloisError> {
    if psi.domain() != d.subgroup_gm() {
        return Err(GaloisError::BadSubgroup("ψ must be defined on Gal(H/M)".into()));
    }
    let character = psi.divide(&psi.twist(d.group(), d.sigma())?)?;
    let degenerate = character.is_trivial();
    let quadratic = character.pow(2).is_trivial();
    Ok(HeartCharacter { character, degenerate, quadratic })
}

/// (η(g), η′(g)) = (ψ(g∘σ), ψ(σ⁻¹∘g)) for g ∉ G″.
///
/// Products in the induced representation are read with g·h = h∘g, the
/// reading under which ρ(s) = [[0, η′(s)], [η(s), 0]] is multiplicative.
pub fn eta_value(psi: &Character, d: &DihedralData, g: usize) -> Result<(Cyclo, Cyclo), GaloisError> {
    if d.in_gm(g) {
        return Err(GaloisError::ElementInGM(g));
    }
    let grp = d.group();
    let s = d.sigma();
    Ok((psi.value(grp.compose(g, s))?, psi.value(grp.compose(grp.inverse(s), g))?))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::galois::group::tests::octic;
    use crate::numberfield::NumberField;

    type Mat = [[Option<Cyclo>; 2]; 2];

    fn mat_mul(a: &Mat, b: &Mat) -> Mat {
        let mut out = [[None; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let terms: Vec<Cyclo> = (0..2).filter_map(|k| Some(a[i][k]?.mul(b[k][j]?))).collect();
                assert!(terms.len() <= 1, "monomial matrices have one term per entry");
                out[i][j] = terms.first().copied();
            }
        }
        out
    }

    fn rho(psi: &Character, d: &DihedralData, s: usize) -> Mat {
        if d.in_gm(s) {
            let tw = psi.twist(d.group(), d.sigma()).unwrap();
            [[Some(psi.value(s).unwrap()), None], [None, Some(tw.value(s).unwrap())]]
        } else {
            let (e, ep) = eta_value(psi, d, s).unwrap();
            [[None, Some(ep)], [Some(e), None]]
        }
    }

    /// D4 realized on ℚ(X, i), X⁴ = X² + 1, with M = ℚ(X²).
    pub(crate) fn octic_dihedral() -> DihedralData {
        let (k, gens) = octic();
        let g = GaloisGroup::from_generators(&k, &gens).unwrap();
        let x = k.element(
            [(-3, 2), (1, 2), (0, 1), (-3, 2), (3, 2), (1, 2), (-1, 1), (1, 2)]
                .iter()
                .map(|&(a, b)| crate::exact::rat_frac(a, b))
                .collect(),
        )
        .unwrap();
        let phi = k.mul(&x, &x);
        let sigma = g.index_of_image(&gens[2]).unwrap();
        DihedralData::new(g, &phi, sigma).unwrap()
    }

    #[test]
    fn octic_structure() {
        let d = octic_dihedral();
        assert_eq!(d.subgroup_gm().len(), 4);
        assert!(!d.gm_is_cyclic());
        assert!(d.m_totally_real());
        assert_eq!(d.conjugations().len(), 8);
        let distinct: std::collections::BTreeSet<_> = d.conjugations().iter().collect();
        assert_eq!(distinct.len(), 2);
    }

    #[test]
    fn heart_character_inverts_under_sigma() {
        let d = octic_dihedral();
        let g = d.group();
        let gm = d.subgroup_gm().to_vec();
        for a in 0..2i64 {
            for b in 0..2i64 {
                let psi = Character::from_generators(g, 2, &[(gm[1], a), (gm[2], b)]).unwrap();
                let heart = heart_character(&psi, &d).unwrap();
                for &h in &gm {
                    let hs = g.conjugate(h, d.sigma());
                    assert_eq!(heart.character.value(hs).unwrap(), heart.character.value(h).unwrap().inv());
                }
                assert!(heart.quadratic);
            }
        }
    }

    #[test]
    fn induced_matrices_multiply() {
        let d = octic_dihedral();
        let g = d.group();
        let gm = d.subgroup_gm().to_vec();
        let psi = Character::from_generators(g, 2, &[(gm[1], 1), (gm[2], 0)]).unwrap();
        for s in 0..8 {
            for t in 0..8 {
                assert_eq!(mat_mul(&rho(&psi, &d, s), &rho(&psi, &d, t)), rho(&psi, &d, g.compose(t, s)));
            }
        }
        let (e, ep) = eta_value(&psi, &d, d.sigma()).unwrap();
        assert!(e.is_one() && ep.is_one());
        assert_eq!(eta_value(&psi, &d, 0), Err(GaloisError::ElementInGM(0)));
    }

    /// Cyclic-over-ℚ(√5) case: ℚ(ζ_5) ⊂ D5 field would need degree 10; use
    /// the quartic ℚ(ζ_5) with M = ℚ(√5) and G″ of order 2 instead.
    #[test]
    fn cyclic_quartic_rejects_dihedral_shape() {
        let k = NumberField::from_ints(&[1, 1, 1, 1, 1]).unwrap();
        let g = GaloisGroup::from_generators(&k, &[k.from_int_coords(&[0, 0, 1])]).unwrap();
        // √5 = 2ζ² + 2ζ³ + 1... in ζ-coordinates: 1 + 2ζ² + 2ζ³ squared is 5
        let sqrt5 = k.from_int_coords(&[1, 0, 2, 2]);
        assert_eq!(k.mul(&sqrt5, &sqrt5), k.from_int_coords(&[5]));
        let gm = g.stabilizer(&sqrt5);
        let outside = (0..4).find(|s| !gm.contains(s)).unwrap();
        // the elements outside G″ have order 4, so no involution σ exists
        assert!(matches!(DihedralData::new(g, &sqrt5, outside), Err(GaloisError::BadSigma(_))));
    }

    #[test]
    fn order_four_eta_against_matrices() {
        // same octic, now over M = ℚ(√−5) = ℚ(i(2X² − 1)), where G″ is cyclic
        let (k, gens) = octic();
        let g = GaloisGroup::from_generators(&k, &gens).unwrap();
        let q = |v: [(i64, i64); 8]| k.element(v.iter().map(|&(a, b)| crate::exact::rat_frac(a, b)).collect()).unwrap();
        let x = q([(-3, 2), (1, 2), (0, 1), (-3, 2), (3, 2), (1, 2), (-1, 1), (1, 2)]);
        let i = q([(1, 2), (-2, 1), (-1, 2), (0, 1), (-5, 2), (-1, 1), (3, 2), (-1, 1)]);
        let two_phi_minus_one = k.sub(&k.scale(&k.mul(&x, &x), &crate::exact::rat(2)), &k.one());
        let sqrt_m5 = k.mul(&i, &two_phi_minus_one);
        assert_eq!(k.mul(&sqrt_m5, &sqrt_m5), k.from_int_coords(&[-5]));
        let gm = g.stabilizer(&sqrt_m5);
        let sigma = (0..8).find(|&s| !gm.contains(&s) && g.element_order(s) == 2).unwrap();
        let d = DihedralData::new(g.clone(), &sqrt_m5, sigma).unwrap();
        assert!(d.gm_is_cyclic() && !d.m_totally_real());
        let r = *gm.iter().find(|&&h| g.element_order(h) == 4).unwrap();
        let psi = Character::from_generators(&g, 4, &[(r, 1)]).unwrap();
        assert_eq!(psi.order(), 4);
        let heart = heart_character(&psi, &d).unwrap();
        // ψ^σ = ψ⁻¹ on a dihedral rotation, so ψ♥ = ψ² is quadratic but not trivial
        assert_eq!(heart.character, psi.pow(2));
        assert!(heart.quadratic && !heart.degenerate);
        for s in 0..8 {
            for t in 0..8 {
                assert_eq!(mat_mul(&rho(&psi, &d, s), &rho(&psi, &d, t)), rho(&psi, &d, g.compose(t, s)));
            }
        }
        // g = σ·r in the product reading is r∘σ; η(g) = ψ(r∘σ∘σ) = ψ(r) = ζ₄
        let gsr = g.compose(r, sigma);
        assert_eq!(eta_value(&psi, &d, gsr).unwrap().0, Cyclo::new(4, 1));
        let (e, ep) = eta_value(&psi, &d, g.inverse(sigma)).unwrap();
        assert!(e.is_one());
        let _ = ep;
        let trivial = Character::from_generators(&g, 4, &[(r, 0)]).unwrap();
        for s in (0..8).filter(|s| !gm.contains(s)) {
            let (e, ep) = eta_value(&trivial, &d, s).unwrap();
            assert!(e.is_one() && ep.is_one());
        }
    }
}
