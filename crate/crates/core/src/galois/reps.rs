use std::collections::BTreeMap;

use serde::Serialize;

use super::{Character, DihedralData, GaloisError, GaloisGroup};

/// Dimension and the (integer) traces at involutions of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedCharacter {
    pub dim: i64,
    pub trivial: bool,
    /// χ(τ) for elements with τ² = 1.
    pub involution_traces: BTreeMap<usize, i64>,
}

impl InducedCharacter {
    pub fn trivial(group: &GaloisGroup) -> Self {
        let involution_traces =
            (0..group.order()).filter(|&t| group.compose(t, t) == 0).map(|t| (t, 1)).collect();
        InducedCharacter { dim: 1, trivial: true, involution_traces }
    }

    /// Ind_{G″}^{G} χ for a character χ of G″. Its trace vanishes off G″
    /// and equals χ(h) + χ(σ⁻¹hσ) on G″.
    pub fn induced(chi: &Character, d: &DihedralData) -> Result<Self, GaloisError> {
        let g = d.group();
        let twist = chi.twist(g, d.sigma())?;
        let mut involution_traces = BTreeMap::new();
        for t in (0..g.order()).filter(|&t| g.compose(t, t) == 0) {
            let tr = if d.in_gm(t) {
                // values at involutions are ±1
                let sign = |c: super::Cyclo| if c.is_one() { 1 } else { -1 };
                sign(chi.value(t)?) + sign(twist.value(t)?)
            } else {
                0
            };
            involution_traces.insert(t, tr);
        }
        Ok(InducedCharacter { dim: 2, trivial: false, involution_traces })
    }
}

/// (dim π^{+τ}, dim π^{−τ}) = ((dim ± χ(τ))/2).
pub fn eigenspace_dims(group: &GaloisGroup, pi: &InducedCharacter, tau: usize) -> Result<(i64, i64), GaloisError> {
    if tau >= group.order() {
        return Err(GaloisError::UnknownElement(tau));
    }
    if group.compose(tau, tau) != 0 {
        return Err(GaloisError::NonInvolution);
    }
    let chi = *pi.involution_traces.get(&tau).ok_or(GaloisError::NonIntegralResult)?;
    if (pi.dim + chi) % 2 != 0 || chi.abs() > pi.dim {
        return Err(GaloisError::NonIntegralResult);
    }
    Ok(((pi.dim + chi) / 2, (pi.dim - chi) / 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityBound {
    pub bound: i64,
    /// The bound is an equality when Leopoldt's conjecture holds for H.
    pub equality_under_leopoldt: bool,
}

/// Lower bound Σ_i dim π^{−τ_i} for the multiplicity of π in the p-adic
/// units, or 1 for the trivial representation.
pub fn multiplicity_bound(
    group: &GaloisGroup,
    pi: &InducedCharacter,
    conjugations: &[usize],
) -> Result<MultiplicityBound, GaloisError> {
    let mut total = 0;
    for &t in conjugations {
        total += eigenspace_dims(group, pi, t)?.1;
    }
    Ok(MultiplicityBound { bound: if pi.trivial { 1 } else { total }, equality_under_leopoldt: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::dihedral::tests::octic_dihedral;
    use crate::numberfield::NumberField;

    fn raw(dim: i64, traces: &[(usize, i64)]) -> InducedCharacter {
        InducedCharacter { dim, trivial: false, involution_traces: traces.iter().copied().collect() }
    }

    #[test]
    fn eigenspaces_from_traces() {
        let d = octic_dihedral();
        let g = d.group();
        let tau = d.conjugations()[0];
        assert_eq!(eigenspace_dims(g, &raw(2, &[(tau, 0)]), tau).unwrap(), (1, 1));
        assert_eq!(eigenspace_dims(g, &raw(2, &[(tau, -2)]), tau).unwrap(), (0, 2));
        assert_eq!(eigenspace_dims(g, &raw(2, &[(0, 2)]), 0).unwrap(), (2, 0));
        assert_eq!(eigenspace_dims(g, &raw(2, &[(tau, 1)]), tau), Err(GaloisError::NonIntegralResult));
        let rot = (0..8).find(|&s| g.element_order(s) == 4).unwrap();
        assert_eq!(eigenspace_dims(g, &raw(2, &[]), rot), Err(GaloisError::NonInvolution));
    }

    #[test]
    fn multiplicity_bounds() {
        let d = octic_dihedral();
        let g = d.group();
        assert_eq!(multiplicity_bound(g, &InducedCharacter::trivial(g), d.conjugations()).unwrap().bound, 1);
        // one-dimensional π with π(τ) = −1 at each of n conjugations gives n
        let tau = d.conjugations()[0];
        let sign = InducedCharacter { dim: 1, trivial: false, involution_traces: [(tau, -1)].into() };
        assert_eq!(multiplicity_bound(g, &sign, &[tau, tau, tau]).unwrap().bound, 3);
    }

    #[test]
    fn induced_bound_is_two_n_minus_r() {
        // Over F = ℚ (n = 1) with M real (r = 0) every conjugation has
        // trace −2 on Ind ψ♥⁻¹ when ψ♥(c) = −1, so the bound is 2n − r = 2.
        let d = octic_dihedral();
        let g = d.group();
        let gm = d.subgroup_gm().to_vec();
        let psi = Character::from_generators(g, 2, &[(gm[1], 1), (gm[2], 0)]).unwrap();
        let heart = crate::galois::heart_character(&psi, &d).unwrap().character;
        let pi = InducedCharacter::induced(&heart.inverse(), &d).unwrap();
        let odd: Vec<usize> = d.conjugations().iter().copied().filter(|&c| !heart.value(c).unwrap().is_one()).collect();
        assert!(!odd.is_empty());
        assert_eq!(multiplicity_bound(g, &pi, &odd[..1]).unwrap().bound, 2);
        // an imaginary quadratic M (r = 1, n = 1): conjugation lies outside
        // G″ and contributes 1 = 2n − r
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let gi = GaloisGroup::from_generators(&k, &[k.from_int_coords(&[0, -1])]).unwrap();
        let di = DihedralData::new(gi.clone(), &k.gen(), 1).unwrap();
        let chi = Character::from_generators(&gi, 1, &[]).unwrap();
        let pi = InducedCharacter::induced(&chi, &di).unwrap();
        assert_eq!(multiplicity_bound(&gi, &pi, di.conjugations()[..1].as_ref()).unwrap().bound, 1);
    }
}
