mod common;

use proptest::prelude::*;
use thetaloc_core::galois::{
    eigenspace_dims, frobenius_at, heart_character, multiplicity_bound, prime_image, Character, Cyclo, DihedralData,
    GaloisGroup, InducedCharacter,
};
use thetaloc_core::numberfield::factor_rational_prime;

fn octic_dihedral() -> DihedralData {
    let h = common::octic_field();
    let gens = common::octic_automorphisms(&h);
    let g = GaloisGroup::from_generators(&h, &gens).unwrap();
    let x = common::octic_x(&h);
    let sigma = g.index_of_image(&gens[2]).unwrap();
    DihedralData::new(g, &h.mul(&x, &x), sigma).unwrap()
}

fn cyclo() -> impl Strategy<Value = (u32, i64, i64, i64)> {
    (1u32..=24).prop_flat_map(|m| (Just(m), -50i64..50, -50i64..50, -50i64..50))
}

proptest! {
    #[test]
    fn roots_of_unity_form_a_group((m, a, b, c) in cyclo()) {
        let (x, y, z) = (Cyclo::new(m, a), Cyclo::new(m, b), Cyclo::new(m, c));
        prop_assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
        prop_assert_eq!(x.mul(y), y.mul(x));
        prop_assert!(x.mul(x.inv()).is_one());
        prop_assert_eq!(x.pow(3), x.mul(x).mul(x));
        prop_assert_eq!(m % x.multiplicative_order(), 0);
        prop_assert!(x.pow(x.multiplicative_order() as i64).is_one());
        let w = x.to_complex();
        prop_assert!((w.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cyclo_equality_ignores_presentation(m in 1u32..12, k in 1u32..5, a in -30i64..30) {
        prop_assert_eq!(Cyclo::new(m, a), Cyclo::new(m * k, a * k as i64));
    }
}

#[test]
fn group_structure() {
    let d = octic_dihedral();
    let g = d.group();
    assert_eq!(g.order(), 8);
    for a in 0..8 {
        assert_eq!(g.compose(a, g.inverse(a)), g.identity());
        for b in 0..8 {
            for c in 0..8 {
                assert_eq!(g.compose(g.compose(a, b), c), g.compose(a, g.compose(b, c)));
            }
            // a∘b applies b first
            let x = g.field().gen();
            assert_eq!(g.apply(g.compose(a, b), &x), g.apply(a, &g.apply(b, &x)));
        }
    }
    assert!(!g.is_abelian(&(0..8).collect::<Vec<_>>()));
    assert!(g.is_abelian(d.subgroup_gm()));
}

#[test]
fn characters_are_homomorphisms_and_heart_inverts() {
    let d = octic_dihedral();
    let g = d.group();
    let gm = d.subgroup_gm().to_vec();
    let sigma = d.sigma();
    for a in 0..2 {
        for b in 0..2 {
            let psi = Character::from_generators(g, 2, &[(gm[1], a), (gm[2], b)]).unwrap();
            for &x in &gm {
                for &y in &gm {
                    let lhs = psi.value(g.compose(x, y)).unwrap();
                    assert_eq!(lhs, psi.value(x).unwrap().mul(psi.value(y).unwrap()));
                }
                assert!(psi.value(x).unwrap().mul(psi.inverse().value(x).unwrap()).is_one());
            }
            let heart = heart_character(&psi, &d).unwrap();
            for &x in &gm {
                let conj = g.compose(g.inverse(sigma), g.compose(x, sigma));
                let h = heart.character.value(x).unwrap();
                assert_eq!(heart.character.value(conj).unwrap(), h.inv());
            }
            assert!(heart.quadratic);
        }
    }
    // an assignment that is not multiplicative is refused
    let g1 = gm.iter().copied().find(|&x| g.element_order(x) == 2).unwrap();
    assert!(Character::from_table(g, 2, [(0, 1), (g1, 0)].into_iter().collect()).is_err());
}

#[test]
fn eigenspaces_split_the_induced_representation() {
    let d = octic_dihedral();
    let g = d.group();
    let gm = d.subgroup_gm().to_vec();
    for a in 0..2 {
        for b in 0..2 {
            let chi = Character::from_generators(g, 2, &[(gm[1], a), (gm[2], b)]).unwrap();
            let pi = InducedCharacter::induced(&chi, &d).unwrap();
            let mut total = 0;
            for &t in d.conjugations() {
                let (plus, minus) = eigenspace_dims(g, &pi, t).unwrap();
                assert_eq!(plus + minus, 2);
                assert!(plus >= 0 && minus >= 0);
                total += minus;
            }
            assert_eq!(multiplicity_bound(g, &pi, d.conjugations()).unwrap().bound, total);
        }
    }
    let triv = InducedCharacter::trivial(g);
    assert_eq!(multiplicity_bound(g, &triv, d.conjugations()).unwrap().bound, 1);
    let non_involution = (0..8).find(|&s| g.element_order(s) == 4).unwrap();
    assert!(eigenspace_dims(g, &triv, non_involution).is_err());
}

#[test]
fn frobenius_conjugates_with_the_prime() {
    let d = octic_dihedral();
    let g = d.group();
    for ell in [3u64, 7, 13, 17, 19, 23, 29, 31, 37, 41] {
        let Ok(primes) = factor_rational_prime(g.field(), ell) else { continue };
        let frobs: Vec<usize> = primes.iter().map(|q| frobenius_at(g, q, 1, &[2, 5, 11]).unwrap()).collect();
        // the Frobenius order is the residue degree
        for (q, &f) in primes.iter().zip(&frobs) {
            assert_eq!(g.element_order(f), q.f, "ℓ = {ell}");
        }
        for s in 0..g.order() {
            let j = prime_image(g, s, &primes, 0).unwrap();
            assert_eq!(frobs[j], g.conjugate(frobs[0], s), "ℓ = {ell}, s = {s}");
        }
        // Frobenius lies in Gal(H/M) exactly when ℓ splits in ℚ(√5)
        assert_eq!(d.in_gm(frobs[0]), matches!(ell % 5, 1 | 4), "ℓ = {ell}");
    }
    assert!(frobenius_at(g, &factor_rational_prime(g.field(), 3).unwrap()[0], 1, &[3]).is_err());
}
