#![allow(dead_code)]

use std::sync::OnceLock;

use thetaloc_core::deformation::StabClass;
use thetaloc_core::exact::rat_frac;
use thetaloc_core::numberfield::{NfElement, NumberField};
use thetaloc_core::qexp::{CoefficientSetup, SearchBound, SetupSpec};

fn el(k: &NumberField, v: [(i64, i64); 8]) -> NfElement {
    k.element(v.iter().map(|&(a, b)| rat_frac(a, b)).collect()).unwrap()
}

/// H = ℚ(X, i) with X⁴ = X² + 1, a D4 octic over ℚ containing M = ℚ(√5).
pub fn octic_field() -> NumberField {
    NumberField::from_ints(&[1, -2, 2, 2, -2, 2, 2, -2, 1]).unwrap()
}

/// Images of θ under g1 (order 4), g2 (the conjugation c) and σ.
pub fn octic_automorphisms(h: &NumberField) -> [NfElement; 3] {
    [
        el(h, [(1, 1), (3, 2), (1, 1), (3, 2), (2, 1), (-1, 2), (0, 1), (1, 2)]),
        el(h, [(1, 1), (-3, 2), (0, 1), (3, 2), (-2, 1), (-1, 2), (1, 1), (-1, 2)]),
        el(h, [(1, 1), (-2, 1), (-1, 2), (1, 2), (-2, 1), (0, 1), (1, 2), (-1, 2)]),
    ]
}

pub fn octic_x(h: &NumberField) -> NfElement {
    el(h, [(-3, 2), (1, 2), (0, 1), (-3, 2), (3, 2), (1, 2), (-1, 1), (1, 2)])
}

pub fn octic_spec() -> SetupSpec {
    let h = octic_field();
    let [g1, g2, sigma] = octic_automorphisms(&h);
    let x = octic_x(&h);
    SetupSpec {
        base: NumberField::from_ints(&[0, 1]).unwrap(),
        base_image: h.zero(),
        m: NumberField::from_ints(&[-1, -1, 1]).unwrap(),
        m_image: h.mul(&x, &x),
        automorphisms: vec![g1.clone(), g2.clone(), sigma.clone()],
        sigma,
        psi_order: 2,
        psi_generators: vec![(g1, 1), (g2.clone(), 0)],
        conjugation: Some(g2),
        p: 11,
        precision: 30,
        stabilization: vec![StabClass::IPrime],
        alpha_weights: None,
        tame_level: vec![2, 5],
        search: SearchBound::default(),
        h,
    }
}

/// The octic setup, built once per test binary.
pub fn octic() -> &'static CoefficientSetup {
    static SETUP: OnceLock<CoefficientSetup> = OnceLock::new();
    SETUP.get_or_init(|| CoefficientSetup::new(octic_spec()).expect("octic setup"))
}
