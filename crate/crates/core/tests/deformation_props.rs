use proptest::prelude::*;
use thetaloc_core::deformation::{
    fiber_tangent_dim, geometry_verdict, ord_tangent_dim, ramified_verdict, CmDescriptor, DeformationError, Outcome,
    PrimeAboveP, RamificationFlags, SplittingProfile, StabClass,
};

/// Valid profiles: Σ e·f = n over the primes above p.
fn profile() -> impl Strategy<Value = SplittingProfile> {
    prop::collection::vec((1u32..=3, 1u32..=3, any::<bool>(), any::<bool>()), 1..5).prop_flat_map(|ps| {
        let primes: Vec<PrimeAboveP> = ps
            .iter()
            .map(|&(e, f, split, first)| {
                if split {
                    PrimeAboveP::split(e, f, if first { StabClass::I } else { StabClass::IPrime })
                } else {
                    PrimeAboveP::nonsplit(e, f)
                }
            })
            .collect();
        let n: u32 = primes.iter().map(PrimeAboveP::local_degree).sum();
        (0..=n, any::<bool>(), any::<bool>()).prop_map(move |(r, leo, reg)| SplittingProfile {
            n,
            r,
            primes: primes.clone(),
            leopoldt_assumed: leo,
            p_regular: reg,
        })
    })
}

fn all_flags() -> RamificationFlags {
    RamificationFlags {
        conductor_split: true,
        absolutely_irreducible: true,
        p_distinguished: true,
        heart_residual_not_quadratic: true,
        p_unramified_in_m: true,
    }
}

proptest! {
    #[test]
    fn ordinary_dimension_is_at_most_one_more(mut p in profile()) {
        p.r = 0;
        p.leopoldt_assumed = true;
        p.p_regular = true;
        let fiber = fiber_tangent_dim(&p).unwrap();
        let ord = ord_tangent_dim(&p).unwrap();
        prop_assert!(fiber <= ord && ord <= fiber + 1);
        prop_assert_eq!(fiber, p.split_degree());
        prop_assert_eq!(ord == fiber, fiber > 0);
    }

    #[test]
    fn missing_hypotheses_make_dimensions_inapplicable(p in profile()) {
        let applicable = p.r == 0 && p.leopoldt_assumed && p.p_regular;
        prop_assert_eq!(fiber_tangent_dim(&p).is_ok(), applicable);
        if !applicable {
            prop_assert!(matches!(fiber_tangent_dim(&p), Err(DeformationError::Inapplicable(_))));
        }
    }

    #[test]
    fn margin_formula(p in profile()) {
        let (v, _) = ramified_verdict(&p, &all_flags()).unwrap();
        let nonsplit: Vec<&PrimeAboveP> = p.primes.iter().filter(|q| !q.splits_in_m).collect();
        let expected = p.n as i64 - p.r as i64 - nonsplit.len() as i64
            - nonsplit.iter().map(|q| (q.e * q.f) as i64).sum::<i64>();
        prop_assert_eq!(v.margin, expected);
        prop_assert_eq!(v.ramified == Outcome::True, expected > 0);
        prop_assert_eq!(v.t0_lower_bound, expected.max(0));
    }

    #[test]
    fn verdicts_are_deterministic_and_serialize_stably(p in profile(), with_flags: bool) {
        let flags = all_flags();
        let ram = with_flags.then_some(&flags);
        let a = geometry_verdict(&p, ram, None).unwrap();
        let b = geometry_verdict(&p.clone(), ram, None).unwrap();
        prop_assert_eq!(&a, &b);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(&json, &serde_json::to_string(&b).unwrap());
        let back: thetaloc_core::deformation::GeometryVerdict = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a.clone());
        // each assumption is recorded once
        let mut names: Vec<&str> = a.assumptions_ledger.iter().map(|e| e.assumption.as_str()).collect();
        let len = names.len();
        names.sort_unstable();
        names.dedup();
        prop_assert_eq!(names.len(), len);
    }

    #[test]
    fn oversized_profiles_are_rejected(mut p in profile(), extra in 1u32..4) {
        p.primes.push(PrimeAboveP::nonsplit(1, extra));
        prop_assert!(p.validate().is_err());
        prop_assert!(geometry_verdict(&p, None, None).is_err());
    }
}

#[test]
fn cm_case_is_etale_only_with_every_hypothesis() {
    let p = SplittingProfile {
        n: 2,
        r: 2,
        primes: vec![PrimeAboveP::split(1, 1, StabClass::IPrime), PrimeAboveP::split(1, 1, StabClass::IPrime)],
        leopoldt_assumed: true,
        p_regular: true,
    };
    let good = CmDescriptor {
        p_split_in_k: true,
        xi_heart_even_order: true,
        psi_heart_square_nontrivial: true,
        regular_places: vec![true, true],
    };
    let v = geometry_verdict(&p, None, Some(&good)).unwrap();
    assert_eq!(v.etale, Outcome::True);
    assert_eq!((v.fiber_tangent_dim, v.ord_tangent_dim), (Some(0), Some(1)));
    for i in 0..4 {
        let mut bad = good.clone();
        match i {
            0 => bad.p_split_in_k = false,
            1 => bad.xi_heart_even_order = false,
            2 => bad.psi_heart_square_nontrivial = false,
            _ => bad.regular_places[1] = false,
        }
        let v = geometry_verdict(&p, None, Some(&bad)).unwrap();
        assert!(matches!(v.etale, Outcome::Inapplicable(_)));
        assert_eq!(v.fiber_tangent_dim, None);
    }
}

#[test]
fn declared_profiles_cross_validate() {
    let p = SplittingProfile {
        n: 3,
        r: 0,
        primes: vec![PrimeAboveP::split(1, 1, StabClass::I), PrimeAboveP::nonsplit(1, 2)],
        leopoldt_assumed: true,
        p_regular: true,
    };
    assert!(p.cross_validate(&[(1, 2, false), (1, 1, true)]).is_ok());
    assert!(p.cross_validate(&[(1, 2, true), (1, 1, false)]).is_err());
    assert!(p.cross_validate(&[(1, 1, true)]).is_err());
}
