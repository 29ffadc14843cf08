use num_bigint::BigUint;
use proptest::prelude::*;
use thetaloc_core::exact::{fpoly, poly_factor_mod_p, rat_frac, reduce_poly, FiniteField, Fp, Fq, Poly};

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..6)
        .prop_map(|c| Poly::new(c.into_iter().map(|(a, b)| rat_frac(a, b)).collect()))
}

proptest! {
    #[test]
    fn poly_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn division_reconstructs(a in small_poly(), d in small_poly()) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn fq_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), f in 1usize..4, seed: u64) {
        use rand::SeedableRng;
        let k = Fq::with_degree(p, f);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = k.random(&mut rng);
        let b = k.random(&mut rng);
        if !k.is_zero(&a) {
            let inv = k.inv(&a).unwrap();
            prop_assert_eq!(k.mul(&a, &inv), k.one());
        }
        // Frobenius is additive and a^q = a
        let pp = BigUint::from(p);
        prop_assert_eq!(k.pow(&k.add(&a, &b), &pp), k.add(&k.pow(&a, &pp), &k.pow(&b, &pp)));
        prop_assert_eq!(k.pow(&a, &k.order()), a);
    }

    #[test]
    fn factorization_mod_p_multiplies_back(
        coeffs in prop::collection::vec(-9i64..=9, 1..7),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
    ) {
        let mut c = coeffs;
        c.push(1);
        let f = Poly::from_ints(&c);
        let fp = Fp::new(p);
        let factors = poly_factor_mod_p(&f, p).unwrap();
        let mut prod = vec![1u64];
        for (g, m) in &factors {
            prop_assert!(fpoly::is_irreducible(&fp, g));
            for _ in 0..*m {
                prod = fpoly::mul(&fp, &prod, g);
            }
        }
        prop_assert_eq!(prod, reduce_poly(&f, p).unwrap());
    }
}
