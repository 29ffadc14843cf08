use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use thetaloc_core::numberfield::NumberField;
use thetaloc_core::padics::{padic_embeddings, plog, teichmuller, PadicContext, PadicNumber};

fn ctx() -> PadicContext {
    PadicContext::new(11, 2, 30).unwrap()
}

fn unit(c: &PadicContext, a: &[u64]) -> Option<PadicNumber> {
    let x = c.from_integral(a.iter().map(|&v| BigInt::from(v)).collect(), c.precision());
    c.is_unit(&x).then_some(x)
}

fn digits() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn log_is_a_homomorphism(a in digits(), b in digits()) {
        let c = ctx();
        let (Some(x), Some(y)) = (unit(&c, &a), unit(&c, &b)) else { return Ok(()) };
        let lhs = plog(&c.mul(&x, &y), &c).unwrap();
        let rhs = c.add(&plog(&x, &c).unwrap(), &plog(&y, &c).unwrap());
        let k = lhs.absolute_precision().unwrap().min(rhs.absolute_precision().unwrap());
        prop_assert!(c.eq_to_precision(&lhs, &rhs, k));
        // log of an inverse
        let li = plog(&c.inv(&x).unwrap(), &c).unwrap();
        prop_assert!(c.add(&li, &plog(&x, &c).unwrap()).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in digits(), b in digits(), num in -1000i64..1000, den in 1i64..1000) {
        let c = ctx();
        let (Some(x), Some(y)) = (unit(&c, &a), unit(&c, &b)) else { return Ok(()) };
        let r = c.from_rational(&BigRational::new(num.into(), den.into()));
        let z = c.mul(&c.mul(&x, &r), &y);
        let back = c.div(&c.div(&z, &y).unwrap(), &x).unwrap();
        let k = back.absolute_precision().unwrap_or(30);
        prop_assert!(c.eq_to_precision(&back, &r, k));
    }

    #[test]
    fn teichmuller_is_fixed_by_q_power(r0 in 0u64..11, r1 in 0u64..11) {
        prop_assume!(r0 != 0 || r1 != 0);
        let c = ctx();
        let t = teichmuller(&[r0, r1], &c).unwrap();
        prop_assert_eq!(c.residue(&t).unwrap(), c.residue(&c.from_residue(&[r0, r1])).unwrap());
        let tq = c.pow(&t, 121).unwrap();
        prop_assert!(c.sub(&tq, &t).is_zero());
        prop_assert!(plog(&t, &c).unwrap().is_zero());
    }

    #[test]
    fn valuation_of_products_adds(a in 1i64..100_000, b in 1i64..100_000) {
        let c = ctx();
        let (x, y) = (c.from_int(a), c.from_int(b));
        prop_assert_eq!(c.mul(&x, &y).valuation(), Some(x.valuation().unwrap() + y.valuation().unwrap()));
    }
}

#[test]
fn hensel_roots_satisfy_their_polynomial() {
    for (coeffs, p) in [(vec![-2i64, 0, 0, 1], 5u64), (vec![1, 1, 1, 1, 1], 11), (vec![1, -2, 2, 2, -2, 2, 2, -2, 1], 11)] {
        let k = NumberField::from_ints(&coeffs).unwrap();
        let emb = padic_embeddings(&k, p, 30).unwrap();
        let c = &emb.context;
        assert_eq!(emb.embeddings.len(), k.degree());
        for e in &emb.embeddings {
            let mut acc = c.zero();
            for i in (0..=k.degree()).rev() {
                acc = c.add(&c.mul(&acc, &e.root), &c.from_rational(&k.poly().coeff(i)));
            }
            assert!(acc.is_zero(), "{coeffs:?} at p = {p}");
            assert!(acc.absolute_precision().unwrap() >= 30);
        }
    }
}

#[test]
fn json_round_trip_preserves_value_and_precision() {
    let c = ctx();
    let x = c.from_rational(&BigRational::new(22.into(), 7.into()));
    let back = c.from_json(&c.to_json(&x)).unwrap();
    assert_eq!(c.to_json(&back), c.to_json(&x));
    assert!(c.from_json(&c.to_json(&c.zero())).unwrap().is_exact_zero());
}
