use diffalg::{DiffPoly, GenId, Monomial, Var};
use proptest::prelude::*;
use scalars::{rat, Scalar};

fn arb_poly() -> impl Strategy<Value = DiffPoly> {
    let term = (
        -3i64..=3,
        0i64..=2,
        prop::collection::vec((0i64..3, 0u32..3, 1u32..3), 0..3),
    );
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let mut p = DiffPoly::zero();
        for (c, tpow, fs) in ts {
            let pairs = fs.into_iter().map(|(g, k, e)| (Var::new(GenId::u(g), k), e)).collect();
            let coeff = Scalar::from_int(c) * Scalar::t().pow(tpow as u32);
            p.add_term(Monomial::from_pairs(pairs), coeff);
        }
        p
    })
}

proptest! {
    #[test]
    fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
        let lhs = (&a * &b).derive();
        let rhs = &(&a.derive() * &b) + &(&a * &b.derive());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_commutes_with_derivation(a in arb_poly(), g in 0i64..3, k in 0u32..4) {
        let gen = GenId::u(g);
        let lhs = a.derive().partial(gen, k);
        let mut rhs = a.partial(gen, k).derive();
        if k > 0 {
            rhs += &a.partial(gen, k - 1);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), n in -4i64..5) {
        let x = rat(n);
        let prod = (&a * &b).evaluate_t(&x).unwrap();
        let sep = &a.evaluate_t(&x).unwrap() * &b.evaluate_t(&x).unwrap();
        prop_assert_eq!(prod, sep);
        prop_assert_eq!(a.derive().evaluate_t(&x).unwrap(), a.evaluate_t(&x).unwrap().derive());
    }

    #[test]
    fn substitution_commutes_with_derivation(a in arb_poly(), b in arb_poly()) {
        let map = |g: GenId| if g == GenId::u(0) { Some(b.clone()) } else { None };
        prop_assert_eq!(a.derive().substitute(&map), a.substitute(&map).derive());
    }
}

#[test]
fn json_shape() {
    let p = DiffPoly::gen_d(GenId::u(2), 1).scale(&Scalar::t());
    let j = p.to_json();
    assert_eq!(j.to_string(), r#"[[[["u",2,1,1]],"T"]]"#);
}
