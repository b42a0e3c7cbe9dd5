use std::sync::Arc;

use diffalg::{DiffPoly, GenId, Monomial, Var};
use proptest::prelude::*;
use psido::{Horizon, PsiDO};
use pva::*;
use scalars::{Scalar, ShiftExponent};

/// `∂^n + u_0 ∂^{n-1} + … + u_{n-1}`.
fn classical(n: i64) -> PsiDO {
    let mut terms = vec![(0, DiffPoly::one())];
    for m in 0..n {
        terms.push((m + 1, DiffPoly::gen(GenId::u(m))));
    }
    PsiDO::from_terms(ShiftExponent::int(n), terms, Horizon::Exact)
}

fn matrix(n: i64) -> BracketMatrix {
    BracketMatrix::from_adler(classical(n), (0..n).map(|m| (GenId::u(m), m)).collect())
}

fn lam(p: u32) -> LambdaPoly {
    LambdaPoly::monomial(p, DiffPoly::one())
}

fn u(m: i64) -> DiffPoly {
    DiffPoly::gen(GenId::u(m))
}

#[test]
fn rank_one_golden() {
    let h = matrix(1);
    assert_eq!(h.bracket_gen(GenId::u(0), GenId::u(0)).unwrap(), lam(1).neg());
}

#[test]
fn gl2_table_golden() {
    let h = matrix(2);
    let b = |i, j| h.bracket_gen(GenId::u(i), GenId::u(j)).unwrap().to_string();
    assert_eq!(b(0, 0), "-2*λ");
    assert_eq!(b(0, 1), "-u[-T]*λ - λ^2");
    assert_eq!(b(1, 0), "-u[-T]*λ - u[-T]^(1) + λ^2");
    assert_eq!(
        b(1, 1),
        "-u[-T]*u[-T]^(1) - u[-T]^2*λ - 2*u[-T]^(1)*λ - u[-T]^(2) + 2*u[-T+1]*λ + u[-T+1]^(1) + λ^3"
    );
}

#[test]
fn gl2_reduces_to_virasoro() {
    // on u = 0 the v-v entry is the Virasoro bracket v' + 2vλ + λ³
    let h = matrix(2);
    let vv = h.bracket_gen(GenId::u(1), GenId::u(1)).unwrap();
    let reduced = vv.map(|c| c.substitute(&|g| (g == GenId::u(0)).then(DiffPoly::zero)));
    let v = u(1);
    let want = LambdaPoly::constant(v.derive()).add(&LambdaPoly::monomial(1, v.scale(&Scalar::from_int(2)))).add(&lam(3));
    assert_eq!(reduced, want);
}

#[test]
fn classical_jacobi_and_skew() {
    for n in [2, 3] {
        let h = matrix(n);
        let gens: Vec<GenId> = h.gens().to_vec();
        assert!(all_pass(&check_skew(&h, &all_pairs(&gens))));
        assert!(all_pass(&check_jacobi(&h, &all_triples(&gens))));
    }
}

#[test]
fn transposed_orientation_fails_jacobi() {
    let l = Arc::new(classical(2));
    let gens = vec![GenId::u(0), GenId::u(1)];
    let h = BracketMatrix::new(gens.clone(), move |a, b| h_entry(&l, b.offset, a.offset));
    assert!(all_pass(&check_skew(&h, &all_pairs(&gens))));
    assert!(!all_pass(&check_jacobi(&h, &all_triples(&gens))));
}

#[test]
fn corrupted_entry_is_caught() {
    let h = matrix(2).with_override(GenId::u(0), GenId::u(0), lam(1).scale(&Scalar::from_int(-3)));
    let gens = h.gens().to_vec();
    let rec = check_jacobi(&h, &all_triples(&gens));
    assert!(!all_pass(&rec));
    assert!(rec.iter().any(|r| !r.pass && r.residual != "0"));
}

#[test]
fn entries_past_the_horizon_are_reported() {
    let l = classical(2).truncate(3);
    let err = h_entry(&l, 1, 1).unwrap_err();
    assert!(err.is_horizon());
    assert!(h_entry(&l, 0, 0).is_ok());
}

#[test]
fn constants_bracket_to_zero() {
    let h = matrix(2);
    assert!(master_bracket(&h, &DiffPoly::int(5), &u(1)).unwrap().is_zero());
    assert!(master_bracket(&h, &u(0), &DiffPoly::one()).unwrap().is_zero());
}

#[test]
fn unknown_generator_is_an_error() {
    let h = matrix(2);
    let err = master_bracket(&h, &u(5), &u(0)).unwrap_err();
    assert_eq!(err, PvaError::UnknownGenerator(GenId::u(5)));
}

fn arb_gl2() -> impl Strategy<Value = DiffPoly> {
    let term = (-2i64..=2, prop::collection::vec((0i64..2, 0u32..2), 1..3));
    prop::collection::vec(term, 1..3).prop_map(|ts| {
        let mut p = DiffPoly::zero();
        for (c, fs) in ts {
            let m = Monomial::from_pairs(fs.into_iter().map(|(g, k)| (Var::new(GenId::u(g), k), 1)).collect());
            p.add_term(m, Scalar::from_int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sesquilinearity(f in arb_gl2(), g in arb_gl2()) {
        let h = matrix(2);
        let fg = master_bracket(&h, &f, &g).unwrap();
        prop_assert_eq!(master_bracket(&h, &f.derive(), &g).unwrap(), fg.mul_lambda().neg());
        prop_assert_eq!(master_bracket(&h, &f, &g.derive()).unwrap(), lam(1).shifted_apply(&fg));
    }

    #[test]
    fn leibniz_rules(f in arb_gl2(), g in arb_gl2(), k in arb_gl2()) {
        let h = matrix(2);
        let right = master_bracket(&h, &f, &(&g * &k)).unwrap();
        let want = master_bracket(&h, &f, &k).unwrap().left_mul(&g).add(&master_bracket(&h, &f, &g).unwrap().left_mul(&k));
        prop_assert_eq!(right, want);
        let left = master_bracket(&h, &(&f * &g), &k).unwrap();
        let want = master_bracket(&h, &f, &k).unwrap().shifted_apply(&LambdaPoly::constant(g.clone()))
            .add(&master_bracket(&h, &g, &k).unwrap().shifted_apply(&LambdaPoly::constant(f.clone())));
        prop_assert_eq!(left, want);
    }

    #[test]
    fn adler_forms_agree(cs in prop::collection::vec(arb_gl2(), 1..4)) {
        let l = classical(2);
        let terms = cs.into_iter().enumerate().map(|(k, c)| (k as i64 - 1, c)).collect();
        let f = PsiDO::from_terms(ShiftExponent::int(-2), terms, Horizon::At(3));
        let a = adler(&l, &f, Some(3)).unwrap();
        let b = adler_negative_form(&l, &f, Some(3)).unwrap();
        prop_assert!(a.agrees_with(&b).unwrap());
        prop_assert!(a.coeff(0).unwrap().is_zero());
    }
}
