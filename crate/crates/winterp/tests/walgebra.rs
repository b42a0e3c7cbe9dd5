use diffalg::{DiffPoly, GenId};
use proptest::prelude::*;
use psido::{Horizon, PsiDO};
use pva::{all_pairs, all_pass, all_triples, check_jacobi, check_skew, LambdaPoly};
use scalars::{rat, ratio, Scalar, ShiftExponent};
use winterp::*;

fn lam(p: u32) -> LambdaPoly {
    LambdaPoly::monomial(p, DiffPoly::one())
}

#[test]
fn symbolic_gl_is_skew() {
    let w = build_w_gl(Param::Symbolic, 8).unwrap();
    let gens = w.generators_to_offset(4);
    assert_eq!(gens.len(), 4);
    assert!(all_pass(&check_skew(w.brackets(), &all_pairs(&gens))));
}

#[test]
fn skew_needs_enough_horizon() {
    let w = build_w_gl(Param::Symbolic, 6).unwrap();
    let r = check_skew(w.brackets(), &all_pairs(&w.generators_to_offset(4)));
    assert!(r.iter().any(|x| !x.pass));
}

#[test]
fn jacobi_at_integer_parameters() {
    for n in [2, 3] {
        let w = build_w_gl(Param::int(n), 8).unwrap();
        let gens = w.generators_to_offset(3);
        assert!(all_pass(&check_jacobi(w.brackets(), &all_triples(&gens))), "gl at T = {n}");
    }
    let w = build_w_po(Param::int(2), 10).unwrap();
    let gens: Vec<GenId> = w.generators().iter().copied().take(2).collect();
    assert!(all_pass(&check_jacobi(w.brackets(), &all_triples(&gens))));
    assert!(all_pass(&check_skew(w.brackets(), &all_pairs(&gens))));
}

#[test]
fn restricted_po_bracket_breaks_jacobi() {
    let w = build_w_po_with(Param::int(2), 10, PoBracket::Restricted).unwrap();
    let gens: Vec<GenId> = w.generators().iter().copied().take(2).collect();
    assert!(!all_pass(&check_jacobi(w.brackets(), &all_triples(&gens))));
}

#[test]
fn po_virasoro_at_two() {
    let w = build_w_po(Param::int(2), 10).unwrap();
    let b = w.bracket(GenId::po(2), GenId::po(2)).unwrap();
    assert_eq!(b.to_string(), "2*w[2]*λ + w[2]^(1) + (1/2)*λ^3");
    let c = build_classical_po(2).unwrap();
    assert_eq!(c.bracket(GenId::po(2), GenId::po(2)).unwrap(), b);
}

#[test]
fn self_adjoint_operator() {
    let w = build_w_po(Param::Symbolic, 8).unwrap();
    assert!(w.l().adjoint().unwrap().agrees_with(w.l()).unwrap());
    let p1 = &w.odd_coefficients()[&3];
    let want = DiffPoly::gen_d(GenId::po(2), 1).scale(&((Scalar::t() - Scalar::from_int(2)) / Scalar::from_int(2)));
    assert_eq!(p1, &want);
    assert!(p1.evaluate_t(&rat(2)).unwrap().is_zero());
    for r in (2..=8).step_by(2) {
        assert!(sa_eliminate(r).unwrap().is_zero());
    }
    assert!(sa_eliminate(1).unwrap().is_zero());
}

#[test]
fn po_operator_at_two_is_sturm_liouville() {
    let c = build_classical_po(2).unwrap();
    assert_eq!(c.l().to_string(), "∂^2 + w[2]");
    assert!(c.l().adjoint().unwrap().agrees_with(c.l()).unwrap());
}

#[test]
fn evaluation_then_projection_gl() {
    let w = build_w_gl(Param::Symbolic, 8).unwrap();
    for n in [2, 3, 4] {
        let c = build_classical_gl(n);
        let wn = build_w_gl(Param::int(n), 8).unwrap();
        for i in 0..n {
            for j in 0..n {
                let b = w.bracket(GenId::u(i), GenId::u(j)).unwrap().evaluate_t(&rat(n)).unwrap();
                let pb = b.map(|x| project_pr_n(&wn, x).unwrap());
                assert_eq!(pb, c.bracket(GenId::u(i), GenId::u(j)).unwrap(), "n = {n}, ({i}, {j})");
            }
        }
    }
}

#[test]
fn evaluation_then_projection_po() {
    let w = build_w_po(Param::Symbolic, 8).unwrap();
    for n in [2, 4] {
        let c = build_classical_po(n).unwrap();
        let wn = build_w_po(Param::int(n), 8).unwrap();
        for a in c.generators() {
            for b in c.generators() {
                let x = w.bracket(*a, *b).unwrap().evaluate_t(&rat(n)).unwrap();
                let px = x.map(|p| project_pr_n(&wn, p).unwrap());
                assert_eq!(px, c.bracket(*a, *b).unwrap(), "n = {n}, ({a}, {b})");
            }
        }
    }
}

#[test]
fn projection_of_generators() {
    let wn = build_w_gl(Param::int(2), 6).unwrap();
    for i in 0..6 {
        let g = DiffPoly::gen(GenId::u(i));
        let p = project_pr_n(&wn, &g).unwrap();
        assert_eq!(p, if i < 2 { g } else { DiffPoly::zero() });
    }
    assert_eq!(project_pr_n(&wn, &DiffPoly::int(7)).unwrap(), DiffPoly::int(7));
    let sym = build_w_gl(Param::Symbolic, 4).unwrap();
    assert_eq!(project_pr_n(&sym, &DiffPoly::one()).unwrap_err(), WError::NotEvaluated);
}

#[test]
fn rank_one_at_one() {
    let w = build_w_gl(Param::int(1), 4).unwrap();
    let b = w.bracket(GenId::u(0), GenId::u(0)).unwrap();
    let p = b.map(|x| project_pr_n(&w, x).unwrap());
    assert_eq!(p, lam(1).neg());
}

#[test]
fn horizon_is_validated() {
    assert_eq!(build_w_gl(Param::Symbolic, 1).unwrap_err(), WError::HorizonTooSmall(1));
    assert_eq!(build_w_po(Param::Symbolic, 3).unwrap_err(), WError::HorizonTooSmall(3));
    let w = build_w_gl(Param::Symbolic, 4).unwrap();
    assert!(w.bracket(GenId::u(3), GenId::u(3)).is_err());
}

#[test]
fn pi_is_an_anti_isomorphism() {
    let w = build_w_gl(Param::Value(ratio(5, 2)), 8).unwrap();
    assert!(all_pass(&pi_anti(&w, 2).unwrap()));
    let w = build_w_po(Param::int(3), 8).unwrap();
    assert!(all_pass(&pi_anti(&w, 2).unwrap()));
}

#[test]
fn pi_applied_twice() {
    // Π_{-α} ∘ Π_α fixes each generator to the order it is known
    let w = build_w_gl(Param::Value(ratio(5, 2)), 6).unwrap();
    let opp = opposite(&w).unwrap();
    let there = pi_images(&w).unwrap();
    let back = pi_images(&opp).unwrap();
    for g in w.generators_to_offset(3) {
        let round = back[&g].substitute(&|h| there.get(&h).cloned());
        assert_eq!(round, DiffPoly::gen(g), "{g}");
    }
}

#[test]
fn dual_generators_of_gl() {
    let w = build_w_gl(Param::Symbolic, 6).unwrap();
    let h = dual_generators(&w, 3).unwrap();
    assert_eq!(h[0], DiffPoly::gen(GenId::u(0)));

    let wn = build_w_gl(Param::int(2), 6).unwrap();
    let h2 = dual_generators(&wn, 4).unwrap();
    let c = build_classical_gl(2);
    let hc = dual_generators(&c, 4).unwrap();
    for (a, b) in h2.iter().zip(&hc) {
        assert_eq!(&project_pr_n(&wn, a).unwrap(), b);
    }

    let inv = w.l().invert(6).unwrap();
    let one = w.l().mul(&inv).unwrap();
    let want = PsiDO::from_terms(ShiftExponent::ZERO, vec![(0, DiffPoly::one())], Horizon::At(0));
    assert!(one.agrees_with(&want).unwrap());
}

#[test]
fn dual_generators_need_horizon() {
    let w = build_w_gl(Param::Symbolic, 4).unwrap();
    assert!(matches!(dual_generators(&w, 9), Err(WError::Psi(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn native_evaluation_matches_symbolic(n in 2i64..7, i in 0i64..3, j in 0i64..3) {
        let sym = build_w_gl(Param::Symbolic, 6).unwrap();
        let nat = build_w_gl(Param::int(n), 6).unwrap();
        let a = sym.bracket(GenId::u(i), GenId::u(j)).unwrap().evaluate_t(&rat(n)).unwrap();
        prop_assert_eq!(a, nat.bracket(GenId::u(i), GenId::u(j)).unwrap());
    }

    #[test]
    fn rational_evaluation_matches_symbolic(p in 1i64..9, i in 0i64..3, j in 0i64..3) {
        let q = ratio(2 * p + 1, 2);
        let sym = build_w_gl(Param::Symbolic, 6).unwrap();
        let ev = build_w_gl(Param::Value(q.clone()), 6).unwrap();
        let a = sym.bracket(GenId::u(i), GenId::u(j)).unwrap().evaluate_t(&q).unwrap();
        prop_assert_eq!(a, ev.bracket(GenId::u(i), GenId::u(j)).unwrap());
    }
}
