#![cfg(feature = "center-bracket")]

use current::{ss_vector_a, LieData, UEnvElement, Variant};
use diffalg::{DiffPoly, GenId, Tag};
use ffmap::*;
use pva::LambdaPoly;
use winterp::{build_classical_gl, dual_generators, WAlgebra};

fn mu(p: &DiffPoly, n: usize) -> DiffPoly {
    let l = miura_operator(Shape::A(n));
    p.substitute(&|id| (id.tag == Tag::U).then(|| l.coeff(id.offset + 1).unwrap()))
}

fn image(w: &WAlgebra, a: &DiffPoly, b: &DiffPoly, n: usize) -> LambdaPoly {
    w.master(a, b).unwrap().map(|c| mu(c, n))
}

#[test]
fn trace_bracket_matches_w_algebra() {
    let g = LieData::gl(2);
    let phi1 = ss_vector_a(1, &g, Variant::Anti).unwrap();
    let lhs = center_bracket(&phi1, &phi1, &g).unwrap();
    let w = build_classical_gl(2);
    let u0 = DiffPoly::gen(GenId::u(0));
    assert_eq!(lhs, image(&w, &u0, &u0, 2));
    assert_eq!(lhs.to_string(), "-2*λ");
}

#[test]
fn generator_brackets_match_w_algebra() {
    let g = LieData::gl(2);
    let w = build_classical_gl(2);
    let phi: Vec<UEnvElement> = (1..=2).map(|m| ss_vector_a(m, &g, Variant::Anti).unwrap()).collect();
    for i in 0..2 {
        for j in 0..2 {
            let lhs = center_bracket(&phi[i], &phi[j], &g).unwrap();
            let rhs = image(&w, &DiffPoly::gen(GenId::u(i as i64)), &DiffPoly::gen(GenId::u(j as i64)), 2);
            assert_eq!(lhs, rhs, "({i},{j})");
        }
    }
}

#[test]
fn complete_generators_match_dual_brackets() {
    let g = LieData::gl(2);
    let w = build_classical_gl(2);
    let h = dual_generators(&w, 2).unwrap();
    let psi2 = ss_vector_a(2, &g, Variant::Sym).unwrap();
    assert_eq!(center_bracket(&psi2, &psi2, &g).unwrap(), image(&w, &h[1], &h[1], 2));
}

#[test]
fn vacuum_is_central_for_the_bracket() {
    let g = LieData::gl(2);
    let one = UEnvElement::one();
    for m in 1..=2 {
        let phi = ss_vector_a(m, &g, Variant::Anti).unwrap();
        assert!(center_bracket(&one, &phi, &g).unwrap().is_zero());
        assert!(center_bracket(&phi, &one, &g).unwrap().is_zero());
    }
}

#[test]
fn skew_symmetry() {
    let g = LieData::gl(2);
    let phi1 = ss_vector_a(1, &g, Variant::Anti).unwrap();
    let phi2 = ss_vector_a(2, &g, Variant::Anti).unwrap();
    for (a, b) in [(&phi1, &phi2), (&phi2, &phi2), (&phi1, &phi1)] {
        let ab = center_bracket(a, b, &g).unwrap();
        let ba = center_bracket(b, a, &g).unwrap();
        assert_eq!(ba, ab.reflected().neg());
    }
}

#[test]
fn rank_one() {
    let g = LieData::gl(1);
    let phi1 = ss_vector_a(1, &g, Variant::Anti).unwrap();
    let w = build_classical_gl(1);
    let u0 = DiffPoly::gen(GenId::u(0));
    assert_eq!(center_bracket(&phi1, &phi1, &g).unwrap(), image(&w, &u0, &u0, 1));
}

#[test]
fn rejects_bad_input() {
    let g = LieData::gl(2);
    let e11 = UEnvElement::generator(g.index_of(0, 0).unwrap(), 1);
    assert!(matches!(center_bracket(&e11, &e11, &g), Err(FfError::NotCentral(_))));
    let phi3 = ss_vector_a(3, &LieData::gl(3), Variant::Anti).unwrap();
    assert!(matches!(center_bracket(&phi3, &phi3, &LieData::gl(3)), Err(FfError::Unsupported(_))));
    let so3 = LieData::so(3);
    let one = UEnvElement::one();
    assert!(matches!(center_bracket(&one, &one, &so3), Err(FfError::Unsupported(_))));
}
