use diagrams::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scalars::{rat, Scalar};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn cap_cup(family: Family) -> DiagramSum {
    let word = if family == Family::GL { w("bo") } else { w("bb") };
    DiagramSum::single(Diagram::parse(&word, &word, "[(b1,b2),(t1,t2)]", family).unwrap())
}

#[test]
fn cap_cup_squares_to_loop_value() {
    let a = Scalar::t();
    let e = cap_cup(Family::GL);
    assert_eq!(compose(&e, &e, &a, Family::GL).unwrap(), e.scale(&a));
    let e = cap_cup(Family::O);
    assert_eq!(compose(&e, &e, &a, Family::O).unwrap(), e.scale(&a));
    let e = cap_cup(Family::Sp);
    assert_eq!(compose(&e, &e, &a, Family::Sp).unwrap(), e.scale(&-a));
}

#[test]
fn identity_is_neutral() {
    let e = cap_cup(Family::GL);
    let id = identity(&w("bo"));
    assert_eq!(compose(&id, &e, &Scalar::t(), Family::GL).unwrap(), e);
    assert_eq!(compose(&e, &id, &Scalar::t(), Family::GL).unwrap(), e);
}

#[test]
fn mismatched_words() {
    let e = cap_cup(Family::GL);
    let id = identity(&w("bb"));
    assert!(matches!(compose(&id, &e, &Scalar::t(), Family::GL), Err(DiagError::WordMismatch { .. })));
}

#[test]
fn braidings() {
    let a = Scalar::t();
    for (x, y) in [("b", "o"), ("bo", "b"), ("bb", "obo")] {
        let (x, y) = (w(x), w(y));
        let c = braiding(&x, &y, false);
        let back = compose(&braiding(&y, &x, false), &c, &a, Family::GL).unwrap();
        assert_eq!(back, identity(&x.concat(&y)));
    }
    let b = w("b");
    assert_eq!(braiding(&b, &b, true), braiding(&b, &b, false).scale(&-Scalar::one()));
    assert_eq!(braiding(&w("bb"), &b, true), braiding(&w("bb"), &b, false));
}

#[test]
fn tensor_of_identities() {
    assert_eq!(tensor(&identity(&w("bo")), &identity(&w("o"))), identity(&w("boo")));
    let d = cap(Color::Black).tensor(&cup(Color::White));
    assert_eq!(d.bottom(), &w("bo"));
    assert_eq!(d.top(), &w("ob"));
}

#[test]
fn ev_after_coev_is_a_loop() {
    let c = DiagramSum::single(cup(Color::Black));
    let e = DiagramSum::single(cap(Color::Black));
    let l = compose(&e, &c, &Scalar::t(), Family::GL).unwrap();
    assert_eq!(l, identity(&Word::empty()).scale(&Scalar::t()));
}

#[test]
fn symmetrizers_are_orthogonal_idempotents() {
    let a = Scalar::t();
    for n in 1..=4 {
        for signed in [false, true] {
            let s = symmetrizer(n, signed);
            assert_eq!(compose(&s, &s, &a, Family::O).unwrap(), s, "n = {n}");
        }
    }
    let p = compose(&symmetrizer(2, true), &symmetrizer(2, false), &a, Family::GL).unwrap();
    assert!(p.is_zero());
}

fn words(family: Family) -> Vec<Word> {
    let all = if family == Family::GL {
        vec!["", "b", "o", "bb", "bo", "ob", "oo", "bbo", "bob", "obb", "boo", "b", "bo"]
    } else {
        vec!["", "b", "bb", "bbb"]
    };
    all.into_iter().map(w).collect()
}

fn random_sum(rng: &mut ChaCha8Rng, x: &Word, y: &Word, family: Family) -> Option<DiagramSum> {
    let basis = hom_basis(x, y, family);
    if basis.is_empty() {
        return None;
    }
    let mut s = DiagramSum::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let d = basis.choose(rng).unwrap().clone();
        s.add_term(d, Scalar::from_int(rng.gen_range(-3..=3)));
    }
    Some(s)
}

fn random_chain(rng: &mut ChaCha8Rng, family: Family, len: usize) -> Vec<DiagramSum> {
    let ws = words(family);
    loop {
        let picks: Vec<Word> = (0..=len).map(|_| ws.choose(rng).unwrap().clone()).collect();
        let sums: Option<Vec<DiagramSum>> = picks.windows(2).map(|p| random_sum(rng, &p[0], &p[1], family)).collect();
        if let Some(s) = sums {
            if s.iter().all(|x| !x.is_zero()) {
                return s;
            }
        }
    }
}

#[test]
fn realization_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in [Family::GL, Family::O, Family::Sp] {
        let ns: &[usize] = if family == Family::Sp { &[2, 4] } else { &[2, 3, 4] };
        for &n in ns {
            for _ in 0..50 {
                let c = random_chain(&mut rng, family, 2);
                let (x, y) = (&c[0], &c[1]);
                let yx = compose(y, x, &Scalar::from_int(n as i64), family).unwrap();
                let lhs = realize(&yx, n, family).unwrap();
                let rhs = realize(y, n, family).unwrap().mul(&realize(x, n, family).unwrap());
                assert_eq!(lhs, rhs, "{family:?} N = {n}: {y} ∘ {x}");
            }
        }
    }
}

#[test]
fn symbolic_coefficients_are_rejected_by_realize() {
    let e = cap_cup(Family::GL).scale(&Scalar::t());
    assert!(matches!(realize(&e, 2, Family::GL), Err(DiagError::NotEvaluated(_))));
    let ev = e.eval_at(&rat(2)).unwrap();
    assert!(realize(&ev, 2, Family::GL).is_ok());
}

#[test]
fn identity_realizes_to_identity() {
    for n in [2, 3] {
        assert_eq!(realize(&identity(&w("bob")), n, Family::GL).unwrap(), Tensor::identity(n * n * n));
    }
}

#[test]
fn rank_checks() {
    let r = interp_rank_check(&w("bo"), &w("bo"), 3, Family::GL).unwrap();
    assert_eq!(r, RankReport { injective: true, dim_domain: 2, rank: 2 });
    let r = interp_rank_check(&w("bb"), &w("bb"), 1, Family::O).unwrap();
    assert_eq!(r.dim_domain, 3);
    assert!(!r.injective);
    assert!(r.rank < 3);
    let r = interp_rank_check(&Word::empty(), &Word::empty(), 1, Family::GL).unwrap();
    assert!(r.injective);
    assert_eq!(r.dim_domain, 1);
}

#[test]
fn injective_above_threshold() {
    for family in [Family::GL, Family::O, Family::Sp] {
        let ws = words(family);
        for x in &ws {
            for y in &ws {
                let total = x.len() + y.len();
                if total > 4 || hom_basis(x, y, family).is_empty() {
                    continue;
                }
                for n in total.max(1)..=total + 1 {
                    if family == Family::Sp && n % 2 == 1 {
                        continue;
                    }
                    let r = interp_rank_check(x, y, n, family).unwrap();
                    assert!(r.injective, "{family:?} {x} -> {y} at N = {n}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn walled_brauer_degenerates_below_threshold() {
    let r = interp_rank_check(&w("bo"), &w("bo"), 1, Family::GL).unwrap();
    assert_eq!((r.dim_domain, r.rank), (2, 1));
    let r = interp_rank_check(&w("bb"), &w("bb"), 2, Family::Sp).unwrap();
    assert!(!r.injective);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn composition_is_associative(seed in any::<u64>(), fam in 0usize..3) {
        let family = [Family::GL, Family::O, Family::Sp][fam];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_chain(&mut rng, family, 3);
        let a = Scalar::t();
        let left = compose(&c[2], &compose(&c[1], &c[0], &a, family).unwrap(), &a, family).unwrap();
        let right = compose(&compose(&c[2], &c[1], &a, family).unwrap(), &c[0], &a, family).unwrap();
        prop_assert_eq!(left, right);
    }
}
