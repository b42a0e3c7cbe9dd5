//! Seeded random inputs for the property suites.

use diagrams::{hom_basis, DiagramSum, Family, Word};
use diffalg::{DiffPoly, GenId, Monomial, Var};
use psido::{Horizon, PsiDO};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use scalars::{Scalar, ShiftExponent};

pub fn coeff(rng: &mut ChaCha8Rng) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..rng.gen_range(0..3) {
        let c = Scalar::from_int(rng.gen_range(-2..=2)) * Scalar::t().pow(rng.gen_range(0..=1));
        let fs = (0..rng.gen_range(0..3))
            .map(|_| (Var::new(GenId::u(rng.gen_range(0..3)), rng.gen_range(0..2)), 1))
            .collect();
        p.add_term(Monomial::from_pairs(fs), c);
    }
    p
}

pub fn shift(rng: &mut ChaCha8Rng) -> ShiftExponent {
    ShiftExponent::new(rng.gen_range(-2..=2), rng.gen_range(-1..=1))
}

/// `Σ_{k<len} c_k ∂^{s-k}` known through offset `h`.
pub fn operator(rng: &mut ChaCha8Rng, h: i64) -> PsiDO {
    let s = shift(rng);
    let terms = (0..rng.gen_range(1..4)).map(|k| (k as i64, coeff(rng))).collect();
    PsiDO::from_terms(s, terms, Horizon::At(h))
}

pub fn monic(rng: &mut ChaCha8Rng, h: i64) -> PsiDO {
    let s = shift(rng);
    let mut terms = vec![(0, DiffPoly::one())];
    terms.extend((0..rng.gen_range(0..4)).map(|k| (k as i64 + 1, coeff(rng))));
    PsiDO::from_terms(s, terms, Horizon::At(h))
}

fn words(family: Family) -> Vec<Word> {
    let all: &[&str] = if family == Family::GL {
        &["", "b", "o", "bb", "bo", "ob", "oo", "bbo", "bob", "obb", "boo"]
    } else {
        &["", "b", "bb", "bbb"]
    };
    all.iter().map(|s| s.parse().expect("valid word")).collect()
}

fn sum(rng: &mut ChaCha8Rng, x: &Word, y: &Word, family: Family) -> Option<DiagramSum> {
    let basis = hom_basis(x, y, family);
    if basis.is_empty() {
        return None;
    }
    let mut s = DiagramSum::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let d = basis.choose(rng).expect("nonempty").clone();
        s.add_term(d, Scalar::from_int(rng.gen_range(-3..=3)));
    }
    (!s.is_zero()).then_some(s)
}

/// A composable pair `(x, y)` of nonzero integer combinations of diagrams.
pub fn composable_pair(rng: &mut ChaCha8Rng, family: Family) -> (DiagramSum, DiagramSum) {
    let ws = words(family);
    loop {
        let a = ws.choose(rng).expect("nonempty").clone();
        let b = ws.choose(rng).expect("nonempty").clone();
        let c = ws.choose(rng).expect("nonempty").clone();
        if let (Some(x), Some(y)) = (sum(rng, &a, &b, family), sum(rng, &b, &c, family)) {
            return (x, y);
        }
    }
}

/// Words available to the rank check, with `|w| + |w'| <= 4` enforced by the caller.
pub fn rank_words(family: Family) -> Vec<Word> {
    words(family)
}
