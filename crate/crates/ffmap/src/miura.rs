use diffalg::{DiffPoly, GenId};
use itertools::Itertools;
use psido::{Horizon, PsiDO};
use scalars::ShiftExponent;

use crate::{CartanElement, FfError};
use current::{LieData, LieFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Elementary,
    Complete,
}

/// Factorization pattern of a Miura operator of rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `(∂+h_1)⋯(∂+h_n)`.
    A(usize),
    /// `(∂+h_1)⋯(∂+h_n) ∂ (∂-h_n)⋯(∂-h_1)`.
    B(usize),
    /// `(∂+h_1)⋯(∂+h_n)(∂-h_n)⋯(∂-h_1)`.
    C(usize),
}

impl Shape {
    pub fn order(self) -> usize {
        match self {
            Shape::A(n) => n,
            Shape::B(n) => 2 * n + 1,
            Shape::C(n) => 2 * n,
        }
    }

    /// The shape attached to `g` itself: `A` for `gl_n`, `B` for `so_{2n+1}`, `C` for `sp_{2n}`.
    pub fn of(g: &LieData) -> Result<Shape, FfError> {
        match g.family {
            LieFamily::GlA => Ok(Shape::A(g.n)),
            LieFamily::SpC => Ok(Shape::C(g.n / 2)),
            LieFamily::SoB if g.n % 2 == 1 => Ok(Shape::B(g.n / 2)),
            LieFamily::SoB => Err(FfError::Unsupported(format!("{g} is not of type B"))),
        }
    }

    /// The Langlands dual shape, which is the target of the Feigin-Frenkel map.
    pub fn dual(self) -> Shape {
        match self {
            Shape::A(n) => Shape::A(n),
            Shape::B(n) => Shape::C(n),
            Shape::C(n) => Shape::B(n),
        }
    }
}

fn first_order(i: usize, sign: i64) -> PsiDO {
    let h = DiffPoly::gen(GenId::cartan(i as i64 + 1)).scale(&scalars::Scalar::from_int(sign));
    PsiDO::from_terms(ShiftExponent::int(1), vec![(0, DiffPoly::one()), (1, h)], Horizon::Exact)
}

/// The Miura operator of `shape` with coefficients in `h_1, …, h_n`.
pub fn miura_operator(shape: Shape) -> PsiDO {
    let mut factors = Vec::new();
    let n = match shape {
        Shape::A(n) | Shape::B(n) | Shape::C(n) => n,
    };
    factors.extend((0..n).map(|i| first_order(i, 1)));
    if shape != Shape::A(n) {
        if let Shape::B(_) = shape {
            factors.push(PsiDO::d_pow(ShiftExponent::int(1)));
        }
        factors.extend((0..n).rev().map(|i| first_order(i, -1)));
    }
    let refs: Vec<&PsiDO> = factors.iter().collect();
    PsiDO::product(&refs, None).expect("exact differential operators")
}

/// `w̃_i`: the coefficient of `∂^{N-i}` in the Miura operator, for `i = 1..=N`.
pub fn miura_coefficients(shape: Shape) -> Vec<CartanElement> {
    let l = miura_operator(shape);
    (1..=shape.order() as i64).map(|i| to_cartan(&l.coeff(i).expect("exact operator"))).collect()
}

/// `ℋ_i = (-1)^i × (coefficient of ∂^{-N-i} in L^{-1})`, for `i = 1..=count`.
pub fn dual_coefficients(shape: Shape, count: usize) -> Vec<CartanElement> {
    let inv = miura_operator(shape).invert(count as i64).expect("monic operator");
    (1..=count as i64)
        .map(|i| {
            let c = to_cartan(&inv.coeff(i).expect("within the inversion depth"));
            if i % 2 == 0 {
                c
            } else {
                c.scale(&-scalars::Scalar::one())
            }
        })
        .collect()
}

fn to_cartan(p: &DiffPoly) -> CartanElement {
    CartanElement::from_diffpoly(p).expect("Cartan coefficients")
}

/// Applies `x_{k_1} ⋯ x_{k_m}` to `c`, where `x_k = h_k t^{-1} + ∂` and the word
/// lists Cartan indices left to right.
pub fn apply_word(word: &[usize], c: &CartanElement) -> CartanElement {
    word.iter().rev().fold(c.clone(), |acc, &i| CartanElement::var(i, 1).mul(&acc).add(&acc.derive()))
}

/// `e_m` or `h_m` in the variables `(x_1, …, x_n) = (E_nn t^{-1}+∂, …, E_11 t^{-1}+∂)`,
/// applied to `c`.
pub fn apply_symmetric(n: usize, kind: Kind, m: usize, c: &CartanElement) -> CartanElement {
    if m == 0 {
        return c.clone();
    }
    // variable x_k carries Cartan index n - k
    let words: Vec<Vec<usize>> = match kind {
        // i_1 > … > i_m
        Kind::Elementary => (1..=n).combinations(m).map(|s| s.iter().rev().map(|k| n - k).collect()).collect(),
        // i_1 <= … <= i_m
        Kind::Complete => (1..=n).combinations_with_replacement(m).map(|s| s.iter().map(|k| n - k).collect()).collect(),
    };
    words.iter().fold(CartanElement::zero(), |acc, w| acc.add(&apply_word(w, c)))
}

/// `w̃_m = e_m(…)∘1` or `ℋ_m = h_m(…)∘1` for `gl_n`, `m = 1..=n`; for `so_{2n+1}`
/// and `sp_{2n}`, the coefficients of the factorized operator of their own shape.
pub fn miura_generators(g: &LieData, kind: Kind) -> Result<Vec<CartanElement>, FfError> {
    let shape = Shape::of(g)?;
    Ok(match (shape, kind) {
        (Shape::A(n), _) => (1..=n).map(|m| apply_symmetric(n, kind, m, &CartanElement::one())).collect(),
        (_, Kind::Elementary) => miura_coefficients(shape),
        (_, Kind::Complete) => dual_coefficients(shape, shape.order()),
    })
}
