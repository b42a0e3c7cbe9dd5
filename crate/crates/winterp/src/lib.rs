//! Interpolated W-algebras `W(gl_T)` and `W(po_T)` built from Adler operators.
//!
//! `W(gl_T)` uses `L = ∂^T + Σ_m u_{-T+m} ∂^{T-1-m}`; `W(po_T)` uses the
//! self-adjoint `L = ∂^T + Σ_r w_r ∂^{T-r}` whose odd coefficients are
//! eliminated in favour of the even generators.

mod pi;

use std::collections::BTreeMap;

use diffalg::{DiffPoly, GenId, Tag};
use psido::{Horizon, PsiDO, PsiError};
use pva::{master_bracket, BracketMatrix, LambdaPoly, PvaError};
use scalars::{binomial_ring, BigRational, Scalar, ShiftExponent};
use serde_json::{json, Value};
use thiserror::Error;

pub use pi::{opposite, pi_anti, pi_images};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WError {
    #[error("the parameter T = 0 is excluded for W(gl_T)")]
    ZeroParameter,
    #[error("the parameter is still symbolic")]
    NotEvaluated,
    #[error("even self-adjointness constraint at offset {r} leaves {residual}")]
    InconsistentConstraint { r: i64, residual: String },
    #[error("horizon {0} is too small")]
    HorizonTooSmall(i64),
    #[error(transparent)]
    Pva(#[from] PvaError),
    #[error(transparent)]
    Psi(#[from] PsiError),
}

/// How the brackets of the even generators of `W(po_T)` are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PoBracket {
    /// Each generator is paired with its adjoint-symmetrized coordinate
    /// functional before taking the ambient bracket.
    #[default]
    Symmetrized,
    /// The ambient entries `H_{r-1,s-1}` read directly on the self-adjoint locus.
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    GlT,
    PoT,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Symbolic,
    Value(BigRational),
}

impl Param {
    pub fn int(n: i64) -> Self {
        Param::Value(scalars::rat(n))
    }

    fn integer(&self) -> Option<i64> {
        match self {
            Param::Value(q) if q.is_integer() => Some(q.to_integer().try_into().expect("small parameter")),
            _ => None,
        }
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Symbolic => write!(f, "T"),
            Param::Value(q) => write!(f, "{}", q),
        }
    }
}

/// An interpolated W-algebra, cut off at a fixed horizon.
///
/// `horizon = K` means `L` is known through the coefficient of `∂^{α-K}`.
/// For a non-integral value of the parameter, `L` stays symbolic and only the
/// bracket table is evaluated.
#[derive(Clone, Debug)]
pub struct WAlgebra {
    pub family: Family,
    pub param: Param,
    pub horizon: i64,
    generators: Vec<GenId>,
    l: PsiDO,
    brackets: BracketMatrix,
    odd: BTreeMap<i64, DiffPoly>,
}

fn index_of(g: GenId) -> i64 {
    match g.tag {
        Tag::Po => g.offset - 1,
        _ => g.offset,
    }
}

impl WAlgebra {
    pub fn generators(&self) -> &[GenId] {
        &self.generators
    }

    pub fn l(&self) -> &PsiDO {
        &self.l
    }

    pub fn brackets(&self) -> &BracketMatrix {
        &self.brackets
    }

    /// Eliminated odd coefficients `r ↦ p_r` (empty for `gl`).
    pub fn odd_coefficients(&self) -> &BTreeMap<i64, DiffPoly> {
        &self.odd
    }

    pub fn bracket(&self, a: GenId, b: GenId) -> Result<LambdaPoly, WError> {
        Ok(self.brackets.bracket_gen(a, b)?)
    }

    pub fn master(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly, WError> {
        Ok(master_bracket(&self.brackets, f, g)?)
    }

    /// Generators whose `L`-offset is at most `k`.
    pub fn generators_to_offset(&self, k: i64) -> Vec<GenId> {
        self.generators.iter().copied().filter(|g| index_of(*g) < k).collect()
    }

    pub fn dump(&self, table_size: usize) -> Result<Value, WError> {
        let mut table = Vec::new();
        for (a, b, p) in self.brackets.table(table_size)? {
            table.push(json!({"a": a.to_string(), "b": b.to_string(), "bracket": p.to_string()}));
        }
        Ok(json!({
            "family": match self.family { Family::GlT => "glT", Family::PoT => "poT" },
            "param": self.param.to_string(),
            "horizon": self.horizon,
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "L": self.l.to_json(),
            "brackets": table,
        }))
    }
}

fn table_for(family: Family, style: PoBracket, generators: &[GenId], l: PsiDO) -> BracketMatrix {
    match (family, style) {
        (Family::PoT, PoBracket::Symmetrized) => symmetrized_po_table(generators.to_vec(), l),
        _ => BracketMatrix::from_adler(l, generators.iter().map(|g| (*g, index_of(*g))).collect()),
    }
}

fn finish(
    family: Family,
    style: PoBracket,
    param: Param,
    horizon: i64,
    generators: Vec<GenId>,
    l_sym: PsiDO,
    odd: BTreeMap<i64, DiffPoly>,
) -> Result<WAlgebra, WError> {
    let (l, brackets, odd) = match &param {
        Param::Symbolic => (l_sym.clone(), table_for(family, style, &generators, l_sym), odd),
        Param::Value(q) if q.is_integer() => {
            let l = l_sym.evaluate_t(q)?;
            let mut ev = BTreeMap::new();
            for (r, p) in odd {
                ev.insert(r, p.evaluate_t(q).map_err(PvaError::from)?);
            }
            (l.clone(), table_for(family, style, &generators, l), ev)
        }
        Param::Value(q) => (l_sym.clone(), table_for(family, style, &generators, l_sym).eval_at(q), odd),
    };
    Ok(WAlgebra { family, param, horizon, generators, l, brackets, odd })
}

/// `P_{rk}(x) = ½(δ_{rk} + (-1)^k C(α-k, r-k) x^{r-k})`: the symmetrized coordinate
/// `½(u_r + (L*)_r)` written as `Σ_k P_{rk}(∂) u_k`.
fn sym_weights(alpha: &Scalar, r: i64) -> Vec<(i64, u32, Scalar)> {
    let half = Scalar::one() / Scalar::from_int(2);
    let mut out = Vec::new();
    for k in 1..=r {
        let c = binomial_ring(&(alpha - &Scalar::from_int(k)), (r - k) as u32);
        let mut c = if k % 2 == 0 { c } else { -c };
        if k == r {
            c = &c + &Scalar::one();
        }
        let c = &c * &half;
        if !c.is_zero() {
            out.push((k, (r - k) as u32, c));
        }
    }
    out
}

/// `{w_r λ w_s} = Σ_{k,l} P_{sl}(λ+∂) P_{rk}(-λ) H_{k-1,l-1}(λ)` on the self-adjoint locus.
fn symmetrized_po_table(generators: Vec<GenId>, l: PsiDO) -> BracketMatrix {
    let l = std::sync::Arc::new(l);
    let gens = generators.clone();
    BracketMatrix::new(generators, move |a, b| {
        for g in [a, b] {
            if !gens.contains(&g) {
                return Err(PvaError::UnknownGenerator(g));
            }
        }
        let alpha = l.shift().to_scalar();
        let mut out = LambdaPoly::zero();
        for (k, pk, ck) in sym_weights(&alpha, a.offset) {
            let sign = if pk % 2 == 0 { ck.clone() } else { -ck.clone() };
            for (m, pl, cl) in sym_weights(&alpha, b.offset) {
                let h = pva::h_entry(&l, k - 1, m - 1)?;
                let left = h.scale(&sign);
                let left = (0..pk).fold(left, |acc, _| acc.mul_lambda());
                let mut right = LambdaPoly::zero();
                right.add_term(pl, DiffPoly::constant(cl));
                out = out.add(&right.shifted_apply(&left));
            }
        }
        Ok(out)
    })
}

/// `W(gl_T)` with `L = ∂^T + Σ_{m<K} u_{-T+m} ∂^{T-1-m}` known through offset `K`.
pub fn build_w_gl(param: Param, horizon: i64) -> Result<WAlgebra, WError> {
    if horizon < 2 {
        return Err(WError::HorizonTooSmall(horizon));
    }
    if matches!(&param, Param::Value(q) if *q == scalars::rat(0)) {
        return Err(WError::ZeroParameter);
    }
    let generators: Vec<GenId> = (0..horizon).map(GenId::u).collect();
    let l = gl_operator(ShiftExponent::t(), &generators, horizon);
    finish(Family::GlT, PoBracket::default(), param, horizon, generators, l, BTreeMap::new())
}

fn gl_operator(shift: ShiftExponent, gens: &[GenId], horizon: i64) -> PsiDO {
    let mut terms = vec![(0, DiffPoly::one())];
    terms.extend(gens.iter().map(|g| (g.offset + 1, DiffPoly::gen(*g))));
    PsiDO::from_terms(shift, terms, Horizon::At(horizon + 1))
}

/// Classical `W(gl_n)`: the exact operator `∂^n + u_0 ∂^{n-1} + … + u_{n-1}`.
pub fn build_classical_gl(n: i64) -> WAlgebra {
    let generators: Vec<GenId> = (0..n).map(GenId::u).collect();
    let mut terms = vec![(0, DiffPoly::one())];
    terms.extend(generators.iter().map(|g| (g.offset + 1, DiffPoly::gen(*g))));
    let l = PsiDO::from_terms(ShiftExponent::int(n), terms, Horizon::Exact);
    let index = generators.iter().map(|g| (*g, g.offset)).collect();
    WAlgebra {
        family: Family::GlT,
        param: Param::int(n),
        horizon: n,
        generators,
        brackets: BracketMatrix::from_adler(l.clone(), index),
        l,
        odd: BTreeMap::new(),
    }
}

/// Solves the self-adjointness constraints of `∂^T + Σ_r w_r ∂^{T-r}` through offset `k`.
///
/// At offset `r` the constraint reads `w_r = Σ_{j≤r} (-1)^j C(T-j, r-j) w_j^{(r-j)}`;
/// for odd `r` this determines `w_r`, for even `r` the lower terms must cancel.
fn solve_self_adjoint(k: i64) -> Result<BTreeMap<i64, DiffPoly>, WError> {
    let mut coeff: BTreeMap<i64, DiffPoly> = BTreeMap::new();
    coeff.insert(0, DiffPoly::one());
    for r in 1..=k {
        let mut rest = DiffPoly::zero();
        for j in 0..r {
            let c = binomial_ring(&(Scalar::t() - Scalar::from_int(j)), (r - j) as u32);
            let c = if j % 2 == 0 { c } else { -c };
            rest += &coeff[&j].derive_n((r - j) as u32).scale(&c);
        }
        if r % 2 == 1 {
            coeff.insert(r, rest.scale(&(Scalar::one() / Scalar::from_int(2))));
        } else {
            if !rest.is_zero() {
                return Err(WError::InconsistentConstraint { r, residual: rest.to_string() });
            }
            coeff.insert(r, DiffPoly::gen(GenId::po(r)));
        }
    }
    Ok(coeff)
}

/// For odd `r`, the polynomial in the even generators that `w_r` equals; for
/// even `r`, the residual of the constraint (zero when consistent).
pub fn sa_eliminate(r: i64) -> Result<DiffPoly, WError> {
    if r % 2 == 1 {
        Ok(solve_self_adjoint(r)?.remove(&r).unwrap())
    } else {
        solve_self_adjoint(r)?;
        Ok(DiffPoly::zero())
    }
}

fn po_operator(k: i64, shift: ShiftExponent, coeff: &BTreeMap<i64, DiffPoly>, horizon: Horizon) -> PsiDO {
    let terms = coeff.iter().filter(|(r, _)| **r <= k).map(|(r, c)| (*r, c.clone())).collect();
    PsiDO::from_terms(shift, terms, horizon)
}

/// `W(po_T)` from the self-adjoint operator known through offset `K`.
pub fn build_w_po(param: Param, horizon: i64) -> Result<WAlgebra, WError> {
    build_w_po_with(param, horizon, PoBracket::default())
}

pub fn build_w_po_with(param: Param, horizon: i64, style: PoBracket) -> Result<WAlgebra, WError> {
    if horizon < 4 {
        return Err(WError::HorizonTooSmall(horizon));
    }
    let coeff = solve_self_adjoint(horizon)?;
    let generators: Vec<GenId> = (1..=horizon / 2).map(|i| GenId::po(2 * i)).collect();
    let odd = coeff.iter().filter(|(r, _)| *r % 2 == 1).map(|(r, c)| (*r, c.clone())).collect();
    let l = po_operator(horizon, ShiftExponent::t(), &coeff, Horizon::At(horizon + 1));
    finish(Family::PoT, style, param, horizon, generators, l, odd)
}

/// Classical self-adjoint operator of order `n`: `∂^n + w_2 ∂^{n-2} + … `, exact.
pub fn build_classical_po(n: i64) -> Result<WAlgebra, WError> {
    let q = scalars::rat(n);
    let coeff_sym = solve_self_adjoint(n)?;
    let mut coeff = BTreeMap::new();
    for (r, c) in coeff_sym {
        coeff.insert(r, c.evaluate_t(&q).map_err(PvaError::from)?);
    }
    let generators: Vec<GenId> = (1..=n / 2).map(|i| GenId::po(2 * i)).collect();
    let odd = coeff.iter().filter(|(r, _)| *r % 2 == 1).map(|(r, c)| (*r, c.clone())).collect();
    let l = po_operator(n, ShiftExponent::int(n), &coeff, Horizon::Exact);
    Ok(WAlgebra {
        family: Family::PoT,
        param: Param::int(n),
        horizon: n,
        brackets: table_for(Family::PoT, PoBracket::default(), &generators, l.clone()),
        generators,
        l,
        odd,
    })
}

/// `Pr_n`: generators past the classical range map to zero.
pub fn project_pr_n(w: &WAlgebra, elem: &DiffPoly) -> Result<DiffPoly, WError> {
    let n = w.param.integer().ok_or(WError::NotEvaluated)?;
    let keep = |g: GenId| match g.tag {
        Tag::U => g.offset < n,
        Tag::Po => g.offset <= n,
        _ => true,
    };
    Ok(elem.substitute(&|g| if keep(g) { None } else { Some(DiffPoly::zero()) }))
}

/// `H_i = (-1)^i × (coefficient of ∂^{-α-i} in L^{-1})` for `i = 1..=count`.
pub fn dual_generators(w: &WAlgebra, count: i64) -> Result<Vec<DiffPoly>, WError> {
    let inv = w.l.invert(count)?;
    (1..=count)
        .map(|i| {
            let c = inv.coeff(i)?;
            Ok(if i % 2 == 0 { c } else { -c })
        })
        .collect()
}
