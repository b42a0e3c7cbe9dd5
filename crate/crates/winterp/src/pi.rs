use std::collections::HashMap;

use diffalg::{DiffPoly, GenId, Tag};
use pva::{par_map, CheckRecord, LambdaPoly, PvaError};
use scalars::BigRational;
use serde_json::json;

use crate::{build_w_gl, build_w_po, Family, Param, WAlgebra, WError};

/// The algebra of the same family at parameter `-α`.
pub fn opposite(w: &WAlgebra) -> Result<WAlgebra, WError> {
    let q = match &w.param {
        Param::Value(q) => q.clone(),
        Param::Symbolic => return Err(WError::NotEvaluated),
    };
    let p = Param::Value(-q);
    match w.family {
        Family::GlT => build_w_gl(p, w.horizon),
        Family::PoT => build_w_po(p, w.horizon),
    }
}

fn l_offset(g: GenId) -> i64 {
    match g.tag {
        Tag::Po => g.offset,
        _ => g.offset + 1,
    }
}

/// `Π`: each generator of the opposite algebra maps to the coefficient of `L^{-1}`
/// at its own offset, evaluated at the parameter of `w`.
pub fn pi_images(w: &WAlgebra) -> Result<HashMap<GenId, DiffPoly>, WError> {
    let inv = w.l().invert(w.horizon)?;
    let mut out = HashMap::new();
    for g in w.generators() {
        let k = l_offset(*g);
        if k > w.horizon {
            continue;
        }
        let mut c = inv.coeff(k)?;
        if let (Param::Value(q), false) = (&w.param, w.l().shift().is_integral()) {
            c = c.evaluate_t(q).map_err(PvaError::from)?;
        }
        out.insert(*g, c);
    }
    Ok(out)
}

fn apply_pi(images: &HashMap<GenId, DiffPoly>, p: &LambdaPoly) -> Result<LambdaPoly, WError> {
    for (_, c) in p.terms() {
        for g in c.gens() {
            if !g.tag.is_constant() && !images.contains_key(&g) {
                return Err(WError::Pva(PvaError::UnknownGenerator(g)));
            }
        }
    }
    Ok(p.map(|c| c.substitute(&|g| images.get(&g).cloned())))
}

fn check_pair(w: &WAlgebra, opp: &WAlgebra, images: &HashMap<GenId, DiffPoly>, a: GenId, b: GenId) -> Result<CheckRecord, WError> {
    let pa = &images[&a];
    let pb = &images[&b];
    let lhs = w.master(pa, pb)?;
    let rhs = apply_pi(images, &opp.bracket(a, b)?)?.neg();
    let res = lhs.sub(&rhs).to_diffpoly(GenId::lambda());
    Ok(CheckRecord::from_diff("pi_anti", json!([w.param.to_string(), a.to_string(), b.to_string()]), &lhs, &rhs, &res))
}

/// Checks `{Π(a) λ Π(b)}_α = -Π({a λ b}_{-α})` on pairs among the first generators.
pub fn pi_anti(w: &WAlgebra, depth: i64) -> Result<Vec<CheckRecord>, WError> {
    if let Param::Value(q) = &w.param {
        if w.family == Family::GlT && *q == BigRational::from_integer(0.into()) {
            return Err(WError::ZeroParameter);
        }
    }
    let opp = opposite(w)?;
    let images = pi_images(w)?;
    // gl generators u_{-T+m} with m <= depth; po generators w_{2r} with r <= depth
    let count = match w.family {
        Family::GlT => depth + 1,
        Family::PoT => depth,
    };
    let gens: Vec<GenId> = w.generators().iter().copied().take(count.max(0) as usize).collect();
    let pairs: Vec<(GenId, GenId)> = pva::all_pairs(&gens);
    Ok(par_map(&pairs, |&(a, b)| {
        check_pair(w, &opp, &images, a, b).unwrap_or_else(|e| {
            CheckRecord::error("pi_anti", json!([w.param.to_string(), a.to_string(), b.to_string()]), e)
        })
    }))
}
