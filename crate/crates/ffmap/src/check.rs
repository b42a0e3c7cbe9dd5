use std::collections::HashMap;

use current::{
    partition_sum, ss_vector_a, ss_vector_bc, ss_vector_interp, ss_vector_interp_bc, weight_a, weight_bc, LieData,
    LieFamily, UEnvElement, Variant,
};
use diffalg::{DiffPoly, GenId};
use pva::CheckRecord;
use scalars::{rat, Scalar};
use serde_json::json;
use winterp::{build_w_gl, build_w_po, dual_generators, project_pr_n, Param, WAlgebra};

use crate::{dual_coefficients, miura_coefficients, miura_generators, miura_operator, CartanElement, FfError, Kind, Shape};

/// Weight of a basis element under the diagonal Cartan, in coordinates `ε_1, …, ε_r`.
pub fn weight(g: &LieData, a: usize) -> Vec<i64> {
    let rank = match g.family {
        LieFamily::GlA => g.n,
        _ => g.n / 2,
    };
    let eps = |i: usize| -> Vec<i64> {
        let mut v = vec![0; rank];
        if i < rank {
            v[i] = 1;
        } else if g.family != LieFamily::GlA && i >= g.n - rank {
            v[g.n - 1 - i] = -1;
        }
        v
    };
    let (i, j) = g.label(a);
    eps(i).iter().zip(eps(j)).map(|(x, y)| x - y).collect()
}

/// The Harish-Chandra projection `U(g[t^{-1}]t^{-1})^h → U(h[t^{-1}]t^{-1})`:
/// drops every PBW monomial with a non-Cartan factor.
pub fn hc_project(p: &UEnvElement, g: &LieData) -> Result<CartanElement, FfError> {
    let mut out = CartanElement::zero();
    for (w, c) in p.terms() {
        let mut total = vec![0i64; weight(g, 0).len()];
        for f in w {
            for (t, x) in total.iter_mut().zip(weight(g, f.basis)) {
                *t += x;
            }
        }
        if total.iter().any(|x| *x != 0) {
            return Err(FfError::NotWeightZero(UEnvElement::from_word(g, w.clone()).display(g).to_string()));
        }
        if w.iter().all(|f| g.is_cartan(f.basis)) {
            out.add_term(w.iter().map(|f| (g.label(f.basis).0, f.depth)).collect(), c.clone());
        }
    }
    Ok(out)
}

fn record(check: &str, inputs: serde_json::Value, lhs: &CartanElement, rhs: &CartanElement) -> CheckRecord {
    CheckRecord::from_diff(check, inputs, lhs, rhs, &lhs.sub(rhs).to_diffpoly())
}

fn diff_record(check: &str, inputs: serde_json::Value, lhs: &DiffPoly, rhs: &DiffPoly) -> CheckRecord {
    CheckRecord::from_diff(check, inputs, lhs, rhs, &(lhs - rhs))
}

/// Type A vector with the top weight perturbed.
fn corrupted_a(m: u32, g: &LieData, v: Variant) -> UEnvElement {
    let x = Scalar::from_int(g.n as i64);
    partition_sum(g, m, v, false, &|l| {
        let w = weight_a(v, m, l, &x);
        if l == 1 {
            w + Scalar::one()
        } else {
            w
        }
    })
}

fn corrupted_bc(m: u32, g: &LieData) -> UEnvElement {
    let x = Scalar::from_int(g.n as i64);
    let variant = if g.family == LieFamily::SpC { Variant::Anti } else { Variant::Sym };
    partition_sum(g, m, variant, true, &|l| {
        let w = weight_bc(g.family, m, l, &x);
        if l == 2 {
            w + Scalar::one()
        } else {
            w
        }
    })
}

/// Compares the projected Segal-Sugawara vectors with the Miura generators:
/// `φ_i ↦ w̃_i`, `ψ_i ↦ ℋ_i` for `gl_n`; `φ^B_i ↦ (-1)^i ℋ_i` (C-shape) for
/// `so_{2n+1}`; `φ^C_i ↦ w̃_i` (B-shape) for `sp_{2n}`.
pub fn check_ff(g: &LieData) -> Result<Vec<CheckRecord>, FfError> {
    check_ff_impl(g, false)
}

/// [`check_ff`] with one weight of every vector perturbed; every record should fail.
pub fn check_ff_corrupted(g: &LieData) -> Result<Vec<CheckRecord>, FfError> {
    check_ff_impl(g, true)
}

fn check_ff_impl(g: &LieData, corrupt: bool) -> Result<Vec<CheckRecord>, FfError> {
    let shape = Shape::of(g)?;
    let mut out = Vec::new();
    match shape {
        Shape::A(n) => {
            let w = miura_generators(g, Kind::Elementary)?;
            let h = miura_generators(g, Kind::Complete)?;
            for i in 1..=n {
                let m = i as u32;
                for (v, name, target) in [(Variant::Anti, "phi", &w[i - 1]), (Variant::Sym, "psi", &h[i - 1])] {
                    let p = if corrupt { corrupted_a(m, g, v) } else { ss_vector_a(m, g, v)? };
                    let lhs = hc_project(&p, g)?;
                    out.push(record("ff", json!({"algebra": g.to_string(), "vector": name, "i": i}), &lhs, target));
                }
            }
        }
        Shape::B(_) | Shape::C(_) => {
            let dual = shape.dual();
            let targets = match dual {
                Shape::C(_) => dual_coefficients(dual, dual.order()),
                _ => miura_coefficients(dual),
            };
            for i in (2..=dual.order()).step_by(2) {
                let m = i as u32;
                let p = if corrupt { corrupted_bc(m, g) } else { ss_vector_bc(m, g)? };
                let lhs = hc_project(&p, g)?;
                let mut rhs = targets[i - 1].clone();
                if matches!(dual, Shape::C(_)) && i % 2 == 1 {
                    rhs = rhs.scale(&-Scalar::one());
                }
                out.push(record("ff", json!({"algebra": g.to_string(), "vector": "phi", "i": i}), &lhs, &rhs));
            }
        }
    }
    Ok(out)
}

/// `μ`: generators of the W-algebra to coefficients of the Miura operator.
fn miura_substitution(w: &WAlgebra, shape: Shape) -> HashMap<GenId, DiffPoly> {
    let l = miura_operator(shape);
    w.generators()
        .iter()
        .filter_map(|g| {
            let offset = match g.tag {
                diffalg::Tag::U => g.offset + 1,
                _ => g.offset,
            };
            (offset as usize <= shape.order()).then(|| (*g, l.coeff(offset).expect("exact operator")))
        })
        .collect()
}

fn apply_mu(map: &HashMap<GenId, DiffPoly>, p: &DiffPoly) -> DiffPoly {
    p.substitute(&|g| map.get(&g).cloned())
}

/// Checks `Pr_n ∘ f_{T=n} = f_n ∘ Pr_n` on generators, read in the Miura realization.
///
/// `gl`: `φ_{i,T} ↦ u_{-T+i-1}` and `ψ_{i,T} ↦ H_i` in `W(gl_T)`. `sp_N`: `φ^C_{2i,T} ↦ w_{2i}`
/// in `W(po_{T+1})`. `so_N`: `φ^B_{2i,T} ↦ H_{2i}` in `W(po_{T-1})`.
pub fn check_square(n: usize, family: LieFamily) -> Result<Vec<CheckRecord>, FfError> {
    let q = rat(n as i64);
    let mut out = Vec::new();
    match family {
        LieFamily::GlA => {
            let g = LieData::gl(n);
            let horizon = (n as i64 + 1).max(2);
            let w = build_w_gl(Param::int(n as i64), horizon)?;
            let mu = miura_substitution(&w, Shape::A(n));
            let duals = dual_generators(&w, n as i64)?;
            for i in 1..=n {
                let m = i as u32;
                let phi = hc_project(&ss_vector_interp(m, &g, Variant::Anti)?.eval_at(&q)?, &g)?.to_diffpoly();
                let u = project_pr_n(&w, &DiffPoly::gen(GenId::u(i as i64 - 1)))?;
                out.push(diff_record("square", json!({"algebra": g.to_string(), "vector": "phi", "i": i}), &phi, &apply_mu(&mu, &u)));
                let psi = hc_project(&ss_vector_interp(m, &g, Variant::Sym)?.eval_at(&q)?, &g)?.to_diffpoly();
                let h = project_pr_n(&w, &duals[i - 1])?;
                out.push(diff_record("square", json!({"algebra": g.to_string(), "vector": "psi", "i": i}), &psi, &apply_mu(&mu, &h)));
            }
        }
        LieFamily::SpC => {
            let g = LieData::sp(n)?;
            let rank = n / 2;
            let w = build_w_po(Param::int(n as i64 + 1), (n as i64 + 1).max(4))?;
            let mu = miura_substitution(&w, Shape::B(rank));
            for i in 1..=rank {
                let m = 2 * i as u32;
                let phi = hc_project(&ss_vector_interp_bc(m, &g)?.eval_at(&q)?, &g)?.to_diffpoly();
                let u = project_pr_n(&w, &DiffPoly::gen(GenId::po(m as i64)))?;
                out.push(diff_record("square", json!({"algebra": g.to_string(), "vector": "phi", "i": m}), &phi, &apply_mu(&mu, &u)));
            }
        }
        LieFamily::SoB => {
            let g = LieData::so(n);
            let rank = n / 2;
            if n % 2 == 0 {
                return Err(FfError::Unsupported(format!("{g} is not of type B")));
            }
            let w = build_w_po(Param::int(n as i64 - 1), (n as i64 - 1).max(4))?;
            let mu = miura_substitution(&w, Shape::C(rank));
            let duals = dual_generators(&w, 2 * rank as i64)?;
            for i in 1..=rank {
                let m = 2 * i as u32;
                let phi = hc_project(&ss_vector_interp_bc(m, &g)?.eval_at(&q)?, &g)?.to_diffpoly();
                let h = project_pr_n(&w, &duals[m as usize - 1])?;
                out.push(diff_record("square", json!({"algebra": g.to_string(), "vector": "phi", "i": m}), &phi, &apply_mu(&mu, &h)));
            }
        }
    }
    Ok(out)
}
