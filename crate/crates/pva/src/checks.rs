use diffalg::{DiffPoly, GenId};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{master_bracket, BracketMatrix, LambdaPoly, PvaError};

/// One verification outcome: `pass` iff the exact residual is zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub inputs: Value,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn from_diff(check: &str, inputs: Value, lhs: impl ToString, rhs: impl ToString, residual: &DiffPoly) -> Self {
        CheckRecord {
            check: check.to_string(),
            inputs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            residual: residual.to_string(),
            pass: residual.is_zero(),
        }
    }

    /// A record for a check that could not be carried out.
    pub fn error(check: &str, inputs: Value, err: impl ToString) -> Self {
        CheckRecord {
            check: check.to_string(),
            inputs,
            lhs: String::new(),
            rhs: String::new(),
            residual: format!("error: {}", err.to_string()),
            pass: false,
        }
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}

/// Runs `job` over `items` on scoped threads, keeping the input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], job: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&job).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn skew_one(h: &BracketMatrix, a: GenId, b: GenId) -> Result<CheckRecord, PvaError> {
    let ab = h.bracket_gen(a, b)?;
    let ba = h.bracket_gen(b, a)?;
    let rhs = ba.reflected().neg();
    let res = ab.sub(&rhs);
    Ok(CheckRecord::from_diff(
        "skew",
        json!([a.to_string(), b.to_string()]),
        &ab,
        &rhs,
        &res.to_diffpoly(GenId::lambda()),
    ))
}

/// `{a λ b} + {b -λ-∂ a} = 0` on each pair.
pub fn check_skew(h: &BracketMatrix, pairs: &[(GenId, GenId)]) -> Vec<CheckRecord> {
    par_map(pairs, |&(a, b)| {
        skew_one(h, a, b).unwrap_or_else(|e| CheckRecord::error("skew", json!([a.to_string(), b.to_string()]), e))
    })
}

/// Residual `{a λ {b μ c}} - {b μ {a λ c}} - {{a λ b} λ+μ c}` as a polynomial in `λ`, `μ`.
pub fn jacobi_residual(h: &BracketMatrix, a: &DiffPoly, b: &DiffPoly, c: &DiffPoly) -> Result<(DiffPoly, DiffPoly), PvaError> {
    let lam = GenId::lambda();
    let mu = GenId::mu();
    let bc = master_bracket(h, b, c)?.to_diffpoly(mu);
    let lhs1 = master_bracket(h, a, &bc)?.to_diffpoly(lam);
    let ac = master_bracket(h, a, c)?.to_diffpoly(lam);
    let lhs2 = master_bracket(h, b, &ac)?.to_diffpoly(mu);
    let shift = &DiffPoly::gen(lam) + &DiffPoly::gen(mu);
    let ab = master_bracket(h, a, b)?;
    let mut rhs = DiffPoly::zero();
    for (k, ck) in ab.terms() {
        let inner: LambdaPoly = master_bracket(h, ck, c)?;
        rhs += &(&inner.substitute_lambda(&shift) * &DiffPoly::gen(lam).pow(k));
    }
    let lhs = &lhs1 - &lhs2;
    Ok((lhs, rhs))
}

/// Jacobi identity on each triple of generators.
pub fn check_jacobi(h: &BracketMatrix, triples: &[(GenId, GenId, GenId)]) -> Vec<CheckRecord> {
    par_map(triples, |&(a, b, c)| {
        let inputs = json!([a.to_string(), b.to_string(), c.to_string()]);
        match jacobi_residual(h, &DiffPoly::gen(a), &DiffPoly::gen(b), &DiffPoly::gen(c)) {
            Ok((lhs, rhs)) => {
                let res = &lhs - &rhs;
                CheckRecord::from_diff("jacobi", inputs, &lhs, &rhs, &res)
            }
            Err(e) => CheckRecord::error("jacobi", inputs, e),
        }
    })
}

/// All ordered pairs and triples drawn from `gens`.
pub fn all_pairs(gens: &[GenId]) -> Vec<(GenId, GenId)> {
    gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).collect()
}

pub fn all_triples(gens: &[GenId]) -> Vec<(GenId, GenId, GenId)> {
    let mut out = Vec::new();
    for &a in gens {
        for &b in gens {
            for &c in gens {
                out.push((a, b, c));
            }
        }
    }
    out
}
