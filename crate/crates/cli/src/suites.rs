use clap::ValueEnum;
use current::{
    central_defects, partition_sum, ss_vector_a, ss_vector_bc, ss_vector_interp, ss_vector_interp_bc, weight_a,
    weight_bc, LieData, LieFamily, UEnvElement, Variant,
};
use diagrams::{compose, interp_rank_check, realize, Diagram, DiagramSum, Family};
use diffalg::{DiffPoly, GenId};
use psido::PsiDO;
use pva::{all_pairs, all_triples, check_jacobi, check_skew, BracketMatrix, CheckRecord, LambdaPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scalars::{binomial, q_coeff, rat, ratio, BigInt, BigRational, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use winterp::{
    build_classical_gl, build_classical_po, build_w_gl, build_w_po, pi_anti, project_pr_n, sa_eliminate, Param,
    WAlgebra,
};

use crate::{sample, CliError, FamilyArg, RunConfig};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Skew-symmetry of the generator brackets of W(gl_T) or W(po_T).
    Skew,
    /// Jacobi identity on generator triples.
    Jacobi,
    /// Self-adjointness of the W(po_T) operator.
    Selfadj,
    /// Products, adjoints, symbols and inverses of random pseudodifferential operators.
    Invert,
    /// Segal-Sugawara vectors annihilated by non-negative modes at the critical level.
    Central,
    /// Harish-Chandra images of Segal-Sugawara vectors against Miura generators.
    Ff,
    /// Interpolated correspondence against the classical one after evaluation.
    Square,
    /// Diagram composition, realization and rank checks.
    Diagrams,
    /// Closed forms of the Q coefficients.
    Qcoeff,
    /// Evaluation at T = n followed by truncation against the classical bracket.
    Evpr,
    /// The parity map as a bracket anti-isomorphism.
    Pi,
    /// Interpolated Segal-Sugawara vectors evaluated at integers.
    Interp,
    /// Poisson brackets of central vectors against W-algebra brackets.
    Center,
}

/// The JSON document printed by `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub pass: bool,
    pub checked: usize,
    pub failed: usize,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(suite: Suite, records: Vec<CheckRecord>) -> Self {
        let failed = records.iter().filter(|r| !r.pass).count();
        Report { suite, pass: failed == 0 && !records.is_empty(), checked: records.len(), failed, records }
    }
}

fn record(check: &str, inputs: Value, lhs: impl ToString, rhs: impl ToString, residual: impl ToString, pass: bool) -> CheckRecord {
    CheckRecord {
        check: check.to_string(),
        inputs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        residual: residual.to_string(),
        pass,
    }
}

fn lambda_record(check: &str, inputs: Value, lhs: &LambdaPoly, rhs: &LambdaPoly) -> CheckRecord {
    CheckRecord::from_diff(check, inputs, lhs, rhs, &lhs.sub(rhs).to_diffpoly(GenId::lambda()))
}

fn uenv_record(check: &str, inputs: Value, g: &LieData, lhs: &UEnvElement, rhs: &UEnvElement) -> CheckRecord {
    let res = lhs.sub(rhs);
    record(check, inputs, lhs.display(g), rhs.display(g), res.display(g), res.is_zero())
}

pub fn run(suite: Suite, cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    if cfg.corrupt && matches!(suite, Suite::Square | Suite::Evpr | Suite::Pi | Suite::Center) {
        return Err(CliError::Usage(format!("--corrupt is not available for {suite:?}")));
    }
    match suite {
        Suite::Skew => skew(cfg),
        Suite::Jacobi => jacobi(cfg),
        Suite::Selfadj => selfadj(cfg),
        Suite::Invert => psido_engine(cfg),
        Suite::Central => central(cfg),
        Suite::Ff => ff(cfg),
        Suite::Square => square(cfg),
        Suite::Diagrams => diagram_suite(cfg),
        Suite::Qcoeff => Ok(qcoeff(cfg)),
        Suite::Evpr => evpr(cfg),
        Suite::Pi => pi(cfg),
        Suite::Interp => interp(cfg),
        Suite::Center => center(cfg),
    }
}

pub fn w_algebra(cfg: &RunConfig) -> Result<WAlgebra, CliError> {
    match cfg.family {
        FamilyArg::GlT => Ok(build_w_gl(cfg.param.clone(), cfg.horizon)?),
        FamilyArg::PoT => Ok(build_w_po(cfg.param.clone(), cfg.horizon)?),
        f => Err(CliError::Usage(format!("{f:?} is not a W-algebra family; use glT or poT"))),
    }
}

/// A bracket table whose `{g λ g}` entry is off by one, for negative controls.
fn maybe_corrupt(w: &WAlgebra, g: GenId, corrupt: bool) -> Result<BracketMatrix, CliError> {
    let h = w.brackets().clone();
    if !corrupt {
        return Ok(h);
    }
    let p = w.bracket(g, g)?.add(&LambdaPoly::constant(DiffPoly::one()));
    Ok(h.with_override(g, g, p))
}

fn skew(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let w = w_algebra(cfg)?;
    let k = match w.family {
        winterp::Family::GlT => cfg.horizon / 2,
        winterp::Family::PoT => cfg.horizon / 2 - 1,
    };
    let gens = w.generators_to_offset(k);
    let first = *gens.first().ok_or_else(|| CliError::Usage("horizon too small for any generator pair".into()))?;
    let h = maybe_corrupt(&w, first, cfg.corrupt)?;
    Ok(check_skew(&h, &all_pairs(&gens)))
}

fn jacobi(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let w = w_algebra(cfg)?;
    let k = match w.family {
        winterp::Family::GlT => (cfg.horizon - 2) / 2,
        winterp::Family::PoT => cfg.horizon / 2 - 1,
    };
    let gens = w.generators_to_offset(k);
    let first = *gens.first().ok_or_else(|| CliError::Usage("horizon too small for any generator triple".into()))?;
    let h = maybe_corrupt(&w, first, cfg.corrupt)?;
    Ok(check_jacobi(&h, &all_triples(&gens)))
}

fn selfadj(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let w = build_w_po(Param::Symbolic, cfg.horizon)?;
    let inputs = json!({"horizon": cfg.horizon});
    let mut out = Vec::new();
    let l = if cfg.corrupt {
        w.l().add(&PsiDO::from_terms(w.l().shift(), vec![(3, DiffPoly::one())], w.l().horizon()))?
    } else {
        w.l().clone()
    };
    let adj = l.adjoint()?;
    out.push(record("selfadj.adjoint", inputs.clone(), &adj, &l, "", adj.agrees_with(&l)?));
    let p1 = &w.odd_coefficients()[&3];
    let want = DiffPoly::gen_d(GenId::po(2), 1).scale(&((Scalar::t() - Scalar::from_int(2)) / Scalar::from_int(2)));
    out.push(CheckRecord::from_diff("selfadj.p1", inputs, p1, &want, &(p1 - &want)));
    for r in (2..=cfg.horizon).step_by(2) {
        let res = sa_eliminate(r)?;
        out.push(CheckRecord::from_diff("selfadj.even", json!({"r": r}), &res, "0", &res));
    }
    Ok(out)
}

fn psido_engine(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for k in 0..100 {
        let (a, b, c) = (sample::operator(&mut rng, 4), sample::operator(&mut rng, 4), sample::operator(&mut rng, 4));
        let left = a.mul(&b)?.mul(&c)?;
        let right = a.mul(&b.mul(&c)?)?;
        let pass = left.horizon() == right.horizon() && left.agrees_with(&right)?;
        out.push(record("psido.associative", json!({"sample": k}), &left, &right, "", pass));
    }
    for k in 0..100 {
        let a = sample::operator(&mut rng, 5);
        let back = a.adjoint()?.adjoint()?;
        out.push(record("psido.adjoint", json!({"sample": k}), &back, &a, "", back == a));
    }
    for k in 0..50 {
        let (a, b) = (sample::operator(&mut rng, 4), sample::operator(&mut rng, 4));
        let prod = a.mul(&b)?.symbol();
        let comp = a.symbol().compose(&b.symbol(), None)?;
        out.push(record("psido.symbol", json!({"sample": k}), prod.to_psido(), comp.to_psido(), "", prod == comp));
    }
    let h = cfg.horizon;
    let one = if cfg.corrupt { PsiDO::one().scale(&Scalar::from_int(2)) } else { PsiDO::one() };
    for k in 0..50 {
        let l = sample::monic(&mut rng, h + 1);
        let p = l.mul(&l.invert(h)?)?;
        let pass = p.horizon().knows(h) && p.agrees_with(&one)?;
        out.push(record("psido.inverse", json!({"sample": k, "horizon": h}), &p, &one, "", pass));
    }
    Ok(out)
}

fn perturbed(g: &LieData, m: u32, variant: Variant) -> UEnvElement {
    let x = Scalar::from_int(g.n as i64);
    match g.family {
        LieFamily::GlA => partition_sum(g, m, variant, false, &|l| {
            weight_a(variant, m, l, &x) + if l == 1 { Scalar::one() } else { Scalar::zero() }
        }),
        f => partition_sum(g, m, variant, true, &|l| {
            weight_bc(f, m, l, &x) + if l == 2 { Scalar::one() } else { Scalar::zero() }
        }),
    }
}

/// `(name, m, vector)` for every Segal-Sugawara vector of `g` up to its rank.
fn ss_vectors(g: &LieData, corrupt: bool) -> Result<Vec<(&'static str, u32, UEnvElement)>, CliError> {
    let mut out = Vec::new();
    match g.family {
        LieFamily::GlA => {
            for m in 1..=g.n as u32 {
                for (name, v) in [("phi", Variant::Anti), ("psi", Variant::Sym)] {
                    let p = if corrupt { perturbed(g, m, v) } else { ss_vector_a(m, g, v)? };
                    out.push((name, m, p));
                }
            }
        }
        f => {
            let v = if f == LieFamily::SpC { Variant::Anti } else { Variant::Sym };
            for m in (2..=2 * (g.n / 2) as u32).step_by(2) {
                let p = if corrupt { perturbed(g, m, v) } else { ss_vector_bc(m, g)? };
                out.push(("phi", m, p));
            }
        }
    }
    Ok(out)
}

fn central(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let g = cfg.lie()?;
    let mut level = g.critical_level();
    if cfg.corrupt {
        level += rat(1);
    }
    let k = Scalar::from_rational(level.clone());
    let mut out = Vec::new();
    for (name, m, p) in ss_vectors(&g, false)? {
        let defects = central_defects(&p, &g, &k, cfg.max_mode);
        let lhs: Vec<String> =
            defects.iter().map(|(x, j, r)| format!("{}t^{j}: {}", g.basis_name(*x), r.display(&g))).collect();
        let inputs = json!({"algebra": g.to_string(), "vector": name, "m": m, "level": level.to_string(), "max_mode": cfg.max_mode});
        let lhs = if lhs.is_empty() { "0".to_string() } else { lhs.join("; ") };
        out.push(record("central", inputs, &lhs, "0", &lhs, defects.is_empty()));
    }
    Ok(out)
}

fn interp(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let g = cfg.lie()?;
    let q = rat(g.n as i64);
    let mut out = Vec::new();
    for (name, m, classical) in ss_vectors(&g, false)? {
        let sym = match (g.family, name) {
            (LieFamily::GlA, "phi") => ss_vector_interp(m, &g, Variant::Anti)?,
            (LieFamily::GlA, _) => ss_vector_interp(m, &g, Variant::Sym)?,
            _ => ss_vector_interp_bc(m, &g)?,
        };
        let mut ev = sym.eval_at(&q)?;
        if cfg.corrupt {
            ev = ev.add(&UEnvElement::one());
        }
        let inputs = json!({"algebra": g.to_string(), "vector": name, "m": m});
        out.push(uenv_record("interp", inputs, &g, &ev, &classical));
    }
    Ok(out)
}

fn ff(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let g = cfg.lie()?;
    Ok(if cfg.corrupt { ffmap::check_ff_corrupted(&g)? } else { ffmap::check_ff(&g)? })
}

fn square(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let g = cfg.lie()?;
    Ok(ffmap::check_square(g.n, g.family)?)
}

fn evpr(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let fixed = cfg.integer_param().map(|n| vec![n]);
    let mut out = Vec::new();
    match cfg.family {
        FamilyArg::GlT => {
            let w = build_w_gl(Param::Symbolic, cfg.horizon)?;
            for n in fixed.unwrap_or_else(|| vec![2, 3, 4]) {
                let c = build_classical_gl(n);
                let wn = build_w_gl(Param::int(n), cfg.horizon)?;
                for i in 0..n {
                    for j in 0..n {
                        let (a, b) = (GenId::u(i), GenId::u(j));
                        out.push(evpr_one(&w, &wn, &c, a, b, n)?);
                    }
                }
            }
        }
        FamilyArg::PoT => {
            let w = build_w_po(Param::Symbolic, cfg.horizon)?;
            for n in fixed.unwrap_or_else(|| vec![2, 4]) {
                let c = build_classical_po(n)?;
                let wn = build_w_po(Param::int(n), cfg.horizon)?;
                for a in c.generators() {
                    for b in c.generators() {
                        out.push(evpr_one(&w, &wn, &c, *a, *b, n)?);
                    }
                }
            }
        }
        f => return Err(CliError::Usage(format!("evpr needs glT or poT, got {f:?}"))),
    }
    Ok(out)
}

fn evpr_one(w: &WAlgebra, wn: &WAlgebra, c: &WAlgebra, a: GenId, b: GenId, n: i64) -> Result<CheckRecord, CliError> {
    let ev = w.bracket(a, b)?.evaluate_t(&rat(n))?;
    let lhs = ev.map(|x| project_pr_n(wn, x).expect("integral parameter"));
    let rhs = c.bracket(a, b)?;
    Ok(lambda_record("evpr", json!({"n": n, "a": a.to_string(), "b": b.to_string()}), &lhs, &rhs))
}

fn pi(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let w = match (cfg.family, &cfg.param) {
        (FamilyArg::GlT, Param::Symbolic) => build_w_gl(Param::Value(ratio(5, 2)), cfg.horizon)?,
        (FamilyArg::PoT, Param::Symbolic) => build_w_po(Param::int(3), cfg.horizon)?,
        _ => w_algebra(cfg)?,
    };
    Ok(pi_anti(&w, 2)?)
}

fn cap_cup(family: Family) -> Result<DiagramSum, CliError> {
    let word: diagrams::Word = if family == Family::GL { "bo" } else { "bb" }.parse()?;
    Ok(DiagramSum::single(Diagram::parse(&word, &word, "[(b1,b2),(t1,t2)]", family)?))
}

fn diagram_suite(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    let families = match cfg.family {
        FamilyArg::Gl => vec![Family::GL],
        FamilyArg::So => vec![Family::O],
        FamilyArg::Sp => vec![Family::Sp],
        _ => vec![Family::GL, Family::O, Family::Sp],
    };
    let dims = cfg.rank.map(|n| vec![n]).unwrap_or_else(|| vec![2, 3, 4]);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let alpha = Scalar::t();
    for &family in &families {
        let e = cap_cup(family)?;
        let lhs = compose(&e, &e, &alpha, family)?;
        let loop_value = if family == Family::Sp { -alpha.clone() } else { alpha.clone() };
        let loop_value = if cfg.corrupt { loop_value + Scalar::one() } else { loop_value };
        let rhs = e.scale(&loop_value);
        let inputs = json!({"family": format!("{family:?}")});
        out.push(record("diagrams.idempotent", inputs, &lhs, &rhs, lhs.sub(&rhs), lhs == rhs));
        for &n in &dims {
            if family == Family::Sp && n % 2 == 1 {
                continue;
            }
            let a = Scalar::from_int(n as i64);
            for k in 0..50 {
                let (x, y) = sample::composable_pair(&mut rng, family);
                let lhs = realize(&compose(&y, &x, &a, family)?, n, family)?;
                let rhs = realize(&y, n, family)?.mul(&realize(&x, n, family)?);
                let inputs = json!({"family": format!("{family:?}"), "N": n, "sample": k, "x": x.to_string(), "y": y.to_string()});
                out.push(record("diagrams.multiplicative", inputs, lhs.nnz(), rhs.nnz(), "", lhs == rhs));
            }
        }
        let words = sample::rank_words(family);
        for x in &words {
            for y in &words {
                let total = x.len() + y.len();
                if total > 4 || diagrams::hom_basis(x, y, family).is_empty() {
                    continue;
                }
                for n in total.max(1)..=total + 1 {
                    if family == Family::Sp && n % 2 == 1 {
                        continue;
                    }
                    let r = interp_rank_check(x, y, n, family)?;
                    let inputs = json!({"family": format!("{family:?}"), "from": x.to_string(), "to": y.to_string(), "N": n});
                    out.push(record("diagrams.rank", inputs, r.rank, r.dim_domain, r.dim_domain - r.rank, r.injective));
                }
            }
        }
    }
    Ok(out)
}

fn binom_ratio(a: (i64, i64), b: (i64, i64)) -> BigRational {
    let c = |n: i64, k: i64| BigInt::from(binomial(n as u64, k as u64));
    BigRational::new(c(a.0, a.1), c(b.0, b.1))
}

fn qcoeff(cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for m in 1..=6u32 {
        for l in 1..=m {
            for n in 1..=10i64 {
                let inputs = json!({"m": m, "l": l, "n": n});
                let mut lhs = q_coeff(m, l, &Scalar::from_int(n)).expect("valid indices");
                if cfg.corrupt && (m, l, n) == (2, 1, 1) {
                    lhs = lhs + Scalar::one();
                }
                let rhs = Scalar::from_rational(binom_ratio((n + m as i64 - 1, m as i64), (n + l as i64 - 1, l as i64)));
                out.push(CheckRecord::from_diff("qcoeff", inputs.clone(), &lhs, &rhs, &DiffPoly::constant(&lhs - &rhs)));
                if l as i64 <= n {
                    let q = q_coeff(m, l, &Scalar::from_int(-n)).expect("valid indices");
                    let signed = if (m - l) % 2 == 0 { q } else { -q };
                    let rhs = Scalar::from_rational(binom_ratio((n, m as i64), (n, l as i64)));
                    let res = DiffPoly::constant(&signed - &rhs);
                    out.push(CheckRecord::from_diff("qcoeff.signed", inputs, &signed, &rhs, &res));
                }
            }
        }
    }
    out
}

#[cfg(feature = "center-bracket")]
fn center(cfg: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    use ffmap::{center_bracket, miura_operator, Shape};
    let n = cfg.rank_or(2);
    if !(2..=3).contains(&n) || !matches!(cfg.family, FamilyArg::Gl | FamilyArg::GlT) {
        return Err(CliError::Usage("the center suite runs on gl_2 or gl_3".into()));
    }
    let g = LieData::gl(n);
    let w = build_classical_gl(n as i64);
    let l = miura_operator(Shape::A(n));
    let mu = |p: &DiffPoly| {
        p.substitute(&|id| (id.tag == diffalg::Tag::U).then(|| l.coeff(id.offset + 1).expect("exact operator")))
    };
    let phi: Vec<UEnvElement> = (1..=2).map(|m| ss_vector_a(m, &g, Variant::Anti)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let lhs = center_bracket(&phi[i], &phi[j], &g)?;
            let rhs = w.bracket(GenId::u(i as i64), GenId::u(j as i64))?.map(&mu);
            let inputs = json!({"algebra": g.to_string(), "a": format!("phi{}", i + 1), "b": format!("phi{}", j + 1)});
            out.push(lambda_record("center", inputs, &lhs, &rhs));
        }
    }
    let vac = center_bracket(&UEnvElement::one(), &phi[1], &g)?;
    out.push(lambda_record("center.vacuum", json!({"algebra": g.to_string()}), &vac, &LambdaPoly::zero()));
    Ok(out)
}

#[cfg(not(feature = "center-bracket"))]
fn center(_: &RunConfig) -> Result<Vec<CheckRecord>, CliError> {
    Err(CliError::Usage("built without the center-bracket feature".into()))
}
