use current::{ss_vector_a, ss_vector_bc, ss_vector_interp, ss_vector_interp_bc, LieFamily, Variant};
use diagrams::{compose, Diagram, DiagramSum, Family, Word};
use diffalg::GenId;
use pva::LambdaPoly;
use scalars::Scalar;
use serde_json::{json, Value};
use winterp::{project_pr_n, Param};

use crate::suites::{run, w_algebra, Report, Suite};
use crate::{CliError, FamilyArg, RunConfig, VariantArg};

/// What a command prints: `text` for `--format text`, `json` otherwise.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub pass: bool,
}

fn lambda_json(p: &LambdaPoly) -> Value {
    Value::Array(p.terms().map(|(k, c)| json!({"power": k, "coeff": c.to_json()})).collect())
}

pub fn bracket(cfg: &RunConfig, i: i64, j: i64) -> Result<Output, CliError> {
    let w = w_algebra(cfg)?;
    let id = |k: i64| match cfg.family {
        FamilyArg::PoT => GenId::po(k),
        _ => GenId::u(k),
    };
    let (a, b) = (id(i), id(j));
    for (k, g) in [(i, a), (j, b)] {
        if !w.generators().contains(&g) {
            return Err(CliError::Usage(format!("{k} is not a generator offset of this algebra at horizon {}", cfg.horizon)));
        }
    }
    let p = w.bracket(a, b)?;
    let mut text = format!("{{{a} λ {b}}} = {p}");
    let mut json = json!({
        "family": w.dump(0)?["family"],
        "param": w.param.to_string(),
        "horizon": w.horizon,
        "a": a.to_string(),
        "b": b.to_string(),
        "bracket": p.to_string(),
        "terms": lambda_json(&p),
    });
    if cfg.integer_param().is_some() {
        let pr = p.map(|x| project_pr_n(&w, x).expect("integral parameter"));
        text.push_str(&format!("\nPr_{}: {pr}", w.param));
        json["projected"] = json!(pr.to_string());
    }
    Ok(Output { text, json, pass: true })
}

pub fn ssvec(cfg: &RunConfig, m: u32, variant: VariantArg) -> Result<Output, CliError> {
    let g = cfg.lie()?;
    let v = match variant {
        VariantArg::Anti => Variant::Anti,
        VariantArg::Sym => Variant::Sym,
    };
    let interpolated = cfg.symbolic_t || cfg.param != Param::Symbolic;
    let mut p = match (g.family, interpolated) {
        (LieFamily::GlA, false) => ss_vector_a(m, &g, v)?,
        (LieFamily::GlA, true) => ss_vector_interp(m, &g, v)?,
        (_, false) => ss_vector_bc(m, &g)?,
        (_, true) => ss_vector_interp_bc(m, &g)?,
    };
    if let Param::Value(q) = &cfg.param {
        p = p.eval_at(q)?;
    }
    let text = p.display(&g).to_string();
    let json = json!({
        "algebra": g.to_string(),
        "m": m,
        "variant": if g.family == LieFamily::GlA { format!("{variant:?}").to_lowercase() } else { "bc".into() },
        "param": if interpolated { cfg.param.to_string() } else { g.n.to_string() },
        "level": g.critical_level().to_string(),
        "text": text,
        "terms": p.to_json(&g),
    });
    Ok(Output { text, json, pass: true })
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<Output, CliError> {
    let report = Report::new(suite, run(suite, cfg)?);
    let mut text = String::new();
    for r in &report.records {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!("{mark} {} {}", r.check, r.inputs));
        if !r.pass {
            text.push_str(&format!("\n  lhs: {}\n  rhs: {}\n  residual: {}", r.lhs, r.rhs, r.residual));
        }
        text.push('\n');
    }
    text.push_str(&format!("{:?}: {}/{} passed", suite, report.checked - report.failed, report.checked));
    let pass = report.pass;
    let json = serde_json::to_value(&report).expect("serializable report");
    Ok(Output { text, json, pass })
}

fn diagram_family(cfg: &RunConfig) -> Result<Family, CliError> {
    match cfg.family {
        FamilyArg::Gl => Ok(Family::GL),
        FamilyArg::So => Ok(Family::O),
        FamilyArg::Sp => Ok(Family::Sp),
        f => Err(CliError::Usage(format!("diagrams need --family gl, so or sp, got {f:?}"))),
    }
}

pub fn compose_diagrams(
    cfg: &RunConfig,
    bottom: &str,
    middle: &str,
    top: &str,
    x: &str,
    y: &str,
) -> Result<Output, CliError> {
    let family = diagram_family(cfg)?;
    let word = |s: &str| -> Result<Word, CliError> { Ok(s.parse()?) };
    let (b, m, t) = (word(bottom)?, word(middle)?, word(top)?);
    let dx = DiagramSum::single(Diagram::parse(&b, &m, x, family)?);
    let dy = DiagramSum::single(Diagram::parse(&m, &t, y, family)?);
    let alpha = match &cfg.param {
        Param::Symbolic => Scalar::t(),
        Param::Value(q) => Scalar::from_rational(q.clone()),
    };
    let r = compose(&dy, &dx, &alpha, family)?;
    let text = r.to_string();
    let terms: Vec<Value> = r.terms().map(|(d, c)| json!({"diagram": d.to_string(), "coeff": c.to_string()})).collect();
    let json = json!({"family": format!("{family:?}"), "alpha": alpha.to_string(), "result": text, "terms": terms});
    Ok(Output { text, json, pass: true })
}

pub fn dump(cfg: &RunConfig, table: usize) -> Result<Output, CliError> {
    let w = w_algebra(cfg)?;
    let json = w.dump(table)?;
    let text = serde_json::to_string_pretty(&json).expect("serializable dump");
    Ok(Output { text, json, pass: true })
}
