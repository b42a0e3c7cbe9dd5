use current::{affine_act_form, Factor, LieData, LieFamily, UEnvElement};
use pva::LambdaPoly;
use scalars::{binomial, factorial, BigRational, Scalar};

use crate::{hc_project, FfError};

const MAX_DEGREE: usize = 2;

struct Ctx<'a> {
    g: &'a LieData,
    /// `κ_c - ε tr(xy)`, with `ε` carried by the symbol `T`.
    form: Box<dyn Fn(usize, usize) -> Scalar + 'a>,
}

fn weight(v: &UEnvElement) -> i64 {
    v.terms().map(|(w, _)| w.iter().map(|f| f.depth as i64).sum()).max().unwrap_or(0)
}

impl Ctx<'_> {
    /// `x_{(p)} v`.
    fn current_mode(&self, x: usize, p: i64, v: &UEnvElement) -> UEnvElement {
        if p >= 0 {
            affine_act_form(self.g, x, p as u32, &*self.form, v)
        } else {
            v.left_mul_factor(self.g, Factor::new(x, (-p) as u32))
        }
    }

    /// `a_{(q)} v`.
    fn mode(&self, a: &UEnvElement, q: i64, v: &UEnvElement) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (w, c) in a.terms() {
            out = out.add(&self.word_mode(w, q, v).scale(c));
        }
        out
    }

    /// Modes of `x_{(-r)} c` through the Borcherds identity.
    fn word_mode(&self, w: &[Factor], q: i64, v: &UEnvElement) -> UEnvElement {
        let Some((f, rest)) = w.split_first() else {
            return if q == -1 { v.clone() } else { UEnvElement::zero() };
        };
        if v.is_zero() {
            return UEnvElement::zero();
        }
        let c = UEnvElement::from_word(self.g, rest.to_vec());
        let r = f.depth as i64;
        let dc: i64 = rest.iter().map(|f| f.depth as i64).sum();
        let dv = weight(v);
        let top = (dc + dv - 1 - q).max(dv);
        let mut out = UEnvElement::zero();
        for i in 0..=top.max(0) {
            let k = Scalar::from_rational(BigRational::from_integer(
                binomial((r + i - 1) as u64, i as u64),
            ));
            let first = self.current_mode(f.basis, -r - i, &self.mode(&c, q + i, v));
            let mut second = if i <= dv {
                self.mode(&c, q - r - i, &self.current_mode(f.basis, i, v))
            } else {
                UEnvElement::zero()
            };
            if r % 2 == 1 {
                second = second.scale(&-Scalar::one());
            }
            out = out.add(&first.sub(&second).scale(&k));
        }
        out
    }
}

/// The Poisson λ-bracket of two central vectors of `gl_n`, read off from the
/// vertex algebra at the form `κ_c - ε tr(xy)`: `{a λ b} = Σ_j λ^j/j! (d/dε a_{(j)} b)|_{ε=0}`.
///
/// The coefficients are returned in the vacuum module, lowest power of `λ` first.
pub fn center_bracket_vacuum(a: &UEnvElement, b: &UEnvElement, g: &LieData) -> Result<Vec<UEnvElement>, FfError> {
    if g.family != LieFamily::GlA {
        return Err(FfError::Unsupported(format!("center bracket on {g}")));
    }
    if a.degree() > MAX_DEGREE || b.degree() > MAX_DEGREE {
        return Err(FfError::Unsupported(format!("center bracket beyond degree {MAX_DEGREE}")));
    }
    let crit = g.critical_level();
    let ctx = Ctx {
        g,
        form: Box::new(move |x, y| {
            Scalar::from_rational(&crit * g.form(x, y)) - Scalar::t() * Scalar::from_rational(g.trace_form(x, y))
        }),
    };
    let top = (weight(a) + weight(b) - 1).max(0);
    let mut out = Vec::new();
    for j in 0..=top {
        let p = ctx.mode(a, j, b);
        let mut linear = UEnvElement::zero();
        for (w, c) in p.terms() {
            let (num, den) = (c.numer(), c.denom());
            if !den.is_constant() || num.coeff(0) != scalars::rat(0) {
                return Err(FfError::NotCentral(format!("{} at mode {j}", a.display(g))));
            }
            let k = Scalar::from_rational(num.coeff(1) / (den.coeff(0) * BigRational::from_integer(factorial(j as u32))));
            linear.add_word(g, w.clone(), k);
        }
        out.push(linear);
    }
    while out.last().is_some_and(UEnvElement::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// [`center_bracket_vacuum`] pushed through the Harish-Chandra projection, so
/// the coefficients are differential polynomials in the Cartan generators.
pub fn center_bracket(a: &UEnvElement, b: &UEnvElement, g: &LieData) -> Result<LambdaPoly, FfError> {
    let mut out = LambdaPoly::zero();
    for (j, c) in center_bracket_vacuum(a, b, g)?.iter().enumerate() {
        out.add_term(j as u32, hc_project(c, g)?.to_diffpoly());
    }
    Ok(out)
}
