use std::collections::BTreeMap;
use std::fmt;

use diffalg::{DiffPoly, GenId, Var};
use scalars::{binomial, BigRational, Scalar};

use crate::PvaError;

/// Polynomial `Σ_p c_p λ^p` with differential-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LambdaPoly {
    c: BTreeMap<u32, DiffPoly>,
}

fn binom(p: u32, r: u32) -> Scalar {
    Scalar::from_rational(BigRational::from_integer(binomial(p as u64, r as u64)))
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn constant(p: DiffPoly) -> Self {
        LambdaPoly::monomial(0, p)
    }

    /// `c λ^p`.
    pub fn monomial(p: u32, c: DiffPoly) -> Self {
        let mut out = LambdaPoly::zero();
        out.add_term(p, c);
        out
    }

    pub fn lambda() -> Self {
        LambdaPoly::monomial(1, DiffPoly::one())
    }

    pub fn add_term(&mut self, p: u32, c: DiffPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.c.entry(p).or_default();
        *e += &c;
        if e.is_zero() {
            self.c.remove(&p);
        }
    }

    pub fn coeff(&self, p: u32) -> DiffPoly {
        self.c.get(&p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.c.iter().map(|(p, c)| (*p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.c.keys().next_back().copied()
    }

    pub fn add(&self, o: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (p, c) in &o.c {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &LambdaPoly) -> LambdaPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LambdaPoly {
        self.map(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> LambdaPoly {
        self.map(|c| c.scale(s))
    }

    /// Multiplication by `λ`.
    pub fn mul_lambda(&self) -> LambdaPoly {
        LambdaPoly { c: self.c.iter().map(|(p, c)| (p + 1, c.clone())).collect() }
    }

    /// Multiplication by a λ-independent polynomial on the left.
    pub fn left_mul(&self, f: &DiffPoly) -> LambdaPoly {
        self.map(|c| f * c)
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (p, c) in &self.c {
            out.add_term(*p, f(c));
        }
        out
    }

    pub fn evaluate_t(&self, q: &BigRational) -> Result<LambdaPoly, PvaError> {
        let mut out = LambdaPoly::zero();
        for (p, c) in &self.c {
            out.add_term(*p, c.evaluate_t(q)?);
        }
        Ok(out)
    }

    /// `P(λ+∂) Q(λ) = Σ P_p C(p,r) λ^{p-r+q} ∂^r Q_q`, with `∂` acting on `Q`.
    pub fn shifted_apply(&self, q: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (qe, qc) in &q.c {
            let maxp = self.degree().unwrap_or(0);
            let mut d = qc.clone();
            for r in 0..=maxp {
                if d.is_zero() {
                    break;
                }
                for (p, pc) in self.c.range(r..) {
                    out.add_term(p - r + qe, (pc * &d).scale(&binom(*p, r)));
                }
                d = d.derive();
            }
        }
        out
    }

    /// `(-λ-∂)^j f`.
    pub fn neg_shift_power(j: u32, f: &DiffPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        let sign = if j % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let mut d = f.clone();
        for r in 0..=j {
            if d.is_zero() {
                break;
            }
            out.add_term(j - r, d.scale(&(&sign * &binom(j, r))));
            d = d.derive();
        }
        out
    }

    /// `Q(-λ-∂) = Σ_p (-λ-∂)^p Q_p`, the skew-symmetry partner of `Q`.
    pub fn reflected(&self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (p, c) in &self.c {
            out = out.add(&LambdaPoly::neg_shift_power(*p, c));
        }
        out
    }

    /// Folds `λ` into a generator so the result is an ordinary polynomial.
    pub fn to_diffpoly(&self, var: GenId) -> DiffPoly {
        let l = DiffPoly::gen(var);
        self.c.iter().map(|(p, c)| c * &l.pow(*p)).sum()
    }

    /// Reads powers of a constant generator back as powers of `λ`.
    pub fn from_diffpoly(p: &DiffPoly, var: GenId) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (e, c) in p.split_powers(Var::new(var, 0)) {
            out.add_term(e, c);
        }
        out
    }

    /// Substitutes `λ ↦ x` for a polynomial `x` whose generators are constants.
    pub fn substitute_lambda(&self, x: &DiffPoly) -> DiffPoly {
        self.c.iter().map(|(p, c)| c * &x.pow(*p)).sum()
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_diffpoly(GenId::lambda()))
    }
}
