use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use scalars::{BigRational, Scalar};

use crate::{Color, DiagError, Diagram, Family, Word};

/// A finite linear combination of diagrams with a common source and target.
#[derive(Clone, Debug, Default)]
pub struct DiagramSum {
    terms: BTreeMap<Diagram, Scalar>,
    hom: Option<(Word, Word)>,
}

impl PartialEq for DiagramSum {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl Eq for DiagramSum {}

impl DiagramSum {
    pub fn zero() -> Self {
        DiagramSum::default()
    }

    pub fn single(d: Diagram) -> Self {
        let mut out = DiagramSum::zero();
        out.add_term(d, Scalar::one());
        out
    }

    /// The zero map `from → to`.
    pub fn zero_hom(from: &Word, to: &Word) -> Self {
        DiagramSum { terms: BTreeMap::new(), hom: Some((from.clone(), to.clone())) }
    }

    /// Source and target words, when known.
    pub fn hom(&self) -> Option<&(Word, Word)> {
        self.hom.as_ref()
    }

    pub fn add_term(&mut self, d: Diagram, c: Scalar) {
        if self.hom.is_none() {
            self.hom = Some((d.bottom().clone(), d.top().clone()));
        }
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(d.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &DiagramSum) -> DiagramSum {
        let mut out = self.clone();
        for (d, c) in &o.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &DiagramSum) -> DiagramSum {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> DiagramSum {
        let mut out = DiagramSum { terms: BTreeMap::new(), hom: self.hom.clone() };
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    /// Evaluates every coefficient at `α = a`.
    pub fn eval_at(&self, a: &BigRational) -> Result<DiagramSum, DiagError> {
        let mut out = DiagramSum { terms: BTreeMap::new(), hom: self.hom.clone() };
        for (d, c) in &self.terms {
            let v = c.eval(a).map_err(|e| DiagError::NotEvaluated(e.to_string()))?;
            out.add_term(d.clone(), Scalar::from_rational(v));
        }
        Ok(out)
    }
}

impl fmt::Display for DiagramSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| if c.is_one() { d.to_string() } else { format!("({c})*{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn loop_value(alpha: &Scalar, family: Family) -> Scalar {
    match family {
        Family::Sp => -alpha.clone(),
        _ => alpha.clone(),
    }
}

/// `Y ∘ X`, scaling each glued pair by `α^ℓ` (or `(-α)^ℓ` for `Sp`) for its `ℓ` closed loops.
pub fn compose(y: &DiagramSum, x: &DiagramSum, alpha: &Scalar, family: Family) -> Result<DiagramSum, DiagError> {
    let delta = loop_value(alpha, family);
    let mut out = match (x.hom(), y.hom()) {
        (Some((from, _)), Some((_, to))) => DiagramSum::zero_hom(from, to),
        _ => DiagramSum::zero(),
    };
    for (dy, cy) in &y.terms {
        for (dx, cx) in &x.terms {
            let (d, loops) = dy.compose(dx)?;
            out.add_term(d, &(cy * cx) * &delta.pow(loops as u32));
        }
    }
    Ok(out)
}

pub fn identity(w: &Word) -> DiagramSum {
    DiagramSum::single(Diagram::identity(w))
}

pub fn tensor(a: &DiagramSum, b: &DiagramSum) -> DiagramSum {
    let mut out = match (a.hom(), b.hom()) {
        (Some((f1, t1)), Some((f2, t2))) => DiagramSum::zero_hom(&f1.concat(f2), &t1.concat(t2)),
        _ => DiagramSum::zero(),
    };
    for (da, ca) in &a.terms {
        for (db, cb) in &b.terms {
            out.add_term(da.tensor(db), ca * cb);
        }
    }
    out
}

/// The crossing `w ⊗ w2 → w2 ⊗ w`; the twisted version carries `(-1)^{|w||w2|}`.
pub fn braiding(w: &Word, w2: &Word, twisted: bool) -> DiagramSum {
    let (a, b) = (w.len(), w2.len());
    let perm: Vec<usize> = (0..a).map(|i| b + i).chain(0..b).collect();
    let d = Diagram::permutation(&w.concat(w2), &perm);
    let sign = if twisted && (a * b) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
    DiagramSum::single(d).scale(&sign)
}

/// `ev`: the cap `c ⊗ c* → ∅`.
pub fn cap(c: Color) -> Diagram {
    Diagram::from_parts(Word(vec![c, c.dual()]), Word::empty(), vec![(0, 1)])
}

/// `coev`: the cup `∅ → c ⊗ c*`.
pub fn cup(c: Color) -> Diagram {
    Diagram::from_parts(Word::empty(), Word(vec![c, c.dual()]), vec![(0, 1)])
}

pub(crate) fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `1/n! Σ_σ σ` on `•^n`, or with signs when `signed`.
pub fn symmetrizer(n: usize, signed: bool) -> DiagramSum {
    let w = Word::black(n);
    let norm = Scalar::one() / Scalar::from_rational(BigRational::from_integer(scalars::factorial(n as u32)));
    let mut out = DiagramSum::zero();
    for p in (0..n).permutations(n) {
        let c = if signed { Scalar::from_int(perm_sign(&p)) } else { Scalar::one() };
        out.add_term(Diagram::permutation(&w, &p), &c * &norm);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizer_of_two() {
        let s = symmetrizer(2, false);
        let half = Scalar::one() / Scalar::from_int(2);
        let w = Word::black(2);
        assert_eq!(s.coeff(&Diagram::identity(&w)), half);
        assert_eq!(s.coeff(&Diagram::permutation(&w, &[1, 0])), half);
        assert_eq!(s.len(), 2);
    }
}
