use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use scalars::{BigRational, Scalar};
use serde_json::{json, Value};

use crate::{LieData, Part};

/// `e_a t^{-r}` with `r >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub basis: usize,
    pub depth: u32,
}

impl Factor {
    pub fn new(basis: usize, depth: u32) -> Self {
        Factor { basis, depth }
    }
}

/// PBW key: `n₋ < h < n₊`, then deeper modes first, then basis index.
fn key(g: &LieData, f: &Factor) -> (Part, Reverse<u32>, usize) {
    (g.part(f.basis), Reverse(f.depth), f.basis)
}

/// An element of `U(g[t^{-1}]t^{-1})`, i.e. of the vacuum module, in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UEnvElement {
    terms: BTreeMap<Vec<Factor>, Scalar>,
}

impl UEnvElement {
    pub fn zero() -> Self {
        UEnvElement::default()
    }

    /// The vacuum vector `1`.
    pub fn one() -> Self {
        UEnvElement::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut out = UEnvElement::zero();
        out.add_raw(Vec::new(), c);
        out
    }

    /// `e_a t^{-r}`.
    pub fn generator(a: usize, r: u32) -> Self {
        let mut out = UEnvElement::zero();
        out.add_raw(vec![Factor::new(a, r)], Scalar::one());
        out
    }

    /// Adds `c · w` for a word already in normal form.
    fn add_raw(&mut self, w: Vec<Factor>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Adds `c · w` for an arbitrary word, normal-ordering it first.
    pub fn add_word(&mut self, g: &LieData, w: Vec<Factor>, c: Scalar) {
        for (nw, nc) in normal_order(g, w, c) {
            self.add_raw(nw, nc);
        }
    }

    pub fn from_word(g: &LieData, w: Vec<Factor>) -> Self {
        let mut out = UEnvElement::zero();
        out.add_word(g, w, Scalar::one());
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Factor>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Factor]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &UEnvElement) -> UEnvElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_raw(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &UEnvElement) -> UEnvElement {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (w, c) in &self.terms {
            out.add_raw(w.clone(), c * s);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (w, c) in &self.terms {
            out.add_raw(w.clone(), f(c));
        }
        out
    }

    /// Evaluates coefficients at `T = q`.
    pub fn eval_at(&self, q: &BigRational) -> Result<UEnvElement, scalars::ScalarError> {
        let mut out = UEnvElement::zero();
        for (w, c) in &self.terms {
            out.add_raw(w.clone(), Scalar::from_rational(c.eval(q)?));
        }
        Ok(out)
    }

    pub fn mul(&self, g: &LieData, o: &UEnvElement) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let w: Vec<Factor> = w1.iter().chain(w2).copied().collect();
                out.add_word(g, w, c1 * c2);
            }
        }
        out
    }

    /// Left multiplication by one factor.
    pub fn left_mul_factor(&self, g: &LieData, f: Factor) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (w, c) in &self.terms {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push(f);
            nw.extend_from_slice(w);
            out.add_word(g, nw, c.clone());
        }
        out
    }

    /// The translation derivation `∂(x t^{-r}) = r x t^{-r-1}`.
    pub fn derive(&self, g: &LieData) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (w, c) in &self.terms {
            for k in 0..w.len() {
                let mut nw = w.clone();
                nw[k].depth += 1;
                out.add_word(g, nw, c * &Scalar::from_int(w[k].depth as i64));
            }
        }
        out
    }

    /// Largest number of factors in a monomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The part of maximal degree.
    pub fn top_degree(&self) -> UEnvElement {
        let d = self.degree();
        let mut out = UEnvElement::zero();
        for (w, c) in &self.terms {
            if w.len() == d {
                out.add_raw(w.clone(), c.clone());
            }
        }
        out
    }

    /// Image in the symmetric algebra: factors are sorted and coefficients collected.
    pub fn symmetrize(&self) -> SymElement {
        let mut out = SymElement::default();
        for (w, c) in &self.terms {
            let mut s = w.clone();
            s.sort();
            let e = out.terms.entry(s.clone()).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(&s);
            }
        }
        out
    }

    pub fn display<'a>(&'a self, g: &'a LieData) -> impl fmt::Display + 'a {
        Shown { p: self, g }
    }

    pub fn to_json(&self, g: &LieData) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    let fs: Vec<Value> = w.iter().map(|f| json!([g.basis_name(f.basis), -(f.depth as i64)])).collect();
                    json!([fs, c.to_string()])
                })
                .collect(),
        )
    }
}

fn word_string(g: &LieData, w: &[Factor]) -> String {
    w.iter().map(|f| format!("{}(-{})", g.basis_name(f.basis), f.depth)).collect::<Vec<_>>().join("*")
}

struct Shown<'a> {
    p: &'a UEnvElement,
    g: &'a LieData,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.p.terms {
            let body = word_string(self.g, w);
            let (neg, mag) = match c.as_constant() {
                Some(q) if q < BigRational::from_integer(0.into()) => (true, Scalar::from_rational(-q)),
                _ => (false, c.clone()),
            };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let coeff = if mag.is_one() && !w.is_empty() {
                String::new()
            } else if mag.is_constant() {
                format!("{mag}")
            } else {
                format!("({mag})")
            };
            match (coeff.is_empty(), w.is_empty()) {
                (true, _) => write!(f, "{sep}{body}")?,
                (false, true) => write!(f, "{sep}{coeff}")?,
                (false, false) => write!(f, "{sep}{coeff}*{body}")?,
            }
        }
        Ok(())
    }
}

/// An element of the symmetric algebra `S(g[t^{-1}]t^{-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymElement {
    terms: BTreeMap<Vec<Factor>, Scalar>,
}

impl SymElement {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Factor>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn top_degree(&self) -> SymElement {
        let d = self.terms.keys().map(Vec::len).max().unwrap_or(0);
        SymElement { terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

/// Rewrites a word into PBW normal form by adjacent swaps `yx = xy + [y,x]`.
fn normal_order(g: &LieData, w: Vec<Factor>, c: Scalar) -> Vec<(Vec<Factor>, Scalar)> {
    let mut done: BTreeMap<Vec<Factor>, Scalar> = BTreeMap::new();
    let mut stack = vec![(w, c)];
    while let Some((w, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        let pos = (0..w.len().saturating_sub(1)).find(|&i| key(g, &w[i]) > key(g, &w[i + 1]));
        let Some(i) = pos else {
            let e = done.entry(w).or_insert_with(Scalar::zero);
            *e += &c;
            continue;
        };
        let (y, x) = (w[i], w[i + 1]);
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        stack.push((swapped, c.clone()));
        for (d, k) in g.bracket(y.basis, x.basis) {
            let mut nw = Vec::with_capacity(w.len() - 1);
            nw.extend_from_slice(&w[..i]);
            nw.push(Factor::new(*d, y.depth + x.depth));
            nw.extend_from_slice(&w[i + 2..]);
            stack.push((nw, c.scale_rational(k)));
        }
    }
    done.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
