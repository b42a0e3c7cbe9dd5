//! Differential polynomial algebras over Q(T).
//!
//! Generators are `u_{-T+offset}` together with a few reserved families
//! (Cartan currents, a fresh test function, and the formal variables
//! `λ`, `μ` used by the Jacobi checks).  The total derivation acts on
//! generator derivatives `u^{(k)} -> u^{(k+1)}`; `λ` and `μ` are constants.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;
use scalars::{BigRational, Scalar, ScalarError};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("pole at T = {at} in the coefficient of {monomial}")]
    PoleAtEvaluation { monomial: String, at: BigRational },
}

/// Generator families.  The derivation treats `Lambda` and `Mu` as constants.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tag {
    U,
    Po,
    Cartan,
    Fresh,
    Lambda,
    Mu,
}

impl Tag {
    pub fn is_constant(self) -> bool {
        matches!(self, Tag::Lambda | Tag::Mu)
    }

    fn name(self) -> &'static str {
        match self {
            Tag::U => "u",
            Tag::Po => "w",
            Tag::Cartan => "h",
            Tag::Fresh => "f",
            Tag::Lambda => "lambda",
            Tag::Mu => "mu",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenId {
    pub tag: Tag,
    pub offset: i64,
}

impl GenId {
    pub fn u(offset: i64) -> Self {
        GenId { tag: Tag::U, offset }
    }

    /// Coefficient of `∂^{T-r}` in a self-adjoint operator.
    pub fn po(r: i64) -> Self {
        GenId { tag: Tag::Po, offset: r }
    }

    pub fn cartan(i: i64) -> Self {
        GenId { tag: Tag::Cartan, offset: i }
    }

    pub fn fresh() -> Self {
        GenId { tag: Tag::Fresh, offset: 0 }
    }

    pub fn lambda() -> Self {
        GenId { tag: Tag::Lambda, offset: 0 }
    }

    pub fn mu() -> Self {
        GenId { tag: Tag::Mu, offset: 0 }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::U => match self.offset {
                0 => write!(f, "u[-T]"),
                o if o > 0 => write!(f, "u[-T+{}]", o),
                o => write!(f, "u[-T{}]", o),
            },
            Tag::Po => write!(f, "w[{}]", self.offset),
            Tag::Cartan => write!(f, "h[{}]", self.offset),
            Tag::Fresh => write!(f, "f"),
            Tag::Lambda => write!(f, "λ"),
            Tag::Mu => write!(f, "μ"),
        }
    }
}

/// A differentiated generator `g^{(order)}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub gen: GenId,
    pub order: u32,
}

impl Var {
    pub fn new(gen: GenId, order: u32) -> Self {
        Var { gen, order }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^({})", self.gen, self.order)
        }
    }
}

/// Commutative monomial: sorted `(var, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes one power of `v`, returning the old exponent (0 if absent).
    fn lower(&self, v: &Var) -> Option<(u32, Monomial)> {
        let idx = self.0.iter().position(|(w, _)| w == v)?;
        let e = self.0[idx].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(idx);
        } else {
            out[idx].1 -= 1;
        }
        Some((e, Monomial(out)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match (*e, v.order) {
                (1, _) => write!(f, "{}", v)?,
                (e, 0) => write!(f, "{}^{}", v, e)?,
                (e, _) => write!(f, "({})^{}", v, e)?,
            }
        }
        Ok(())
    }
}

/// Sparse differential polynomial with `Scalar` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        DiffPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        DiffPoly::constant(Scalar::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        DiffPoly::monomial(Monomial::var(v), Scalar::one())
    }

    pub fn gen(g: GenId) -> Self {
        DiffPoly::var(Var::new(g, 0))
    }

    pub fn gen_d(g: GenId, order: u32) -> Self {
        if g.tag.is_constant() && order > 0 {
            return DiffPoly::zero();
        }
        DiffPoly::var(Var::new(g, order))
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> DiffPoly {
        let mut out = DiffPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (n, a) in &self.terms {
            out.terms.insert(n.mul(m), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut acc = DiffPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn derive_monomial(m: &Monomial, c: &Scalar, out: &mut DiffPoly) {
        for (idx, (v, e)) in m.0.iter().enumerate() {
            if v.gen.tag.is_constant() {
                continue;
            }
            let mut pairs = m.0.clone();
            if *e == 1 {
                pairs.remove(idx);
            } else {
                pairs[idx].1 -= 1;
            }
            pairs.push((Var::new(v.gen, v.order + 1), 1));
            out.add_term(Monomial::from_pairs(pairs), c * &Scalar::from_int(*e as i64));
        }
    }

    /// Total derivation.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            DiffPoly::derive_monomial(m, c, &mut out);
        }
        out
    }

    pub fn derive_n(&self, k: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = p.derive();
        }
        p
    }

    /// Formal partial derivative with respect to `g^{(k)}`.
    pub fn partial(&self, g: GenId, k: u32) -> DiffPoly {
        let v = Var::new(g, k);
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(&v) {
                out.add_term(rest, c * &Scalar::from_int(e as i64));
            }
        }
        out
    }

    /// All differentiated generators occurring.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect()
    }

    pub fn gens(&self) -> BTreeSet<GenId> {
        self.vars().into_iter().map(|v| v.gen).collect()
    }

    /// Highest derivative order of `g`, if it occurs.
    pub fn max_order(&self, g: GenId) -> Option<u32> {
        self.vars().into_iter().filter(|v| v.gen == g).map(|v| v.order).max()
    }

    /// Largest total degree in the non-constant generators.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.iter().filter(|(v, _)| !v.gen.tag.is_constant()).map(|(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest total number of derivatives in a monomial.
    pub fn derivative_weight(&self) -> u32 {
        self.terms.keys().map(|m| m.0.iter().map(|(v, e)| v.order * e).sum()).max().unwrap_or(0)
    }

    /// Conformal weight with `w(g)` per generator and weight one per derivative;
    /// `None` when the terms are not homogeneous.
    pub fn homogeneous_weight(&self, w: impl Fn(GenId) -> i64) -> Option<i64> {
        let mut out = None;
        for m in self.terms.keys() {
            let s: i64 = m.0.iter().map(|(v, e)| (w(v.gen) + v.order as i64) * *e as i64).sum();
            match out {
                None => out = Some(s),
                Some(t) if t != s => return None,
                _ => {}
            }
        }
        out
    }

    /// Evaluates every scalar coefficient at `T = a`.
    pub fn evaluate_t(&self, a: &BigRational) -> Result<DiffPoly, DiffError> {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let v = c.eval_at(a).map_err(|e| match e {
                ScalarError::Pole(at) => DiffError::PoleAtEvaluation { monomial: m.to_string(), at },
                _ => unreachable!(),
            })?;
            out.add_term(m.clone(), v);
        }
        Ok(out)
    }

    /// Maps every coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Differential substitution: each generator `g` with `map(g) = Some(p)`
    /// is replaced by `p`, so that `g^{(k)}` becomes `∂^k p`.
    pub fn substitute(&self, map: &dyn Fn(GenId) -> Option<DiffPoly>) -> DiffPoly {
        let mut cache: HashMap<Var, Option<DiffPoly>> = HashMap::new();
        let mut base: HashMap<GenId, Option<DiffPoly>> = HashMap::new();
        let mut image = |v: Var| -> Option<DiffPoly> {
            if let Some(x) = cache.get(&v) {
                return x.clone();
            }
            let b = base.entry(v.gen).or_insert_with(|| map(v.gen)).clone();
            let r = b.map(|p| p.derive_n(v.order));
            cache.insert(v, r.clone());
            r
        };
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            let mut kept = Vec::new();
            for (v, e) in &m.0 {
                match image(*v) {
                    Some(p) => {
                        for _ in 0..*e {
                            acc = &acc * &p;
                        }
                    }
                    None => kept.push((*v, *e)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            if !acc.is_zero() {
                out += &acc.mul_monomial(&Monomial(kept), &Scalar::one());
            }
        }
        out
    }

    /// Coefficients of the powers of `v` (which must not be differentiated).
    pub fn split_powers(&self, v: Var) -> BTreeMap<u32, DiffPoly> {
        let mut out: BTreeMap<u32, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(&v);
            let rest = Monomial(m.0.iter().filter(|(w, _)| *w != v).cloned().collect());
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// JSON export as an array of `[monomial, coefficient]` pairs, where a
    /// monomial is an array of `[tag, offset, order, exponent]`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<Value> =
                    m.0.iter().map(|(v, e)| json!([v.gen.tag.name(), v.gen.offset, v.order, e])).collect();
                json!([mono, c.to_string()])
            })
            .collect();
        Value::Array(terms)
    }
}

impl From<Scalar> for DiffPoly {
    fn from(c: Scalar) -> Self {
        DiffPoly::constant(c)
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.as_constant() {
                Some(q) if q < BigRational::zero() => (true, -c),
                _ => (false, c.clone()),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let cs = mag.to_string();
            let simple = mag.as_constant().is_some_and(|q| q.is_integer());
            match (m.is_one(), mag.is_one()) {
                (true, _) => {
                    if simple {
                        write!(f, "{}", cs)?
                    } else {
                        write!(f, "({})", cs)?
                    }
                }
                (false, true) => write!(f, "{}", m)?,
                (false, false) => {
                    if simple {
                        write!(f, "{}*{}", cs, m)?
                    } else {
                        write!(f, "({})*{}", cs, m)?
                    }
                }
            }
        }
        Ok(())
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, o: &DiffPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, o: &DiffPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, o: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, o: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, o: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        if self.is_zero() || o.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DiffPoly {
            type Output = DiffPoly;
            fn $m(self, o: DiffPoly) -> DiffPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $m(self, o: &DiffPoly) -> DiffPoly {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl std::iter::Sum for DiffPoly {
    fn sum<I: Iterator<Item = DiffPoly>>(iter: I) -> DiffPoly {
        let mut acc = DiffPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use scalars::rat;

    fn u() -> DiffPoly {
        DiffPoly::gen(GenId::u(0))
    }
    fn v() -> DiffPoly {
        DiffPoly::gen(GenId::u(1))
    }

    #[test]
    fn leibniz() {
        let uv = &u() * &v();
        let want = &(&u().derive() * &v()) + &(&u() * &v().derive());
        assert_eq!(uv.derive(), want);
        assert!(DiffPoly::int(7).derive().is_zero());
        assert_eq!(u().pow(2).derive(), (&u() * &u().derive()).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn partials() {
        let g = GenId::u(0);
        assert_eq!(u().pow(2).partial(g, 0), u().scale(&Scalar::from_int(2)));
        let p = &u() * &DiffPoly::gen_d(g, 2);
        assert_eq!(p.partial(g, 2), u());
        assert!(u().derive().partial(GenId::u(1), 1).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = DiffPoly::gen_d(GenId::u(2), 1).scale(&((Scalar::t() - Scalar::from_int(2)) / Scalar::from_int(2)));
        assert!(p.evaluate_t(&rat(2)).unwrap().is_zero());
        let q = u().scale(&Scalar::t());
        assert_eq!(q.evaluate_t(&rat(3)).unwrap(), u().scale(&Scalar::from_int(3)));
        let r = u().scale(&(Scalar::one() / (Scalar::t() - Scalar::one())));
        assert!(matches!(r.evaluate_t(&rat(1)), Err(DiffError::PoleAtEvaluation { .. })));
    }

    #[test]
    fn lambda_is_constant() {
        let l = DiffPoly::gen(GenId::lambda());
        assert!(l.derive().is_zero());
        assert!(DiffPoly::gen_d(GenId::mu(), 3).is_zero());
        assert_eq!((&l * &u()).derive(), &l * &u().derive());
    }

    #[test]
    fn rendering() {
        assert_eq!(DiffPoly::gen_d(GenId::u(2), 3).to_string(), "u[-T+2]^(3)");
        let p = &u().pow(2).scale(&Scalar::from_int(-2)) + &v();
        assert_eq!(p.to_string(), "-2*u[-T]^2 + u[-T+1]");
    }

    #[test]
    fn substitution_differentiates_images() {
        let g = GenId::u(0);
        let p = DiffPoly::gen_d(g, 1);
        let img = &v() * &v();
        let out = p.substitute(&|h| if h == g { Some(img.clone()) } else { None });
        assert_eq!(out, img.derive());
    }
}
