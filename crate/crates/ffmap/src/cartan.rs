use std::collections::BTreeMap;
use std::fmt;

use diffalg::{DiffPoly, GenId, Monomial, Var};
use scalars::{factorial, BigRational, Scalar};
use serde_json::{json, Value};

/// `h_i t^{-r}`: Cartan index `i` (0-based) and depth `r >= 1`.
pub type CartanVar = (usize, u32);

/// An element of the commutative differential algebra `S(h[t^{-1}]t^{-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CartanElement {
    terms: BTreeMap<Vec<CartanVar>, Scalar>,
}

impl CartanElement {
    pub fn zero() -> Self {
        CartanElement::default()
    }

    pub fn one() -> Self {
        CartanElement::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut out = CartanElement::zero();
        out.add_term(Vec::new(), c);
        out
    }

    pub fn var(i: usize, r: u32) -> Self {
        let mut out = CartanElement::zero();
        out.add_term(vec![(i, r)], Scalar::one());
        out
    }

    pub fn add_term(&mut self, mut m: Vec<CartanVar>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        m.sort_unstable();
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CartanVar>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &CartanElement) -> CartanElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &CartanElement) -> CartanElement {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> CartanElement {
        let mut out = CartanElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, o: &CartanElement) -> CartanElement {
        let mut out = CartanElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.iter().chain(m2).copied().collect(), c1 * c2);
            }
        }
        out
    }

    /// `∂(h t^{-r}) = r h t^{-r-1}`, extended by Leibniz.
    pub fn derive(&self) -> CartanElement {
        let mut out = CartanElement::zero();
        for (m, c) in &self.terms {
            for k in 0..m.len() {
                let mut nm = m.clone();
                nm[k].1 += 1;
                out.add_term(nm, c * &Scalar::from_int(m[k].1 as i64));
            }
        }
        out
    }

    /// `h_i t^{-r} ↦ h_{i+1}^{(r-1)} / (r-1)!` in the differential polynomial ring.
    pub fn to_diffpoly(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut pairs = Vec::new();
            for &(i, r) in m {
                let f = factorial(r - 1);
                coeff = coeff.scale_rational(&BigRational::new(1.into(), f));
                pairs.push((Var::new(GenId::cartan(i as i64 + 1), r - 1), 1));
            }
            out.add_term(Monomial::from_pairs(pairs), coeff);
        }
        out
    }

    /// Inverse of [`CartanElement::to_diffpoly`]; `None` if a non-Cartan generator occurs.
    pub fn from_diffpoly(p: &DiffPoly) -> Option<CartanElement> {
        let mut out = CartanElement::zero();
        for (m, c) in p.terms() {
            let mut coeff = c.clone();
            let mut vars = Vec::new();
            for (v, e) in m.factors() {
                if v.gen.tag != diffalg::Tag::Cartan || v.gen.offset < 1 {
                    return None;
                }
                coeff = coeff.scale_rational(&BigRational::from_integer(factorial(v.order).pow(*e)));
                for _ in 0..*e {
                    vars.push(((v.gen.offset - 1) as usize, v.order + 1));
                }
            }
            out.add_term(vars, coeff);
        }
        Some(out)
    }

    pub fn eval_at(&self, q: &BigRational) -> Result<CartanElement, scalars::ScalarError> {
        let mut out = CartanElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Scalar::from_rational(c.eval(q)?));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let fs: Vec<Value> = m.iter().map(|(i, r)| json!([i + 1, -(*r as i64)])).collect();
                    json!([fs, c.to_string()])
                })
                .collect(),
        )
    }
}

impl fmt::Display for CartanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let body = m.iter().map(|(i, r)| format!("h[{}](-{})", i + 1, r)).collect::<Vec<_>>().join("*");
            let neg = c.as_constant().is_some_and(|q| q < BigRational::from_integer(0.into()));
            let mag = if neg { -c.clone() } else { c.clone() };
            let sep = match (k == 0, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coeff = if mag.is_constant() { mag.to_string() } else { format!("({mag})") };
            match (mag.is_one(), m.is_empty()) {
                (_, true) => write!(f, "{sep}{coeff}")?,
                (true, false) => write!(f, "{sep}{body}")?,
                (false, false) => write!(f, "{sep}{coeff}*{body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diffpoly_round_trip() {
        let a = CartanElement::var(0, 1).mul(&CartanElement::var(1, 3)).add(&CartanElement::var(0, 2).scale(&Scalar::from_int(4)));
        let p = a.to_diffpoly();
        assert_eq!(p.to_string(), CartanElement::from_diffpoly(&p).unwrap().to_diffpoly().to_string());
        assert_eq!(CartanElement::from_diffpoly(&p).unwrap(), a);
    }

    #[test]
    fn derivation_matches_diffpoly() {
        let a = CartanElement::var(0, 1).mul(&CartanElement::var(0, 2));
        assert_eq!(a.derive().to_diffpoly(), a.to_diffpoly().derive());
    }
}
