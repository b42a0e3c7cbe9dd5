use std::collections::BTreeMap;
use std::fmt;

use diffalg::DiffPoly;
use scalars::{binomial_ring, ShiftExponent};

use crate::{fmt_series, Horizon, PsiDO, PsiError};

/// Shifted Laurent series `Σ a_e z^e` in a commuting variable `z`.
///
/// Exponents at or below `floor` are unknown; `floor = None` means exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Symbol {
    terms: BTreeMap<ShiftExponent, DiffPoly>,
    floor: Option<ShiftExponent>,
    lead: ShiftExponent,
}

impl Symbol {
    pub fn from_psido(a: &PsiDO) -> Symbol {
        let terms = a.terms().map(|(k, c)| (a.shift() - k, c.clone())).collect();
        let floor = a.horizon().value().map(|h| a.shift() - h);
        Symbol { terms, floor, lead: a.shift() }
    }

    /// Inverse re-indexing, with offsets measured from the leading exponent.
    pub fn to_psido(&self) -> PsiDO {
        let terms = self.terms.iter().map(|(e, c)| ((self.lead - *e).a, c.clone())).collect();
        let horizon = match self.floor {
            Some(f) => Horizon::At((self.lead - f).a),
            None => Horizon::Exact,
        };
        PsiDO::from_terms(self.lead, terms, horizon)
    }

    pub fn coeff(&self, e: ShiftExponent) -> Option<&DiffPoly> {
        self.terms.get(&e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ShiftExponent, &DiffPoly)> {
        self.terms.iter()
    }

    fn top(&self) -> Option<ShiftExponent> {
        let t = self.terms.keys().next_back().copied();
        match (t, self.floor) {
            (Some(t), Some(f)) => Some(t.max(f)),
            (t, None) => t,
            (None, f) => f,
        }
    }

    /// `A(z+∂) B(z)`: each `z^e` of `A` becomes `Σ_k C(e,k) z^{e-k} ∂^k`, with `∂`
    /// acting on the coefficients of `B`.  Terms at or below `cutoff` are dropped.
    pub fn compose(&self, o: &Symbol, cutoff: Option<ShiftExponent>) -> Result<Symbol, PsiError> {
        let lead = self.lead + o.lead;
        let mut floor = cutoff;
        for cand in [self.floor.zip(o.top()), o.floor.zip(self.top())].into_iter().flatten() {
            let f = cand.0 + cand.1;
            floor = Some(floor.map_or(f, |g: ShiftExponent| g.max(f)));
        }
        let mut out: BTreeMap<ShiftExponent, DiffPoly> = BTreeMap::new();
        for (e, a) in &self.terms {
            let nonneg = e.b == 0 && e.a >= 0;
            for (f, b) in &o.terms {
                if floor.is_none() && !nonneg && !b.derive().is_zero() {
                    return Err(PsiError::Unbounded);
                }
                let mut k = 0u32;
                let mut d = b.clone();
                loop {
                    let ex = *e + *f - k as i64;
                    if let Some(fl) = floor {
                        if ex <= fl {
                            break;
                        }
                    }
                    if d.is_zero() {
                        break;
                    }
                    if nonneg && k as i64 > e.a {
                        break;
                    }
                    let c = binomial_ring(&e.to_scalar(), k);
                    if !c.is_zero() {
                        *out.entry(ex).or_default() += &(a * &d).scale(&c);
                    }
                    d = d.derive();
                    k += 1;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Symbol { terms: out, floor, lead })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(f, "z", self.terms.iter().rev().map(|(e, c)| (*e, c)), self.floor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use diffalg::GenId;

    #[test]
    fn reindexing() {
        let u = DiffPoly::gen(GenId::u(0));
        let a = PsiDO::term(ShiftExponent::new(-1, 1), u.clone());
        assert_eq!(a.symbol().to_string(), "u[-T]*z^(T-1)");
        assert_eq!(a.symbol().to_psido(), a);
    }

    #[test]
    fn d_after_u() {
        let u = DiffPoly::gen(GenId::u(0));
        let d = PsiDO::d_pow(1.into()).symbol();
        let s = d.compose(&PsiDO::function(u).symbol(), None).unwrap();
        assert_eq!(s.to_string(), "u[-T]*z + u[-T]^(1)");
    }
}
