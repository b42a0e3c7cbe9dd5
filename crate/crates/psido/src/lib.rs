//! Shifted pseudodifferential symbols `Σ_k A_k ∂^{α-k}` with explicit truncation.
//!
//! The exponent `α = a + bT` is a [`ShiftExponent`]; coefficients are keyed by the
//! offset `k`.  Every operator carries a [`Horizon`]: offsets at or beyond the
//! horizon are unknown, and asking for them is an error rather than a zero.

mod symbol;

use std::collections::BTreeMap;
use std::fmt;

use diffalg::{DiffError, DiffPoly, GenId};
use scalars::{BigRational, Scalar, ShiftExponent};
use serde_json::{json, Value};
use thiserror::Error;

pub use symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error("coefficient at offset {needed} lies beyond the truncation horizon {horizon}")]
    HorizonExhausted { needed: i64, horizon: i64 },
    #[error("shift {0} is not integral")]
    NonIntegralShift(ShiftExponent),
    #[error("operator is not monic of shifted degree 0")]
    NonMonic,
    #[error("exact expansion does not terminate; supply a truncation depth")]
    Unbounded,
    #[error("shifts {0} and {1} differ by a non-integer")]
    ShiftMismatch(ShiftExponent, ShiftExponent),
    #[error(transparent)]
    Diff(#[from] DiffError),
}

/// First unknown offset, or `Exact` when the stored terms are the whole operator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Horizon {
    At(i64),
    Exact,
}

impl Horizon {
    pub fn plus(self, o: Horizon) -> Horizon {
        match (self, o) {
            (Horizon::At(a), Horizon::At(b)) => Horizon::At(a + b),
            _ => Horizon::Exact,
        }
    }

    pub fn shifted(self, d: i64) -> Horizon {
        match self {
            Horizon::At(a) => Horizon::At(a + d),
            Horizon::Exact => Horizon::Exact,
        }
    }

    pub fn knows(self, k: i64) -> bool {
        match self {
            Horizon::At(h) => k < h,
            Horizon::Exact => true,
        }
    }

    pub fn value(self) -> Option<i64> {
        match self {
            Horizon::At(h) => Some(h),
            Horizon::Exact => None,
        }
    }

    fn from_cap(cap: Option<i64>) -> Horizon {
        cap.map_or(Horizon::Exact, Horizon::At)
    }
}

impl fmt::Display for Horizon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Horizon::At(h) => write!(f, "{}", h),
            Horizon::Exact => write!(f, "exact"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiDO {
    shift: ShiftExponent,
    coeffs: BTreeMap<i64, DiffPoly>,
    horizon: Horizon,
}

/// `C(x, 0), …, C(x, kmax)` by the recursion `C(x,k+1) = C(x,k)(x-k)/(k+1)`.
fn binomials(x: &Scalar, kmax: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(Scalar::one());
    for k in 0..kmax {
        let prev = &out[k];
        let next = &(prev * &(x - &Scalar::from_int(k as i64))) / &Scalar::from_int(k as i64 + 1);
        out.push(next);
    }
    out
}

/// Lazily grown derivative towers of a fixed polynomial.
struct Derivs {
    tower: Vec<DiffPoly>,
}

impl Derivs {
    fn new(p: DiffPoly) -> Self {
        Derivs { tower: vec![p] }
    }

    fn get(&mut self, k: usize) -> &DiffPoly {
        while self.tower.len() <= k {
            let next = self.tower.last().unwrap().derive();
            self.tower.push(next);
        }
        &self.tower[k]
    }

    fn is_constant(&mut self) -> bool {
        self.get(1).is_zero()
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PsiDO {
    /// Builds an operator, discarding zero coefficients and offsets at or past the horizon.
    pub fn new(shift: ShiftExponent, coeffs: BTreeMap<i64, DiffPoly>, horizon: Horizon) -> Self {
        let coeffs = coeffs.into_iter().filter(|(k, c)| !c.is_zero() && horizon.knows(*k)).collect();
        PsiDO { shift, coeffs, horizon }
    }

    pub fn from_terms(shift: ShiftExponent, terms: Vec<(i64, DiffPoly)>, horizon: Horizon) -> Self {
        let mut map: BTreeMap<i64, DiffPoly> = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k).or_default() += &c;
        }
        PsiDO::new(shift, map, horizon)
    }

    pub fn zero(shift: ShiftExponent) -> Self {
        PsiDO { shift, coeffs: BTreeMap::new(), horizon: Horizon::Exact }
    }

    /// The identity `∂^0`.
    pub fn one() -> Self {
        PsiDO::d_pow(ShiftExponent::ZERO)
    }

    /// `∂^shift` exactly.
    pub fn d_pow(shift: ShiftExponent) -> Self {
        PsiDO::from_terms(shift, vec![(0, DiffPoly::one())], Horizon::Exact)
    }

    /// `c ∂^shift` exactly.
    pub fn term(shift: ShiftExponent, c: DiffPoly) -> Self {
        PsiDO::from_terms(shift, vec![(0, c)], Horizon::Exact)
    }

    /// Multiplication operator by `c`.
    pub fn function(c: DiffPoly) -> Self {
        PsiDO::term(ShiftExponent::ZERO, c)
    }

    pub fn shift(&self) -> ShiftExponent {
        self.shift
    }

    pub fn horizon(&self) -> Horizon {
        self.horizon
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &DiffPoly)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest meaningful offset: the first stored term, or the horizon if smaller.
    pub fn top(&self) -> Horizon {
        let first = self.coeffs.keys().next().map(|k| Horizon::At(*k)).unwrap_or(Horizon::Exact);
        first.min(self.horizon)
    }

    /// Coefficient of `∂^{shift-k}`.
    pub fn coeff(&self, k: i64) -> Result<DiffPoly, PsiError> {
        if !self.horizon.knows(k) {
            return Err(PsiError::HorizonExhausted { needed: k, horizon: self.horizon.value().unwrap() });
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_default())
    }

    /// Coefficient of `∂^e` for an explicit exponent `e`.
    pub fn coeff_at_exponent(&self, e: ShiftExponent) -> Result<DiffPoly, PsiError> {
        let d = self.shift - e;
        if d.b != 0 {
            return Err(PsiError::ShiftMismatch(self.shift, e));
        }
        self.coeff(d.a)
    }

    /// Lowers the horizon to `h` (never raises it).
    pub fn truncate(&self, h: i64) -> PsiDO {
        let horizon = self.horizon.min(Horizon::At(h));
        PsiDO::new(self.shift, self.coeffs.clone(), horizon)
    }

    /// Monic of shifted degree 0: leading coefficient 1 and nothing above it.
    pub fn is_monic(&self) -> bool {
        self.horizon.knows(0)
            && self.coeffs.keys().next().is_some_and(|k| *k == 0)
            && self.coeffs[&0].as_constant().is_some_and(|c| c.is_one())
    }

    /// Same operator written with shift `s`; the difference must be an integer.
    pub fn reshift(&self, s: ShiftExponent) -> Result<PsiDO, PsiError> {
        let d = s - self.shift;
        if d.b != 0 {
            return Err(PsiError::ShiftMismatch(self.shift, s));
        }
        Ok(PsiDO {
            shift: s,
            coeffs: self.coeffs.iter().map(|(k, c)| (k + d.a, c.clone())).collect(),
            horizon: self.horizon.shifted(d.a),
        })
    }

    fn aligned(&self, o: &PsiDO) -> Result<(PsiDO, PsiDO), PsiError> {
        let d = o.shift - self.shift;
        if d.b != 0 {
            return Err(PsiError::ShiftMismatch(self.shift, o.shift));
        }
        if d.a >= 0 {
            Ok((self.reshift(o.shift)?, o.clone()))
        } else {
            Ok((self.clone(), o.reshift(self.shift)?))
        }
    }

    pub fn add(&self, o: &PsiDO) -> Result<PsiDO, PsiError> {
        let (a, b) = self.aligned(o)?;
        let mut coeffs = a.coeffs;
        for (k, c) in b.coeffs {
            *coeffs.entry(k).or_default() += &c;
        }
        Ok(PsiDO::new(a.shift, coeffs, a.horizon.min(b.horizon)))
    }

    pub fn sub(&self, o: &PsiDO) -> Result<PsiDO, PsiError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PsiDO {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> PsiDO {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Left multiplication by a function: `c·A`.
    pub fn left_mul(&self, c: &DiffPoly) -> PsiDO {
        self.map_coeffs(|x| c * x)
    }

    pub fn map_coeffs(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> PsiDO {
        PsiDO::new(self.shift, self.coeffs.iter().map(|(k, c)| (*k, f(c))).collect(), self.horizon)
    }

    /// Differential substitution applied to every coefficient.
    pub fn substitute(&self, map: &dyn Fn(GenId) -> Option<DiffPoly>) -> PsiDO {
        self.map_coeffs(|c| c.substitute(map))
    }

    /// Evaluates `T = q`; the shift must become an integer.
    pub fn evaluate_t(&self, q: &BigRational) -> Result<PsiDO, PsiError> {
        let s = self.shift.eval(q);
        if !s.is_integer() {
            return Err(PsiError::NonIntegralShift(self.shift));
        }
        let a: i64 = s.to_integer().try_into().expect("shift fits in i64");
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            coeffs.insert(*k, c.evaluate_t(q)?);
        }
        Ok(PsiDO::new(ShiftExponent::int(a), coeffs, self.horizon))
    }

    /// Product, failing with [`PsiError::Unbounded`] if an exact product is infinite.
    pub fn mul(&self, o: &PsiDO) -> Result<PsiDO, PsiError> {
        self.mul_to(o, None)
    }

    /// Product with the result horizon additionally capped at `cap`.
    ///
    /// The coefficient at offset `n` is `Σ_{i+j+k=n} C(α-i, k) A_i B_j^{(k)}`, so it
    /// is known once every `A_i` with `i ≤ n - top(B)` and every `B_j` with
    /// `j ≤ n - top(A)` is; hence `horizon = min(h_A + top_B, h_B + top_A)`.
    pub fn mul_to(&self, o: &PsiDO, cap: Option<i64>) -> Result<PsiDO, PsiError> {
        let shift = self.shift + o.shift;
        let natural = self.horizon.plus(o.top()).min(o.horizon.plus(self.top()));
        let horizon = natural.min(Horizon::from_cap(cap));
        let hval = horizon.value();
        let mut out: BTreeMap<i64, DiffPoly> = BTreeMap::new();
        let mut derivs: Vec<(i64, Derivs)> = o.coeffs.iter().map(|(j, c)| (*j, Derivs::new(c.clone()))).collect();
        for (&i, ai) in &self.coeffs {
            let x = self.shift - i;
            let binom_limit = (x.b == 0 && x.a >= 0).then_some(x.a);
            let xs = x.to_scalar();
            let mut binom: Vec<Scalar> = vec![Scalar::one()];
            for (j, dj) in derivs.iter_mut() {
                let base = i + *j;
                if let Some(h) = hval {
                    if base >= h {
                        continue;
                    }
                }
                let diff_limit = if dj.is_constant() { Some(0) } else { None };
                let kmax = min_opt(min_opt(binom_limit, diff_limit), hval.map(|h| h - 1 - base))
                    .ok_or(PsiError::Unbounded)?;
                if binom.len() <= kmax as usize {
                    binom = binomials(&xs, kmax as usize);
                }
                for k in 0..=kmax as usize {
                    let c = &binom[k];
                    if c.is_zero() {
                        continue;
                    }
                    let d = dj.get(k);
                    if d.is_zero() {
                        break;
                    }
                    let term = (ai * d).scale(c);
                    *out.entry(base + k as i64).or_default() += &term;
                }
            }
        }
        Ok(PsiDO::new(shift, out, horizon))
    }

    /// Left-to-right product of several operators.
    pub fn product(ops: &[&PsiDO], cap: Option<i64>) -> Result<PsiDO, PsiError> {
        let mut acc = PsiDO::one();
        for op in ops {
            acc = acc.mul_to(op, cap)?;
        }
        Ok(acc)
    }

    /// Shifted adjoint `A* = Σ_k (-1)^k ∂^{α-k} ∘ A_k`.
    pub fn adjoint(&self) -> Result<PsiDO, PsiError> {
        self.adjoint_to(None)
    }

    pub fn adjoint_to(&self, cap: Option<i64>) -> Result<PsiDO, PsiError> {
        let horizon = self.horizon.min(Horizon::from_cap(cap));
        let hval = horizon.value();
        let mut out: BTreeMap<i64, DiffPoly> = BTreeMap::new();
        for (&k, ak) in &self.coeffs {
            if !horizon.knows(k) {
                continue;
            }
            let x = self.shift - k;
            let binom_limit = (x.b == 0 && x.a >= 0).then_some(x.a);
            let mut d = Derivs::new(ak.clone());
            let diff_limit = if d.is_constant() { Some(0) } else { None };
            let lmax = min_opt(min_opt(binom_limit, diff_limit), hval.map(|h| h - 1 - k))
                .ok_or(PsiError::Unbounded)?;
            let binom = binomials(&x.to_scalar(), lmax as usize);
            let sign = if k.rem_euclid(2) == 0 { Scalar::one() } else { -Scalar::one() };
            for (l, c) in binom.iter().enumerate() {
                let dl = d.get(l);
                if dl.is_zero() {
                    break;
                }
                *out.entry(k + l as i64).or_default() += &dl.scale(&(c * &sign));
            }
        }
        Ok(PsiDO::new(self.shift, out, horizon))
    }

    fn integral_shift(&self) -> Result<i64, PsiError> {
        if self.shift.b != 0 {
            return Err(PsiError::NonIntegralShift(self.shift));
        }
        Ok(self.shift.a)
    }

    /// Terms with nonnegative powers of `∂`; always exact.
    pub fn pos_part(&self) -> Result<PsiDO, PsiError> {
        let a = self.integral_shift()?;
        if !self.horizon.knows(a) {
            return Err(PsiError::HorizonExhausted { needed: a, horizon: self.horizon.value().unwrap() });
        }
        let coeffs = self.coeffs.range(..=a).map(|(k, c)| (*k, c.clone())).collect();
        Ok(PsiDO::new(self.shift, coeffs, Horizon::Exact))
    }

    /// Terms with negative powers of `∂`.
    pub fn neg_part(&self) -> Result<PsiDO, PsiError> {
        let a = self.integral_shift()?;
        let coeffs = self.coeffs.range(a + 1..).map(|(k, c)| (*k, c.clone())).collect();
        Ok(PsiDO::new(self.shift, coeffs, self.horizon))
    }

    /// Coefficient of `∂^{-1}`.
    pub fn residue(&self) -> Result<DiffPoly, PsiError> {
        let a = self.integral_shift()?;
        self.coeff(a + 1)
    }

    /// Inverse by forward substitution, correct through offset `depth`.
    pub fn invert(&self, depth: i64) -> Result<PsiDO, PsiError> {
        if !self.is_monic() || self.coeffs.keys().any(|k| *k < 0) {
            return Err(PsiError::NonMonic);
        }
        if self.coeffs.len() == 1 && self.horizon == Horizon::Exact {
            return Ok(PsiDO::d_pow(ShiftExponent::ZERO - self.shift));
        }
        if !self.horizon.knows(depth) {
            return Err(PsiError::HorizonExhausted { needed: depth, horizon: self.horizon.value().unwrap() });
        }
        let alpha = self.shift;
        let binoms: Vec<(i64, &DiffPoly, Vec<Scalar>)> = self
            .coeffs
            .iter()
            .filter(|(i, _)| **i <= depth)
            .map(|(i, c)| (*i, c, binomials(&(alpha - *i).to_scalar(), (depth - i).max(0) as usize)))
            .collect();
        let mut xs: Vec<Derivs> = vec![Derivs::new(DiffPoly::one())];
        for n in 1..=depth {
            let mut acc = DiffPoly::zero();
            for (i, li, bs) in &binoms {
                for j in 0..=(n - i) {
                    let k = n - i - j;
                    if (*i == 0 && k == 0) || j >= n {
                        continue;
                    }
                    let c = &bs[k as usize];
                    if c.is_zero() {
                        continue;
                    }
                    let d = xs[j as usize].get(k as usize);
                    if d.is_zero() {
                        continue;
                    }
                    acc += &(*li * d).scale(c);
                }
            }
            xs.push(Derivs::new(-acc));
        }
        let coeffs = xs.into_iter().enumerate().map(|(k, mut d)| (k as i64, d.get(0).clone())).collect();
        Ok(PsiDO::new(ShiftExponent::ZERO - alpha, coeffs, Horizon::At(depth + 1)))
    }

    /// Whether the two operators agree on every offset both of them know.
    pub fn agrees_with(&self, o: &PsiDO) -> Result<bool, PsiError> {
        Ok(self.sub(o)?.is_zero())
    }

    pub fn symbol(&self) -> Symbol {
        Symbol::from_psido(self)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.coeffs.iter().map(|(k, c)| json!([k, c.to_json()])).collect();
        json!({
            "shift": self.shift.to_string(),
            "horizon": match self.horizon { Horizon::At(h) => json!(h), Horizon::Exact => json!("exact") },
            "terms": terms,
        })
    }
}

pub(crate) fn fmt_power(f: &mut fmt::Formatter<'_>, base: &str, e: ShiftExponent) -> fmt::Result {
    if e.b == 0 && e.a >= 0 && e.a <= 9 {
        match e.a {
            0 => Ok(()),
            1 => write!(f, "{}", base),
            a => write!(f, "{}^{}", base, a),
        }
    } else {
        write!(f, "{}^({})", base, e)
    }
}

struct Power(&'static str, ShiftExponent);

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_power(f, self.0, self.1)
    }
}

pub(crate) fn fmt_series<'a>(
    f: &mut fmt::Formatter<'_>,
    base: &'static str,
    terms: impl Iterator<Item = (ShiftExponent, &'a DiffPoly)>,
    tail: Option<ShiftExponent>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let p = Power(base, e).to_string();
        let mut cs = c.to_string();
        let mut neg = false;
        if c.len() > 1 {
            cs = format!("({})", cs);
        } else if let Some(rest) = cs.strip_prefix('-') {
            neg = true;
            cs = rest.to_string();
        }
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        first = false;
        if p.is_empty() {
            write!(f, "{}", cs)?;
        } else if cs == "1" {
            write!(f, "{}", p)?;
        } else {
            write!(f, "{}*{}", cs, p)?;
        }
    }
    if let Some(t) = tail {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        let p = Power(base, t).to_string();
        write!(f, "O({})", if p.is_empty() { "1".to_string() } else { p })?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for PsiDO {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = self.horizon.value().map(|h| self.shift - h);
        fmt_series(f, "∂", self.coeffs.iter().map(|(k, c)| (self.shift - *k, c)), tail)
    }
}
