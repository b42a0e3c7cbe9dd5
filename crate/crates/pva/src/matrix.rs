use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use diffalg::{DiffPoly, GenId};
use psido::PsiDO;
use scalars::BigRational;

use crate::{h_entry, LambdaPoly, PvaError};

type Source = dyn Fn(GenId, GenId) -> Result<LambdaPoly, PvaError> + Send + Sync;

/// Lazily populated table of generator brackets `{a λ b}`.
pub struct BracketMatrix {
    gens: Vec<GenId>,
    source: Arc<Source>,
    cache: Mutex<HashMap<(GenId, GenId), LambdaPoly>>,
    eval: Option<BigRational>,
    overrides: HashMap<(GenId, GenId), LambdaPoly>,
}

impl Clone for BracketMatrix {
    fn clone(&self) -> Self {
        BracketMatrix {
            gens: self.gens.clone(),
            source: self.source.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
            eval: self.eval.clone(),
            overrides: self.overrides.clone(),
        }
    }
}

impl std::fmt::Debug for BracketMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BracketMatrix").field("gens", &self.gens).field("eval", &self.eval).finish()
    }
}

impl BracketMatrix {
    pub fn new(
        gens: Vec<GenId>,
        source: impl Fn(GenId, GenId) -> Result<LambdaPoly, PvaError> + Send + Sync + 'static,
    ) -> Self {
        BracketMatrix { gens, source: Arc::new(source), cache: Mutex::new(HashMap::new()), eval: None, overrides: HashMap::new() }
    }

    /// Brackets of an Adler-type operator: generator `g` with index `i` multiplies
    /// `∂^{α-i-1}` in `L`, and `{g_i λ g_j} = H_{ij}(λ)` with `H` as in [`h_entry`].
    pub fn from_adler(l: PsiDO, index: Vec<(GenId, i64)>) -> Self {
        let gens = index.iter().map(|(g, _)| *g).collect();
        let map: HashMap<GenId, i64> = index.into_iter().collect();
        let l = Arc::new(l);
        BracketMatrix::new(gens, move |a, b| {
            let ia = *map.get(&a).ok_or(PvaError::UnknownGenerator(a))?;
            let ib = *map.get(&b).ok_or(PvaError::UnknownGenerator(b))?;
            h_entry(&l, ia, ib)
        })
    }

    pub fn gens(&self) -> &[GenId] {
        &self.gens
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.gens.contains(&g)
    }

    /// The same brackets with every coefficient evaluated at `T = q`.
    pub fn eval_at(&self, q: &BigRational) -> BracketMatrix {
        let cache = self.cache.lock().unwrap();
        let mut out = BracketMatrix {
            gens: self.gens.clone(),
            source: self.source.clone(),
            cache: Mutex::new(HashMap::new()),
            eval: Some(q.clone()),
            overrides: HashMap::new(),
        };
        if self.eval.is_none() {
            let evaluated = cache.iter().filter_map(|(k, v)| v.evaluate_t(q).ok().map(|e| (*k, e)));
            out.cache = Mutex::new(evaluated.collect());
        }
        for (k, v) in &self.overrides {
            if let Ok(e) = v.evaluate_t(q) {
                out.overrides.insert(*k, e);
            }
        }
        out
    }

    /// Replaces one entry, e.g. to build a negative control.
    pub fn with_override(mut self, a: GenId, b: GenId, p: LambdaPoly) -> Self {
        self.overrides.insert((a, b), p);
        self
    }

    /// `{a λ b}` for generators `a`, `b`.
    pub fn bracket_gen(&self, a: GenId, b: GenId) -> Result<LambdaPoly, PvaError> {
        if let Some(p) = self.overrides.get(&(a, b)) {
            return Ok(p.clone());
        }
        if let Some(p) = self.cache.lock().unwrap().get(&(a, b)) {
            return Ok(p.clone());
        }
        if !self.contains(a) {
            return Err(PvaError::UnknownGenerator(a));
        }
        if !self.contains(b) {
            return Err(PvaError::UnknownGenerator(b));
        }
        let mut p = (self.source)(a, b)?;
        if let Some(q) = &self.eval {
            p = p.evaluate_t(q)?;
        }
        self.cache.lock().unwrap().insert((a, b), p.clone());
        Ok(p)
    }

    /// The full table on the first `count` generators.
    pub fn table(&self, count: usize) -> Result<Vec<(GenId, GenId, LambdaPoly)>, PvaError> {
        let mut out = Vec::new();
        for &a in self.gens.iter().take(count) {
            for &b in self.gens.iter().take(count) {
                out.push((a, b, self.bracket_gen(a, b)?));
            }
        }
        Ok(out)
    }
}

/// Partials `∂p/∂g^{(k)}` grouped by generator, skipping the constant tags.
fn partials(p: &DiffPoly, h: &BracketMatrix) -> Result<BTreeMap<GenId, Vec<(u32, DiffPoly)>>, PvaError> {
    let mut out: BTreeMap<GenId, Vec<(u32, DiffPoly)>> = BTreeMap::new();
    for v in p.vars() {
        if v.gen.tag.is_constant() {
            continue;
        }
        if !h.contains(v.gen) {
            return Err(PvaError::UnknownGenerator(v.gen));
        }
        out.entry(v.gen).or_default().push((v.order, p.partial(v.gen, v.order)));
    }
    Ok(out)
}

/// `{f λ g} = Σ ∂g/∂u_n^{(i)} (λ+∂)^i {u_m λ+∂ u_n} (-λ-∂)^j ∂f/∂u_m^{(j)}`.
pub fn master_bracket(h: &BracketMatrix, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly, PvaError> {
    let pf = partials(f, h)?;
    let pg = partials(g, h)?;
    if pf.is_empty() || pg.is_empty() {
        return Ok(LambdaPoly::zero());
    }
    let w: Vec<(GenId, LambdaPoly)> = pf
        .iter()
        .map(|(m, list)| {
            let mut acc = LambdaPoly::zero();
            for (j, d) in list {
                acc = acc.add(&LambdaPoly::neg_shift_power(*j, d));
            }
            (*m, acc)
        })
        .collect();
    let mut out = LambdaPoly::zero();
    for (n, list) in &pg {
        let mut x = LambdaPoly::zero();
        for (m, wm) in &w {
            let b = h.bracket_gen(*m, *n)?;
            x = x.add(&b.shifted_apply(wm));
        }
        let mut gn = LambdaPoly::zero();
        for (i, d) in list {
            gn.add_term(*i, d.clone());
        }
        out = out.add(&gn.shifted_apply(&x));
    }
    Ok(out)
}
