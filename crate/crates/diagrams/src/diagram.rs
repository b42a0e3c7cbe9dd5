use std::fmt;
use std::str::FromStr;

use crate::{DiagError, Family};

/// `•` is the standard object, `∘` its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn dual(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Color>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn black(n: usize) -> Self {
        Word(vec![Color::Black; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        Word(self.0.iter().chain(&o.0).copied().collect())
    }

    pub fn is_monochrome(&self) -> bool {
        self.0.iter().all(|c| *c == Color::Black)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", if *c == Color::Black { '•' } else { '∘' })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = DiagError;

    /// Accepts `•`/`b`/`*` for the standard object and `∘`/`o`/`w` for its dual.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '-')
            .map(|c| match c {
                '•' | 'b' | '*' => Ok(Color::Black),
                '∘' | 'o' | 'w' => Ok(Color::White),
                _ => Err(DiagError::Parse(format!("bad letter {c:?} in word"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// A `(bottom, top)` diagram. Vertices `0..b` are the bottom row and `b..b+t`
/// the top row; `pairs` is a perfect matching stored as sorted pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    bottom: Word,
    top: Word,
    pairs: Vec<(usize, usize)>,
}

impl Diagram {
    /// Checks the matching against the colour rules of `family`.
    ///
    /// A same-row edge joins opposite colours and a cross-row edge joins equal
    /// colours (`•` at the bottom pairs with `•` at the top). Orthogonal and
    /// symplectic diagrams use `•` only.
    pub fn new(bottom: Word, top: Word, pairs: Vec<(usize, usize)>, family: Family) -> Result<Self, DiagError> {
        let b = bottom.len();
        let n = b + top.len();
        let mut seen = vec![false; n];
        for &(p, q) in &pairs {
            for v in [p, q] {
                if v >= n || seen[v] {
                    return Err(DiagError::InvalidMatching(format!("vertex {v} is out of range or repeated")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(DiagError::InvalidMatching("some vertex is unmatched".into()));
        }
        if family != Family::GL && !(bottom.is_monochrome() && top.is_monochrome()) {
            return Err(DiagError::InvalidMatching("orthogonal and symplectic words use • only".into()));
        }
        let d = Diagram::from_parts(bottom, top, pairs);
        if family == Family::GL {
            for &(p, q) in &d.pairs {
                let same_row = (p < b) == (q < b);
                let (cp, cq) = (d.color(p), d.color(q));
                if same_row != (cp != cq) {
                    return Err(DiagError::InvalidMatching(format!("edge ({p},{q}) breaks the colour rule")));
                }
            }
        }
        Ok(d)
    }

    pub(crate) fn from_parts(bottom: Word, top: Word, pairs: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(p, q)| (p.min(q), p.max(q))).collect();
        pairs.sort();
        Diagram { bottom, top, pairs }
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn color(&self, v: usize) -> Color {
        let b = self.bottom.len();
        if v < b {
            self.bottom.0[v]
        } else {
            self.top.0[v - b]
        }
    }

    pub fn identity(w: &Word) -> Self {
        let n = w.len();
        Diagram::from_parts(w.clone(), w.clone(), (0..n).map(|i| (i, n + i)).collect())
    }

    /// The permutation diagram sending bottom strand `i` to top position `perm[i]`.
    pub fn permutation(w: &Word, perm: &[usize]) -> Self {
        let n = w.len();
        let top = Word((0..n).map(|j| w.0[perm.iter().position(|p| *p == j).unwrap()]).collect());
        Diagram::from_parts(w.clone(), top, perm.iter().enumerate().map(|(i, p)| (i, n + p)).collect())
    }

    /// `Y ∘ X` with `self = Y`; also returns the number of closed loops removed.
    pub fn compose(&self, x: &Diagram) -> Result<(Diagram, usize), DiagError> {
        if x.top != self.bottom {
            return Err(DiagError::WordMismatch { left: x.top.to_string(), right: self.bottom.to_string() });
        }
        let (bx, m, ty) = (x.bottom.len(), x.top.len(), self.top.len());
        // glued vertex set: X bottom, middle, Y top
        let idx_x = |v: usize| v;
        let idx_y = |v: usize| if v < m { bx + v } else { bx + m + (v - m) };
        let total = bx + m + ty;
        let mut partner_x = vec![usize::MAX; total];
        let mut partner_y = vec![usize::MAX; total];
        for &(p, q) in &x.pairs {
            partner_x[idx_x(p)] = idx_x(q);
            partner_x[idx_x(q)] = idx_x(p);
        }
        for &(p, q) in &self.pairs {
            partner_y[idx_y(p)] = idx_y(q);
            partner_y[idx_y(q)] = idx_y(p);
        }
        let is_outer = |v: usize| v < bx || v >= bx + m;
        let mut visited = vec![false; total];
        let mut pairs = Vec::new();
        for start in (0..total).filter(|v| is_outer(*v)) {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut v = start;
            let mut use_x = start < bx;
            loop {
                let next = if use_x { partner_x[v] } else { partner_y[v] };
                visited[next] = true;
                if is_outer(next) {
                    let relabel = |u: usize| if u < bx { u } else { u - m };
                    pairs.push((relabel(start), relabel(next)));
                    break;
                }
                v = next;
                use_x = !use_x;
            }
        }
        let mut loops = 0;
        for start in bx..bx + m {
            if visited[start] {
                continue;
            }
            loops += 1;
            let mut v = start;
            while !visited[v] {
                visited[v] = true;
                let w = partner_x[v];
                visited[w] = true;
                v = partner_y[w];
            }
        }
        Ok((Diagram::from_parts(x.bottom.clone(), self.top.clone(), pairs), loops))
    }

    /// Side-by-side juxtaposition.
    pub fn tensor(&self, o: &Diagram) -> Diagram {
        let (b1, t1) = (self.bottom.len(), self.top.len());
        let b2 = o.bottom.len();
        let map1 = |v: usize| if v < b1 { v } else { v + b2 };
        let map2 = |v: usize| if v < b2 { v + b1 } else { v - b2 + b1 + b2 + t1 };
        let mut pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&(p, q)| (map1(p), map1(q))).collect();
        pairs.extend(o.pairs.iter().map(|&(p, q)| (map2(p), map2(q))));
        Diagram::from_parts(self.bottom.concat(&o.bottom), self.top.concat(&o.top), pairs)
    }

    /// Parses `[(b1,t1),(b2,b3),...]` against the given words.
    pub fn parse(bottom: &Word, top: &Word, s: &str, family: Family) -> Result<Self, DiagError> {
        let b = bottom.len();
        let label = |tok: &str| -> Result<usize, DiagError> {
            let tok = tok.trim();
            let (row, num) = tok.split_at(1);
            let k: usize = num.parse().map_err(|_| DiagError::Parse(format!("bad vertex {tok}")))?;
            if k == 0 {
                return Err(DiagError::Parse(format!("vertex labels start at 1: {tok}")));
            }
            match row {
                "b" => Ok(k - 1),
                "t" => Ok(b + k - 1),
                _ => Err(DiagError::Parse(format!("bad vertex {tok}"))),
            }
        };
        let body = s.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']'));
        let body = body.ok_or_else(|| DiagError::Parse("expected [...]".into()))?;
        let mut pairs = Vec::new();
        for chunk in body.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let chunk = chunk.trim_start_matches(',').trim().trim_start_matches('(');
            let (p, q) = chunk.split_once(',').ok_or_else(|| DiagError::Parse(format!("bad pair {chunk}")))?;
            pairs.push((label(p)?, label(q)?));
        }
        Diagram::new(bottom.clone(), top.clone(), pairs, family)
    }

    fn label(&self, v: usize) -> String {
        let b = self.bottom.len();
        if v < b {
            format!("b{}", v + 1)
        } else {
            format!("t{}", v - b + 1)
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs.iter().map(|&(p, q)| format!("({},{})", self.label(p), self.label(q))).collect();
        write!(f, "[{}]", body.join(","))
    }
}

/// All diagrams from `w` to `w2` in `family`, in a fixed order.
pub fn hom_basis(w: &Word, w2: &Word, family: Family) -> Vec<Diagram> {
    let n = w.len() + w2.len();
    if n % 2 == 1 {
        return Vec::new();
    }
    if family != Family::GL && !(w.is_monochrome() && w2.is_monochrome()) {
        return Vec::new();
    }
    let b = w.len();
    let color = |v: usize| if v < b { w.0[v] } else { w2.0[v - b] };
    let allowed = |p: usize, q: usize| {
        family != Family::GL || (((p < b) == (q < b)) == (color(p) != color(q)))
    };
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    fn go(
        n: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        allowed: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(p) = (0..n).find(|v| !used[*v]) else {
            out.push(pairs.clone());
            return;
        };
        used[p] = true;
        for q in p + 1..n {
            if !used[q] && allowed(p, q) {
                used[q] = true;
                pairs.push((p, q));
                go(n, used, pairs, allowed, out);
                pairs.pop();
                used[q] = false;
            }
        }
        used[p] = false;
    }
    let mut raw = Vec::new();
    go(n, &mut used, &mut pairs, &allowed, &mut raw);
    for p in raw {
        out.push(Diagram::from_parts(w.clone(), w2.clone(), p));
    }
    out.sort();
    out
}
