use std::collections::BTreeMap;

use num_traits::{One, Zero};
use scalars::{rat, BigRational};

use crate::sum::perm_sign;
use crate::{hom_basis, DiagError, Diagram, DiagramSum, Family, Word};

/// A sparse linear map `(k^N)^{⊗b} → (k^N)^{⊗t}`; entry `(J, I)` with the first
/// tensor factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl Tensor {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Tensor { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut t = Tensor::zero(dim, dim);
        for i in 0..dim {
            t.add_entry(i, i, BigRational::one());
        }
        t
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: BigRational) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut out = self.clone();
        for ((r, c), v) in &o.entries {
            out.add_entry(*r, *c, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Tensor {
        let mut out = Tensor::zero(self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            out.add_entry(*r, *c, v * s);
        }
        out
    }

    /// Matrix product `self · o`.
    pub fn mul(&self, o: &Tensor) -> Tensor {
        assert_eq!(self.cols, o.rows, "tensor shapes do not compose");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
        for ((r, c), v) in &o.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = Tensor::zero(self.rows, o.cols);
        for ((r, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, b) in row {
                    out.add_entry(*r, *c, a * *b);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    fn dot(&self, o: &Tensor) -> BigRational {
        let mut s = BigRational::zero();
        for (k, v) in &self.entries {
            if let Some(w) = o.entries.get(k) {
                s += v * w;
            }
        }
        s
    }
}

enum Edge {
    Through(usize, usize),
    Cap(usize, usize),
    Cup(usize, usize),
}

/// Partner index and form value `ω(e_a, e_{a'})` for the standard symplectic form.
fn symplectic_partner(a: usize, n: usize) -> (usize, i64) {
    let h = n / 2;
    if a < h {
        (a + h, 1)
    } else {
        (a - h, -1)
    }
}

/// The tensor of one diagram at `α = N`.
///
/// `GL` and `O` contract with `δ`. `Sp` treats `k^N` as purely odd with the
/// standard symplectic form, so crossings carry Koszul signs and a closed loop
/// evaluates to `-N`.
pub fn realize_diagram(d: &Diagram, n: usize, family: Family) -> Result<Tensor, DiagError> {
    if family == Family::Sp && n % 2 == 1 {
        return Err(DiagError::OddDimension(n));
    }
    let (b, t) = (d.bottom().len(), d.top().len());
    let mut edges = Vec::new();
    for &(p, q) in d.pairs() {
        edges.push(match (p < b, q < b) {
            (true, true) => Edge::Cap(p, q),
            (false, false) => Edge::Cup(p - b, q - b),
            _ => Edge::Through(p, q - b),
        });
    }
    let sign = if family == Family::Sp { koszul_sign(&edges) } else { 1 };
    let rows = n.pow(t as u32);
    let cols = n.pow(b as u32);
    let mut out = Tensor::zero(rows, cols);
    let mut vals = vec![0usize; edges.len()];
    let mut ins = vec![0usize; b];
    let mut outs = vec![0usize; t];
    loop {
        let mut w = sign;
        for (e, &a) in edges.iter().zip(&vals) {
            let (a2, om) = if family == Family::Sp { symplectic_partner(a, n) } else { (a, 1) };
            match *e {
                Edge::Through(i, j) => {
                    ins[i] = a;
                    outs[j] = a;
                }
                Edge::Cap(i, k) => {
                    ins[i] = a;
                    ins[k] = a2;
                    w *= om;
                }
                Edge::Cup(j, l) => {
                    outs[j] = a;
                    outs[l] = a2;
                    // coevaluation is the inverse form, -ω for the standard one
                    w *= if family == Family::Sp { -om } else { om };
                }
            }
        }
        let enc = |xs: &[usize]| xs.iter().fold(0, |acc, x| acc * n + x);
        out.add_entry(enc(&outs), enc(&ins), rat(w));
        // odometer
        let mut k = 0;
        while k < vals.len() {
            vals[k] += 1;
            if vals[k] < n {
                break;
            }
            vals[k] = 0;
            k += 1;
        }
        if k == vals.len() {
            break;
        }
    }
    Ok(out)
}

/// Sign of moving the inputs into cap-pairs-then-strands order and the outputs
/// back from cup-pairs-then-strands order, for odd vectors.
fn koszul_sign(edges: &[Edge]) -> i64 {
    let mut through: Vec<(usize, usize)> = Vec::new();
    let mut seq_in = Vec::new();
    let mut seq_out = Vec::new();
    for e in edges {
        match *e {
            Edge::Cap(i, k) => seq_in.extend([i, k]),
            Edge::Cup(j, l) => seq_out.extend([j, l]),
            Edge::Through(i, j) => through.push((j, i)),
        }
    }
    through.sort();
    seq_in.extend(through.iter().map(|(_, i)| *i));
    seq_out.extend(through.iter().map(|(j, _)| *j));
    perm_sign(&seq_in) * perm_sign(&seq_out)
}

/// Realizes a diagram sum whose coefficients are already numbers.
pub fn realize(d: &DiagramSum, n: usize, family: Family) -> Result<Tensor, DiagError> {
    let mut out: Option<Tensor> = None;
    for (dia, c) in d.terms() {
        let q = c.as_constant().ok_or_else(|| DiagError::NotEvaluated(c.to_string()))?;
        let t = realize_diagram(dia, n, family)?.scale(&q);
        out = Some(match out {
            Some(o) => o.add(&t),
            None => t,
        });
    }
    match (out, d.hom()) {
        (Some(t), _) => Ok(t),
        (None, Some((from, to))) => Ok(Tensor::zero(n.pow(to.len() as u32), n.pow(from.len() as u32))),
        (None, None) => Err(DiagError::InvalidMatching("empty sum with unknown source and target".into())),
    }
}

/// Rank of a family of tensors, computed exactly through their Gram matrix.
pub fn rank(vs: &[Tensor]) -> usize {
    let k = vs.len();
    let mut g: Vec<Vec<BigRational>> = (0..k).map(|i| (0..k).map(|j| vs[i].dot(&vs[j])).collect()).collect();
    let mut r = 0;
    for col in 0..k {
        let Some(piv) = (r..k).find(|i| !g[*i][col].is_zero()) else { continue };
        g.swap(r, piv);
        let p = g[r][col].clone();
        for i in 0..k {
            if i != r && !g[i][col].is_zero() {
                let f = &g[i][col] / &p;
                for j in col..k {
                    let v = &g[r][j] * &f;
                    g[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub injective: bool,
    pub dim_domain: usize,
    pub rank: usize,
}

/// Whether the realization at `α = N` is injective on the diagram basis of `Hom(w, w2)`.
pub fn interp_rank_check(w: &Word, w2: &Word, n: usize, family: Family) -> Result<RankReport, DiagError> {
    let basis = hom_basis(w, w2, family);
    let tensors = basis.iter().map(|d| realize_diagram(d, n, family)).collect::<Result<Vec<_>, _>>()?;
    let rank = rank(&tensors);
    Ok(RankReport { injective: rank == basis.len(), dim_domain: basis.len(), rank })
}
