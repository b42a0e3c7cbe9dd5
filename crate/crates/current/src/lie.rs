use std::fmt;

use num_traits::{One, Zero};
use scalars::{rat, BigRational};

use crate::CurrentError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieFamily {
    GlA,
    SoB,
    SpC,
}

/// Root-space class of a basis element for the upper-triangular Borel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Negative,
    Cartan,
    Positive,
}

type Matrix = Vec<Vec<BigRational>>;

/// A classical Lie algebra in its defining representation on `C^N`.
///
/// `gl_n` uses the matrix units `E_ij`. `so_N` and `sp_N` use the spanning set
/// `F_ij = E_ij - ε_i ε_j E_{j'i'}` with `i' = N+1-i`, keeping one representative
/// of each pair `F_ij = ∓F_{j'i'}`.
#[derive(Clone, Debug)]
pub struct LieData {
    pub family: LieFamily,
    /// Size of the defining representation.
    pub n: usize,
    labels: Vec<(usize, usize)>,
    mats: Vec<Matrix>,
    structure: Vec<Vec<Vec<(usize, BigRational)>>>,
    /// `F_ij` (or `E_ij`) as a combination of basis elements, indexed by `i*N + j`.
    entries: Vec<Vec<(usize, BigRational)>>,
}

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![BigRational::zero(); n]; n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn trace(a: &Matrix) -> BigRational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

impl LieData {
    pub fn gl(n: usize) -> Self {
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut m = zero_matrix(n);
                m[i][j] = BigRational::one();
                labels.push((i, j));
                mats.push(m);
            }
        }
        let entries = (0..n * n).map(|k| vec![(k, BigRational::one())]).collect();
        LieData::finish(LieFamily::GlA, n, labels, mats, entries)
    }

    /// `so_N` with the split form `δ_{i j'}`.
    pub fn so(n: usize) -> Self {
        LieData::classical(LieFamily::SoB, n)
    }

    /// `sp_N` (`N` even) with the form `ε_i δ_{i j'}`.
    pub fn sp(n: usize) -> Result<Self, CurrentError> {
        if n % 2 == 1 {
            return Err(CurrentError::OddSymplectic(n));
        }
        Ok(LieData::classical(LieFamily::SpC, n))
    }

    pub fn eps(&self, i: usize) -> i64 {
        match self.family {
            LieFamily::SpC if i >= self.n / 2 => -1,
            _ => 1,
        }
    }

    fn classical(family: LieFamily, n: usize) -> Self {
        let eps = |i: usize| if family == LieFamily::SpC && i >= n / 2 { -1 } else { 1 };
        let prime = |i: usize| n - 1 - i;
        let f = |i: usize, j: usize| {
            let mut m = zero_matrix(n);
            m[i][j] += BigRational::one();
            m[prime(j)][prime(i)] -= rat(eps(i) * eps(j));
            m
        };
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        let mut entries = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                let partner = (prime(j), prime(i));
                if partner < (i, j) {
                    continue;
                }
                let m = f(i, j);
                if m.iter().all(|r| r.iter().all(|x| x.is_zero())) {
                    continue;
                }
                let k = labels.len();
                labels.push((i, j));
                mats.push(m);
                entries[i * n + j] = vec![(k, BigRational::one())];
                if partner != (i, j) {
                    entries[partner.0 * n + partner.1] = vec![(k, rat(-eps(i) * eps(j)))];
                } else {
                    entries[i * n + j] = vec![(k, BigRational::one())];
                }
            }
        }
        LieData::finish(family, n, labels, mats, entries)
    }

    fn finish(
        family: LieFamily,
        n: usize,
        labels: Vec<(usize, usize)>,
        mats: Vec<Matrix>,
        entries: Vec<Vec<(usize, BigRational)>>,
    ) -> Self {
        let mut g = LieData { family, n, labels, mats, structure: Vec::new(), entries };
        let d = g.dim();
        let mut structure = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let ab = mat_mul(&g.mats[a], &g.mats[b]);
                let ba = mat_mul(&g.mats[b], &g.mats[a]);
                let c: Matrix = (0..n).map(|i| (0..n).map(|j| &ab[i][j] - &ba[i][j]).collect()).collect();
                structure[a][b] = g.decompose(&c);
            }
        }
        g.structure = structure;
        g
    }

    /// Coordinates of a matrix of `g` in the basis.
    pub fn decompose(&self, m: &Matrix) -> Vec<(usize, BigRational)> {
        let mut out = Vec::new();
        for (k, &(i, j)) in self.labels.iter().enumerate() {
            let lead = &self.mats[k][i][j];
            let c = &m[i][j] / lead;
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: usize) -> (usize, usize) {
        self.labels[a]
    }

    pub fn matrix(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    pub fn part(&self, a: usize) -> Part {
        let (i, j) = self.labels[a];
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Part::Positive,
            std::cmp::Ordering::Equal => Part::Cartan,
            std::cmp::Ordering::Greater => Part::Negative,
        }
    }

    pub fn is_cartan(&self, a: usize) -> bool {
        self.part(a) == Part::Cartan
    }

    /// Cartan basis elements `E_ii` (or `F_ii`, `i < N/2` up to the middle).
    pub fn cartan(&self) -> Vec<usize> {
        (0..self.dim()).filter(|a| self.is_cartan(*a)).collect()
    }

    /// `[e_a, e_b]` in the basis.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, BigRational)] {
        &self.structure[a][b]
    }

    /// The matrix entry element `E_ij` or `F_ij` (0-based) in the basis.
    pub fn entry(&self, i: usize, j: usize) -> &[(usize, BigRational)] {
        &self.entries[i * self.n + j]
    }

    /// Index of the basis element labelled `(i, j)`, if it is a representative.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.labels.iter().position(|l| *l == (i, j))
    }

    /// The invariant form: `tr(xy) - tr x tr y / n` on `gl_n` and `½ tr(xy)` otherwise.
    pub fn form(&self, a: usize, b: usize) -> BigRational {
        let t = trace(&mat_mul(&self.mats[a], &self.mats[b]));
        match self.family {
            LieFamily::GlA => t - trace(&self.mats[a]) * trace(&self.mats[b]) / rat(self.n as i64),
            _ => t / rat(2),
        }
    }

    /// `tr(xy)` in the defining representation.
    pub fn trace_form(&self, a: usize, b: usize) -> BigRational {
        trace(&mat_mul(&self.mats[a], &self.mats[b]))
    }

    /// `-n` for `gl_n`, `-(N-2)` for `so_N`, `-(N+2)` for `sp_N`.
    pub fn critical_level(&self) -> BigRational {
        let n = self.n as i64;
        match self.family {
            LieFamily::GlA => rat(-n),
            LieFamily::SoB => rat(-(n - 2)),
            LieFamily::SpC => rat(-(n + 2)),
        }
    }

    pub fn letter(&self) -> char {
        match self.family {
            LieFamily::GlA => 'E',
            _ => 'F',
        }
    }

    pub fn basis_name(&self, a: usize) -> String {
        let (i, j) = self.labels[a];
        format!("{}[{},{}]", self.letter(), i + 1, j + 1)
    }

    /// Parses `E[1,2]` / `F[1,2]` (1-based) to a basis index.
    pub fn parse_basis(&self, s: &str) -> Result<usize, CurrentError> {
        let bad = || CurrentError::Parse(format!("bad basis element {s}"));
        let body = s.trim().strip_prefix(self.letter()).ok_or_else(bad)?;
        let body = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let (i, j) = body.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        if i == 0 || j == 0 {
            return Err(bad());
        }
        self.index_of(i - 1, j - 1).ok_or_else(bad)
    }
}

impl fmt::Display for LieData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            LieFamily::GlA => write!(f, "gl_{}", self.n),
            LieFamily::SoB => write!(f, "so_{}", self.n),
            LieFamily::SpC => write!(f, "sp_{}", self.n),
        }
    }
}
