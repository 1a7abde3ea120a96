//! Exact linear algebra over ℚ: cochain complexes, double complexes with
//! their first two spectral-sequence pages, and dimension bookkeeping for
//! long exact sequences.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::symkernel::json::RatLit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{int, Rational};

/// Rank by fraction-free (Bareiss) elimination after clearing denominators.
pub fn rank_exact(m: &QMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// A bounded cochain complex `V_0 → V_1 → … → V_N` of ℚ-vector spaces.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    /// `maps[k]` is `d_k : V_k → V_{k+1}`, a `dims[k+1] × dims[k]` matrix.
    maps: Vec<QMatrix>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, maps: Vec<QMatrix>) -> Result<Self> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!("{} spaces need {} maps", dims.len(), dims.len().saturating_sub(1))));
        }
        for (k, d) in maps.iter().enumerate() {
            if d.rows() != dims[k + 1] || d.cols() != dims[k] {
                return Err(Error::Dimension(format!(
                    "d_{k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            if !maps[k + 1].mul(&maps[k])?.is_zero() {
                return Err(Error::NotAComplex(k));
            }
        }
        Ok(CochainComplex { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(rank_exact).collect()
    }

    /// `dim H^k = dim V_k − rank d_k − rank d_{k−1}`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let r = self.ranks();
        (0..self.dims.len())
            .map(|k| {
                let out = r.get(k).copied().unwrap_or(0);
                let inc = if k == 0 { 0 } else { r[k - 1] };
                self.dims[k] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

pub fn cohomology_dims(c: &CochainComplex) -> Vec<usize> {
    c.cohomology_dims()
}

pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// A first-quadrant double complex on a `cols × rows` grid `E^{p,q}` with
/// horizontal `δ : E^{p,q} → E^{p+1,q}` and vertical `∂̄ : E^{p,q} → E^{p,q+1}`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    /// `dims[p][q]`.
    dims: Vec<Vec<usize>>,
    horizontal: BTreeMap<(usize, usize), QMatrix>,
    vertical: BTreeMap<(usize, usize), QMatrix>,
}

fn zero_map(rows: usize, cols: usize) -> QMatrix {
    QMatrix::zeros(rows, cols)
}

impl DoubleComplex {
    /// Missing maps are zero.  Checks shapes, `δ² = 0`, `∂̄² = 0` and
    /// `δ∂̄ + ∂̄δ = 0`.
    pub fn new(
        dims: Vec<Vec<usize>>,
        horizontal: BTreeMap<(usize, usize), QMatrix>,
        vertical: BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<Self> {
        let p_len = dims.len();
        if p_len == 0 || dims.iter().any(|c| c.len() != dims[0].len()) {
            return Err(Error::NotADoubleComplex("grid must be rectangular and nonempty".into()));
        }
        let dc = DoubleComplex { dims, horizontal, vertical };
        for (&(p, q), m) in &dc.horizontal {
            if p + 1 >= p_len || q >= dc.rows() || m.rows() != dc.dim(p + 1, q) || m.cols() != dc.dim(p, q) {
                return Err(Error::NotADoubleComplex(format!("bad horizontal map at ({p},{q})")));
            }
        }
        for (&(p, q), m) in &dc.vertical {
            if p >= p_len || q + 1 >= dc.rows() || m.rows() != dc.dim(p, q + 1) || m.cols() != dc.dim(p, q) {
                return Err(Error::NotADoubleComplex(format!("bad vertical map at ({p},{q})")));
            }
        }
        for p in 0..p_len {
            for q in 0..dc.rows() {
                if !dc.h(p + 1, q).mul(&dc.h(p, q))?.is_zero() {
                    return Err(Error::NotADoubleComplex(format!("δ∘δ ≠ 0 at ({p},{q})")));
                }
                if !dc.v(p, q + 1).mul(&dc.v(p, q))?.is_zero() {
                    return Err(Error::NotADoubleComplex(format!("∂̄∘∂̄ ≠ 0 at ({p},{q})")));
                }
                let s = dc.v(p + 1, q).mul(&dc.h(p, q))?.add(&dc.h(p, q + 1).mul(&dc.v(p, q))?)?;
                if !s.is_zero() {
                    return Err(Error::NotADoubleComplex(format!("δ∂̄ + ∂̄δ ≠ 0 at ({p},{q})")));
                }
            }
        }
        Ok(dc)
    }

    pub fn cols(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> usize {
        self.dims[0].len()
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    /// `δ` out of `(p, q)`; zero outside the stored maps.
    pub fn h(&self, p: usize, q: usize) -> QMatrix {
        self.horizontal.get(&(p, q)).cloned().unwrap_or_else(|| zero_map(self.dim(p + 1, q), self.dim(p, q)))
    }

    /// `∂̄` out of `(p, q)`.
    pub fn v(&self, p: usize, q: usize) -> QMatrix {
        self.vertical.get(&(p, q)).cloned().unwrap_or_else(|| zero_map(self.dim(p, q + 1), self.dim(p, q)))
    }

    /// Total complex with `D = δ + ∂̄`; degree `k` is `⊕_{p+q=k} E^{p,q}`
    /// ordered by increasing `p`.
    pub fn total_complex(&self) -> Result<CochainComplex> {
        let top = self.cols() + self.rows() - 2;
        let cells = |k: usize| -> Vec<(usize, usize)> {
            (0..self.cols()).filter(|&p| k >= p && k - p < self.rows()).map(|p| (p, k - p)).collect()
        };
        let offsets = |k: usize| -> BTreeMap<(usize, usize), usize> {
            let mut o = BTreeMap::new();
            let mut acc = 0;
            for c in cells(k) {
                o.insert(c, acc);
                acc += self.dim(c.0, c.1);
            }
            o
        };
        let dims: Vec<usize> = (0..=top).map(|k| cells(k).iter().map(|&(p, q)| self.dim(p, q)).sum()).collect();
        let mut maps = Vec::new();
        for k in 0..top {
            let (src, dst) = (offsets(k), offsets(k + 1));
            let mut m = QMatrix::zeros(dims[k + 1], dims[k]);
            for (&(p, q), &c0) in &src {
                for (target, block) in [((p + 1, q), self.h(p, q)), ((p, q + 1), self.v(p, q))] {
                    if let Some(&r0) = dst.get(&target) {
                        for i in 0..block.rows() {
                            for j in 0..block.cols() {
                                m[(r0 + i, c0 + j)] = block[(i, j)].clone();
                            }
                        }
                    }
                }
            }
            maps.push(m);
        }
        CochainComplex::new(dims, maps)
    }
}

/// Random invertible integer matrix `L·U` with unit diagonals.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> QMatrix {
    let mut l = QMatrix::identity(n);
    let mut u = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = int(rng.gen_range(-2..=2));
            u[(j, i)] = int(rng.gen_range(-2..=2));
        }
    }
    l.mul(&u).expect("square")
}

/// Random `rows × cols` matrix of exactly the given rank.
pub fn random_matrix_of_rank(rows: usize, cols: usize, rank: usize, rng: &mut impl Rng) -> QMatrix {
    assert!(rank <= rows.min(cols), "rank exceeds shape");
    let mut core = QMatrix::zeros(rows, cols);
    for i in 0..rank {
        core[(i, i)] = Rational::one();
    }
    let a = random_invertible(rows, rng);
    let b = random_invertible(cols, rng);
    a.mul(&core).and_then(|m| m.mul(&b)).expect("shapes agree")
}

impl DoubleComplex {
    /// A finite model whose `E₁` page is `e1` (indexed `[p][q]`) with the
    /// given induced horizontal maps.  Each cell is thickened by `extra`
    /// vertically contractible pairs and every cell is then conjugated by a
    /// random invertible matrix, so the pages have to be recomputed.
    pub fn e1_model(
        e1: &[Vec<usize>],
        maps: &BTreeMap<(usize, usize), QMatrix>,
        extra: usize,
        seed: u64,
    ) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cols = e1.len();
        let rows = e1.first().map_or(0, |c| c.len());
        // cell layout: [cohomology | pair sources | pair targets]
        let src_pairs = |q: usize| if q + 1 < rows { extra } else { 0 };
        let tgt_pairs = |q: usize| if q > 0 { extra } else { 0 };
        let dims: Vec<Vec<usize>> =
            (0..cols).map(|p| (0..rows).map(|q| e1[p][q] + src_pairs(q) + tgt_pairs(q)).collect()).collect();
        let conj: BTreeMap<(usize, usize), (QMatrix, QMatrix)> = (0..cols)
            .flat_map(|p| (0..rows).map(move |q| (p, q)))
            .map(|(p, q)| {
                let s = random_invertible(dims[p][q], &mut rng);
                let inv = s.inverse().expect("invertible");
                ((p, q), (s, inv))
            })
            .collect();
        let mut horizontal = BTreeMap::new();
        let mut vertical = BTreeMap::new();
        for p in 0..cols {
            for q in 0..rows {
                if p + 1 < cols {
                    let mut h = QMatrix::zeros(dims[p + 1][q], dims[p][q]);
                    if let Some(m) = maps.get(&(p, q)) {
                        if m.rows() != e1[p + 1][q] || m.cols() != e1[p][q] {
                            return Err(Error::Dimension(format!("E1 map at ({p},{q}) has the wrong shape")));
                        }
                        for i in 0..m.rows() {
                            for j in 0..m.cols() {
                                h[(i, j)] = m[(i, j)].clone();
                            }
                        }
                    }
                    let h = conj[&(p + 1, q)].0.mul(&h)?.mul(&conj[&(p, q)].1)?;
                    horizontal.insert((p, q), h);
                }
                if q + 1 < rows {
                    let mut v = QMatrix::zeros(dims[p][q + 1], dims[p][q]);
                    for t in 0..extra {
                        let from = e1[p][q] + t;
                        let to = e1[p][q + 1] + src_pairs(q + 1) + t;
                        v[(to, from)] = Rational::one();
                    }
                    let v = conj[&(p, q + 1)].0.mul(&v)?.mul(&conj[&(p, q)].1)?;
                    vertical.insert((p, q), v);
                }
            }
        }
        DoubleComplex::new(dims, horizontal, vertical)
    }
}

/// Explicit basis of `ker f / im g` for `g : A → V`, `f : V → B`.
struct Subquotient {
    /// Columns spanning `im g`.
    image: Vec<Vec<Rational>>,
    /// Representatives of a basis of the quotient.
    reps: Vec<Vec<Rational>>,
    dim_v: usize,
}

impl Subquotient {
    fn new(g: &QMatrix, f: &QMatrix, dim_v: usize) -> Self {
        let gt = g.transpose().rref();
        let image: Vec<Vec<Rational>> = (0..gt.pivots.len()).map(|r| gt.matrix.row(r).to_vec()).collect();
        let kernel = f.nullspace();
        let mut reps = Vec::new();
        let mut span = image.clone();
        for z in kernel {
            let mut trial = span.clone();
            trial.push(z.clone());
            if QMatrix::from_columns(dim_v, &trial).rank() == trial.len() {
                span = trial;
                reps.push(z);
            }
        }
        Subquotient { image, reps, dim_v }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Quotient coordinates of a cycle.
    fn project(&self, z: &[Rational]) -> Result<Vec<Rational>> {
        let mut cols = self.image.clone();
        cols.extend(self.reps.iter().cloned());
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        let m = QMatrix::from_columns(self.dim_v, &cols);
        let x = m.solve(z).ok_or_else(|| Error::Certificate("projection of a non-cycle".into()))?;
        Ok(x[self.image.len()..].to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPages {
    /// `e1[p][q] = dim H^q(E^{p,•}, ∂̄)`.
    pub e1: Vec<Vec<usize>>,
    /// Cohomology of the induced `δ` on `E₁`.
    pub e2: Vec<Vec<usize>>,
    pub total: Vec<usize>,
}

impl SpectralPages {
    pub fn e2_diagonal_sums(&self) -> Vec<usize> {
        let mut out = vec![0; self.total.len()];
        for (p, col) in self.e2.iter().enumerate() {
            for (q, &d) in col.iter().enumerate() {
                out[p + q] += d;
            }
        }
        out
    }

    /// `Σ_{p+q=k} dim E₂^{p,q} = dim H^k` for all `k`.
    pub fn degenerates_at_e2(&self) -> bool {
        self.e2_diagonal_sums() == self.total
    }
}

/// `E₁`, `E₂` and total cohomology; `E₂` is computed from explicit
/// subquotient bases by lifting and projecting.
pub fn spectral_pages(dc: &DoubleComplex) -> Result<SpectralPages> {
    let (cols, rows) = (dc.cols(), dc.rows());
    let mut sq: BTreeMap<(usize, usize), Subquotient> = BTreeMap::new();
    for p in 0..cols {
        for q in 0..rows {
            let g = if q == 0 { zero_map(dc.dim(p, 0), 0) } else { dc.v(p, q - 1) };
            sq.insert((p, q), Subquotient::new(&g, &dc.v(p, q), dc.dim(p, q)));
        }
    }
    let e1: Vec<Vec<usize>> = (0..cols).map(|p| (0..rows).map(|q| sq[&(p, q)].dim()).collect()).collect();
    let mut induced: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
    for p in 0..cols.saturating_sub(1) {
        for q in 0..rows {
            let src = &sq[&(p, q)];
            let dst = &sq[&(p + 1, q)];
            let h = dc.h(p, q);
            let columns: Vec<Vec<Rational>> =
                src.reps.iter().map(|r| dst.project(&h.mul_vec(r))).collect::<Result<_>>()?;
            induced.insert((p, q), QMatrix::from_columns(dst.dim(), &columns));
        }
    }
    let rank_at = |p: usize, q: usize| induced.get(&(p, q)).map_or(0, rank_exact);
    let e2 = (0..cols)
        .map(|p| {
            (0..rows)
                .map(|q| {
                    let inc = if p == 0 { 0 } else { rank_at(p - 1, q) };
                    e1[p][q] - rank_at(p, q) - inc
                })
                .collect()
        })
        .collect();
    let total = dc.total_complex()?.cohomology_dims();
    Ok(SpectralPages { e1, e2, total })
}

/// A sequence `V_0 → V_1 → … → V_{N−1}`, exact at every interior slot,
/// with some dimensions and map ranks known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactSequenceProblem {
    pub labels: Vec<String>,
    pub dims: Vec<Option<i64>>,
    /// `ranks[i]` is the rank of `V_i → V_{i+1}`.
    pub ranks: Vec<Option<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactSequenceOutcome {
    Unique { dims: Vec<i64>, ranks: Vec<i64> },
    /// Shortest window of slots `first..=last` whose constraints already
    /// contradict each other.
    Inconsistent { first: usize, last: usize, reason: String },
    Underdetermined { free: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Interval {
    lo: i64,
    hi: Option<i64>,
}

impl Interval {
    fn known(v: Option<i64>) -> Self {
        match v {
            Some(x) => Interval { lo: x, hi: Some(x) },
            None => Interval { lo: 0, hi: None },
        }
    }

    fn empty(&self) -> bool {
        self.hi.is_some_and(|h| h < self.lo)
    }

    fn fixed(&self) -> Option<i64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }

    fn raise(&mut self, lo: i64) -> bool {
        if lo > self.lo {
            self.lo = lo;
            true
        } else {
            false
        }
    }

    fn lower(&mut self, hi: Option<i64>) -> bool {
        match (hi, self.hi) {
            (Some(h), None) => {
                self.hi = Some(h);
                true
            }
            (Some(h), Some(c)) if h < c => {
                self.hi = Some(h);
                true
            }
            _ => false,
        }
    }
}

fn add_hi(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

fn sub_hi(a: Option<i64>, lo: i64) -> Option<i64> {
    a.map(|x| x - lo)
}

/// Bound propagation on `slots a..=b` (with incident ranks) until fixpoint.
/// Returns `None` on contradiction.
fn propagate(p: &ExactSequenceProblem, a: usize, b: usize) -> Option<(Vec<Interval>, Vec<Interval>)> {
    let n = p.dims.len();
    let mut d: Vec<Interval> = p.dims.iter().map(|&x| Interval::known(x)).collect();
    let mut r: Vec<Interval> = p.ranks.iter().map(|&x| Interval::known(x)).collect();
    loop {
        let mut changed = false;
        for i in a..=b {
            if i > 0 {
                let j = i - 1;
                changed |= r[j].lower(d[i].hi);
                changed |= d[i].raise(r[j].lo);
            }
            if i + 1 < n {
                changed |= r[i].lower(d[i].hi);
                changed |= d[i].raise(r[i].lo);
            }
            if i == 0 || i + 1 == n {
                continue;
            }
            let (l, rr) = (i - 1, i);
            changed |= d[i].raise(r[l].lo + r[rr].lo);
            changed |= d[i].lower(add_hi(r[l].hi, r[rr].hi));
            let (dl, dh) = (d[i].lo, d[i].hi);
            let (left, right) = (r[l], r[rr]);
            changed |= r[l].raise(dl - right.hi.unwrap_or(i64::MAX / 4));
            changed |= r[l].lower(sub_hi(dh, right.lo));
            changed |= r[rr].raise(dl - left.hi.unwrap_or(i64::MAX / 4));
            changed |= r[rr].lower(sub_hi(dh, left.lo));
        }
        if d.iter().chain(&r).any(Interval::empty) {
            return None;
        }
        if !changed {
            return Some((d, r));
        }
    }
}

impl ExactSequenceProblem {
    pub fn new(dims: Vec<Option<i64>>, ranks: Vec<Option<i64>>) -> Result<Self> {
        if dims.is_empty() || ranks.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!("{} slots need {} ranks", dims.len(), dims.len().saturating_sub(1))));
        }
        let labels = (0..dims.len()).map(|i| format!("V{i}")).collect();
        Ok(ExactSequenceProblem { labels, dims, ranks })
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Exactness and rank bounds hold for a full assignment.
    pub fn satisfied_by(&self, dims: &[i64], ranks: &[i64]) -> bool {
        let n = dims.len();
        let known = |k: &[Option<i64>], v: &[i64]| k.iter().zip(v).all(|(k, v)| k.is_none_or(|x| x == *v));
        known(&self.dims, dims)
            && known(&self.ranks, ranks)
            && dims.iter().all(|&x| x >= 0)
            && ranks.iter().enumerate().all(|(i, &r)| r >= 0 && r <= dims[i] && r <= dims[i + 1])
            && (1..n.saturating_sub(1)).all(|i| dims[i] == ranks[i - 1] + ranks[i])
    }

    pub fn solve(&self) -> ExactSequenceOutcome {
        let n = self.dims.len();
        match propagate(self, 0, n - 1) {
            None => {
                for len in 1..=n {
                    for first in 0..=n - len {
                        let last = first + len - 1;
                        if propagate(self, first, last).is_none() {
                            return ExactSequenceOutcome::Inconsistent {
                                first,
                                last,
                                reason: format!(
                                    "no non-negative ranks make {} exact",
                                    self.labels[first..=last].join(" → ")
                                ),
                            };
                        }
                    }
                }
                unreachable!("full window is inconsistent")
            }
            Some((d, r)) => {
                let free: Vec<String> = d
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| x.fixed().is_none())
                    .map(|(i, _)| format!("dim {}", self.labels[i]))
                    .chain(
                        r.iter()
                            .enumerate()
                            .filter(|(_, x)| x.fixed().is_none())
                            .map(|(i, _)| format!("rank {} → {}", self.labels[i], self.labels[i + 1])),
                    )
                    .collect();
                if !free.is_empty() {
                    return ExactSequenceOutcome::Underdetermined { free };
                }
                let dims: Vec<i64> = d.iter().map(|x| x.lo).collect();
                let ranks: Vec<i64> = r.iter().map(|x| x.lo).collect();
                debug_assert!(self.satisfied_by(&dims, &ranks));
                ExactSequenceOutcome::Unique { dims, ranks }
            }
        }
    }
}

pub fn solve_exact_sequence(p: &ExactSequenceProblem) -> ExactSequenceOutcome {
    p.solve()
}

impl fmt::Display for ExactSequenceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactSequenceOutcome::Unique { dims, ranks } => write!(f, "unique: dims {dims:?}, ranks {ranks:?}"),
            ExactSequenceOutcome::Inconsistent { first, last, reason } => {
                write!(f, "inconsistent on slots {first}..={last}: {reason}")
            }
            ExactSequenceOutcome::Underdetermined { free } => write!(f, "underdetermined: {}", free.join(", ")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(rank_exact(&QMatrix::identity(3)), 3);
        assert_eq!(rank_exact(&QMatrix::zeros(2, 4)), 0);
        assert_eq!(rank_exact(&q(&[&[1, 2], &[2, 4], &[3, 7]])), 2);
    }

    #[test]
    fn short_sequences() {
        let p = ExactSequenceProblem::new(vec![Some(0), Some(1), Some(3), None, Some(0)], vec![None; 4]).unwrap();
        match p.solve() {
            ExactSequenceOutcome::Unique { dims, .. } => assert_eq!(dims[3], 2),
            other => panic!("{other}"),
        }
        let bad = ExactSequenceProblem::new(vec![Some(1), Some(3), Some(1)], vec![Some(0), Some(0)]).unwrap();
        assert_eq!(
            bad.solve(),
            ExactSequenceOutcome::Inconsistent { first: 1, last: 1, reason: "no non-negative ranks make V1 exact".into() }
        );
        let free = ExactSequenceProblem::new(vec![Some(2), None, Some(2)], vec![None, None]).unwrap();
        assert!(matches!(free.solve(), ExactSequenceOutcome::Underdetermined { .. }));
    }
}

/// One map in a complex file: `from → to = from + 1`, sparse `[row, col, value]` entries.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub from: usize,
    pub to: usize,
    pub entries: Vec<(usize, usize, RatLit)>,
}

/// `{"dims": [...], "maps": [{"from", "to", "entries"}]}`; maps not listed are zero.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
}

impl ComplexFile {
    pub fn to_complex(&self) -> Result<CochainComplex> {
        let n = self.dims.len();
        if n == 0 {
            return Err(Error::Dimension("complex has no spaces".into()));
        }
        let mut maps: Vec<QMatrix> = (0..n - 1).map(|k| QMatrix::zeros(self.dims[k + 1], self.dims[k])).collect();
        let mut seen = vec![false; n - 1];
        for m in &self.maps {
            if m.to != m.from + 1 || m.to >= n {
                return Err(Error::Dimension(format!("map {} → {} is not a differential of this complex", m.from, m.to)));
            }
            if std::mem::replace(&mut seen[m.from], true) {
                return Err(Error::Dimension(format!("map {} → {} listed twice", m.from, m.to)));
            }
            let target = &mut maps[m.from];
            for (r, c, v) in &m.entries {
                if *r >= target.rows() || *c >= target.cols() {
                    return Err(Error::Dimension(format!("entry ({r}, {c}) outside d_{}", m.from)));
                }
                target[(*r, *c)] = v.value()?;
            }
        }
        CochainComplex::new(self.dims.clone(), maps)
    }

    pub fn from_complex(c: &CochainComplex) -> Self {
        let maps = c
            .maps()
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut entries = Vec::new();
                for i in 0..m.rows() {
                    for (j, v) in m.row(i).iter().enumerate() {
                        if !v.is_zero() {
                            entries.push((i, j, RatLit::from_rational(v)));
                        }
                    }
                }
                MapSpec { from: k, to: k + 1, entries }
            })
            .collect();
        ComplexFile { dims: c.dims().to_vec(), maps }
    }
}

pub fn parse_complex(text: &str) -> Result<CochainComplex> {
    serde_json::from_str::<ComplexFile>(text)?.to_complex()
}
