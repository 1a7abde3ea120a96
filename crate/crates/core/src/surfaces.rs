//! Poisson cohomology tables for ℂP² with a cubic, del Pezzo surfaces,
//! Hirzebruch surfaces and nodal corrections.
//!
//! Sheaf cohomology dimensions enter as fixed tables. The only map computed
//! from first principles is `δ_β : H⁰(Θ) → H⁰(K⁻¹)` on ℂP².

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{random_matrix_of_rank, spectral_pages, DoubleComplex, ExactSequenceOutcome, ExactSequenceProblem};
use crate::linalg::{CMatrix, QMatrix};
use crate::scalar::{GaussRat, Rational};
use crate::symkernel::{Blade, Chart, ChartBuilder, Expr, Monomial, Polyvector};

/// Exponents `(i, j)` of `z1^i z2^j` in the order
/// `1, z1, z2, z1², z1z2, z2², z1³, z1²z2, z1z2², z2³`.
pub const CUBIC_BASIS: [(i32, i32); 10] =
    [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];

/// Names of the projective vector fields spanning `H⁰(ℂP², Θ)`.
pub const VECTOR_FIELD_BASIS: [&str; 8] = ["∂1", "∂2", "z1∂1", "z1∂2", "z2∂1", "z2∂2", "z1E", "z2E"];

/// Affine chart `(z1, z2)` of ℂP².
pub fn cp2_chart() -> Arc<Chart> {
    ChartBuilder::new(&["z1", "z2"]).build().expect("static chart")
}

fn mono(i: i32, j: i32) -> Monomial {
    Monomial::from_exponents(vec![i, j])
}

/// The cubic `Σ c_k m_k` over [`CUBIC_BASIS`].
pub fn cubic_from_coefficients(c: &[Rational]) -> Result<Expr> {
    if c.len() != CUBIC_BASIS.len() {
        return Err(Error::Dimension(format!("a cubic has 10 coefficients, got {}", c.len())));
    }
    Ok(Expr::from_terms(CUBIC_BASIS.iter().zip(c).map(|(&(i, j), x)| (mono(i, j), GaussRat::real(x.clone())))))
}

/// Coefficients of a polynomial of degree `≤ 3` in `z1, z2` over
/// [`CUBIC_BASIS`]; rejects higher degree, other slots and complex
/// coefficients.
pub fn cubic_coefficients(chart: &Chart, f: &Expr) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); CUBIC_BASIS.len()];
    for (m, c) in f.terms() {
        let e = m.exponents();
        if let Some((slot, _)) = e.iter().enumerate().skip(2).find(|(_, &x)| x != 0) {
            return Err(Error::Degree {
                expected: "a polynomial in z1, z2".into(),
                found: chart.slot_name(slot).to_string(),
            });
        }
        let (i, j) = (m.exp(0), m.exp(1));
        if i < 0 || j < 0 || i + j > 3 {
            return Err(Error::Degree { expected: "total degree ≤ 3".into(), found: format!("z1^{i} z2^{j}") });
        }
        if !c.is_real() {
            return Err(Error::NotReal);
        }
        let k = CUBIC_BASIS.iter().position(|&b| b == (i, j)).expect("degree ≤ 3");
        out[k] = c.re.clone();
    }
    Ok(out)
}

fn projective_vector_fields(c: &Arc<Chart>) -> Vec<Polyvector> {
    let z1 = Expr::monomial(mono(1, 0));
    let z2 = Expr::monomial(mono(0, 1));
    let d1 = Polyvector::generator(c, 0);
    let d2 = Polyvector::generator(c, 1);
    let euler = d1.scale(&z1).add(&d2.scale(&z2)).expect("same chart");
    vec![
        d1.clone(),
        d2.clone(),
        d1.scale(&z1),
        d2.scale(&z1),
        d1.scale(&z2),
        d2.scale(&z2),
        euler.scale(&z1),
        euler.scale(&z2),
    ]
}

/// Matrix of `α ↦ [β, α]` with `β = f ∂1∧∂2`, from the eight projective
/// vector fields to the ten cubic coefficients.
pub fn cp2_poisson_matrix(f: &Expr) -> Result<QMatrix> {
    let c = cp2_chart();
    cubic_coefficients(&c, f)?;
    let beta = Polyvector::generator(&c, 0).wedge(&Polyvector::generator(&c, 1))?.scale(f);
    let top = Polyvector::generator(&c, 0).wedge(&Polyvector::generator(&c, 1))?;
    let mut columns = Vec::new();
    for alpha in projective_vector_fields(&c) {
        let image = beta.schouten(&alpha)?;
        let g = image.coefficient(Blade::from_indices(&[0, 1]).expect("distinct").1);
        if image.sub(&top.scale(&g))?.num_terms() != 0 {
            return Err(Error::Certificate("bracket left the top degree".into()));
        }
        let coeffs = cubic_coefficients(&c, &g)
            .map_err(|_| Error::Certificate("bracket image is not a cubic".into()))?;
        columns.push(coeffs);
    }
    Ok(QMatrix::from_columns(CUBIC_BASIS.len(), &columns))
}

/// `dim H⁰(S_k, Θ)`, `dim H¹(S_k, Θ)`, `dim H⁰(S_k, K⁻¹)`.
pub fn delpezzo_sheaf_dims(k: usize) -> Result<(usize, usize, usize)> {
    if k > 8 {
        return Err(Error::OutOfRange(format!("del Pezzo index k = {k} is not in 0..=8")));
    }
    let h0 = if k <= 3 { 8 - 2 * k } else { 0 };
    let h1 = if k >= 5 { 2 * k - 8 } else { 0 };
    Ok((h0, h1, 10 - k))
}

/// `E₁` grid `[p][q]` of the Poisson double complex of `S_k`.
pub fn delpezzo_e1(k: usize) -> Result<Vec<Vec<usize>>> {
    let (h0, h1, hk) = delpezzo_sheaf_dims(k)?;
    Ok(vec![vec![1, 0, 0], vec![h0, h1, 0], vec![hk, 0, 0]])
}

/// `H⁰, H¹, H²` of the Lie algebroid complex of `S_k`, reading `H²` as
/// `H¹(Θ) ⊕ coker δ⁰`.
pub fn delpezzo_dims(k: usize, ker_delta0: usize) -> Result<[usize; 3]> {
    let (h0, h1, hk) = delpezzo_sheaf_dims(k)?;
    if ker_delta0 > h0 {
        return Err(Error::OutOfRange(format!("ker δ⁰ = {ker_delta0} exceeds dim H⁰(Θ) = {h0}")));
    }
    let rank = h0 - ker_delta0;
    Ok([1, ker_delta0, h1 + hk - rank])
}

/// `H²` under the literal image reading `H¹(Θ) ⊕ im δ⁰`.
pub fn delpezzo_h2_image_reading(k: usize, ker_delta0: usize) -> Result<usize> {
    let (h0, h1, _) = delpezzo_sheaf_dims(k)?;
    if ker_delta0 > h0 {
        return Err(Error::OutOfRange(format!("ker δ⁰ = {ker_delta0} exceeds dim H⁰(Θ) = {h0}")));
    }
    Ok(h1 + h0 - ker_delta0)
}

/// Spectral pages and cohomology of a double complex, laid out for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceTable {
    pub name: String,
    pub parameter: i64,
    /// `e1[p][q] = dim H^q(S, ∧^pΘ)`.
    pub e1: Vec<Vec<usize>>,
    pub e2: Vec<Vec<usize>>,
    /// Lie algebroid cohomology `H⁰..H⁴` of the model double complex.
    pub total: Vec<usize>,
    /// `H^i(S∖D)`.
    pub complement: Vec<usize>,
    pub nodes: usize,
    pub degenerates_at_e2: bool,
}

impl SurfaceTable {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// Grids with `q` decreasing downwards and `p = 0, 1, 2` across.
    pub fn to_markdown(&self) -> String {
        let mut s = format!("### {} ({})\n\n", self.name, self.parameter);
        for (title, grid) in [("E₁", &self.e1), ("E₂", &self.e2)] {
            let _ = writeln!(s, "{title} | p=0 | p=1 | p=2\n---|---|---|---");
            let rows = grid.first().map_or(0, |c| c.len());
            for q in (0..rows).rev() {
                let cells: Vec<String> = grid.iter().map(|col| col[q].to_string()).collect();
                let _ = writeln!(s, "q={q} | {}", cells.join(" | "));
            }
            s.push('\n');
        }
        let head: Vec<String> = (0..self.total.len()).map(|i| format!("H{i}")).collect();
        let line = |label: &str, v: &[usize]| {
            let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("{label} | {} |\n", cells.join(" | "))
        };
        let _ = writeln!(s, "term | {} |\n---|{}", head.join(" | "), "---|".repeat(head.len()));
        s.push_str(&line("Lie algebroid", &self.total));
        s.push_str(&line("S∖D", &self.complement));
        let _ = writeln!(s, "\nnodes: {}, E₂ degeneration: {}", self.nodes, self.degenerates_at_e2);
        s
    }
}

fn pad(v: &[usize], n: usize) -> Vec<usize> {
    let mut out = v.to_vec();
    out.resize(n, 0);
    out
}

fn model_table(
    name: &str,
    parameter: i64,
    e1: Vec<Vec<usize>>,
    maps: BTreeMap<(usize, usize), QMatrix>,
    complement: Vec<usize>,
    nodes: usize,
    seed: u64,
) -> Result<SurfaceTable> {
    let dc = DoubleComplex::e1_model(&e1, &maps, 1, seed)?;
    let pages = spectral_pages(&dc)?;
    if pages.e1 != e1 {
        return Err(Error::Certificate(format!("model E₁ {:?} differs from the input {:?}", pages.e1, e1)));
    }
    Ok(SurfaceTable {
        name: name.into(),
        parameter,
        degenerates_at_e2: pages.degenerates_at_e2(),
        total: pad(&pages.total, 5),
        e1,
        e2: pages.e2,
        complement: pad(&complement, 5),
        nodes,
    })
}

/// ℂP² with the anticanonical cubic `f = 0` and `nodes` ordinary nodes.
///
/// The complement dims are the Lie algebroid dims with `H²` reduced by the
/// node count.
pub fn cp2_table(f: &Expr, nodes: usize, seed: u64) -> Result<SurfaceTable> {
    let m = cp2_poisson_matrix(f)?;
    let maps = BTreeMap::from([((1, 0), m)]);
    let mut t = model_table("CP2", 0, delpezzo_e1(0)?, maps, Vec::new(), nodes, seed)?;
    let mut complement = t.total.clone();
    complement[2] = complement[2]
        .checked_sub(nodes)
        .ok_or_else(|| Error::OutOfRange(format!("{nodes} nodes exceed H² = {}", t.total[2])))?;
    t.complement = complement;
    Ok(t)
}

/// `S_k` with a generic rank `dim H⁰(Θ) − ker` map for `δ⁰`.
pub fn delpezzo_table(k: usize, ker_delta0: usize, seed: u64) -> Result<SurfaceTable> {
    let dims = delpezzo_dims(k, ker_delta0)?;
    let (h0, _, hk) = delpezzo_sheaf_dims(k)?;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed ^ 0x5eed);
    let maps = BTreeMap::from([((1, 0), random_matrix_of_rank(hk, h0, h0 - ker_delta0, &mut rng))]);
    let complement = vec![1, 0, k + 2, 0, 0];
    let t = model_table("del Pezzo", k as i64, delpezzo_e1(k)?, maps, complement, 0, seed)?;
    if t.total[..3] != dims {
        return Err(Error::Certificate(format!("model totals {:?} differ from {dims:?}", t.total)));
    }
    Ok(t)
}

/// `dim H¹(F_e, Θ)`, `H¹(F_e, K⁻¹)`, `H⁰(F_e, Θ)`, `H⁰(F_e, K⁻¹)`.
pub fn hirzebruch_sheaf_dims(e: usize) -> Result<(i64, i64, i64, i64)> {
    if e == 0 {
        return Err(Error::OutOfRange("Hirzebruch index e must be positive".into()));
    }
    let e = e as i64;
    Ok((e - 1, if e >= 4 { e - 3 } else { 0 }, e + 5, e + 6))
}

/// `H^i(F_e∖D)` for a smooth anticanonical `D`.
pub const HIRZEBRUCH_COMPLEMENT: [usize; 5] = [1, 0, 3, 0, 0];

/// Ranks of `δ⁰ : H⁰(Θ) → H⁰(K⁻¹)` and `δ¹ : H¹(Θ) → H¹(K⁻¹)` forced by
/// `E₂` degeneration and the complement dims, or the first contradiction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HirzebruchOutcome {
    Consistent { rank_delta0: i64, rank_delta1: i64, h2: i64, injective: bool, surjective: bool },
    Inconsistent { row: usize, certificate: String },
}

/// The two exact rows that `E₂` degeneration imposes.
///
/// Row `q = 0`: `0 → H¹ → H⁰(Θ) → H⁰(K⁻¹) → E₂^{2,0} → 0`.
/// Row `q = 1`: `0 → E₂^{1,1} → H¹(Θ) → H¹(K⁻¹) → H³ → 0`,
/// with `E₂^{1,1} = H² − E₂^{2,0}`.
pub fn hirzebruch_rows(e: usize) -> Result<(ExactSequenceProblem, Option<ExactSequenceProblem>)> {
    let (h1t, h1k, h0t, h0k) = hirzebruch_sheaf_dims(e)?;
    let [_, c1, c2, c3, _] = HIRZEBRUCH_COMPLEMENT.map(|x| x as i64);
    let row0 = ExactSequenceProblem::new(
        vec![Some(0), Some(c1), Some(h0t), Some(h0k), None, Some(0)],
        vec![Some(0), None, None, None, Some(0)],
    )?
    .with_labels(&["0", "H1", "H0(Θ)", "H0(K⁻¹)", "E2(2,0)", "0"]);
    let ExactSequenceOutcome::Unique { dims, .. } = row0.solve() else {
        return Ok((row0, None));
    };
    let e11 = c2 - dims[4];
    let row1 = ExactSequenceProblem::new(
        vec![Some(0), (e11 >= 0).then_some(e11), Some(h1t), Some(h1k), Some(c3), Some(0)],
        vec![Some(0), None, None, None, Some(0)],
    )?
    .with_labels(&["0", "E2(1,1)", "H1(Θ)", "H1(K⁻¹)", "H3", "0"]);
    Ok((row0, Some(row1)))
}

pub fn hirzebruch_consistency(e: usize) -> Result<HirzebruchOutcome> {
    let (row0, row1) = hirzebruch_rows(e)?;
    let (h1t, h1k, h0t, _) = hirzebruch_sheaf_dims(e)?;
    let (e20, r0) = match row0.solve() {
        ExactSequenceOutcome::Unique { dims, ranks } => (dims[4], ranks[2]),
        other => return Ok(HirzebruchOutcome::Inconsistent { row: 0, certificate: other.to_string() }),
    };
    let row1 = row1.expect("row 0 solved");
    match row1.solve() {
        ExactSequenceOutcome::Unique { dims, ranks } => {
            let r1 = ranks[2];
            Ok(HirzebruchOutcome::Consistent {
                rank_delta0: r0,
                rank_delta1: r1,
                h2: e20 + dims[1],
                injective: r0 == h0t,
                surjective: r1 == h1k && r1 <= h1t,
            })
        }
        other => Ok(HirzebruchOutcome::Inconsistent { row: 1, certificate: other.to_string() }),
    }
}

/// `true` iff some `α ∈ H¹(Θ)` has `δ¹α ≠ 0`, i.e. `rank δ¹ ≥ 1`.
pub fn obstruction_witness_dims(e: usize) -> Result<bool> {
    if e <= 3 {
        return Err(Error::OutOfRange(format!("the obstruction argument needs e > 3, got {e}")));
    }
    match hirzebruch_consistency(e)? {
        HirzebruchOutcome::Consistent { rank_delta1, .. } => Ok(rank_delta1 >= 1),
        HirzebruchOutcome::Inconsistent { certificate, .. } => Err(Error::Certificate(certificate)),
    }
}

/// `F_e` model with maps of the solved ranks; `e ≤ 3` has no model when the
/// rows are inconsistent.
pub fn hirzebruch_table(e: usize, seed: u64) -> Result<SurfaceTable> {
    let HirzebruchOutcome::Consistent { rank_delta0, rank_delta1, .. } = hirzebruch_consistency(e)? else {
        return Err(Error::Certificate(format!("Hirzebruch tables for e = {e} are inconsistent")));
    };
    let (h1t, h1k, h0t, h0k) = hirzebruch_sheaf_dims(e)?;
    let u = |x: i64| x as usize;
    let e1 = vec![vec![1, 0, 0], vec![u(h0t), u(h1t), 0], vec![u(h0k), u(h1k), 0]];
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed ^ 0xf0e);
    let maps = BTreeMap::from([
        ((1, 0), random_matrix_of_rank(u(h0k), u(h0t), u(rank_delta0), &mut rng)),
        ((1, 1), random_matrix_of_rank(u(h1k), u(h1t), u(rank_delta1), &mut rng)),
    ]);
    model_table("Hirzebruch", e as i64, e1, maps, HIRZEBRUCH_COMPLEMENT.to_vec(), 0, seed)
}

/// A plane curve germ `f = 0` at the origin and a jet bound.
#[derive(Clone, Debug)]
pub struct LocalAlgebraProblem {
    pub f: Expr,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalAlgebraDim {
    pub dim: usize,
    pub bound: usize,
    /// Same dimension at `bound + 1`.
    pub stabilized: bool,
}

/// `dim 𝒪/(I + 𝔪^bound)` for the ideal generated by `gens` in `z1, z2`.
pub fn truncated_quotient_dim(gens: &[Expr], bound: usize) -> usize {
    let monos: Vec<(i32, i32)> =
        (0..bound as i32).flat_map(|d| (0..=d).rev().map(move |i| (i, d - i))).collect();
    let index: BTreeMap<(i32, i32), usize> = monos.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut columns = Vec::new();
    for g in gens {
        for &(i, j) in &monos {
            let mut col = vec![GaussRat::zero(); monos.len()];
            for (m, c) in g.terms() {
                if let Some(&k) = index.get(&(m.exp(0) + i, m.exp(1) + j)) {
                    col[k] = &col[k] + c;
                }
            }
            if col.iter().any(|x| !x.is_zero()) {
                columns.push(col);
            }
        }
    }
    if columns.is_empty() {
        return monos.len();
    }
    monos.len() - CMatrix::from_columns(monos.len(), &columns).rank()
}

/// `dim 𝒪/(f, ∂f/∂z1, ∂f/∂z2)` truncated at the jet bound, with a
/// stabilization check at the next bound.
pub fn local_algebra_dim(p: &LocalAlgebraProblem) -> Result<LocalAlgebraDim> {
    if p.bound < 2 {
        return Err(Error::OutOfRange(format!("jet bound {} is below 2", p.bound)));
    }
    let c = cp2_chart();
    for (m, _) in p.f.terms() {
        if m.exponents().iter().enumerate().any(|(s, &x)| x < 0 || (s >= 2 && x != 0)) {
            return Err(Error::Degree { expected: "a polynomial in z1, z2".into(), found: "other slots".into() });
        }
    }
    if !p.f.coefficient(&Monomial::one()).is_zero() {
        return Err(Error::OutOfRange("f(0, 0) ≠ 0".into()));
    }
    let gens = [p.f.clone(), p.f.partial(&c, 0)?, p.f.partial(&c, 1)?];
    let dim = truncated_quotient_dim(&gens, p.bound);
    let next = truncated_quotient_dim(&gens, p.bound + 1);
    Ok(LocalAlgebraDim { dim, bound: p.bound, stabilized: dim == next })
}

/// Lie algebroid dims from complement dims for a divisor with `m` nodes:
/// `H²` gains `m`. Requires `H³(S∖D) = 0`.
pub fn nodal_dims(base: &[usize], m: usize, h3_vanishes: bool) -> Result<Vec<usize>> {
    if !h3_vanishes {
        return Err(Error::MissingHypothesis("H³(S∖D) = 0".into()));
    }
    if base.len() < 3 {
        return Err(Error::Dimension("complement dims need H⁰, H¹, H²".into()));
    }
    let mut out = base.to_vec();
    out[2] += m;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn cubic(c: [i64; 10]) -> Expr {
        cubic_from_coefficients(&c.map(int)).unwrap()
    }

    #[test]
    fn coefficient_roundtrip() {
        let f = cubic([1, 0, 2, 0, -3, 0, 1, 0, 0, 5]);
        let c = cp2_chart();
        assert_eq!(cubic_from_coefficients(&cubic_coefficients(&c, &f).unwrap()).unwrap(), f);
        let quartic = Expr::monomial(mono(4, 0));
        assert!(cubic_coefficients(&c, &quartic).is_err());
    }

    #[test]
    fn zero_cubic_gives_zero_matrix() {
        let m = cp2_poisson_matrix(&Expr::zero()).unwrap();
        assert_eq!((m.rows(), m.cols()), (10, 8));
        assert!(m.is_zero());
    }
}
