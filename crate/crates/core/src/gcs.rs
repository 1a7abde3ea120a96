//! Generalized complex structures from pure spinors: purity, nondegeneracy,
//! type, B- and β-transforms, integrability witnesses, the logarithmic
//! symplectic model and its deformations, the Poisson differential and the
//! structure matrix `𝒥`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{rat, GaussRat};
use crate::symkernel::{
    evaluate_expr, Blade, Chart, ChartBuilder, DifferentialForm, Expr, GeneralizedVector, Monomial,
    Point, Polyvector,
};

/// Default number of sampled points for non-vanishing reports.
pub const DEFAULT_SAMPLES: usize = 16;

/// Pointwise annihilator of a spinor.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub point: Point,
    /// Dimension `4n` of `(TM ⊕ T*M) ⊗ ℂ` on an `n`-variable chart.
    pub ambient_dim: usize,
    pub basis: Vec<GeneralizedVector>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_pure(&self) -> bool {
        2 * self.dim() == self.ambient_dim
    }

    /// `ker ∩ conj(ker) = 0`, by rank of the stacked coordinates.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        let mut cols = Vec::new();
        for e in &self.basis {
            cols.push(genvec_coordinates(e)?);
            cols.push(genvec_coordinates(&e.conj()?)?);
        }
        if cols.is_empty() {
            return Ok(true);
        }
        Ok(CMatrix::from_columns(self.ambient_dim, &cols).rank() == cols.len())
    }

    /// All pairwise inner products vanish.
    pub fn is_isotropic(&self) -> Result<bool> {
        for a in &self.basis {
            for b in &self.basis {
                if !a.inner_metric(b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Coordinates of a constant generalized vector in the basis
/// `∂_1..∂_2n, dx_1..dx_2n`.
pub fn genvec_coordinates(e: &GeneralizedVector) -> Result<Vec<GaussRat>> {
    let nv = e.chart().num_vars();
    let mut out = vec![GaussRat::zero(); 2 * nv];
    for (b, c) in e.vector().terms() {
        let i = b.indices().next().expect("degree one");
        out[i] = c.as_constant().ok_or_else(|| Error::Certificate("non-constant coefficient".into()))?;
    }
    for (b, c) in e.form().terms() {
        let i = b.indices().next().expect("degree one");
        out[nv + i] = c.as_constant().ok_or_else(|| Error::Certificate("non-constant coefficient".into()))?;
    }
    Ok(out)
}

fn genvec_generator(chart: &Arc<Chart>, k: usize) -> GeneralizedVector {
    let nv = chart.num_vars();
    if k < nv {
        GeneralizedVector::from_vector(Polyvector::generator(chart, k)).expect("degree one")
    } else {
        GeneralizedVector::from_form(DifferentialForm::generator(chart, k - nv)).expect("degree one")
    }
}

fn genvec_from_coordinates(chart: &Arc<Chart>, x: &[GaussRat]) -> GeneralizedVector {
    let mut acc = GeneralizedVector::zero(chart);
    for (k, c) in x.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&genvec_generator(chart, k).scale_c(c)).expect("same chart");
        }
    }
    acc
}

/// Exact null space of `E ↦ E·Φ(point)`.
pub fn kernel_basis(phi: &DifferentialForm, point: &Point) -> Result<KernelBasis> {
    let chart = phi.chart().clone();
    let at = phi.evaluate(point)?;
    let nv = chart.num_vars();
    let rows = 1usize << nv;
    let mut cols = Vec::with_capacity(2 * nv);
    for k in 0..2 * nv {
        let image = genvec_generator(&chart, k).clifford(&at)?;
        cols.push(image.constant_coordinates().expect("constant after evaluation"));
    }
    let m = CMatrix::from_columns(rows, &cols);
    let basis = m.nullspace().iter().map(|x| genvec_from_coordinates(&chart, x)).collect();
    Ok(KernelBasis { point: point.clone(), ambient_dim: 2 * nv, basis })
}

/// Top coefficient of the Mukai pairing
/// `⟨φ, ψ⟩ = Σ_k (−1)^{k(k−1)/2} φ_k ∧ ψ_{top−k}`.
pub fn mukai_pairing(phi: &DifferentialForm, psi: &DifferentialForm) -> Result<Expr> {
    let top = phi.chart().num_vars();
    let mut acc = Expr::zero();
    for k in 0..=top {
        let a = phi.component(k);
        if a.is_zero() {
            continue;
        }
        let w = a.wedge(&psi.component(top - k))?.top_coefficient();
        acc = if (k * (k.saturating_sub(1)) / 2) % 2 == 0 { acc.add(&w) } else { acc.sub(&w) };
    }
    Ok(acc)
}

/// How non-vanishing of an expression was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nonvanishing {
    /// The expression is identically zero.
    Zero,
    /// Nonzero constant times a monomial in unit symbols: nonzero everywhere.
    Certified,
    /// Nonzero at every one of `samples` seeded rational points, or the
    /// number of sampled zeros.
    Sampled { samples: usize, zeros: usize },
}

impl Nonvanishing {
    pub fn label(&self) -> String {
        match self {
            Nonvanishing::Zero => "identically zero".into(),
            Nonvanishing::Certified => "nowhere vanishing (unit monomial)".into(),
            Nonvanishing::Sampled { samples, zeros: 0 } => format!("nonvanishing at {samples} sampled rational points"),
            Nonvanishing::Sampled { samples, zeros } => format!("vanishes at {zeros} of {samples} sampled points"),
        }
    }
}

/// A random rational point with nonzero coordinates; parameters and other
/// symbols are drawn from `(0, 1]`.
pub fn random_point(chart: &Chart, rng: &mut impl Rng) -> Point {
    let mut p = Point::new();
    let nz = |rng: &mut dyn rand::RngCore| loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            break n;
        }
    };
    for i in 0..chart.dim() {
        let v = GaussRat::new(rat(nz(rng), rng.gen_range(1..=5)), rat(nz(rng), rng.gen_range(1..=5)));
        p.set(chart.var_name(i), v);
    }
    for s in chart.symbols() {
        p.set(&s.name, GaussRat::real(rat(rng.gen_range(1..=8), 8)));
    }
    p
}

pub fn certify_nonvanishing(chart: &Chart, e: &Expr, samples: usize, seed: u64) -> Result<Nonvanishing> {
    if e.is_zero() {
        return Ok(Nonvanishing::Zero);
    }
    if let Some((_, m)) = e.as_single_term() {
        let nv = chart.num_vars();
        let unit = m.exponents().iter().enumerate().all(|(slot, &x)| {
            x == 0 || (slot >= nv && chart.symbols()[slot - nv].unit)
        });
        if unit {
            return Ok(Nonvanishing::Certified);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zeros = 0;
    for _ in 0..samples {
        let p = random_point(chart, &mut rng);
        if evaluate_expr(chart, e, &p)?.is_zero() {
            zeros += 1;
        }
    }
    Ok(Nonvanishing::Sampled { samples, zeros })
}

#[derive(Clone, Debug)]
pub struct SpinorReport {
    pub kernel_dim: usize,
    pub ambient_dim: usize,
    pub is_pure: bool,
    /// Top-degree coefficient of `⟨φ, φ̄⟩`.
    pub pairing_value: Expr,
    pub pairing_at_point: GaussRat,
    /// Top-degree coefficient of `⟨φ, φ⟩`.
    pub self_pairing: Expr,
    pub is_nondegenerate_at_point: bool,
    /// `None` for the zero spinor.
    pub type_number: Option<usize>,
    pub nonvanishing: Nonvanishing,
    /// Kernel-based and pairing-based verdicts coincide.
    pub kernel_agrees: bool,
}

impl SpinorReport {
    pub fn to_json(&self, chart: &Chart) -> serde_json::Value {
        json!({
            "kernel_dim": self.kernel_dim,
            "ambient_dim": self.ambient_dim,
            "is_pure": self.is_pure,
            "pairing_value": self.pairing_value.display(chart).to_string(),
            "pairing_at_point": self.pairing_at_point.to_string(),
            "self_pairing": self.self_pairing.display(chart).to_string(),
            "is_nondegenerate_at_point": self.is_nondegenerate_at_point,
            "type_number": self.type_number,
            "nonvanishing": self.nonvanishing.label(),
            "kernel_agrees": self.kernel_agrees,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { samples: DEFAULT_SAMPLES, seed: 0 }
    }
}

/// Spinor report on any chart; purity and nondegeneracy come from the
/// kernel, and in real dimension 4 they are cross-checked against the
/// pairings.
pub fn spinor_report(phi: &DifferentialForm, point: &Point, opts: &ReportOptions) -> Result<SpinorReport> {
    let chart = phi.chart().clone();
    let kernel = kernel_basis(phi, point)?;
    let conj = phi.conj()?;
    let pairing_value = mukai_pairing(phi, &conj)?;
    let self_pairing = mukai_pairing(phi, phi)?;
    let at = phi.evaluate(point)?;
    let pairing_at_point = evaluate_expr(&chart, &pairing_value, point)?;
    let is_pure = kernel.is_pure();
    let is_nondegenerate_at_point = is_pure && kernel.is_nondegenerate()?;
    let kernel_agrees = if chart.dim() == 2 && phi.is_even() {
        let pure_by_pairing = !at.is_zero() && evaluate_expr(&chart, &self_pairing, point)?.is_zero();
        let nondeg_by_pairing = pure_by_pairing && !pairing_at_point.is_zero();
        pure_by_pairing == is_pure && nondeg_by_pairing == is_nondegenerate_at_point
    } else {
        true
    };
    Ok(SpinorReport {
        kernel_dim: kernel.dim(),
        ambient_dim: kernel.ambient_dim,
        is_pure,
        nonvanishing: certify_nonvanishing(&chart, &pairing_value, opts.samples, opts.seed)?,
        pairing_value,
        pairing_at_point,
        self_pairing,
        is_nondegenerate_at_point,
        type_number: at.min_degree(),
        kernel_agrees,
    })
}

/// Purity and nondegeneracy in real dimension 4 through
/// `⟨φ,φ⟩ = 2φ₀φ₄ − φ₂∧φ₂` and `⟨φ,φ̄⟩ = φ₀φ̄₄ + φ₄φ̄₀ − φ₂∧φ̄₂`.
pub fn purity_report_dim4(phi: &DifferentialForm, point: &Point) -> Result<SpinorReport> {
    purity_report_dim4_with(phi, point, &ReportOptions::default())
}

pub fn purity_report_dim4_with(phi: &DifferentialForm, point: &Point, opts: &ReportOptions) -> Result<SpinorReport> {
    if phi.chart().dim() != 2 {
        return Err(Error::Dimension(format!(
            "purity_report_dim4 needs 2 complex variables, chart has {}",
            phi.chart().dim()
        )));
    }
    if !phi.is_even() {
        return Err(Error::Degree { expected: "even form".into(), found: format!("degrees {:?}", phi.degrees()) });
    }
    spinor_report(phi, point, opts)
}

/// Minimal degree of a nonzero component at the point.
pub fn type_number(phi: &DifferentialForm, point: &Point) -> Result<usize> {
    phi.evaluate(point)?.min_degree().ok_or(Error::ZeroSpinor)
}

/// `e^b ∧ φ` for a closed real 2-form `b`.
pub fn b_transform(b: &DifferentialForm, phi: &DifferentialForm) -> Result<DifferentialForm> {
    b.require_degree(2)?;
    if !b.d()?.is_zero() {
        return Err(Error::NotClosed);
    }
    if b.conj()? != *b {
        return Err(Error::NotReal);
    }
    b.exp_two_form()?.wedge(phi)
}

/// `Σ_j (i_β)^j φ / j!`.
pub fn beta_transform(beta: &Polyvector, phi: &DifferentialForm) -> Result<DifferentialForm> {
    beta.require_degree(2)?;
    let mut acc = phi.clone();
    let mut term = phi.clone();
    for j in 1.. {
        term = term.interior(beta)?.scale_c(&GaussRat::real(rat(1, j)));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Monomials in the chart variables with non-negative exponents of total
/// degree at most `bound`, in graded order.
pub fn monomials_up_to(nvars: usize, bound: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..bound {
        let mut next = BTreeSet::new();
        for m in &layer {
            for v in 0..nvars {
                next.insert(m.mul(&Monomial::single(v, 1)));
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Searches `e` with polynomial coefficients of degree `≤ degree_bound`
/// such that `dφ = e·φ`; a returned witness is certified by substitution.
pub fn integrability_witness(phi: &DifferentialForm, degree_bound: usize) -> Result<Option<GeneralizedVector>> {
    let chart = phi.chart().clone();
    let nv = chart.num_vars();
    let dphi = phi.d()?;
    let monos = monomials_up_to(nv, degree_bound);
    let mut unknowns = Vec::new();
    for m in &monos {
        for k in 0..2 * nv {
            unknowns.push(genvec_generator(&chart, k).scale(&Expr::monomial(m.clone())));
        }
    }
    let mut keys: BTreeMap<(Blade, Monomial), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<((Blade, Monomial), GaussRat)>> = Vec::new();
    let index = |k: (Blade, Monomial), keys: &mut BTreeMap<(Blade, Monomial), usize>| {
        let n = keys.len();
        *keys.entry(k).or_insert(n)
    };
    for u in &unknowns {
        let img = u.clifford(phi)?;
        let mut col = Vec::new();
        for (b, e) in img.terms() {
            for (m, c) in e.terms() {
                col.push(((*b, m.clone()), c.clone()));
            }
        }
        columns.push(col);
    }
    let mut rhs_terms = Vec::new();
    for (b, e) in dphi.terms() {
        for (m, c) in e.terms() {
            rhs_terms.push(((*b, m.clone()), c.clone()));
        }
    }
    for col in &columns {
        for (k, _) in col {
            index(k.clone(), &mut keys);
        }
    }
    for (k, _) in &rhs_terms {
        index(k.clone(), &mut keys);
    }
    let mut a = CMatrix::zeros(keys.len(), unknowns.len());
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col {
            a[(keys[k], j)] = c.clone();
        }
    }
    let mut rhs = vec![GaussRat::zero(); keys.len()];
    for (k, c) in rhs_terms {
        rhs[keys[&k]] = c;
    }
    let Some(x) = a.solve(&rhs) else {
        return Ok(None);
    };
    let mut e = GeneralizedVector::zero(&chart);
    for (u, c) in unknowns.iter().zip(&x) {
        if !c.is_zero() {
            e = e.add(&u.scale_c(c))?;
        }
    }
    if e.clifford(phi)? != dphi {
        return Err(Error::Certificate("integrability witness fails substitution".into()));
    }
    Ok(Some(e))
}

/// Local model `ω_ℂ = dz₁/z₁ ∧ dz₂ + Σ_{k≥2} dz_{2k−1} ∧ dz_{2k}` on `2m`
/// variables with `z₁` logarithmic.
#[derive(Clone, Debug)]
pub struct LogSymplecticModel {
    pub chart: Arc<Chart>,
    pub omega_c: DifferentialForm,
    pub m: usize,
}

pub fn log_symplectic_model(m: usize) -> Result<LogSymplecticModel> {
    if m == 0 {
        return Err(Error::OutOfRange("log_symplectic_model needs m ≥ 1".into()));
    }
    let names: Vec<String> = (1..=2 * m).map(|i| format!("z{i}")).collect();
    let mut b = ChartBuilder::new(&names);
    b.log("z1");
    let chart = b.build()?;
    let dz = |i: usize| DifferentialForm::generator(&chart, i);
    let inv = chart.var("z1")?.pow(&chart, -1)?;
    let mut omega = dz(0).scale(&inv).wedge(&dz(1))?;
    for k in 1..m {
        omega = omega.add(&dz(2 * k).wedge(&dz(2 * k + 1))?)?;
    }
    if !omega.d()?.is_zero() {
        return Err(Error::Certificate("model form is not closed".into()));
    }
    Ok(LogSymplecticModel { chart, omega_c: omega, m })
}

impl LogSymplecticModel {
    /// `z₁ · e^{ω}` for a 2-form `ω` on the model chart.
    pub fn stripped_spinor(&self, omega: &DifferentialForm) -> Result<DifferentialForm> {
        Ok(omega.exp_two_form()?.scale(&self.chart.var("z1")?))
    }

    /// Sets `z₁ = z̄₁ = 0` in the coefficients, keeping every generator.
    pub fn restrict_to_divisor(&self, a: &DifferentialForm) -> Result<DifferentialForm> {
        let values = BTreeMap::from([(0, GaussRat::zero()), (self.chart.dim(), GaussRat::zero())]);
        a.substitute(&values)
    }

    /// The part `ω̃` of the model form away from `dz₁/z₁ ∧ dz₂`.
    pub fn omega_tilde(&self) -> Result<DifferentialForm> {
        let inv = self.chart.var("z1")?.pow(&self.chart, -1)?;
        let lead = DifferentialForm::generator(&self.chart, 0)
            .scale(&inv)
            .wedge(&DifferentialForm::generator(&self.chart, 1))?;
        self.omega_c.sub(&lead)
    }
}

/// Rejects poles other than `dz₁/z₁`-type terms along the divisor.
pub fn check_log_pole_shape(alpha: &DifferentialForm) -> Result<()> {
    let n = alpha.chart().dim();
    for (b, e) in alpha.terms() {
        for (m, _) in e.terms() {
            let (x, xb) = (m.exp(0), m.exp(n));
            if x < -1 || xb < 0 {
                return Err(Error::PoleShape(format!("pole order too high in {}", alpha)));
            }
            if x == -1 && !b.contains(0) {
                return Err(Error::PoleShape("a 1/z1 coefficient must multiply dz1".into()));
            }
            if (1..n).chain(n + 1..2 * n).any(|s| m.exp(s) < 0) {
                return Err(Error::PoleShape("poles allowed only along z1 = 0".into()));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct DeformReport {
    /// `z₁ e^{ω_ℂ + α}` with `z₁ = 0` substituted.
    pub restricted: DifferentialForm,
    pub reports: Vec<(Point, SpinorReport)>,
}

impl DeformReport {
    pub fn nondegenerate(&self) -> bool {
        self.reports.iter().all(|(_, r)| r.is_pure && r.is_nondegenerate_at_point)
    }
}

/// Deforms the model spinor by a closed logarithmic 2-form and reports at
/// the given divisor points (`z₁` is set to 0 automatically).
pub fn deform_spinor(
    model: &LogSymplecticModel,
    alpha: &DifferentialForm,
    divisor_points: &[Point],
) -> Result<DeformReport> {
    alpha.check_chart(&model.chart)?;
    alpha.require_degree(2)?;
    if !alpha.d()?.is_zero() {
        return Err(Error::NotClosed);
    }
    check_log_pole_shape(alpha)?;
    let psi = model.stripped_spinor(&model.omega_c.add(alpha)?)?;
    let restricted = model.restrict_to_divisor(&psi)?;
    let mut reports = Vec::new();
    for p in divisor_points {
        let p = p.clone().with("z1", GaussRat::zero());
        let r = spinor_report(&restricted, &p, &ReportOptions::default())?;
        reports.push((p, r));
    }
    Ok(DeformReport { restricted, reports })
}

/// Values `c` for which `c·α₀` yields a degenerate spinor at some point.
pub fn deform_family_failures(
    model: &LogSymplecticModel,
    alpha0: &DifferentialForm,
    cs: &[GaussRat],
    divisor_points: &[Point],
) -> Result<Vec<GaussRat>> {
    let mut bad = Vec::new();
    for c in cs {
        if !deform_spinor(model, &alpha0.scale_c(c), divisor_points)?.nondegenerate() {
            bad.push(c.clone());
        }
    }
    Ok(bad)
}

/// `δ_β a = [β, a]`.
pub fn poisson_delta(beta: &Polyvector, a: &Polyvector) -> Result<Polyvector> {
    beta.require_degree(2)?;
    beta.schouten(a)
}

/// `∧^p β̃` applied factorwise, with `β̃(θ) = [θ, β] = i_θ β`.
pub fn beta_tilde_map(beta: &Polyvector, a: &DifferentialForm) -> Result<Polyvector> {
    beta.require_degree(2)?;
    a.check_chart(beta.chart())?;
    let chart = beta.chart().clone();
    let images: Vec<Polyvector> = (0..chart.num_vars())
        .map(|i| beta.contract(&DifferentialForm::generator(&chart, i)))
        .collect::<Result<_>>()?;
    let mut out = Polyvector::zero(&chart);
    for (b, e) in a.terms() {
        let mut t = Polyvector::scalar(&chart, e.clone());
        for i in b.indices() {
            t = t.wedge(&images[i])?;
        }
        out = out.add(&t)?;
    }
    Ok(out)
}

/// Whether `v` preserves the ideal `(z₁)` (and `(z̄₁)` for the conjugate).
pub fn log_vector_field_check(v: &Polyvector, model: &LogSymplecticModel) -> Result<bool> {
    v.check_chart(&model.chart)?;
    v.require_degree(1)?;
    for (_, e) in v.terms() {
        if e.terms().any(|(m, _)| m.exponents().iter().any(|&x| x < 0)) {
            return Err(Error::PoleShape("log vector field coefficients must be Laurent-free".into()));
        }
    }
    let n = model.chart.dim();
    let divisible = |e: &Expr, slot: usize| e.terms().all(|(m, _)| m.exp(slot) >= 1);
    let z1 = model.chart.var("z1")?;
    let zb1 = Expr::monomial(Monomial::single(n, 1));
    Ok(divisible(&v.apply(&z1)?, 0) && divisible(&v.apply(&zb1)?, n))
}

/// The metric `⟨,⟩` in the basis `∂_1..∂_2n, dx_1..dx_2n`.
pub fn metric_matrix(nv: usize) -> CMatrix {
    let mut g = CMatrix::zeros(2 * nv, 2 * nv);
    let h = GaussRat::real(rat(1, 2));
    for i in 0..nv {
        g[(i, nv + i)] = h.clone();
        g[(nv + i, i)] = h.clone();
    }
    g
}

#[derive(Clone, Debug)]
pub struct JayMatrix {
    pub matrix: CMatrix,
    pub squares_to_minus_one: bool,
    pub orthogonal: bool,
}

/// `𝒥` acting as `+i` on `ker Φ` and `−i` on its conjugate, in the basis
/// `∂_1..∂_2n, dx_1..dx_2n`.
pub fn jay_matrix(phi: &DifferentialForm, point: &Point) -> Result<JayMatrix> {
    let kernel = kernel_basis(phi, point)?;
    if !kernel.is_pure() {
        return Err(Error::Certificate(format!("spinor is not pure: kernel dimension {}", kernel.dim())));
    }
    let n = kernel.ambient_dim;
    let mut cols = Vec::new();
    for e in &kernel.basis {
        cols.push(genvec_coordinates(e)?);
    }
    for e in &kernel.basis {
        cols.push(genvec_coordinates(&e.conj()?)?);
    }
    let p = CMatrix::from_columns(n, &cols);
    let pinv = p.inverse().ok_or(Error::DegenerateSpinor)?;
    let mut d = CMatrix::zeros(n, n);
    for k in 0..n {
        d[(k, k)] = if k < n / 2 { GaussRat::i() } else { -GaussRat::i() };
    }
    let j = p.mul(&d)?.mul(&pinv)?;
    let id = CMatrix::identity(n);
    let squares_to_minus_one = j.mul(&j)? == id.scale(&-GaussRat::one());
    let g = metric_matrix(n / 2);
    let orthogonal = j.transpose().mul(&g)?.mul(&j)? == g;
    if !squares_to_minus_one || !orthogonal {
        return Err(Error::Certificate("𝒥 fails J² = −1 or orthogonality".into()));
    }
    Ok(JayMatrix { matrix: j, squares_to_minus_one, orthogonal })
}

/// Matrix of `v ↦ i_v ω` for a constant 2-form, as a map from vectors to
/// 1-forms in the coordinate bases.
pub fn two_form_matrix(omega: &DifferentialForm) -> Result<CMatrix> {
    omega.require_degree(2)?;
    let chart = omega.chart().clone();
    let nv = chart.num_vars();
    let mut m = CMatrix::zeros(nv, nv);
    for i in 0..nv {
        let img = omega.interior(&Polyvector::generator(&chart, i))?;
        for (b, e) in img.terms() {
            let j = b.indices().next().expect("degree one");
            m[(j, i)] = e.as_constant().ok_or_else(|| Error::Certificate("non-constant 2-form".into()))?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart2() -> Arc<Chart> {
        ChartBuilder::new(&["z1", "z2"]).build().unwrap()
    }

    #[test]
    fn mukai_pairing_matches_dim4_formula() {
        let c = chart2();
        let dz = |v: &str| DifferentialForm::gen(&c, v).unwrap();
        let phi = DifferentialForm::scalar(&c, c.var("z1").unwrap())
            .add(&dz("z1").wedge(&dz("z2")).unwrap())
            .unwrap();
        let v = mukai_pairing(&phi, &phi.conj().unwrap()).unwrap();
        assert_eq!(v, Expr::int(-1));
        assert!(mukai_pairing(&phi, &phi).unwrap().is_zero());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_up_to(4, 2).len(), 15);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
    }
}
