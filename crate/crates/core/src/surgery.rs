//! Logarithmic transformations of multiplicity `m`: gluing data, the local
//! spinor `φ_T` on `D² × T²`, its pairing factor, the `w`-coordinate
//! identity and the connected-sum dimension count.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcs::mukai_pairing;
use crate::homology::{ExactSequenceOutcome, ExactSequenceProblem};
use crate::scalar::{int, rat, GaussRat, Rational};
use crate::symkernel::{Chart, ChartBuilder, DifferentialForm, Expr, Monomial};

/// Largest `|l|` tried by [`condition_shift`].
pub const SHIFT_BOUND: i64 = 64;

/// Gluing matrix `((m,0,p),(0,1,0),(a,0,b))` with `mb − pa = 1` and area
/// constant `C > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryData {
    pub m: i64,
    pub p: i64,
    pub a: i64,
    pub b: i64,
    pub c: Rational,
}

impl SurgeryData {
    pub fn new(m: i64, p: i64, a: i64, b: i64, c: Rational) -> Result<Self> {
        if m * b - p * a != 1 {
            return Err(Error::InvalidSurgery(format!("m·b − p·a = {} ≠ 1", m * b - p * a)));
        }
        if !c.is_positive() {
            return Err(Error::InvalidSurgery(format!("C = {c} is not positive")));
        }
        Ok(SurgeryData { m, p, a, b, c })
    }

    /// `p = 0` means the boundary circle bounds and the gluing is trivial.
    pub fn is_trivial(&self) -> bool {
        self.p == 0
    }

    fn require_nontrivial(&self) -> Result<()> {
        if self.is_trivial() {
            return Err(Error::InvalidSurgery("p = 0: the transformation is trivial".into()));
        }
        Ok(())
    }

    /// `(a + ml, b + pl)`, which keeps `mb − pa = 1`.
    pub fn shifted(&self, l: i64) -> Self {
        SurgeryData { a: self.a + self.m * l, b: self.b + self.p * l, ..self.clone() }
    }

    /// Coefficients `(mb, −pa)` of the factor `mb·s − pa`.
    pub fn factor_coefficients(&self) -> (i64, i64) {
        (self.m * self.b, -self.p * self.a)
    }

    /// `mb·s − pa ≠ 0` for all `s ∈ [0, 1]`.
    pub fn factor_nonvanishing(&self) -> bool {
        let (slope, at0) = self.factor_coefficients();
        let at1 = slope + at0;
        at0 != 0 && at1 != 0 && at0.signum() == at1.signum()
    }
}

impl fmt::Display for SurgeryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m,p,a,b) = ({},{},{},{}), C = {}", self.m, self.p, self.a, self.b, self.c)
    }
}

/// Degree of the boundary circle map.
pub fn multiplicity(d: &SurgeryData) -> i64 {
    d.m
}

/// The first `l` in `0, −1, 1, −2, 2, …` for which the shifted factor has
/// no root on `[0, 1]`, with the shifted data.
pub fn condition_shift(d: &SurgeryData) -> Result<(i64, SurgeryData)> {
    d.require_nontrivial()?;
    for k in 0..=2 * SHIFT_BOUND {
        let l = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let s = d.shifted(l);
        if s.factor_nonvanishing() {
            return Ok((l, s));
        }
    }
    Err(Error::Certificate(format!("no shift with |l| ≤ {SHIFT_BOUND} for {d}")))
}

/// Chart `(z1, z2)` on `D² × T²` with `z1` logarithmic and the bump
/// parameter `s`.
pub fn surgery_chart() -> Arc<Chart> {
    let mut b = ChartBuilder::new(&["z1", "z2"]);
    b.log("z1");
    b.parameter("s");
    b.build().expect("static chart")
}

fn real(r: Rational) -> GaussRat {
    GaussRat::real(r)
}

/// `w2 = C(a/2 − p) z2 − C(a/2 + p) z̄2`.
pub fn w2(chart: &Arc<Chart>, d: &SurgeryData) -> Result<Expr> {
    let (alpha, beta) = w2_coefficients(d);
    Ok(chart.var("z2")?.scale(&real(alpha)).sub(&chart.conj_of("z2")?.scale(&real(beta))))
}

/// `(C(a/2 − p), C(a/2 + p))`.
pub fn w2_coefficients(d: &SurgeryData) -> (Rational, Rational) {
    let half_a = rat(d.a, 2);
    (&d.c * (&half_a - int(d.p)), &d.c * (&half_a + int(d.p)))
}

fn log_generator(chart: &Arc<Chart>, var: &str) -> Result<DifferentialForm> {
    let z = chart.var(var)?;
    let i = chart.var_index(var).ok_or_else(|| Error::UnknownName(var.into()))?;
    Ok(DifferentialForm::generator(chart, i).scale(&z.pow(chart, -1)?))
}

/// `Ω = −(mC/2) s (dz1/z1)∧(dz̄1/z̄1) − bC dz2∧dz̄2 + (dz1/z1)∧dw2`.
pub fn omega_t(d: &SurgeryData) -> Result<DifferentialForm> {
    let c = surgery_chart();
    let a = log_generator(&c, "z1")?;
    let abar = log_generator(&c, "z̄1")?;
    let s = c.sym("s")?;
    let bump = a.wedge(&abar)?.scale(&s).scale_c(&real(-(int(d.m) * &d.c) / int(2)));
    let dz2 = DifferentialForm::gen(&c, "z2")?;
    let dz2bar = DifferentialForm::gen(&c, "z̄2")?;
    let torus = dz2.wedge(&dz2bar)?.scale_c(&real(-(int(d.b) * &d.c)));
    let dw2 = DifferentialForm::scalar(&c, w2(&c, d)?).d()?;
    bump.add(&torus)?.add(&a.wedge(&dw2)?)
}

/// `φ_T = z1 · exp(Ω)` with the bump value kept as the parameter `s`.
pub fn phi_t(d: &SurgeryData) -> Result<DifferentialForm> {
    let omega = omega_t(d)?;
    let z1 = omega.chart().var("z1")?;
    Ok(omega.exp_two_form()?.scale(&z1))
}

/// Splits an expression into coefficients of powers of one slot.
fn by_power(e: &Expr, slot: usize) -> BTreeMap<i32, Expr> {
    let mut out: BTreeMap<i32, Expr> = BTreeMap::new();
    for (m, c) in e.terms() {
        let k = m.exp(slot);
        out.entry(k).or_insert_with(Expr::zero).add_term(m.with_exp(slot, 0), c);
    }
    out
}

/// Exact division of `e` by `c1·s + c0` as polynomials in the slot `s`.
pub fn divide_linear(e: &Expr, slot: usize, c1: &GaussRat, c0: &GaussRat) -> Result<Expr> {
    let mut rem = by_power(e, slot);
    if rem.keys().any(|&k| k < 0) {
        return Err(Error::Certificate("negative power of the division variable".into()));
    }
    let mut quot = Expr::zero();
    if c1.is_zero() {
        let inv = c0.inv().ok_or_else(|| Error::Certificate("division by zero".into()))?;
        return Ok(e.scale(&inv));
    }
    let inv = c1.inv().expect("nonzero");
    while let Some((&k, lead)) = rem.iter().next_back() {
        if lead.is_zero() {
            rem.remove(&k);
            continue;
        }
        if k == 0 {
            return Err(Error::Certificate(format!("nonzero remainder {lead:?}")));
        }
        let q = lead.scale(&inv);
        quot = quot.add(&q.mul_monomial(&Monomial::single(slot, k - 1)));
        rem.remove(&k);
        let low = rem.entry(k - 1).or_insert_with(Expr::zero);
        *low = low.sub(&q.scale(c0));
    }
    Ok(quot)
}

/// Top coefficient of `⟨φ_T, φ̄_T⟩` and its certified factorization
/// `constant · (mb·s − pa)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingFactor {
    pub top: Expr,
    pub constant: GaussRat,
    pub slope: i64,
    pub intercept: i64,
}

impl PairingFactor {
    pub fn display(&self, chart: &Chart) -> String {
        format!("{}", self.top.display(chart))
    }
}

pub fn pairing_factor(d: &SurgeryData) -> Result<PairingFactor> {
    let phi = phi_t(d)?;
    let chart = phi.chart().clone();
    let top = mukai_pairing(&phi, &phi.conj()?)?;
    let (slope, intercept) = d.factor_coefficients();
    let s = chart.symbol_slot("s").expect("chart has s");
    let q = divide_linear(&top, s, &GaussRat::from_int(slope), &GaussRat::from_int(intercept))?;
    let constant = q
        .as_constant()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Certificate(format!("quotient {} is not a nonzero constant", q.display(&chart))))?;
    Ok(PairingFactor { top, constant, slope, intercept })
}

/// `d(z1⁻¹ φ_T) = 0` with `s` constant and, if given, fixed to a value.
pub fn stripped_is_closed(d: &SurgeryData, s: Option<Rational>) -> Result<bool> {
    let omega = omega_t(d)?;
    let chart = omega.chart().clone();
    let mut form = omega.exp_two_form()?;
    if let Some(v) = s {
        form = form.substitute(&BTreeMap::from([(chart.symbol_slot("s").unwrap(), real(v))]))?;
    }
    Ok(form.d()?.is_zero())
}

/// `C′` for which `−bC dz2∧dz̄2 = −C′ dw2∧dw̄2`, i.e. `−b / (2apC)`; none
/// when `a = 0` or `p = 0`.
pub fn regime_c_prime(d: &SurgeryData) -> Option<Rational> {
    (d.a != 0 && d.p != 0).then(|| -int(d.b) / (int(2 * d.a * d.p) * &d.c))
}

/// Chart `(z1, z2)` with `z1` logarithmic and a unit symbol `E = e^{C′w̄2}`
/// whose derivative rule uses `factor · C′`.
fn w_chart(d: &SurgeryData, c_prime: &Rational, factor: i64) -> Result<Arc<Chart>> {
    let (alpha, beta) = w2_coefficients(d);
    let k = int(factor) * c_prime;
    let mut b = ChartBuilder::new(&["z1", "z2"]);
    b.log("z1");
    let e = b.unit_symbol("E");
    let sym = Expr::monomial(Monomial::single(e, 1));
    // w̄2 = C(a/2 − p) z̄2 − C(a/2 + p) z2
    b.derivative(e, "z2", sym.scale(&real(-(&k * &beta))))?;
    b.derivative(e, "z̄2", sym.scale(&real(&k * &alpha)))?;
    b.derivative(e, "z1", Expr::zero())?;
    b.derivative(e, "z̄1", Expr::zero())?;
    b.build()
}

fn w_identity_with_rule(d: &SurgeryData, c_prime: &Rational, factor: i64) -> Result<bool> {
    let chart = w_chart(d, c_prime, factor)?;
    let w1 = chart.sym("E")?.mul(&chart.var("z1")?);
    let dw1_over_w1 = DifferentialForm::scalar(&chart, w1.clone()).d()?.try_map_terms(|e| e.div_unit(&chart, &w1))?;
    let w2e = w2(&chart, d)?;
    let w2bar = w2e.conj(&chart)?;
    let dw2 = DifferentialForm::scalar(&chart, w2e).d()?;
    let dw2bar = DifferentialForm::scalar(&chart, w2bar).d()?;
    let lhs = dw1_over_w1.wedge(&dw2)?;
    let a = log_generator(&chart, "z1")?;
    let rhs = a.wedge(&dw2)?.sub(&dw2.wedge(&dw2bar)?.scale_c(&real(c_prime.clone())))?;
    Ok(lhs == rhs)
}

/// `dw1/w1 ∧ dw2 = (dz1/z1)∧dw2 − C′ dw2∧dw̄2` for `w1 = e^{C′w̄2} z1`,
/// with `e^{C′w̄2}` a formal unit symbol.
pub fn w_coordinate_identity(d: &SurgeryData, c_prime: &Rational) -> Result<bool> {
    w_identity_with_rule(d, c_prime, 1)
}

/// The same identity with the deliberately wrong rule `∂E = 2C′E`.
pub fn w_coordinate_identity_perturbed(d: &SurgeryData, c_prime: &Rational) -> Result<bool> {
    w_identity_with_rule(d, c_prime, 2)
}

/// `Ω` at `s = 0` equals `(dz1/z1)∧dw2 − C′ dw2∧dw̄2` for this `C′`.
pub fn regime_form_matches(d: &SurgeryData, c_prime: &Rational) -> Result<bool> {
    let omega = omega_t(d)?;
    let chart = omega.chart().clone();
    let at0 = omega.substitute(&BTreeMap::from([(chart.symbol_slot("s").unwrap(), GaussRat::zero())]))?;
    let dw2 = DifferentialForm::scalar(&chart, w2(&chart, d)?).d()?;
    let dw2bar = dw2.conj()?;
    let display = log_generator(&chart, "z1")?
        .wedge(&dw2)?
        .sub(&dw2.wedge(&dw2bar)?.scale_c(&real(c_prime.clone())))?;
    Ok(at0 == display)
}

/// `dim H²(M∖D)` from `H²_D → H²(E(k)) → H²(E(k)∖D) → H³_D → 0` with
/// `H²_D ≅ H⁰(D) = ℂ^m`, `H³_D ≅ H¹(D) = ℂ^{2m}`, `dim H²(E(k)) = 12k − 2`
/// and `rank i = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectedSumTrace {
    pub k: i64,
    pub m: i64,
    pub labels: Vec<String>,
    pub dims: Vec<i64>,
    pub ranks: Vec<i64>,
    pub h2: i64,
}

pub fn connected_sum_sequence(k: i64, m: i64) -> Result<ExactSequenceProblem> {
    if k < 1 || m < 1 {
        return Err(Error::OutOfRange(format!("connected sum needs k, m ≥ 1, got ({k}, {m})")));
    }
    Ok(ExactSequenceProblem::new(
        vec![Some(m), Some(12 * k - 2), None, Some(2 * m), Some(0)],
        vec![Some(1), None, None, None],
    )?
    .with_labels(&["H2_D(E)", "H2(E)", "H2(E∖D)", "H3_D(E)", "0"]))
}

pub fn connected_sum_trace(k: i64, m: i64) -> Result<ConnectedSumTrace> {
    let problem = connected_sum_sequence(k, m)?;
    match problem.solve() {
        ExactSequenceOutcome::Unique { dims, ranks } => Ok(ConnectedSumTrace {
            k,
            m,
            labels: problem.labels.clone(),
            h2: dims[2],
            dims,
            ranks,
        }),
        other => Err(Error::Certificate(other.to_string())),
    }
}

pub fn connected_sum_h2(k: i64, m: i64) -> Result<i64> {
    Ok(connected_sum_trace(k, m)?.h2)
}

/// Number of type-changing components after applying the transformations.
pub fn kappa_track(seq: &[SurgeryData], kappa0: i64) -> Result<i64> {
    for d in seq {
        d.require_nontrivial()?;
    }
    Ok(kappa0 + seq.len() as i64)
}

/// Summary of one transformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryReport {
    pub data: [i64; 4],
    pub c: String,
    pub multiplicity: i64,
    pub shift: Option<i64>,
    pub shifted_ab: [i64; 2],
    pub pairing_factor: String,
    pub pairing_constant: String,
    pub nonvanishing_on_unit_interval: bool,
    pub closed_both_regimes: bool,
    pub kappa_before: i64,
    pub kappa_after: i64,
}

pub fn surgery_report(d: &SurgeryData, kappa_before: i64) -> Result<SurgeryReport> {
    let (l, s) = condition_shift(d)?;
    let pf = pairing_factor(&s)?;
    let closed = stripped_is_closed(&s, Some(Rational::zero()))? && stripped_is_closed(&s, Some(Rational::one()))?;
    Ok(SurgeryReport {
        data: [d.m, d.p, d.a, d.b],
        c: d.c.to_string(),
        multiplicity: multiplicity(d),
        shift: Some(l),
        shifted_ab: [s.a, s.b],
        pairing_factor: pf.display(&surgery_chart()),
        pairing_constant: pf.constant.to_string(),
        nonvanishing_on_unit_interval: s.factor_nonvanishing(),
        closed_both_regimes: closed,
        kappa_before,
        kappa_after: kappa_track(std::slice::from_ref(d), kappa_before)?,
    })
}
