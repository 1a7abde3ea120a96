//! Seeded verification suites with deterministic JSON and Markdown reports.

use std::collections::BTreeMap;
use std::fmt::{Debug, Write as _};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gcs::{
    beta_tilde_map, integrability_witness, mukai_pairing, poisson_delta, purity_report_dim4, random_point,
    type_number,
};
use crate::homology::rank_exact;
use crate::scalar::{int, rat, GaussRat, Rational};
use crate::surfaces::{
    cp2_poisson_matrix, cp2_table, cubic_from_coefficients, delpezzo_dims, delpezzo_h2_image_reading,
    delpezzo_table, hirzebruch_consistency, hirzebruch_table, local_algebra_dim, nodal_dims, obstruction_witness_dims,
    HirzebruchOutcome, LocalAlgebraProblem,
};
use crate::surgery::{
    condition_shift, connected_sum_trace, kappa_track, omega_t, pairing_factor, phi_t, stripped_is_closed,
    w_coordinate_identity, w_coordinate_identity_perturbed, SurgeryData,
};
use crate::symkernel::{
    Blade, Chart, ChartBuilder, ChartMap, DifferentialForm, Expr, GeneralizedVector, Kind, Monomial, Multi, Point,
    Polyvector,
};

pub const SUITE_NAMES: [&str; 7] =
    ["kernel-identities", "gcs-examples", "delpezzo", "hirzebruch", "nodal", "surgery", "connected-sum"];

/// Random instances per kernel identity.
pub const DEFAULT_CASES: usize = 100;

/// Number of random gluing tuples in the surgery suite.
pub const SURGERY_TUPLES: usize = 20;

/// One checked claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub group: String,
    pub case: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    /// `reference`, `derived` or `trivial`.
    pub provenance: String,
    pub passed: bool,
}

impl Check {
    fn compare<T: PartialEq + Debug>(group: &str, case: String, inputs: String, expected: T, got: T, tag: &str) -> Self {
        Check {
            group: group.into(),
            case,
            inputs,
            passed: expected == got,
            expected: format!("{expected:?}"),
            got: format!("{got:?}"),
            provenance: tag.into(),
        }
    }

    fn holds(group: &str, case: String, inputs: String, got: Result<bool>, tag: &str) -> Self {
        match got {
            Ok(b) => Self::compare(group, case, inputs, true, b, tag),
            Err(e) => Self::error(group, case, inputs, e, tag),
        }
    }

    fn error(group: &str, case: String, inputs: String, e: Error, tag: &str) -> Self {
        Check {
            group: group.into(),
            case,
            inputs,
            expected: "no error".into(),
            got: format!("error: {e}"),
            provenance: tag.into(),
            passed: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub group: String,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub groups: Vec<GroupSummary>,
    pub failures: Vec<Check>,
    pub outputs: serde_json::Value,
    pub reproduce: String,
    /// Not serialized, so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_seconds: f64,
}

impl SuiteResult {
    fn from_checks(suite: &str, seed: u64, cases: usize, mut checks: Vec<Check>, outputs: serde_json::Value) -> Self {
        checks.sort_by(|a, b| (&a.group, &a.case).cmp(&(&b.group, &b.case)));
        let mut groups: BTreeMap<String, GroupSummary> = BTreeMap::new();
        for c in &checks {
            let g = groups
                .entry(c.group.clone())
                .or_insert_with(|| GroupSummary { group: c.group.clone(), cases: 0, failures: 0 });
            g.cases += 1;
            g.failures += usize::from(!c.passed);
        }
        SuiteResult {
            suite: suite.into(),
            seed,
            cases: checks.len(),
            groups: groups.into_values().collect(),
            failures: checks.into_iter().filter(|c| !c.passed).collect(),
            outputs,
            reproduce: format!("gcsym verify --suite {suite} --seed {seed} --samples {cases}"),
            wall_seconds: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn group(&self, name: &str) -> Option<&GroupSummary> {
        self.groups.iter().find(|g| g.group == name)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## {} (seed {})\n\n", self.suite, self.seed);
        s.push_str("group | cases | failures\n---|---|---\n");
        for g in &self.groups {
            let _ = writeln!(s, "{} | {} | {}", g.group, g.cases, g.failures);
        }
        if !self.failures.is_empty() {
            let _ = writeln!(s, "\nfailures (reproduce with `{}`):\n", self.reproduce);
            for f in &self.failures {
                let _ = writeln!(
                    s,
                    "- {} / {} [{}]: inputs {}; expected {}; got {}",
                    f.group, f.case, f.provenance, f.inputs, f.expected, f.got
                );
            }
        }
        s
    }
}

/// Runs one named suite.
pub fn run_suite(name: &str, seed: u64, size: usize) -> Result<SuiteResult> {
    let start = std::time::Instant::now();
    let (checks, outputs) = match name {
        "kernel-identities" => (kernel_identities(seed, size), json!({})),
        "gcs-examples" => (gcs_examples(seed, size), json!({})),
        "delpezzo" => delpezzo_suite(seed),
        "hirzebruch" => hirzebruch_suite(seed),
        "nodal" => nodal_suite(seed),
        "surgery" => surgery_suite(seed),
        "connected-sum" => connected_sum_suite(),
        other => return Err(Error::UnknownSuite(other.into())),
    };
    let mut r = SuiteResult::from_checks(name, seed, size, checks, outputs);
    r.wall_seconds = start.elapsed().as_secs_f64();
    Ok(r)
}

pub fn run_all(seed: u64, size: usize) -> Result<Vec<SuiteResult>> {
    SUITE_NAMES.iter().map(|n| run_suite(n, seed, size)).collect()
}

/// Pretty JSON of a list of suite results; no timing data, so identical
/// seeds give identical bytes.
pub fn report_json(results: &[SuiteResult]) -> String {
    let passed = results.iter().all(SuiteResult::passed);
    let v = json!({ "passed": passed, "suites": results });
    serde_json::to_string_pretty(&v).expect("plain data") + "\n"
}

pub fn report_markdown(results: &[SuiteResult]) -> String {
    let mut s = String::from("# gcsym verification report\n\n");
    for r in results {
        s.push_str(&r.to_markdown());
        s.push('\n');
    }
    s
}

fn case_rng(seed: u64, group: u64, i: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(group);
    r.set_word_pos(i as u128 * 4096);
    r
}

// ---------------------------------------------------------------------------
// random generators

/// Chart `(z1, z2)` with `z1` logarithmic and symbols
/// `E = e^{z2}`, `Ē = e^{z̄2}` (units), `g = sin(z1 + z̄1)`, `h = cos(z1 + z̄1)`.
pub fn kernel_chart() -> Arc<Chart> {
    let mut b = ChartBuilder::new(&["z1", "z2"]);
    b.log("z1");
    let e = b.unit_symbol("E");
    let eb = b.unit_symbol("Ē");
    let g = b.symbol("g");
    let h = b.symbol("h");
    let m = |slot: usize| Expr::monomial(Monomial::single(slot, 1));
    let vars = ["z1", "z2", "z̄1", "z̄2"];
    let rules: [(usize, [Expr; 4]); 4] = [
        (e, [Expr::zero(), m(e), Expr::zero(), Expr::zero()]),
        (eb, [Expr::zero(), Expr::zero(), Expr::zero(), m(eb)]),
        (g, [m(h), Expr::zero(), m(h), Expr::zero()]),
        (h, [m(g).neg(), Expr::zero(), m(g).neg(), Expr::zero()]),
    ];
    for (slot, rs) in rules {
        for (v, r) in vars.iter().zip(rs) {
            b.derivative(slot, v, r).expect("declared variable");
        }
    }
    b.conjugate(e, m(eb)).conjugate(eb, m(e)).conjugate(g, m(g)).conjugate(h, m(h));
    b.build().expect("static chart")
}

fn small_gauss(rng: &mut impl Rng) -> GaussRat {
    GaussRat::new(rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)), rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
}

/// A random expression with at most `terms` terms; exponent ranges respect
/// the chart (negative only on log variables and unit symbols).
pub fn random_expr(chart: &Chart, rng: &mut impl Rng, terms: usize) -> Expr {
    let nv = chart.num_vars();
    let mut e = Expr::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let mut exps = Vec::with_capacity(chart.num_slots());
        for slot in 0..chart.num_slots() {
            let negative = if slot < nv { chart.is_log_var(slot) } else { chart.symbols()[slot - nv].unit };
            let lo = if negative { -1 } else { 0 };
            let hi = if slot < nv { 2 } else { 1 };
            exps.push(if rng.gen_bool(0.5) { 0 } else { rng.gen_range(lo..=hi) });
        }
        e.add_term(Monomial::from_exponents(exps), &small_gauss(rng));
    }
    e
}

fn random_multi<K: Kind>(chart: &Arc<Chart>, rng: &mut impl Rng, degree: Option<usize>, terms: usize) -> Multi<K> {
    let nv = chart.num_vars();
    let blades: Vec<Blade> = (0u32..1 << nv)
        .map(Blade)
        .filter(|b| degree.is_none_or(|d| b.degree() == d))
        .collect();
    let mut out = Multi::zero(chart);
    for _ in 0..rng.gen_range(1..=terms) {
        let b = blades[rng.gen_range(0..blades.len())];
        out.add_term(b, random_expr(chart, rng, 2));
    }
    out
}

pub fn random_form(chart: &Arc<Chart>, rng: &mut impl Rng, degree: Option<usize>, terms: usize) -> DifferentialForm {
    random_multi(chart, rng, degree, terms)
}

pub fn random_polyvector(chart: &Arc<Chart>, rng: &mut impl Rng, degree: Option<usize>, terms: usize) -> Polyvector {
    random_multi(chart, rng, degree, terms)
}

pub fn random_genvec(chart: &Arc<Chart>, rng: &mut impl Rng) -> GeneralizedVector {
    GeneralizedVector::new(random_polyvector(chart, rng, Some(1), 2), random_form(chart, rng, Some(1), 2))
        .expect("degree one parts")
}

fn sign(odd: bool) -> GaussRat {
    GaussRat::from_int(if odd { -1 } else { 1 })
}

// ---------------------------------------------------------------------------
// kernel identities

const KERNEL_GROUPS: [&str; 6] =
    ["d-squared", "graded-commutativity", "clifford-relation", "cartan", "courant-antisymmetry", "super-jacobi"];

fn kernel_case(group: usize, rng: &mut ChaCha8Rng) -> Result<bool> {
    let c = kernel_chart();
    match group {
        0 => {
            let phi = random_form(&c, rng, None, 4);
            Ok(phi.d()?.d()?.is_zero())
        }
        1 => {
            let (p, q) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            let a = random_form(&c, rng, Some(p), 3);
            let b = random_form(&c, rng, Some(q), 3);
            Ok(a.wedge(&b)? == b.wedge(&a)?.scale_c(&sign(p * q % 2 == 1)))
        }
        2 => {
            let e = random_genvec(&c, rng);
            let phi = random_form(&c, rng, None, 3);
            Ok(e.clifford(&e.clifford(&phi)?)? == phi.scale(&e.inner_metric(&e)?))
        }
        3 => {
            let x = random_polyvector(&c, rng, Some(1), 2);
            let y = random_polyvector(&c, rng, Some(1), 2);
            let phi = random_form(&c, rng, None, 3);
            let lhs = phi.interior(&y)?.lie_derivative(&x)?.sub(&phi.lie_derivative(&x)?.interior(&y)?)?;
            let commutes = phi.lie_derivative(&x)?.d()? == phi.d()?.lie_derivative(&x)?;
            Ok(lhs == phi.interior(&x.lie_bracket(&y)?)? && commutes)
        }
        4 => {
            let a = random_genvec(&c, rng);
            let b = random_genvec(&c, rng);
            Ok(a.courant(&b)?.add(&b.courant(&a)?)?.is_zero())
        }
        _ => {
            let deg: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
            let [p, q, r] = [0, 1, 2].map(|i| random_polyvector(&c, rng, Some(deg[i]), 2));
            // (−1)^{p(r+1)} [P,[Q,R]] + cyclic, matching [P,Q] = (−1)^{pq}[Q,P]
            let s = |a: usize, b: usize| sign(a * (b + 1) % 2 == 1);
            let t1 = p.schouten(&q.schouten(&r)?)?.scale_c(&s(deg[0], deg[2]));
            let t2 = q.schouten(&r.schouten(&p)?)?.scale_c(&s(deg[1], deg[0]));
            let t3 = r.schouten(&p.schouten(&q)?)?.scale_c(&s(deg[2], deg[1]));
            Ok(t1.add(&t2)?.add(&t3)?.is_zero())
        }
    }
}

/// The six kernel identities on `size` seeded random instances each.
pub fn kernel_identities(seed: u64, size: usize) -> Vec<Check> {
    let jobs: Vec<(usize, usize)> = (0..KERNEL_GROUPS.len()).flat_map(|g| (0..size).map(move |i| (g, i))).collect();
    jobs.into_par_iter()
        .map(|(g, i)| {
            let mut rng = case_rng(seed, g as u64, i);
            let got = kernel_case(g, &mut rng);
            Check::holds(KERNEL_GROUPS[g], format!("{i:04}"), format!("seed {seed}, instance {i}"), got, "trivial")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// generalized complex examples

fn plain_chart(n: usize) -> Arc<Chart> {
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    ChartBuilder::new(&names).build().expect("static chart")
}

fn bivector(c: &Arc<Chart>, i: usize, j: usize, coeff: Expr) -> Polyvector {
    Polyvector::generator(c, i).wedge(&Polyvector::generator(c, j)).expect("same chart").scale(&coeff)
}

/// A monomial form `z^α dz_I` with holomorphic `I` of degree `p`.
fn random_monomial_form(c: &Arc<Chart>, rng: &mut impl Rng, p: usize) -> DifferentialForm {
    let n = c.dim();
    let exps: Vec<i32> = (0..c.num_vars()).map(|_| rng.gen_range(0..=2)).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    while idx.len() > p {
        idx.remove(rng.gen_range(0..idx.len()));
    }
    let (_, blade) = Blade::from_indices(&idx).expect("distinct");
    DifferentialForm::basis(c, blade, Expr::term(GaussRat::from_int(rng.gen_range(1..=5)), Monomial::from_exponents(exps)))
}

/// `∧^{p+1}β̃(d a) = δ_β(∧^pβ̃(a))`.
pub fn commuting_square(beta: &Polyvector, a: &DifferentialForm) -> Result<bool> {
    Ok(beta_tilde_map(beta, &a.d()?)? == poisson_delta(beta, &beta_tilde_map(beta, a)?)?)
}

/// `β = ∂1∧∂2 + z2 ∂2∧∂3`, with `[β, β] ≠ 0`.
pub fn non_poisson_example() -> Polyvector {
    let c = plain_chart(3);
    bivector(&c, 0, 1, Expr::one()).add(&bivector(&c, 1, 2, c.var("z2").unwrap())).unwrap()
}

/// The first nonzero `δ_β²(a)` over a fixed list of test polyvectors.
pub fn delta_squared_residual(beta: &Polyvector) -> Result<Option<(String, Polyvector)>> {
    let c = beta.chart().clone();
    let mut tests: Vec<Polyvector> = Vec::new();
    for i in 0..c.dim() {
        tests.push(Polyvector::scalar(&c, Expr::monomial(Monomial::single(i, 1))));
    }
    for i in 0..c.dim() {
        tests.push(Polyvector::generator(&c, i));
    }
    for t in tests {
        let r = poisson_delta(beta, &poisson_delta(beta, &t)?)?;
        if !r.is_zero() {
            return Ok(Some((t.to_string(), r)));
        }
    }
    Ok(None)
}

fn example_spinor(c: &Arc<Chart>) -> Result<DifferentialForm> {
    DifferentialForm::scalar(c, c.var("z1")?).add(&DifferentialForm::gen(c, "z1")?.wedge(&DifferentialForm::gen(c, "z2")?)?)
}

pub fn gcs_examples(seed: u64, size: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let c2 = plain_chart(2);
    let betas = [
        ("∂1∧∂2", bivector(&c2, 0, 1, Expr::one())),
        ("z1∂1∧∂2", bivector(&c2, 0, 1, c2.var("z1").unwrap())),
    ];
    let n = size.max(50);
    for (bi, (name, beta)) in betas.iter().enumerate() {
        let square: Vec<Check> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut rng = case_rng(seed, 100 + bi as u64, i);
                let p = i % 3;
                let a = random_monomial_form(&c2, &mut rng, p);
                let inputs = format!("β = {name}, a = {a}");
                Check::holds("commuting-square", format!("{name}/{i:03}"), inputs, commuting_square(beta, &a), "reference")
            })
            .collect();
        checks.extend(square);
    }
    let c3 = plain_chart(3);
    let poisson3 = [
        ("∂1∧∂2", bivector(&c2, 0, 1, Expr::one())),
        ("z1∂1∧∂2", bivector(&c2, 0, 1, c2.var("z1").unwrap())),
        ("z1∂2∧∂3", bivector(&c3, 1, 2, c3.var("z1").unwrap())),
    ];
    for (bi, (name, beta)) in poisson3.iter().enumerate() {
        let runs: Vec<Check> = (0..size.max(1))
            .into_par_iter()
            .map(|i| {
                let mut rng = case_rng(seed, 200 + bi as u64, i);
                let deg = rng.gen_range(0..=2);
                let c = beta.chart().clone();
                let a = random_polyvector(&c, &mut rng, Some(deg), 3);
                let got = poisson_delta(beta, &a).and_then(|x| poisson_delta(beta, &x)).map(|r| r.is_zero());
                Check::holds("delta-squared", format!("{name}/{i:03}"), format!("a = {a}"), got, "trivial")
            })
            .collect();
        checks.extend(runs);
    }
    let bad = non_poisson_example();
    let residual = delta_squared_residual(&bad);
    checks.push(match residual {
        Ok(r) => Check::compare(
            "delta-squared",
            "non-poisson-control".into(),
            format!("β = {bad}"),
            true,
            r.is_some(),
            "trivial",
        ),
        Err(e) => Check::error("delta-squared", "non-poisson-control".into(), format!("β = {bad}"), e, "trivial"),
    });
    checks.extend(example_checks());
    checks
}

fn example_checks() -> Vec<Check> {
    let g = "example-spinor";
    let c = plain_chart(2);
    let inputs = "φ = z1 + dz1∧dz2".to_string();
    let phi = match example_spinor(&c) {
        Ok(p) => p,
        Err(e) => return vec![Check::error(g, "build".into(), inputs, e, "reference")],
    };
    let mut out = Vec::new();
    let at1 = Point::new().with("z1", 1).with("z2", 0);
    out.push(Check::holds(
        g,
        "pure".into(),
        inputs.clone(),
        purity_report_dim4(&phi, &at1).map(|r| r.is_pure && r.kernel_agrees),
        "reference",
    ));
    out.push(Check::holds(
        g,
        "pairing-nonzero".into(),
        inputs.clone(),
        phi.conj().and_then(|b| mukai_pairing(&phi, &b)).map(|p| !p.is_zero()),
        "reference",
    ));
    for (z1, expected) in [(0, 2), (1, 0)] {
        let got = type_number(&phi, &Point::new().with("z1", z1).with("z2", 0));
        out.push(match got {
            Ok(t) => Check::compare(g, format!("type-at-z1={z1}"), inputs.clone(), expected, t, "reference"),
            Err(e) => Check::error(g, format!("type-at-z1={z1}"), inputs.clone(), e, "reference"),
        });
    }
    let witness = integrability_witness(&phi, 1).and_then(|w| match w {
        Some(w) => Ok(w.clifford(&phi)? == phi.d()?),
        None => Ok(false),
    });
    out.push(Check::holds(g, "witness-degree-1".into(), inputs, witness, "reference"));
    out
}

// ---------------------------------------------------------------------------
// surfaces

fn fermat() -> Expr {
    cubic_from_coefficients(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 1].map(int)).expect("ten coefficients")
}

/// `z2² − z1²(z1 + 1)`, a cubic with one node at the origin.
pub fn nodal_cubic() -> Expr {
    cubic_from_coefficients(&[0, 0, 0, -1, 0, 1, -1, 0, 0, 0].map(int)).expect("ten coefficients")
}

fn delpezzo_suite(seed: u64) -> (Vec<Check>, serde_json::Value) {
    let mut checks = Vec::new();
    let g = "cp2-fermat";
    let inputs = "f = 1 + z1³ + z2³".to_string();
    match cp2_poisson_matrix(&fermat()) {
        Ok(m) => {
            checks.push(Check::compare(g, "rank-bareiss".into(), inputs.clone(), 8, rank_exact(&m), "derived"));
            checks.push(Check::compare(g, "rank-rref".into(), inputs.clone(), 8, m.rank(), "derived"));
        }
        Err(e) => checks.push(Check::error(g, "matrix".into(), inputs.clone(), e, "derived")),
    }
    let cp2 = cp2_table(&fermat(), 0, seed);
    match &cp2 {
        Ok(t) => {
            checks.push(Check::compare(g, "dims".into(), inputs.clone(), vec![1, 0, 2], t.total[..3].to_vec(), "reference"));
            checks.push(Check::compare(g, "e2-degeneration".into(), inputs, true, t.degenerates_at_e2, "reference"));
        }
        Err(e) => checks.push(Check::error(g, "table".into(), inputs, e.clone(), "reference")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0b1c);
    for i in 0..10 {
        let mut coeffs = || -> Vec<Rational> { (0..10).map(|_| int(rng.gen_range(-4..=4))).collect() };
        let (a, b) = (coeffs(), coeffs());
        let lambda = int(rng.gen_range(-3..=3));
        let sum: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| &lambda * x + y).collect();
        let got = (|| -> Result<bool> {
            let ma = cp2_poisson_matrix(&cubic_from_coefficients(&a)?)?;
            let mb = cp2_poisson_matrix(&cubic_from_coefficients(&b)?)?;
            let ms = cp2_poisson_matrix(&cubic_from_coefficients(&sum)?)?;
            Ok(ms == ma.scale(&lambda).add(&mb)?)
        })();
        checks.push(Check::holds("cp2-linearity", format!("{i:02}"), format!("{a:?}, {b:?}, λ = {lambda}"), got, "trivial"));
    }
    let sweep: Vec<(usize, Result<crate::surfaces::SurfaceTable>)> =
        (0..=8usize).into_par_iter().map(|k| (k, delpezzo_table(k, 0, seed.wrapping_add(k as u64)))).collect();
    let mut tables = Vec::new();
    let mut readings = Vec::new();
    for (k, t) in sweep {
        let inputs = format!("k = {k}, ker δ⁰ = 0");
        match delpezzo_dims(k, 0) {
            Ok(d) => checks.push(Check::compare("delpezzo-h2", format!("k={k}"), inputs.clone(), k + 2, d[2], "reference")),
            Err(e) => checks.push(Check::error("delpezzo-h2", format!("k={k}"), inputs.clone(), e, "reference")),
        }
        match t {
            Ok(t) => {
                checks.push(Check::compare(
                    "delpezzo-model",
                    format!("k={k}"),
                    inputs,
                    (true, k + 2),
                    (t.degenerates_at_e2, t.total[2]),
                    "reference",
                ));
                tables.push(t.to_json());
            }
            Err(e) => checks.push(Check::error("delpezzo-model", format!("k={k}"), inputs, e, "reference")),
        }
        readings.push(json!({ "k": k, "coker": delpezzo_dims(k, 0).ok().map(|d| d[2]), "image": delpezzo_h2_image_reading(k, 0).ok() }));
    }
    let outputs = json!({
        "cp2": cp2.ok().map(|t| t.to_json()),
        "delpezzo": tables,
        "h2_readings": readings,
    });
    (checks, outputs)
}

fn hirzebruch_suite(seed: u64) -> (Vec<Check>, serde_json::Value) {
    let mut checks = Vec::new();
    let mut outcomes = Vec::new();
    for e in 1..=8usize {
        let inputs = format!("e = {e}");
        let out = hirzebruch_consistency(e);
        outcomes.push(json!({ "e": e, "outcome": out.as_ref().ok() }));
        match (e, out) {
            (4.., Ok(HirzebruchOutcome::Consistent { rank_delta0, rank_delta1, h2, injective, surjective })) => {
                let ei = e as i64;
                checks.push(Check::compare(
                    "hirzebruch-ranks",
                    format!("e={e}"),
                    inputs.clone(),
                    (ei + 5, ei - 3, 3, true, true),
                    (rank_delta0, rank_delta1, h2, injective, surjective),
                    "reference",
                ));
                let model = hirzebruch_table(e, seed.wrapping_add(e as u64)).map(|t| (t.degenerates_at_e2, t.total));
                checks.push(match model {
                    Ok(m) => Check::compare("hirzebruch-model", format!("e={e}"), inputs.clone(), (true, vec![1, 0, 3, 0, 0]), m, "reference"),
                    Err(err) => Check::error("hirzebruch-model", format!("e={e}"), inputs.clone(), err, "reference"),
                });
                checks.push(Check::holds("obstruction", format!("e={e}"), inputs, obstruction_witness_dims(e), "reference"));
            }
            (1 | 2, Ok(o)) => checks.push(Check::compare(
                "small-e-certificate",
                format!("e={e}"),
                inputs,
                true,
                matches!(o, HirzebruchOutcome::Inconsistent { .. }),
                "derived",
            )),
            (3, Ok(_)) => {}
            (_, Ok(o)) => checks.push(Check::compare("hirzebruch-ranks", format!("e={e}"), inputs, "consistent".to_string(), format!("{o:?}"), "reference")),
            (_, Err(err)) => checks.push(Check::error("hirzebruch-ranks", format!("e={e}"), inputs, err, "reference")),
        }
    }
    (checks, json!({ "outcomes": outcomes }))
}

fn nodal_suite(seed: u64) -> (Vec<Check>, serde_json::Value) {
    let mut checks = Vec::new();
    let c = crate::surfaces::cp2_chart();
    let z1 = c.var("z1").expect("z1");
    let z2 = c.var("z2").expect("z2");
    let germs = [
        ("node z1z2", z1.mul(&z2), 1, "reference"),
        ("cusp z1²−z2³", z1.mul(&z1).sub(&z2.mul(&z2).mul(&z2)), 2, "derived"),
        ("smooth z1", z1.clone(), 0, "trivial"),
    ];
    for (name, f, expected, tag) in germs {
        for bound in [4, 5] {
            let got = local_algebra_dim(&LocalAlgebraProblem { f: f.clone(), bound }).map(|r| (r.dim, r.stabilized));
            checks.push(match got {
                Ok(g) => Check::compare("local-algebra", format!("{name}/N={bound}"), name.into(), (expected, true), g, tag),
                Err(e) => Check::error("local-algebra", format!("{name}/N={bound}"), name.into(), e, tag),
            });
        }
    }
    let inputs = "f = z2² − z1²(z1 + 1), one node".to_string();
    let table = cp2_table(&nodal_cubic(), 1, seed);
    match &table {
        Ok(t) => {
            checks.push(Check::compare("nodal-cubic", "poisson-h2".into(), inputs.clone(), 2, t.total[2], "reference"));
            checks.push(Check::compare("nodal-cubic", "complement-h2".into(), inputs.clone(), 1, t.complement[2], "reference"));
            let corrected = nodal_dims(&t.complement, 1, true);
            checks.push(match corrected {
                Ok(d) => Check::compare("nodal-cubic", "correction".into(), inputs, t.total.clone(), d, "reference"),
                Err(e) => Check::error("nodal-cubic", "correction".into(), inputs, e, "reference"),
            });
        }
        Err(e) => checks.push(Check::error("nodal-cubic", "table".into(), inputs, e.clone(), "reference")),
    }
    checks.push(Check::compare(
        "nodal-formula",
        "m=3".into(),
        "base H² = 1".into(),
        Ok(vec![1, 0, 4, 0, 0]),
        nodal_dims(&[1, 0, 1, 0, 0], 3, true),
        "reference",
    ));
    checks.push(Check::compare(
        "nodal-formula",
        "m=0".into(),
        "base H² = 1".into(),
        Ok(vec![1, 0, 1, 0, 0]),
        nodal_dims(&[1, 0, 1, 0, 0], 0, true),
        "trivial",
    ));
    checks.push(Check::compare(
        "nodal-formula",
        "missing-hypothesis".into(),
        "h3_vanishes = false".into(),
        true,
        matches!(nodal_dims(&[1, 0, 1, 0, 0], 1, false), Err(Error::MissingHypothesis(_))),
        "trivial",
    ));
    (checks, json!({ "nodal_cubic": table.ok().map(|t| t.to_json()) }))
}

// ---------------------------------------------------------------------------
// surgery

/// A random unimodular tuple with `p ≠ 0` and a random area constant.
pub fn random_surgery_data(rng: &mut impl Rng) -> SurgeryData {
    loop {
        let m: i64 = rng.gen_range(-3..=3);
        let p: i64 = rng.gen_range(-3..=3);
        if p == 0 || m.gcd(&p) != 1 {
            continue;
        }
        let eg = m.extended_gcd(&p);
        let (b, a) = (eg.x * eg.gcd, -eg.y * eg.gcd);
        let k: i64 = rng.gen_range(-3..=3);
        let c = rat(rng.gen_range(1..=9), rng.gen_range(1..=4));
        return SurgeryData::new(m, p, a + m * k, b + p * k, c).expect("unimodular by construction");
    }
}

fn unit_symbol_with(b: &mut ChartBuilder, name: &str, rules: &[(&str, Expr)], conj: Option<Expr>) -> Result<usize> {
    let slot = b.unit_symbol(name);
    let vars: Vec<String> = (0..b.peek().num_vars()).map(|i| b.peek().var_name(i).to_string()).collect();
    for v in &vars {
        let r = rules.iter().find(|(n, _)| n == v).map_or_else(Expr::zero, |(_, e)| e.clone());
        b.derivative(slot, v, r)?;
    }
    let me = Expr::monomial(Monomial::single(slot, 1));
    b.conjugate(slot, conj.unwrap_or(me));
    Ok(slot)
}

/// `ψ*σ_C = ω` where `σ_C = iC(dz1∧dz̄1 + dz2∧dz̄2)`, `ω` is the imaginary
/// part of `Ω` at `s = 1`, and `ψ(r,θ1,θ2,θ3) = (√log(er), mθ1 + aθ3, θ2, pθ1 + bθ3)`.
///
/// Works on three charts: `(z1, z2)`, polar `(R, Θ1, Θ2, Θ3)` with
/// `X = e^{iΘ1}`, and source `(r, t1, t2, t3)` with `Q = √log(er)`,
/// `Y = e^{it1}`.
pub fn psi_pullback_identity(d: &SurgeryData) -> Result<bool> {
    let i = GaussRat::i();
    let c = real(d.c.clone());
    let zc = plain_chart(2);
    let sigma = DifferentialForm::gen(&zc, "z1")?
        .wedge(&DifferentialForm::gen(&zc, "z̄1")?)?
        .add(&DifferentialForm::gen(&zc, "z2")?.wedge(&DifferentialForm::gen(&zc, "z̄2")?)?)?
        .scale_c(&(&i * &c));

    let mut pb = ChartBuilder::new(&["R", "Θ1", "Θ2", "Θ3"]);
    let xslot = pb.peek().num_vars();
    let x = Expr::monomial(Monomial::single(xslot, 1));
    let xinv = Expr::monomial(Monomial::single(xslot, -1));
    unit_symbol_with(&mut pb, "X", &[("Θ1", x.scale(&i))], Some(xinv.clone()))?;
    let polar = pb.build()?;
    let (rr, t1, t2, t3) = (polar.var("R")?, polar.var("Θ1")?, polar.var("Θ2")?, polar.var("Θ3")?);
    let mut to_z = ChartMap::new(&polar, &zc);
    to_z.set("z1", rr.mul(&x))?
        .set("z̄1", rr.mul(&xinv))?
        .set("z2", t2.add(&t3.scale(&i)))?
        .set("z̄2", t2.sub(&t3.scale(&i)))?;
    let sigma_polar = sigma.pullback(&to_z)?;
    let expected_polar = DifferentialForm::gen(&polar, "R")?
        .wedge(&DifferentialForm::gen(&polar, "Θ1")?)?
        .scale(&rr)
        .add(&DifferentialForm::gen(&polar, "Θ2")?.wedge(&DifferentialForm::gen(&polar, "Θ3")?)?)?
        .scale_c(&(&GaussRat::from_int(2) * &c));
    if sigma_polar != expected_polar {
        return Ok(false);
    }
    let _ = t1;

    let mut sb = ChartBuilder::new(&["r", "t1", "t2", "t3"]);
    sb.log("r");
    let nv = sb.peek().num_vars();
    let q = Expr::monomial(Monomial::single(nv, 1));
    let dq = Expr::monomial(Monomial::from_exponents(
        (0..=nv).map(|s| if s == 0 || s == nv { -1 } else { 0 }).collect(),
    ))
    .scale(&real(rat(1, 2)));
    unit_symbol_with(&mut sb, "Q", &[("r", dq)], None)?;
    let y = Expr::monomial(Monomial::single(nv + 1, 1));
    let yinv = Expr::monomial(Monomial::single(nv + 1, -1));
    unit_symbol_with(&mut sb, "Y", &[("t1", y.scale(&i))], Some(yinv.clone()))?;
    let src = sb.build()?;
    let (r, s1, s2, s3) = (src.var("r")?, src.var("t1")?, src.var("t2")?, src.var("t3")?);
    let lin = |u: i64, v: i64| s1.scale(&GaussRat::from_int(u)).add(&s3.scale(&GaussRat::from_int(v)));
    let mut psi = ChartMap::new(&src, &polar);
    psi.set("R", q)?.set("Θ1", lin(d.m, d.a))?.set("Θ2", s2.clone())?.set("Θ3", lin(d.p, d.b))?;
    let pulled = sigma_polar.pullback(&psi)?;

    let omega = omega_t(d)?;
    let im = omega.sub(&omega.conj()?)?.scale_c(&GaussRat::new(Rational::zero(), rat(-1, 2)));
    let mut to_t = ChartMap::new(&src, omega.chart());
    to_t.set("z1", r.mul(&y))?
        .set("z̄1", r.mul(&yinv))?
        .set("z2", s2.add(&s3.scale(&i)))?
        .set("z̄2", s2.sub(&s3.scale(&i)))?
        .set("s", Expr::one())?;
    Ok(im.pullback(&to_t)? == pulled)
}

fn real(r: Rational) -> GaussRat {
    GaussRat::real(r)
}

fn surgery_tuple_checks(i: usize, d: &SurgeryData, seed: u64) -> Vec<Check> {
    let case = |name: &str| format!("{i:02}/{name}");
    let inputs = d.to_string();
    let mut out = Vec::new();
    let shifted = match condition_shift(d) {
        Ok((l, s)) => {
            out.push(Check::compare("condition-shift", case("bound"), inputs.clone(), true, l.abs() <= 10, "derived"));
            let (slope, at0) = s.factor_coefficients();
            let samples = [rat(0, 1), rat(1, 2), rat(1, 1)].map(|x| int(slope) * x + int(at0));
            out.push(Check::compare(
                "condition-shift",
                case("samples"),
                inputs.clone(),
                true,
                samples.iter().all(|v| !v.is_zero()) && (s.m * s.b - s.p * s.a == 1),
                "trivial",
            ));
            s
        }
        Err(e) => {
            out.push(Check::error("condition-shift", case("bound"), inputs, e, "derived"));
            return out;
        }
    };
    let sin = shifted.to_string();
    out.push(match pairing_factor(&shifted) {
        Ok(pf) => {
            // the top coefficient has no root on [0, 1]
            let chart = crate::surgery::surgery_chart();
            let slot = chart.symbol_slot("s").expect("s");
            let ends: Result<Vec<Expr>> = [0, 1]
                .iter()
                .map(|&v| pf.top.substitute(&chart, &BTreeMap::from([(slot, GaussRat::from_int(v))])))
                .collect();
            let no_root = ends.map(|v| {
                let a = v[0].as_constant().unwrap_or_default();
                let b = v[1].as_constant().unwrap_or_default();
                !a.is_zero() && !b.is_zero() && a.re.clone() * b.re.clone() > Rational::zero() && a.im.is_zero()
            });
            Check::holds("pairing-factor", case("certified"), sin.clone(), no_root, "derived")
        }
        Err(e) => Check::error("pairing-factor", case("certified"), sin.clone(), e, "derived"),
    });
    for (label, s) in [("s=0", Some(Rational::zero())), ("s=1", Some(Rational::one())), ("s", None)] {
        out.push(Check::holds("closed", case(label), sin.clone(), stripped_is_closed(&shifted, s), "reference"));
    }
    let mut rng = case_rng(seed, 300, i);
    for j in 0..5 {
        let cp = rat(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=9));
        let inputs = format!("{sin}, C′ = {cp}");
        out.push(Check::holds("w-identity", case(&format!("{j}")), inputs.clone(), w_coordinate_identity(&shifted, &cp), "derived"));
        out.push(Check::holds(
            "w-identity-control",
            case(&format!("{j}")),
            inputs,
            w_coordinate_identity_perturbed(&shifted, &cp).map(|b| !b),
            "trivial",
        ));
    }
    let purity = (|| -> Result<bool> {
        let phi = phi_t(&shifted)?;
        let chart = phi.chart().clone();
        let slot = chart.symbol_slot("s").expect("s");
        let at1 = phi.substitute(&BTreeMap::from([(slot, GaussRat::one())]))?;
        let mut p = random_point(&chart, &mut rng);
        p.set("s", GaussRat::one());
        let r = purity_report_dim4(&at1, &p)?;
        Ok(r.is_pure && r.is_nondegenerate_at_point)
    })();
    out.push(Check::holds("purity-s=1", case("point"), sin, purity, "reference"));
    out
}

fn surgery_suite(seed: u64) -> (Vec<Check>, serde_json::Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e6);
    let data: Vec<SurgeryData> = (0..SURGERY_TUPLES).map(|_| random_surgery_data(&mut rng)).collect();
    let mut checks: Vec<Check> =
        data.par_iter().enumerate().flat_map_iter(|(i, d)| surgery_tuple_checks(i, d, seed)).collect();
    let first = condition_shift(&data[0]).map(|(_, s)| s).unwrap_or_else(|_| data[0].clone());
    checks.push(Check::holds("psi-pullback", "once".into(), first.to_string(), psi_pullback_identity(&first), "reference"));
    let tuples: Vec<[i64; 4]> = data.iter().map(|d| [d.m, d.p, d.a, d.b]).collect();
    (checks, json!({ "tuples": tuples }))
}

// ---------------------------------------------------------------------------
// connected sums

/// `J_m`: one multiplicity-0 transformation followed by `m − 1` of
/// multiplicity 1, starting from `κ = 0`.
pub fn connected_sum_kappa(m: usize) -> Result<i64> {
    let mut seq = vec![SurgeryData::new(0, 1, -1, 0, Rational::one())?];
    for _ in 1..m {
        seq.push(SurgeryData::new(1, 1, 0, 1, Rational::one())?);
    }
    kappa_track(&seq, 0)
}

fn connected_sum_suite() -> (Vec<Check>, serde_json::Value) {
    let mut checks = Vec::new();
    let mut grid = Vec::new();
    for k in 1..=4i64 {
        for m in 1..=4i64 {
            let inputs = format!("k = {k}, m = {m}");
            match connected_sum_trace(k, m) {
                Ok(t) => {
                    checks.push(Check::compare("h2", format!("k={k},m={m}"), inputs.clone(), 12 * k + 2 * m - 3, t.h2, "reference"));
                    grid.push(serde_json::to_value(&t).expect("plain data"));
                }
                Err(e) => checks.push(Check::error("h2", format!("k={k},m={m}"), inputs.clone(), e, "reference")),
            }
            checks.push(match connected_sum_kappa(m as usize) {
                Ok(kappa) => Check::compare("kappa", format!("k={k},m={m}"), inputs, m, kappa, "reference"),
                Err(e) => Check::error("kappa", format!("k={k},m={m}"), inputs, e, "reference"),
            });
        }
    }
    (checks, json!({ "grid": grid }))
}
