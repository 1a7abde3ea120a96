//! Exterior calculus on forms, contraction with polyvectors, conjugation,
//! pointwise evaluation and pullback along coordinate maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::chart::Chart;
use super::expr::Expr;
use super::graded::{Blade, DifferentialForm, Kind, Multi, Polyvector};
use crate::error::{Error, Result};
use crate::scalar::{rat, GaussRat};

/// A rational assignment of variables and symbols, keyed by name.
///
/// A conjugate variable left unassigned takes the conjugate of its partner's
/// value, so `{"z1": 2+i}` also fixes `z̄1 = 2−i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Point {
    values: BTreeMap<String, GaussRat>,
}

impl Point {
    pub fn new() -> Self {
        Point::default()
    }

    pub fn with(mut self, name: &str, v: impl Into<GaussRat>) -> Self {
        self.values.insert(name.to_string(), v.into());
        self
    }

    pub fn set(&mut self, name: &str, v: GaussRat) {
        self.values.insert(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> Option<&GaussRat> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &GaussRat)> {
        self.values.iter()
    }

    /// Resolves names to chart slots and fills in implied conjugates.
    pub fn slots(&self, chart: &Chart) -> Result<BTreeMap<usize, GaussRat>> {
        let mut out = BTreeMap::new();
        for (name, v) in &self.values {
            let slot = chart.slot_index(name).ok_or_else(|| Error::UnknownName(name.clone()))?;
            out.insert(slot, v.clone());
        }
        for i in 0..chart.num_vars() {
            let j = chart.conj_var(i);
            if !out.contains_key(&j) {
                if let Some(v) = out.get(&i).map(|v| v.conj()) {
                    out.insert(j, v);
                }
            }
        }
        Ok(out)
    }
}

fn require_constant(chart: &Chart, e: &Expr) -> Result<()> {
    match e.terms().flat_map(|(m, _)| m.exponents().iter().enumerate()).find(|(_, &x)| x != 0) {
        Some((slot, _)) => Err(Error::Unassigned(chart.slot_name(slot).to_string())),
        None => Ok(()),
    }
}

impl<K: Kind> Multi<K> {
    /// Swaps `z ↔ z̄` in coefficients and generators, conjugates scalars and
    /// applies symbol conjugation rules.
    pub fn conj(&self) -> Result<Self> {
        let chart = self.chart().clone();
        let mut r = Self::zero(&chart);
        for (b, e) in self.terms() {
            let (s, nb) = b.permuted(|i| chart.conj_var(i));
            let c = e.conj(&chart)?;
            r.add_term(nb, if s < 0 { c.neg() } else { c });
        }
        Ok(r)
    }

    /// Evaluates every coefficient at `point`; every slot that occurs must be
    /// assigned.
    pub fn evaluate(&self, point: &Point) -> Result<Self> {
        let chart = self.chart().clone();
        let slots = point.slots(&chart)?;
        let r = self.substitute(&slots)?;
        for (_, e) in r.terms() {
            require_constant(&chart, e)?;
        }
        Ok(r)
    }

    /// Composes every coefficient with the slot images (no generator change).
    pub fn compose_coefficients(&self, images: &BTreeMap<usize, Expr>) -> Result<Self> {
        let chart = self.chart().clone();
        self.try_map_terms(|e| e.compose(&chart, images, &chart))
    }
}

/// Evaluates an expression at a point to a Gaussian rational.
pub fn evaluate_expr(chart: &Chart, e: &Expr, point: &Point) -> Result<GaussRat> {
    let r = e.substitute(chart, &point.slots(chart)?)?;
    require_constant(chart, &r)?;
    Ok(r.as_constant().unwrap_or_else(GaussRat::zero))
}

impl DifferentialForm {
    /// Exterior derivative, treating `z_i` and `z̄_i` as independent.
    pub fn d(&self) -> Result<Self> {
        let chart = self.chart().clone();
        let mut r = Self::zero(&chart);
        for (b, e) in self.terms() {
            for v in 0..chart.num_vars() {
                if b.contains(v) {
                    continue;
                }
                let de = e.partial(&chart, v)?;
                if de.is_zero() {
                    continue;
                }
                let (s, nb) = Blade::single(v).wedge(*b).expect("disjoint");
                r.add_term(nb, if s < 0 { de.neg() } else { de });
            }
        }
        Ok(r)
    }

    /// Interior product `i_p(self)` with `i_{u∧v} = i_u ∘ i_v`.
    pub fn interior(&self, p: &Polyvector) -> Result<Self> {
        self.check_chart(p.chart())?;
        let mut r = Self::zero(self.chart());
        for (pb, pe) in p.terms() {
            let idx: Vec<usize> = pb.indices().collect();
            for (fb, fe) in self.terms() {
                let mut sign = 1;
                let mut cur = Some(*fb);
                for &i in idx.iter().rev() {
                    cur = cur.and_then(|b| b.remove_leading(i)).map(|(s, nb)| {
                        sign *= s;
                        nb
                    });
                }
                if let Some(nb) = cur {
                    let c = pe.mul(fe);
                    r.add_term(nb, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(r)
    }

    /// Lie derivative along a vector field, by Cartan's formula.
    pub fn lie_derivative(&self, v: &Polyvector) -> Result<Self> {
        v.require_degree(1)?;
        self.interior(v)?.d()?.add(&self.d()?.interior(v)?)
    }

    /// `Σ_j w^j / j!` for a 2-form `w`; terminates when the power vanishes.
    pub fn exp_two_form(&self) -> Result<Self> {
        self.require_degree(2)?;
        let chart = self.chart().clone();
        let mut acc = Self::one(&chart);
        let mut power = Self::one(&chart);
        for j in 1.. {
            power = power.wedge(self)?.scale_c(&GaussRat::real(rat(1, j)));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Pairing `θ(v)` of a 1-form with a vector field.
    pub fn pair(&self, v: &Polyvector) -> Result<Expr> {
        self.require_degree(1)?;
        v.require_degree(1)?;
        Ok(self.interior(v)?.scalar_part())
    }

    /// Pulls the form back along `map`.
    pub fn pullback(&self, map: &ChartMap) -> Result<Self> {
        self.check_chart(&map.target)?;
        let src = &map.source;
        let mut r = Self::zero(src);
        let mut differentials: BTreeMap<usize, DifferentialForm> = BTreeMap::new();
        for (b, e) in self.terms() {
            let coeff = e.compose(&map.target, &map.images, src)?;
            let mut term = Self::scalar(src, coeff);
            for i in b.indices() {
                if !differentials.contains_key(&i) {
                    let img = map
                        .images
                        .get(&i)
                        .ok_or_else(|| Error::Unassigned(map.target.var_name(i).to_string()))?;
                    differentials.insert(i, Self::scalar(src, img.clone()).d()?);
                }
                term = term.wedge(&differentials[&i])?;
            }
            r = r.add(&term)?;
        }
        Ok(r)
    }
}

/// A smooth map given in coordinates: each target slot (variable or symbol)
/// is assigned an expression on the source chart.
#[derive(Clone, Debug)]
pub struct ChartMap {
    pub source: Arc<Chart>,
    pub target: Arc<Chart>,
    pub images: BTreeMap<usize, Expr>,
}

impl ChartMap {
    pub fn new(source: &Arc<Chart>, target: &Arc<Chart>) -> Self {
        ChartMap { source: source.clone(), target: target.clone(), images: BTreeMap::new() }
    }

    pub fn set(&mut self, target_name: &str, image: Expr) -> Result<&mut Self> {
        let slot = self
            .target
            .slot_index(target_name)
            .ok_or_else(|| Error::UnknownName(target_name.to_string()))?;
        self.source.check_expr(&image)?;
        self.images.insert(slot, image);
        Ok(self)
    }
}

impl Polyvector {
    /// Applies a vector field to a function: `Σ v_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Expr) -> Result<Expr> {
        self.require_degree(1)?;
        let chart = self.chart().clone();
        let mut r = Expr::zero();
        for (b, e) in self.terms() {
            let i = b.indices().next().expect("degree one");
            r = r.add(&e.mul(&f.partial(&chart, i)?));
        }
        Ok(r)
    }

    /// Contraction of a 1-form into the leading slot:
    /// `i_θ(u∧v) = θ(u) v − θ(v) u`.
    pub fn contract(&self, theta: &DifferentialForm) -> Result<Self> {
        self.check_chart(theta.chart())?;
        theta.require_degree(1)?;
        let mut r = Self::zero(self.chart());
        for (tb, te) in theta.terms() {
            let i = tb.indices().next().expect("degree one");
            for (b, e) in self.terms() {
                if let Some((s, nb)) = b.remove_leading(i) {
                    let c = te.mul(e);
                    r.add_term(nb, if s < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(r)
    }

    /// Schouten–Nijenhuis bracket.
    ///
    /// With odd coordinates `ξ_i = ∂_i` and left derivatives `∂_ξ`:
    /// `[P,Q] = Σ_i ∂_ξi P · ∂_i Q − (−1)^{p−1} ∂_i P · ∂_ξi Q`.
    /// On vector fields this is the commutator, `[X, f] = X(f)` and
    /// `[β, f] = i_{df} β`.
    pub fn schouten(&self, q: &Self) -> Result<Self> {
        self.check_chart(q.chart())?;
        let chart = self.chart().clone();
        let mut r = Self::zero(&chart);
        for (pb, pe) in self.terms() {
            let p_odd = pb.degree() % 2 == 1;
            for (qb, qe) in q.terms() {
                for i in 0..chart.num_vars() {
                    if let Some((s, rest)) = pb.remove_leading(i) {
                        let c = pe.mul(&qe.partial(&chart, i)?);
                        if let (false, Some((s2, nb))) = (c.is_zero(), rest.wedge(*qb)) {
                            r.add_term(nb, if s * s2 < 0 { c.neg() } else { c });
                        }
                    }
                    if let Some((s, rest)) = qb.remove_leading(i) {
                        let c = pe.partial(&chart, i)?.mul(qe);
                        if let (false, Some((s2, nb))) = (c.is_zero(), pb.wedge(rest)) {
                            // −(−1)^{p−1} = +1 when p is even
                            let sign = s * s2 * if p_odd { -1 } else { 1 };
                            r.add_term(nb, if sign < 0 { c.neg() } else { c });
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    /// Vector-field commutator.
    pub fn lie_bracket(&self, o: &Self) -> Result<Self> {
        self.require_degree(1)?;
        o.require_degree(1)?;
        self.schouten(o)
    }
}

/// `½` as a Gaussian rational.
pub(crate) fn half() -> GaussRat {
    GaussRat::real(rat(1, 2))
}

