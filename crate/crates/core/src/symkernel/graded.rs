//! Graded anticommutative elements over a chart.
//!
//! [`Multi`] is shared by differential forms (generators `dz_i, dz̄_i`) and
//! polyvectors (generators `∂/∂z_i, ∂/∂z̄_i`).  A basis element is a [`Blade`]:
//! a set of generator indices stored as a bitmask and always read in
//! increasing index order, so every term is sign-normalized.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::chart::Chart;
use super::expr::Expr;
use crate::error::{Error, Result};
use crate::scalar::GaussRat;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub fn empty() -> Self {
        Blade(0)
    }

    pub fn single(i: usize) -> Self {
        Blade(1 << i)
    }

    pub fn from_indices(idx: &[usize]) -> Option<(i32, Blade)> {
        idx.iter().try_fold((1, Blade::empty()), |(s, b), &i| {
            b.wedge(Blade::single(i)).map(|(s2, b2)| (s * s2, b2))
        })
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Number of members strictly below `i`.
    pub fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u32 << i) - 1)).count_ones()
    }

    /// `self ∧ other` as `(sign, blade)`, or `None` if a generator repeats.
    pub fn wedge(self, other: Blade) -> Option<(i32, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0;
        for j in other.indices() {
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }

    /// Removes generator `i` from the front: `ι_i(e_I) = (−1)^{#below} e_{I∖i}`.
    pub fn remove_leading(self, i: usize) -> Option<(i32, Blade)> {
        if !self.contains(i) {
            return None;
        }
        let sign = if self.count_below(i) % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade(self.0 & !(1 << i))))
    }

    /// Sign of the permutation that sorts `perm(indices)` back into order.
    pub fn permuted(self, perm: impl Fn(usize) -> usize) -> (i32, Blade) {
        let mapped: Vec<usize> = self.indices().map(perm).collect();
        Blade::from_indices(&mapped).expect("permutation must be injective")
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.indices()).finish()
    }
}

pub trait Kind: Clone + Copy + fmt::Debug + Default + PartialEq + Eq + Send + Sync + 'static {
    const PREFIX: &'static str;
    const NAME: &'static str;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FormKind;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VectorKind;

impl Kind for FormKind {
    const PREFIX: &'static str = "d";
    const NAME: &'static str = "form";
}

impl Kind for VectorKind {
    const PREFIX: &'static str = "∂";
    const NAME: &'static str = "polyvector";
}

/// Sparse graded element with [`Expr`] coefficients.
#[derive(Clone)]
pub struct Multi<K: Kind> {
    chart: Arc<Chart>,
    terms: BTreeMap<Blade, Expr>,
    _kind: PhantomData<K>,
}

pub type DifferentialForm = Multi<FormKind>;
pub type Polyvector = Multi<VectorKind>;

pub(crate) fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

impl<K: Kind> PartialEq for Multi<K> {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart).is_ok() && self.terms == other.terms
    }
}

impl<K: Kind> Eq for Multi<K> {}

impl<K: Kind> Multi<K> {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        Multi { chart: chart.clone(), terms: BTreeMap::new(), _kind: PhantomData }
    }

    pub fn scalar(chart: &Arc<Chart>, e: Expr) -> Self {
        Self::basis(chart, Blade::empty(), e)
    }

    pub fn constant(chart: &Arc<Chart>, c: GaussRat) -> Self {
        Self::scalar(chart, Expr::constant(c))
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::constant(chart, GaussRat::one())
    }

    pub fn basis(chart: &Arc<Chart>, blade: Blade, e: Expr) -> Self {
        let mut m = Self::zero(chart);
        m.add_term(blade, e);
        m
    }

    /// The generator `dx_i` (forms) or `∂/∂x_i` (polyvectors).
    pub fn generator(chart: &Arc<Chart>, i: usize) -> Self {
        Self::basis(chart, Blade::single(i), Expr::one())
    }

    /// Generator by variable name, e.g. `"z1"` or `"z̄2"`.
    pub fn gen(chart: &Arc<Chart>, var: &str) -> Result<Self> {
        let i = chart.var_index(var).ok_or_else(|| Error::UnknownName(var.to_string()))?;
        Ok(Self::generator(chart, i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, Expr)>>(chart: &Arc<Chart>, it: I) -> Self {
        let mut m = Self::zero(chart);
        for (b, e) in it {
            m.add_term(b, e);
        }
        m
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Expr)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: Blade) -> Expr {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, b: Blade, e: Expr) {
        if e.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&b) {
            Some(old) => old.add(&e),
            None => e,
        };
        if !merged.is_zero() {
            self.terms.insert(b, merged);
        }
    }

    pub fn check_chart(&self, other: &Arc<Chart>) -> Result<()> {
        same_chart(&self.chart, other)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_chart(&o.chart)?;
        let mut r = self.clone();
        for (b, e) in &o.terms {
            r.add_term(*b, e.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|e| e.neg())
    }

    pub fn scale(&self, e: &Expr) -> Self {
        Self::from_terms(&self.chart, self.terms.iter().map(|(b, c)| (*b, c.mul(e))))
    }

    pub fn scale_c(&self, c: &GaussRat) -> Self {
        self.map_terms(|e| e.scale(c))
    }

    pub fn map_terms(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        Self::from_terms(&self.chart, self.terms.iter().map(|(b, e)| (*b, f(e))))
    }

    pub fn try_map_terms(&self, f: impl Fn(&Expr) -> Result<Expr>) -> Result<Self> {
        let mut r = Self::zero(&self.chart);
        for (b, e) in &self.terms {
            r.add_term(*b, f(e)?);
        }
        Ok(r)
    }

    /// Exterior product (graded commutative, associative).
    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.check_chart(&o.chart)?;
        let mut r = Self::zero(&self.chart);
        for (b1, e1) in &self.terms {
            for (b2, e2) in &o.terms {
                if let Some((s, b)) = b1.wedge(*b2) {
                    let c = e1.mul(e2);
                    r.add_term(b, if s < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(r)
    }

    pub fn wedge_all(chart: &Arc<Chart>, items: &[Self]) -> Result<Self> {
        items.iter().try_fold(Self::one(chart), |acc, x| acc.wedge(x))
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, k: usize) -> Self {
        Self::from_terms(
            &self.chart,
            self.terms.iter().filter(|(b, _)| b.degree() == k).map(|(b, e)| (*b, e.clone())),
        )
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|b| b.degree()).collect();
        d.dedup();
        d
    }

    /// True if every term has degree `k` (the zero element qualifies).
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.degree() == k)
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degrees();
        (d.len() == 1).then(|| d[0])
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.degree()).min()
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.degree() % 2 == 0)
    }

    pub fn require_degree(&self, k: usize) -> Result<()> {
        if self.is_homogeneous(k) {
            Ok(())
        } else {
            Err(Error::Degree {
                expected: format!("homogeneous {} of degree {k}", K::NAME),
                found: format!("degrees {:?}", self.degrees()),
            })
        }
    }

    /// Degree-0 part as an expression.
    pub fn scalar_part(&self) -> Expr {
        self.coefficient(Blade::empty())
    }

    /// Coefficient of the top blade `e_1 ∧ … ∧ e_2n`.
    pub fn top_coefficient(&self) -> Expr {
        let n = self.chart.num_vars();
        self.coefficient(Blade(((1u64 << n) - 1) as u32))
    }

    /// Substitutes slot values in every coefficient.
    pub fn substitute(&self, values: &BTreeMap<usize, GaussRat>) -> Result<Self> {
        let chart = self.chart.clone();
        self.try_map_terms(|e| e.substitute(&chart, values))
    }

    /// True when every coefficient is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|e| e.is_constant())
    }

    /// Coordinates over the full blade basis (index = bitmask) for
    /// constant-coefficient elements.
    pub fn constant_coordinates(&self) -> Option<Vec<GaussRat>> {
        let size = 1usize << self.chart.num_vars();
        let mut v = vec![GaussRat::zero(); size];
        for (b, e) in &self.terms {
            v[b.0 as usize] = e.as_constant()?;
        }
        Some(v)
    }

    pub fn blade_name(chart: &Chart, b: Blade) -> String {
        if b.degree() == 0 {
            return "1".to_string();
        }
        b.indices()
            .map(|i| format!("{}{}", K::PREFIX, chart.var_name(i)))
            .collect::<Vec<_>>()
            .join("∧")
    }
}

impl<K: Kind> fmt::Display for Multi<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, e) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = e.display(&self.chart).to_string();
            if b.degree() == 0 {
                write!(f, "{coeff}")?;
                continue;
            }
            let name = Self::blade_name(&self.chart, *b);
            if e.is_constant() && e.as_constant() == Some(GaussRat::one()) {
                write!(f, "{name}")?;
            } else if e.len() == 1 {
                write!(f, "{coeff} {name}")?;
            } else {
                write!(f, "({coeff}) {name}")?;
            }
        }
        Ok(())
    }
}

impl<K: Kind> fmt::Debug for Multi<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({self})", K::NAME)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sign of the permutation sorting `v`, by counting inversions pairwise.
    fn brute_sign(v: &[usize]) -> i32 {
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn blade_wedge_sign_matches_permutation_oracle() {
        for a in 0u32..64 {
            for b in 0u32..64 {
                let (ba, bb) = (Blade(a), Blade(b));
                let got = ba.wedge(bb);
                if a & b != 0 {
                    assert!(got.is_none());
                    continue;
                }
                let seq: Vec<usize> = ba.indices().chain(bb.indices()).collect();
                assert_eq!(got, Some((brute_sign(&seq), Blade(a | b))));
            }
        }
    }

    #[test]
    fn blade_order_is_by_degree_then_lexicographic() {
        let mut v = vec![Blade(0b110), Blade(0b1), Blade(0b11), Blade(0), Blade(0b101)];
        v.sort();
        assert_eq!(v, vec![Blade(0), Blade(0b1), Blade(0b11), Blade(0b101), Blade(0b110)]);
    }
}
