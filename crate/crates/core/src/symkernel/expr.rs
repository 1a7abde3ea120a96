//! Sparse exact coefficient expressions.
//!
//! An [`Expr`] is a finite sum of Gaussian-rational multiples of monomials.  A
//! [`Monomial`] is an integer exponent vector laid out as
//! `[z_1..z_n, z̄_1..z̄_n, S_1..S_k]` (chart variables, then formal symbols).
//! Trailing zero exponents are trimmed, so equal monomials have equal
//! representations no matter how they were produced, and an expression is in
//! canonical form by construction: zero coefficients are never stored.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::chart::Chart;
use crate::error::{Error, Result};
use crate::scalar::GaussRat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut e: Vec<i32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn single(slot: usize, exp: i32) -> Self {
        let mut e = vec![0; slot + 1];
        e[slot] = exp;
        Monomial::from_exponents(e)
    }

    pub fn exp(&self, slot: usize) -> i32 {
        self.0.get(slot).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let e = (0..len).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial::from_exponents(e)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|e| e * k).collect())
    }

    pub fn with_exp(&self, slot: usize, exp: i32) -> Monomial {
        let mut e = self.0.clone();
        if e.len() <= slot {
            e.resize(slot + 1, 0);
        }
        e[slot] = exp;
        Monomial::from_exponents(e)
    }

    /// Sum of the exponents on the first `nvars` slots.
    pub fn var_degree(&self, nvars: usize) -> i32 {
        self.0.iter().take(nvars).sum()
    }

    /// True when every slot of `other` is at most the matching slot of `self`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        let len = self.0.len().max(other.0.len());
        (0..len).all(|i| self.exp(i) >= other.exp(i))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A coefficient expression: exact sparse Laurent polynomial in chart
/// variables and formal symbols.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Expr {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Expr::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(GaussRat::from_int(n))
    }

    pub fn term(c: GaussRat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Expr { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Expr::term(GaussRat::one(), m)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRat)>>(it: I) -> Self {
        let mut e = Expr::zero();
        for (m, c) in it {
            e.add_term(m, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The constant value, if the expression has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// `Some((c, m))` when the expression is a single nonzero term.
    pub fn as_single_term(&self) -> Option<(&GaussRat, &Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c, m))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        r
    }

    pub fn neg(&self) -> Expr {
        Expr { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        let mut r = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &GaussRat) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Expr {
        Expr { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    /// Integer power; negative powers are only defined for single-term
    /// expressions whose monomial is a unit on the chart.
    pub fn pow(&self, chart: &Chart, k: i32) -> Result<Expr> {
        if k >= 0 {
            let mut acc = Expr::one();
            for _ in 0..k {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        let (c, m) = self.as_single_term().ok_or(Error::NotInvertible)?;
        let inv = c.inv().ok_or(Error::NotInvertible)?;
        let mono = m.pow(k);
        chart.check_monomial(&mono)?;
        Ok(Expr::term(inv.pow((-k) as u32), mono))
    }

    /// Exact division by a single-term expression.
    pub fn div_unit(&self, chart: &Chart, d: &Expr) -> Result<Expr> {
        let inv = d.pow(chart, -1)?;
        let r = self.mul(&inv);
        for m in r.terms.keys() {
            chart.check_monomial(m)?;
        }
        Ok(r)
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> Expr {
        Expr::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Keeps only the real parts of the coefficients (meaningful when every
    /// variable stands for a real quantity).
    pub fn coeff_real(&self) -> Expr {
        self.map_coeffs(|c| GaussRat::real(c.re.clone()))
    }

    pub fn coeff_imag(&self) -> Expr {
        self.map_coeffs(|c| GaussRat::real(c.im.clone()))
    }

    /// Partial derivative along chart variable `var` (an index in `0..2n`).
    pub fn partial(&self, chart: &Chart, var: usize) -> Result<Expr> {
        let nv = chart.num_vars();
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e != 0 {
                r.add_term(m.with_exp(var, e - 1), &c.scale(&crate::scalar::int(e as i64)));
            }
            for (j, sym) in chart.symbols().iter().enumerate() {
                let slot = nv + j;
                let k = m.exp(slot);
                if k == 0 {
                    continue;
                }
                let rule = sym.derivatives[var].as_ref().ok_or_else(|| Error::MissingDerivative {
                    symbol: sym.name.clone(),
                    var: chart.var_name(var).to_string(),
                })?;
                if rule.is_zero() {
                    continue;
                }
                let base = Expr::term(c.scale(&crate::scalar::int(k as i64)), m.with_exp(slot, k - 1));
                r = r.add(&base.mul(rule));
            }
        }
        Ok(r)
    }

    /// Complex conjugation: swaps z ↔ z̄, conjugates scalars, and applies the
    /// registered conjugation rule of each formal symbol.
    pub fn conj(&self, chart: &Chart) -> Result<Expr> {
        let n = chart.dim();
        let nv = chart.num_vars();
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            let mut e = vec![0; nv];
            for i in 0..n {
                e[i] = m.exp(n + i);
                e[n + i] = m.exp(i);
            }
            let mut t = Expr::term(c.conj(), Monomial::from_exponents(e));
            for (j, sym) in chart.symbols().iter().enumerate() {
                let k = m.exp(nv + j);
                if k == 0 {
                    continue;
                }
                let rule = sym.conjugate.as_ref().ok_or_else(|| Error::MissingConjugation(sym.name.clone()))?;
                t = t.mul(&rule.pow(chart, k)?);
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Substitutes values for the given slots (variables or symbols).
    ///
    /// A slot evaluated at zero while carrying a negative exponent is a pole.
    pub fn substitute(&self, chart: &Chart, values: &BTreeMap<usize, GaussRat>) -> Result<Expr> {
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exponents().to_vec();
            for (slot, e) in exps.iter_mut().enumerate() {
                if *e == 0 {
                    continue;
                }
                if let Some(v) = values.get(&slot) {
                    if v.is_zero() {
                        if *e < 0 {
                            return Err(Error::Pole(chart.slot_name(slot).to_string()));
                        }
                        coeff = GaussRat::zero();
                    } else if *e > 0 {
                        coeff = &coeff * &v.pow(*e as u32);
                    } else {
                        coeff = &coeff * &v.inv().unwrap().pow((-*e) as u32);
                    }
                    *e = 0;
                }
            }
            r.add_term(Monomial::from_exponents(exps), &coeff);
        }
        Ok(r)
    }

    /// Replaces each listed slot by an expression (composition with a map).
    pub fn compose(&self, chart: &Chart, images: &BTreeMap<usize, Expr>, target: &Chart) -> Result<Expr> {
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            let mut t = Expr::constant(c.clone());
            for (slot, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images
                    .get(&slot)
                    .ok_or_else(|| Error::Unassigned(chart.slot_name(slot).to_string()))?;
                t = t.mul(&img.pow(target, e)?);
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Maximum total variable degree over the terms (symbols excluded).
    pub fn max_var_degree(&self, nvars: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.var_degree(nvars)).max()
    }

    pub fn min_exp(&self, slot: usize) -> i32 {
        self.terms.keys().map(|m| m.exp(slot)).min().unwrap_or(0)
    }

    pub fn is_real_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, chart }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    chart: &'a Chart,
}

pub(crate) fn fmt_monomial(chart: &Chart, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (slot, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.slot_name(slot).to_string()),
            _ => parts.push(format!("{}^{}", chart.slot_name(slot), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expr.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.expr.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = fmt_monomial(self.chart, m);
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else if *c == -GaussRat::one() {
                write!(f, "-{mono}")?;
            } else {
                write!(f, "{c}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::chart::ChartBuilder;

    #[test]
    fn canonical_cancellation() {
        let m = Monomial::single(0, 2);
        let mut e = Expr::term(GaussRat::from_int(3), m.clone());
        e.add_term(m, &GaussRat::from_int(-3));
        assert!(e.is_zero());
        assert_eq!(Monomial::from_exponents(vec![1, 0, 0]), Monomial::single(0, 1));
    }

    #[test]
    fn laurent_power_rule() {
        let mut b = ChartBuilder::new(&["z1", "z2"]);
        b.log("z1");
        let chart = b.build().unwrap();
        let inv = chart.var("z1").unwrap().pow(&chart, -1).unwrap();
        let d = inv.partial(&chart, 0).unwrap();
        assert_eq!(d, Expr::term(GaussRat::from_int(-1), Monomial::single(0, -2)));
        assert!(chart.var("z2").unwrap().pow(&chart, -1).is_err());
    }
}
