//! Coordinate charts: complex variables, their independent conjugates, the
//! divisor (log) variables, and formal function symbols with derivative and
//! conjugation rules.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::expr::{Expr, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolDef {
    pub name: String,
    /// Negative exponents allowed (the symbol names a nowhere-vanishing function).
    pub unit: bool,
    /// One entry per chart variable (`z_1..z_n, z̄_1..z̄_n`).
    pub derivatives: Vec<Option<Expr>>,
    pub conjugate: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    complex_vars: Vec<String>,
    conjugate_vars: Vec<String>,
    log: Vec<bool>,
    symbols: Vec<SymbolDef>,
}

pub fn conjugate_name(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => format!("{c}\u{304}{}", chars.as_str()),
        None => String::new(),
    }
}

impl Chart {
    /// Number of complex variables `n`.
    pub fn dim(&self) -> usize {
        self.complex_vars.len()
    }

    /// Number of independent variables `2n` (holomorphic then conjugate).
    pub fn num_vars(&self) -> usize {
        2 * self.complex_vars.len()
    }

    pub fn num_slots(&self) -> usize {
        self.num_vars() + self.symbols.len()
    }

    pub fn complex_vars(&self) -> &[String] {
        &self.complex_vars
    }

    pub fn symbols(&self) -> &[SymbolDef] {
        &self.symbols
    }

    pub fn log_vars(&self) -> Vec<&str> {
        self.complex_vars
            .iter()
            .zip(&self.log)
            .filter(|(_, &l)| l)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn is_log_var(&self, var: usize) -> bool {
        self.log[var % self.dim()]
    }

    /// Index of the conjugate partner of variable `var`.
    pub fn conj_var(&self, var: usize) -> usize {
        let n = self.dim();
        if var < n {
            var + n
        } else {
            var - n
        }
    }

    pub fn var_name(&self, var: usize) -> &str {
        let n = self.dim();
        if var < n {
            &self.complex_vars[var]
        } else {
            &self.conjugate_vars[var - n]
        }
    }

    pub fn slot_name(&self, slot: usize) -> &str {
        if slot < self.num_vars() {
            self.var_name(slot)
        } else {
            self.symbols.get(slot - self.num_vars()).map(|s| s.name.as_str()).unwrap_or("?")
        }
    }

    /// Looks up a variable by its holomorphic or conjugate name.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        let n = self.dim();
        self.complex_vars
            .iter()
            .position(|v| v == name)
            .or_else(|| self.conjugate_vars.iter().position(|v| v == name).map(|i| i + n))
    }

    /// Slot index of a formal symbol.
    pub fn symbol_slot(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name).map(|i| self.num_vars() + i)
    }

    pub fn slot_index(&self, name: &str) -> Option<usize> {
        self.var_index(name).or_else(|| self.symbol_slot(name))
    }

    pub fn var(&self, name: &str) -> Result<Expr> {
        let i = self.var_index(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(Expr::monomial(Monomial::single(i, 1)))
    }

    pub fn conj_of(&self, name: &str) -> Result<Expr> {
        let i = self.var_index(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(Expr::monomial(Monomial::single(self.conj_var(i), 1)))
    }

    pub fn sym(&self, name: &str) -> Result<Expr> {
        let i = self.symbol_slot(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(Expr::monomial(Monomial::single(i, 1)))
    }

    fn slot_allows_negative(&self, slot: usize) -> bool {
        if slot < self.num_vars() {
            self.is_log_var(slot)
        } else {
            self.symbols[slot - self.num_vars()].unit
        }
    }

    /// Rejects exponents outside the chart and negative exponents on slots
    /// that are neither log variables nor unit symbols.
    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        let e = m.exponents();
        if e.len() > self.num_slots() {
            return Err(Error::InvalidChart(format!("monomial {m:?} has slots outside the chart")));
        }
        for (slot, &x) in e.iter().enumerate() {
            if x < 0 && !self.slot_allows_negative(slot) {
                return Err(Error::NegativeExponent(self.slot_name(slot).to_string()));
            }
        }
        Ok(())
    }

    pub fn check_expr(&self, e: &Expr) -> Result<()> {
        e.terms().try_for_each(|(m, _)| self.check_monomial(m))
    }

    /// The same chart, shared.
    pub fn shared(self) -> Arc<Chart> {
        Arc::new(self)
    }
}

/// Builder for [`Chart`]; variables are fixed at construction so expressions
/// for derivative rules can be formed before the chart is finished.
#[derive(Clone, Debug)]
pub struct ChartBuilder {
    chart: Chart,
}

impl ChartBuilder {
    pub fn new<S: AsRef<str>>(complex_vars: &[S]) -> Self {
        let complex_vars: Vec<String> = complex_vars.iter().map(|s| s.as_ref().to_string()).collect();
        let conjugate_vars = complex_vars.iter().map(|s| conjugate_name(s)).collect();
        let log = vec![false; complex_vars.len()];
        ChartBuilder { chart: Chart { complex_vars, conjugate_vars, log, symbols: Vec::new() } }
    }

    pub fn with_conjugate_names<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.chart.conjugate_vars = names.iter().map(|s| s.as_ref().to_string()).collect();
        self
    }

    pub fn log(&mut self, name: &str) -> &mut Self {
        if let Some(i) = self.chart.complex_vars.iter().position(|v| v == name) {
            self.chart.log[i] = true;
        } else if let Some(i) = self.chart.conjugate_vars.iter().position(|v| v == name) {
            self.chart.log[i] = true;
        }
        self
    }

    fn push_symbol(&mut self, name: &str, unit: bool) -> usize {
        let nv = self.chart.num_vars();
        self.chart.symbols.push(SymbolDef {
            name: name.to_string(),
            unit,
            derivatives: vec![None; nv],
            conjugate: None,
        });
        nv + self.chart.symbols.len() - 1
    }

    /// Declares a formal symbol and returns its slot.
    pub fn symbol(&mut self, name: &str) -> usize {
        self.push_symbol(name, false)
    }

    /// Declares a nowhere-vanishing symbol (negative powers allowed).
    pub fn unit_symbol(&mut self, name: &str) -> usize {
        self.push_symbol(name, true)
    }

    /// A real parameter: all derivatives zero, self-conjugate.
    pub fn parameter(&mut self, name: &str) -> usize {
        let slot = self.symbol(name);
        let me = Expr::monomial(Monomial::single(slot, 1));
        let def = self.chart.symbols.last_mut().unwrap();
        def.derivatives = vec![Some(Expr::zero()); self.chart.complex_vars.len() * 2];
        def.conjugate = Some(me);
        slot
    }

    fn def_mut(&mut self, slot: usize) -> &mut SymbolDef {
        let nv = self.chart.num_vars();
        &mut self.chart.symbols[slot - nv]
    }

    pub fn derivative(&mut self, symbol_slot: usize, var: &str, rule: Expr) -> Result<&mut Self> {
        let v = self.chart.var_index(var).ok_or_else(|| Error::UnknownName(var.to_string()))?;
        self.def_mut(symbol_slot).derivatives[v] = Some(rule);
        Ok(self)
    }

    pub fn conjugate(&mut self, symbol_slot: usize, rule: Expr) -> &mut Self {
        self.def_mut(symbol_slot).conjugate = Some(rule);
        self
    }

    pub fn var(&self, name: &str) -> Result<Expr> {
        self.chart.var(name)
    }

    pub fn conj_of(&self, name: &str) -> Result<Expr> {
        self.chart.conj_of(name)
    }

    pub fn sym(&self, name: &str) -> Result<Expr> {
        self.chart.sym(name)
    }

    /// Read-only view of the chart under construction.
    pub fn peek(&self) -> &Chart {
        &self.chart
    }

    pub fn build(self) -> Result<Arc<Chart>> {
        let c = self.chart;
        let mut seen = BTreeSet::new();
        for name in c.complex_vars.iter().chain(&c.conjugate_vars).chain(c.symbols.iter().map(|s| &s.name)) {
            if name.is_empty() {
                return Err(Error::InvalidChart("empty name".into()));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidChart(format!("duplicate name `{name}`")));
            }
        }
        if c.conjugate_vars.len() != c.complex_vars.len() {
            return Err(Error::InvalidChart("conjugate list length differs from complex list".into()));
        }
        if c.num_vars() > 30 {
            return Err(Error::InvalidChart("at most 15 complex variables are supported".into()));
        }
        for s in &c.symbols {
            for rule in s.derivatives.iter().flatten().chain(s.conjugate.iter()) {
                c.check_expr(rule)?;
            }
        }
        Ok(Arc::new(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_log_flags() {
        let mut b = ChartBuilder::new(&["z1", "z2"]);
        b.log("z1");
        let c = b.build().unwrap();
        assert_eq!(c.var_index("z̄1"), Some(2));
        assert!(c.is_log_var(2));
        assert!(!c.is_log_var(1));
        assert_eq!(c.log_vars(), vec!["z1"]);
    }

    #[test]
    fn duplicate_names_rejected() {
        let b = ChartBuilder::new(&["z", "z"]);
        assert!(b.build().is_err());
    }

    #[test]
    fn symbol_rules_must_stay_in_chart() {
        let mut b = ChartBuilder::new(&["z1"]);
        let s = b.symbol("f");
        let bad = Expr::monomial(Monomial::single(7, 1));
        b.derivative(s, "z1", bad).unwrap();
        assert!(b.build().is_err());
    }
}
