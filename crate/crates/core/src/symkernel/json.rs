//! JSON expression files.
//!
//! A file is `{"chart": {...}, "expr": <node>}`.  Nodes are objects tagged by
//! `kind`; the canonical printer emits sums of `coefficient · blade` terms in
//! sorted order, so printing is deterministic and `parse ∘ print` is the
//! identity on values.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::chart::{Chart, ChartBuilder};
use super::expr::{Expr, Monomial};
use super::genvec::GeneralizedVector;
use super::graded::{Blade, DifferentialForm, Kind, Multi, Polyvector};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, GaussRat};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Text(String),
}

impl RatLit {
    pub fn value(&self) -> Result<crate::scalar::Rational> {
        match self {
            RatLit::Int(n) => Ok(crate::scalar::int(*n)),
            RatLit::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(r: &crate::scalar::Rational) -> Self {
        if r.is_integer() {
            if let Ok(n) = i64::try_from(r.numer().clone()) {
                return RatLit::Int(n);
            }
        }
        RatLit::Text(if r.is_integer() { r.numer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Node {
    Var { name: String },
    ConjVar { name: String },
    Rat { value: RatLit },
    GaussRat { re: RatLit, im: RatLit },
    Symbol { name: String },
    Add { args: Vec<Node> },
    Mul { args: Vec<Node> },
    Pow { base: Box<Node>, exp: i32 },
    Wedge { args: Vec<Node> },
    D { arg: Box<Node> },
    /// `∂/∂name`.
    Vec { name: String },
    /// Generalized vector `vector + form`.
    Pair { vector: Box<Node>, form: Box<Node> },
    Interior { vector: Box<Node>, form: Box<Node> },
    Clifford { vector: Box<Node>, form: Box<Node> },
    Schouten { left: Box<Node>, right: Box<Node> },
    Courant { left: Box<Node>, right: Box<Node> },
    Exp2 { arg: Box<Node> },
    Conj { arg: Box<Node> },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unit: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub parameter: bool,
    #[serde(default)]
    pub derivatives: BTreeMap<String, Node>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<Node>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub complex_vars: Vec<String>,
    #[serde(default)]
    pub log_vars: Vec<String>,
    #[serde(default)]
    pub symbols: Vec<SymbolSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprFile {
    pub chart: ChartSpec,
    pub expr: Node,
}

/// Result of evaluating a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Expr),
    Form(DifferentialForm),
    Poly(Polyvector),
    Gen(GeneralizedVector),
}

impl Value {
    pub fn into_form(self, chart: &Arc<Chart>) -> Result<DifferentialForm> {
        match self {
            Value::Scalar(e) => Ok(DifferentialForm::scalar(chart, e)),
            Value::Form(f) => Ok(f),
            other => Err(type_error("form", &other)),
        }
    }

    pub fn into_poly(self, chart: &Arc<Chart>) -> Result<Polyvector> {
        match self {
            Value::Scalar(e) => Ok(Polyvector::scalar(chart, e)),
            Value::Poly(p) => Ok(p),
            other => Err(type_error("polyvector", &other)),
        }
    }

    pub fn into_gen(self, chart: &Arc<Chart>) -> Result<GeneralizedVector> {
        match self {
            Value::Gen(g) => Ok(g),
            Value::Poly(p) => GeneralizedVector::from_vector(p),
            Value::Form(f) => GeneralizedVector::from_form(f),
            Value::Scalar(e) if e.is_zero() => Ok(GeneralizedVector::zero(chart)),
            other => Err(type_error("generalized vector", &other)),
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Form(_) => "form",
            Value::Poly(_) => "polyvector",
            Value::Gen(_) => "generalized vector",
        }
    }
}

fn type_error(expected: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {expected}, found {}", v.kind_name()))
}

fn name_slot(chart: &Chart, name: &str) -> Result<usize> {
    chart.var_index(name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Evaluates a node on a chart.
pub fn eval(node: &Node, chart: &Arc<Chart>) -> Result<Value> {
    use Value::*;
    Ok(match node {
        Node::Var { name } => Scalar(Expr::monomial(Monomial::single(name_slot(chart, name)?, 1))),
        Node::ConjVar { name } => {
            let i = name_slot(chart, name)?;
            Scalar(Expr::monomial(Monomial::single(chart.conj_var(i), 1)))
        }
        Node::Rat { value } => Scalar(Expr::constant(GaussRat::real(value.value()?))),
        Node::GaussRat { re, im } => Scalar(Expr::constant(GaussRat::new(re.value()?, im.value()?))),
        Node::Symbol { name } => Scalar(chart.sym(name)?),
        Node::Add { args } => {
            let mut acc = Scalar(Expr::zero());
            for a in args {
                acc = add(acc, eval(a, chart)?, chart)?;
            }
            acc
        }
        Node::Mul { args } | Node::Wedge { args } => {
            let mut acc = Scalar(Expr::one());
            for a in args {
                acc = mul(acc, eval(a, chart)?, chart)?;
            }
            acc
        }
        Node::Pow { base, exp } => match eval(base, chart)? {
            Scalar(e) => {
                let p = e.pow(chart, *exp)?;
                chart.check_expr(&p)?;
                Scalar(p)
            }
            other => return Err(type_error("scalar base for pow", &other)),
        },
        Node::D { arg } => Form(eval(arg, chart)?.into_form(chart)?.d()?),
        Node::Vec { name } => Poly(Polyvector::generator(chart, name_slot(chart, name)?)),
        Node::Pair { vector, form } => Gen(GeneralizedVector::new(
            eval(vector, chart)?.into_poly(chart)?,
            eval(form, chart)?.into_form(chart)?,
        )?),
        Node::Interior { vector, form } => {
            let p = eval(vector, chart)?.into_poly(chart)?;
            Form(eval(form, chart)?.into_form(chart)?.interior(&p)?)
        }
        Node::Clifford { vector, form } => {
            let e = eval(vector, chart)?.into_gen(chart)?;
            Form(e.clifford(&eval(form, chart)?.into_form(chart)?)?)
        }
        Node::Schouten { left, right } => {
            let p = eval(left, chart)?.into_poly(chart)?;
            Poly(p.schouten(&eval(right, chart)?.into_poly(chart)?)?)
        }
        Node::Courant { left, right } => {
            let a = eval(left, chart)?.into_gen(chart)?;
            Gen(a.courant(&eval(right, chart)?.into_gen(chart)?)?)
        }
        Node::Exp2 { arg } => Form(eval(arg, chart)?.into_form(chart)?.exp_two_form()?),
        Node::Conj { arg } => match eval(arg, chart)? {
            Scalar(e) => Scalar(e.conj(chart)?),
            Form(f) => Form(f.conj()?),
            Poly(p) => Poly(p.conj()?),
            Gen(g) => Gen(g.conj()?),
        },
    })
}

fn add(a: Value, b: Value, chart: &Arc<Chart>) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x.add(&y)),
        (Form(x), y) | (y, Form(x)) if !matches!(y, Poly(_) | Gen(_)) => Form(x.add(&y.into_form(chart)?)?),
        (Poly(x), y) | (y, Poly(x)) if !matches!(y, Form(_) | Gen(_)) => Poly(x.add(&y.into_poly(chart)?)?),
        (Gen(x), y) | (y, Gen(x)) => Gen(x.add(&y.into_gen(chart)?)?),
        (x, y) => {
            return Err(Error::Parse(format!("cannot add {} and {}", x.kind_name(), y.kind_name())));
        }
    })
}

fn mul(a: Value, b: Value, chart: &Arc<Chart>) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x.mul(&y)),
        (Scalar(s), Form(f)) | (Form(f), Scalar(s)) => Form(f.scale(&s)),
        (Scalar(s), Poly(p)) | (Poly(p), Scalar(s)) => Poly(p.scale(&s)),
        (Scalar(s), Gen(g)) | (Gen(g), Scalar(s)) => Gen(g.scale(&s)),
        (Form(x), Form(y)) => Form(x.wedge(&y)?),
        (Poly(x), Poly(y)) => Poly(x.wedge(&y)?),
        (x, y) => {
            let _ = chart;
            return Err(Error::Parse(format!("cannot multiply {} by {}", x.kind_name(), y.kind_name())));
        }
    })
}

/// Builds a chart from its JSON header.
pub fn build_chart(spec: &ChartSpec) -> Result<Arc<Chart>> {
    let mut b = ChartBuilder::new(&spec.complex_vars);
    for l in &spec.log_vars {
        if !spec.complex_vars.contains(l) {
            return Err(Error::InvalidChart(format!("log variable `{l}` is not a complex variable")));
        }
        b.log(l);
    }
    let mut slots = Vec::new();
    for s in &spec.symbols {
        slots.push(match (s.parameter, s.unit) {
            (true, _) => b.parameter(&s.name),
            (false, true) => b.unit_symbol(&s.name),
            (false, false) => b.symbol(&s.name),
        });
    }
    let draft = Arc::new(b.peek().clone());
    let scalar = |n: &Node| -> Result<Expr> {
        match eval(n, &draft)? {
            Value::Scalar(e) => Ok(e),
            other => Err(type_error("scalar rule", &other)),
        }
    };
    for (s, &slot) in spec.symbols.iter().zip(&slots) {
        for (var, rule) in &s.derivatives {
            b.derivative(slot, var, scalar(rule)?)?;
        }
        if let Some(c) = &s.conjugate {
            b.conjugate(slot, scalar(c)?);
        }
    }
    b.build()
}

pub fn parse_file(text: &str) -> Result<(Arc<Chart>, Value)> {
    let file: ExprFile = serde_json::from_str(text)?;
    let chart = build_chart(&file.chart)?;
    let v = eval(&file.expr, &chart)?;
    Ok((chart, v))
}

fn gauss_node(c: &GaussRat) -> Node {
    if c.is_real() {
        Node::Rat { value: RatLit::from_rational(&c.re) }
    } else {
        Node::GaussRat { re: RatLit::from_rational(&c.re), im: RatLit::from_rational(&c.im) }
    }
}

fn slot_node(chart: &Chart, slot: usize) -> Node {
    let n = chart.dim();
    if slot < n {
        Node::Var { name: chart.var_name(slot).to_string() }
    } else if slot < 2 * n {
        Node::ConjVar { name: chart.var_name(slot - n).to_string() }
    } else {
        Node::Symbol { name: chart.slot_name(slot).to_string() }
    }
}

/// Canonical node of an expression.
pub fn expr_node(chart: &Chart, e: &Expr) -> Node {
    let terms = e
        .terms()
        .map(|(m, c)| {
            let mut args = vec![gauss_node(c)];
            for (slot, &x) in m.exponents().iter().enumerate() {
                if x != 0 {
                    args.push(Node::Pow { base: Box::new(slot_node(chart, slot)), exp: x });
                }
            }
            Node::Mul { args }
        })
        .collect();
    Node::Add { args: terms }
}

/// A multivector with only a degree-0 part prints as its function, which is
/// also what parsing that node returns.
fn multi_node<K: Kind>(m: &Multi<K>, generator: impl Fn(usize) -> Node) -> Node {
    if m.terms().all(|(b, _)| b.degree() == 0) {
        return expr_node(m.chart(), &m.scalar_part());
    }
    let terms = m
        .terms()
        .map(|(b, e): (&Blade, &Expr)| {
            let mut args = vec![expr_node(m.chart(), e)];
            args.extend(b.indices().map(&generator));
            Node::Mul { args }
        })
        .collect();
    Node::Add { args: terms }
}

pub fn form_node(f: &DifferentialForm) -> Node {
    let chart = f.chart().clone();
    multi_node(f, |i| Node::D { arg: Box::new(slot_node(&chart, i)) })
}

pub fn poly_node(p: &Polyvector) -> Node {
    let chart = p.chart().clone();
    multi_node(p, |i| Node::Vec { name: chart.var_name(i).to_string() })
}

pub fn value_node(chart: &Chart, v: &Value) -> Node {
    match v {
        Value::Scalar(e) => expr_node(chart, e),
        Value::Form(f) => form_node(f),
        Value::Poly(p) => poly_node(p),
        Value::Gen(g) => Node::Pair { vector: Box::new(poly_node(g.vector())), form: Box::new(form_node(g.form())) },
    }
}

/// Header describing `chart`; symbol rules are printed canonically.
pub fn chart_spec(chart: &Chart) -> ChartSpec {
    let symbols = chart
        .symbols()
        .iter()
        .map(|s| {
            let derivatives = s
                .derivatives
                .iter()
                .enumerate()
                .filter_map(|(v, r)| r.as_ref().map(|r| (chart.var_name(v).to_string(), expr_node(chart, r))))
                .collect();
            SymbolSpec {
                name: s.name.clone(),
                unit: s.unit,
                parameter: false,
                derivatives,
                conjugate: s.conjugate.as_ref().map(|c| expr_node(chart, c)),
            }
        })
        .collect();
    ChartSpec {
        complex_vars: chart.complex_vars().to_vec(),
        log_vars: chart.log_vars().iter().map(|s| s.to_string()).collect(),
        symbols,
    }
}

/// Canonical pretty-printed file text; deterministic across runs.
pub fn print_file(chart: &Chart, v: &Value) -> String {
    let file = ExprFile { chart: chart_spec(chart), expr: value_node(chart, v) };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_kind_reports_position() {
        let text = "{\"chart\": {\"complex_vars\": [\"z1\"]},\n \"expr\": {\"kind\": \"frob\"}}";
        let err = parse_file(text).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn log_form_roundtrip() {
        let text = r#"{"chart": {"complex_vars": ["z1", "z2"], "log_vars": ["z1"]},
            "expr": {"kind": "wedge", "args": [
                {"kind": "mul", "args": [{"kind": "pow", "base": {"kind": "var", "name": "z1"}, "exp": -1},
                                         {"kind": "d", "arg": {"kind": "var", "name": "z1"}}]},
                {"kind": "d", "arg": {"kind": "var", "name": "z2"}}]}}"#;
        let (chart, v) = parse_file(text).unwrap();
        let printed = print_file(&chart, &v);
        let (chart2, v2) = parse_file(&printed).unwrap();
        assert_eq!(*chart, *chart2);
        assert_eq!(v, v2);
        assert_eq!(printed, print_file(&chart2, &v2));
    }
}
