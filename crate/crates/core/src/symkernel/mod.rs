//! Exact symbolic calculus of differential forms and polyvectors on
//! coordinate charts with logarithmic poles and formal function symbols.

mod calculus;
mod chart;
mod expr;
mod genvec;
mod graded;
pub mod json;

pub use calculus::{evaluate_expr, ChartMap, Point};
pub use chart::{conjugate_name, Chart, ChartBuilder, SymbolDef};
pub use expr::{Expr, ExprDisplay, Monomial};
pub use genvec::GeneralizedVector;
pub use graded::{Blade, DifferentialForm, FormKind, Kind, Multi, Polyvector, VectorKind};

use crate::error::{Error, Result};

pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    a.wedge(b)
}

pub fn exterior_d(a: &DifferentialForm) -> Result<DifferentialForm> {
    a.d()
}

pub fn interior(p: &Polyvector, a: &DifferentialForm) -> Result<DifferentialForm> {
    a.interior(p)
}

pub fn clifford_act(e: &GeneralizedVector, a: &DifferentialForm) -> Result<DifferentialForm> {
    e.clifford(a)
}

pub fn inner_metric(e1: &GeneralizedVector, e2: &GeneralizedVector) -> Result<Expr> {
    e1.inner_metric(e2)
}

pub fn lie_derivative(v: &Polyvector, a: &DifferentialForm) -> Result<DifferentialForm> {
    a.lie_derivative(v)
}

pub fn courant(e1: &GeneralizedVector, e2: &GeneralizedVector) -> Result<GeneralizedVector> {
    e1.courant(e2)
}

pub fn schouten(p: &Polyvector, q: &Polyvector) -> Result<Polyvector> {
    p.schouten(q)
}

/// `exp(w)` for a 2-form; `top` must be the real dimension `2n` of the chart.
pub fn exp_two_form(w: &DifferentialForm, top: usize) -> Result<DifferentialForm> {
    if top != w.chart().num_vars() {
        return Err(Error::OutOfRange(format!(
            "top degree {top} differs from chart dimension {}",
            w.chart().num_vars()
        )));
    }
    w.exp_two_form()
}

pub fn conjugate(a: &DifferentialForm) -> Result<DifferentialForm> {
    a.conj()
}

pub fn evaluate(a: &DifferentialForm, point: &Point) -> Result<DifferentialForm> {
    a.evaluate(point)
}
