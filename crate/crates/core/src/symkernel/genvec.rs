//! Sections `v + η` of `(TM ⊕ T*M) ⊗ ℂ`: Clifford action, the symmetric
//! pairing and the Courant bracket.

use std::fmt;
use std::sync::Arc;

use super::calculus::{half, Point};
use super::chart::Chart;
use super::expr::Expr;
use super::graded::{same_chart, DifferentialForm, Polyvector};
use crate::error::Result;
use crate::scalar::GaussRat;

#[derive(Clone, PartialEq, Eq)]
pub struct GeneralizedVector {
    v: Polyvector,
    eta: DifferentialForm,
}

impl GeneralizedVector {
    pub fn new(v: Polyvector, eta: DifferentialForm) -> Result<Self> {
        same_chart(v.chart(), eta.chart())?;
        v.require_degree(1)?;
        eta.require_degree(1)?;
        Ok(GeneralizedVector { v, eta })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        GeneralizedVector { v: Polyvector::zero(chart), eta: DifferentialForm::zero(chart) }
    }

    pub fn from_vector(v: Polyvector) -> Result<Self> {
        let eta = DifferentialForm::zero(v.chart());
        Self::new(v, eta)
    }

    pub fn from_form(eta: DifferentialForm) -> Result<Self> {
        let v = Polyvector::zero(eta.chart());
        Self::new(v, eta)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.v.chart()
    }

    pub fn vector(&self) -> &Polyvector {
        &self.v
    }

    pub fn form(&self) -> &DifferentialForm {
        &self.eta
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.eta.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(GeneralizedVector { v: self.v.add(&o.v)?, eta: self.eta.add(&o.eta)? })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Ok(GeneralizedVector { v: self.v.sub(&o.v)?, eta: self.eta.sub(&o.eta)? })
    }

    pub fn neg(&self) -> Self {
        GeneralizedVector { v: self.v.neg(), eta: self.eta.neg() }
    }

    pub fn scale(&self, e: &Expr) -> Self {
        GeneralizedVector { v: self.v.scale(e), eta: self.eta.scale(e) }
    }

    pub fn scale_c(&self, c: &GaussRat) -> Self {
        GeneralizedVector { v: self.v.scale_c(c), eta: self.eta.scale_c(c) }
    }

    pub fn conj(&self) -> Result<Self> {
        Ok(GeneralizedVector { v: self.v.conj()?, eta: self.eta.conj()? })
    }

    pub fn evaluate(&self, p: &Point) -> Result<Self> {
        Ok(GeneralizedVector { v: self.v.evaluate(p)?, eta: self.eta.evaluate(p)? })
    }

    /// `e·φ = i_v φ + η ∧ φ`.
    pub fn clifford(&self, phi: &DifferentialForm) -> Result<DifferentialForm> {
        phi.interior(&self.v)?.add(&self.eta.wedge(phi)?)
    }

    /// `⟨v + ξ, u + η⟩ = ½(ξ(u) + η(v))`.
    pub fn inner_metric(&self, o: &Self) -> Result<Expr> {
        same_chart(self.chart(), o.chart())?;
        let s = self.eta.pair(&o.v)?.add(&o.eta.pair(&self.v)?);
        Ok(s.scale(&half()))
    }

    /// Courant bracket
    /// `[u+ξ, v+η] = [u,v] + L_u η − L_v ξ − ½ d(i_u η − i_v ξ)`.
    pub fn courant(&self, o: &Self) -> Result<Self> {
        same_chart(self.chart(), o.chart())?;
        let (u, xi, v, eta) = (&self.v, &self.eta, &o.v, &o.eta);
        let vec = u.lie_bracket(v)?;
        let f = DifferentialForm::scalar(self.chart(), eta.pair(u)?.sub(&xi.pair(v)?));
        let form = eta
            .lie_derivative(u)?
            .sub(&xi.lie_derivative(v)?)?
            .sub(&f.d()?.scale_c(&half()))?;
        Self::new(vec, form)
    }
}

impl fmt::Display for GeneralizedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.v.is_zero(), self.eta.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.v),
            (true, false) => write!(f, "{}", self.eta),
            (false, false) => write!(f, "{} + {}", self.v, self.eta),
        }
    }
}

impl fmt::Debug for GeneralizedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genvec({self})")
    }
}
