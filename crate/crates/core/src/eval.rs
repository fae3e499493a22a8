//! Values carrying an absolute error bound, with first-order propagation
//! through the arithmetic the evaluators and checks need.

use serde::Serialize;

use crate::error::{Error, Result};

/// A computed value together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_bound: f64,
    /// Integrand evaluations spent; zero for results that are exact by
    /// construction (empty intervals, analytic constants).
    pub nodes_used: usize,
    /// False when the node budget ran out before the requested tolerance
    /// was met. The bound is still valid.
    pub converged: bool,
}

// Named methods rather than operator impls: every call site reads as an
// explicit propagation step.
#[allow(clippy::should_implement_trait)]
impl EvalResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error_bound: 0.0,
            nodes_used: 0,
            converged: true,
        }
    }

    pub fn new(value: f64, abs_error_bound: f64, nodes_used: usize) -> Self {
        Self {
            value,
            abs_error_bound,
            nodes_used,
            converged: true,
        }
    }

    fn combine(self, other: Self, value: f64, abs_error_bound: f64) -> Self {
        Self {
            value,
            abs_error_bound,
            nodes_used: self.nodes_used + other.nodes_used,
            converged: self.converged && other.converged,
        }
    }

    pub fn add(self, other: Self) -> Self {
        self.combine(
            other,
            self.value + other.value,
            self.abs_error_bound + other.abs_error_bound,
        )
    }

    pub fn sub(self, other: Self) -> Self {
        self.combine(
            other,
            self.value - other.value,
            self.abs_error_bound + other.abs_error_bound,
        )
    }

    /// Product; the bound keeps the second-order cross term.
    pub fn mul(self, other: Self) -> Self {
        let (a, b) = (self.value, other.value);
        let (ea, eb) = (self.abs_error_bound, other.abs_error_bound);
        self.combine(other, a * b, a.abs() * eb + b.abs() * ea + ea * eb)
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_bound: self.abs_error_bound * factor.abs(),
            ..self
        }
    }

    pub fn square(self) -> Self {
        self.mul(self).with_nodes(self.nodes_used)
    }

    /// Ratio with first-order error propagation. The denominator must exceed
    /// ten times its own error bound.
    pub fn checked_div(self, denom: Self, what: &'static str) -> Result<Self> {
        denom.require_resolved(what)?;
        let q = self.value / denom.value;
        let err = (self.abs_error_bound + q.abs() * denom.abs_error_bound) / denom.value.abs();
        Ok(self.combine(denom, q, err))
    }

    /// `value^p` for positive values, first order: `|p| v^(p-1) e`.
    pub fn powf(self, p: f64) -> Self {
        let v = self.value.powf(p);
        let err = if p == 0.0 {
            0.0
        } else {
            (p * v / self.value).abs() * self.abs_error_bound
        };
        Self {
            value: v,
            abs_error_bound: err,
            ..self
        }
    }

    /// Natural log of a positive value, first order: `e / v`.
    pub fn ln(self) -> Self {
        Self {
            value: self.value.ln(),
            abs_error_bound: self.abs_error_bound / self.value.abs(),
            ..self
        }
    }

    pub fn require_resolved(&self, what: &'static str) -> Result<()> {
        if self.value.abs() > 10.0 * self.abs_error_bound {
            Ok(())
        } else {
            Err(Error::PrecisionLoss {
                what,
                value: self.value,
                bound: self.abs_error_bound,
            })
        }
    }

    pub(crate) fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes_used = nodes;
        self
    }

    /// Whether `exact` lies inside `value ± abs_error_bound`.
    pub fn contains(&self, exact: f64) -> bool {
        (self.value - exact).abs() <= self.abs_error_bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propagation() {
        let a = EvalResult::new(2.0, 0.1, 21);
        let b = EvalResult::new(4.0, 0.2, 42);
        let s = a.add(b);
        assert_eq!((s.value, s.abs_error_bound, s.nodes_used), (6.0, 0.30000000000000004, 63));
        let p = a.mul(b);
        assert_eq!(p.value, 8.0);
        assert!((p.abs_error_bound - (0.4 + 0.4 + 0.02)).abs() < 1e-15);
        let q = a.checked_div(b, "b").unwrap();
        assert_eq!(q.value, 0.5);
        assert!((q.abs_error_bound - (0.1 + 0.5 * 0.2) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn unresolved_denominator_is_rejected() {
        let num = EvalResult::new(1.0, 0.0, 1);
        let den = EvalResult::new(1e-12, 1e-12, 1);
        assert!(matches!(
            num.checked_div(den, "mu"),
            Err(Error::PrecisionLoss { what: "mu", .. })
        ));
    }
}
