//! Adaptive integration of `g(t) · t^β · lnⁿ(t)` over finite intervals and
//! semi-infinite tails.
//!
//! A left-endpoint singularity `t^β` with `β < 0` on `[0, δ]` is removed
//! exactly by the substitution `t = u^{1/(β+1)}`, which turns
//! `t^β dt` into a constant multiple of `du`. Semi-infinite integrals are
//! truncated at a point `T` past which the integrand is known to decay
//! geometrically; the discarded tail is bounded analytically and charged to
//! the error bound.

mod kronrod;

use std::f64::consts::{E, FRAC_PI_2};

use crate::error::{domain, Result};
use crate::eval::EvalResult;

pub use kronrod::MAX_SUBINTERVALS;

/// Absolute tolerance used when callers do not choose one.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UpperLimit {
    Finite(f64),
    Infinity,
}

/// How a semi-infinite integrand decays, which fixes the truncation point
/// and the analytic tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailModel {
    /// `g(t)` is a positive multiple of `x^{t+α} / Γ(t+α+1)`. Past
    /// `T = max(4·e·x + |α| + |β| + 16, lower + 16)` the unit-step ratio of
    /// the full integrand is at most 1/2 and the integrand is decreasing, so
    /// the tail is at most `2·|φ(T)|`.
    GammaRatio { x: f64, alpha: f64 },
    /// Caller-certified decay: the full integrand is decreasing on
    /// `[start, ∞)` and `|φ(t+1)| ≤ ratio·|φ(t)|` there.
    Geometric { start: f64, ratio: f64 },
}

/// Declarative description of `∫ g(t) · t^β · lnⁿ(t) dt` over an interval.
#[derive(Clone, Copy)]
pub struct IntegrandSpec<'a> {
    /// The smooth factor `g`.
    pub evaluator: &'a (dyn Fn(f64) -> f64 + Sync),
    pub left_exponent: f64,
    pub log_power: u32,
    pub lower: f64,
    pub upper: UpperLimit,
    pub tail: Option<TailModel>,
}

impl<'a> IntegrandSpec<'a> {
    pub fn new(evaluator: &'a (dyn Fn(f64) -> f64 + Sync), lower: f64, upper: UpperLimit) -> Self {
        Self {
            evaluator,
            left_exponent: 0.0,
            log_power: 0,
            lower,
            upper,
            tail: None,
        }
    }

    pub fn left_exponent(mut self, beta: f64) -> Self {
        self.left_exponent = beta;
        self
    }

    pub fn log_power(mut self, n: u32) -> Self {
        self.log_power = n;
        self
    }

    pub fn tail(mut self, model: TailModel) -> Self {
        self.tail = Some(model);
        self
    }

    /// The full integrand `g(t) · t^β · lnⁿ(t)`.
    pub fn integrand(&self, t: f64) -> f64 {
        let g = (self.evaluator)(t);
        if g == 0.0 {
            return 0.0;
        }
        let mut v = g;
        if self.left_exponent != 0.0 {
            v *= t.powf(self.left_exponent);
        }
        if self.log_power > 0 {
            v *= t.ln().powi(self.log_power as i32);
        }
        v
    }

    fn validate(&self, tol: f64) -> Result<()> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(domain(format!("tolerance must be positive, got {tol}")));
        }
        if !(self.left_exponent > -1.0 && self.left_exponent.is_finite()) {
            return Err(domain(format!(
                "left exponent must exceed -1 for integrability at 0, got {}",
                self.left_exponent
            )));
        }
        if !(self.lower >= 0.0 && self.lower.is_finite()) {
            return Err(domain(format!("lower limit must be >= 0, got {}", self.lower)));
        }
        if let UpperLimit::Finite(b) = self.upper {
            if !(b > self.lower && b.is_finite()) {
                return Err(domain(format!(
                    "need lower < upper, got [{}, {}]",
                    self.lower, b
                )));
            }
        }
        Ok(())
    }
}

/// Integrates over a finite interval `[lower, upper]`.
pub fn integrate_finite(spec: &IntegrandSpec<'_>, tol: f64) -> Result<EvalResult> {
    spec.validate(tol)?;
    let UpperLimit::Finite(upper) = spec.upper else {
        return Err(domain("integrate_finite needs a finite upper limit"));
    };
    Ok(finite_pieces(spec, spec.lower, upper, tol))
}

/// Integrates over `[lower, ∞)` using the integrand's tail model.
pub fn integrate_semi_infinite(spec: &IntegrandSpec<'_>, tol: f64) -> Result<EvalResult> {
    spec.validate(tol)?;
    if spec.upper != UpperLimit::Infinity {
        return Err(domain("integrate_semi_infinite needs an infinite upper limit"));
    }
    let Some(model) = spec.tail else {
        return Err(domain("semi-infinite integration needs a tail model"));
    };
    let (cut, tail_bound) = truncation(spec, model)?;
    let body = if cut > spec.lower {
        finite_pieces(spec, spec.lower, cut, tol)
    } else {
        EvalResult::exact(0.0)
    };
    Ok(EvalResult {
        abs_error_bound: body.abs_error_bound + tail_bound,
        nodes_used: body.nodes_used + 1,
        ..body
    })
}

/// `∫_{-∞}^{∞} φ(u) du` for `φ(u) = O(1/u²)`, compactified by
/// `u = scale · tan θ` onto `(-π/2, π/2)`.
pub fn integrate_real_line<F>(phi: F, scale: f64, tol: f64) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(domain(format!("scale must be positive, got {scale}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let mapped = |theta: f64| {
        let tan = theta.tan();
        let v = phi(scale * tan);
        if v == 0.0 {
            0.0
        } else {
            v * scale * (1.0 + tan * tan)
        }
    };
    // Split at the origin so each half has one far end.
    let left = kronrod::integrate(&mapped, -FRAC_PI_2, 0.0, 0.5 * tol);
    let right = kronrod::integrate(&mapped, 0.0, FRAC_PI_2, 0.5 * tol);
    Ok(left.add(right))
}

fn truncation(spec: &IntegrandSpec<'_>, model: TailModel) -> Result<(f64, f64)> {
    let beta = spec.left_exponent;
    let n = spec.log_power as i32;
    match model {
        TailModel::GammaRatio { x, alpha } => {
            if !(x > 0.0 && x.is_finite() && alpha > -1.0) {
                return Err(domain(format!(
                    "gamma-ratio tail needs x > 0 and alpha > -1, got x={x}, alpha={alpha}"
                )));
            }
            let mut cut = (4.0 * E * x + alpha.abs() + beta.abs() + 16.0).max(spec.lower + 16.0);
            // Unit-step ratio x·((t+1)/t)^β·(ln(t+1)/ln t)^n / (t+α+1), which is
            // decreasing in t; doubling covers large n or β.
            let ratio = |t: f64| {
                x * ((t + 1.0) / t).powf(beta).max(1.0) * ((t + 1.0).ln() / t.ln()).powi(n)
                    / (t + alpha + 1.0)
            };
            while ratio(cut) > 0.5 {
                cut *= 2.0;
            }
            Ok((cut, 2.0 * spec.integrand(cut).abs()))
        }
        TailModel::Geometric { start, ratio } => {
            if !(ratio > 0.0 && ratio < 1.0 && start.is_finite()) {
                return Err(domain(format!(
                    "geometric tail needs ratio in (0,1) and finite start, got {ratio}, {start}"
                )));
            }
            let cut = start.max(spec.lower);
            Ok((cut, spec.integrand(cut).abs() / (1.0 - ratio)))
        }
    }
}

/// Splits `[a, b]` into the singular head (if any), and at `t = 1` when a
/// log weight changes sign there, sharing `tol` evenly between pieces.
fn finite_pieces(spec: &IntegrandSpec<'_>, a: f64, b: f64, tol: f64) -> EvalResult {
    let beta = spec.left_exponent;
    let singular_head = a == 0.0 && beta < 0.0;
    let mut cuts = vec![a];
    if b > 1.0 && (singular_head || (spec.log_power > 0 && a < 1.0)) {
        cuts.push(1.0);
    }
    cuts.push(b);

    let share = tol / (cuts.len() - 1) as f64;
    let mut total = EvalResult::exact(0.0);
    for (i, w) in cuts.windows(2).enumerate() {
        let piece = if i == 0 && singular_head {
            singular_head_piece(spec, w[1], share)
        } else {
            kronrod::integrate(&|t: f64| spec.integrand(t), w[0], w[1], share)
        };
        total = total.add(piece);
    }
    total
}

/// `∫_0^δ g(t) t^β lnⁿ t dt` with `t = u^p`, `p = 1/(β+1)`:
/// `p^{n+1} ∫_0^{δ^{β+1}} g(u^p) lnⁿ u du`.
fn singular_head_piece(spec: &IntegrandSpec<'_>, delta: f64, tol: f64) -> EvalResult {
    let beta = spec.left_exponent;
    let p = 1.0 / (beta + 1.0);
    let n = spec.log_power as i32;
    let factor = p.powi(n + 1);
    let upper = delta.powf(beta + 1.0);
    let mapped = |u: f64| {
        let g = (spec.evaluator)(u.powf(p));
        if g == 0.0 || n == 0 {
            g
        } else {
            g * u.ln().powi(n)
        }
    };
    kronrod::integrate(&mapped, 0.0, upper, tol / factor).scale(factor)
}
