//! Evaluators for the complete and incomplete Volterra functions
//!
//! ```text
//! μ(x,β,α)    = ∫_0^∞ x^{t+α} t^β / (Γ(t+α+1) Γ(β+1)) dt
//! μ(x,β,α,s)  = ∫_s^∞ (same integrand)
//! μ*(x,β,α,s) = ∫_0^s (same integrand)
//! ```
//!
//! together with the normalized ratios `G = μ(·,s)/μ`, `G* = μ*(·,s)/μ`, the
//! β-derivatives `Dₙ` of `F(β) = Γ(β+1) μ(x,β,α)`, the curvature
//! `K(β) = (ln F)''`, and the log-Cauchy integral
//! `f(x) = ∫_0^∞ e^{-xt} dt / (t (ln² t + π²))`.
//!
//! The factor `x^{t+α}/Γ(t+α+1)` is always evaluated in log space and
//! `1/Γ(β+1)` is applied once, outside the integral.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::eval::EvalResult;
use crate::gammakit::ln_gamma_raw;
use crate::quad::{self, IntegrandSpec, TailModel, UpperLimit};

/// The parameter triple `(x, α, β)` with `x > 0` and `α, β > -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolterraParams {
    x: f64,
    alpha: f64,
    beta: f64,
}

impl VolterraParams {
    pub fn new(x: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(domain(format!("x must be finite and > 0, got {x}")));
        }
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(domain(format!("alpha must be finite and > -1, got {alpha}")));
        }
        if !(beta.is_finite() && beta > -1.0) {
            return Err(domain(format!("beta must be finite and > -1, got {beta}")));
        }
        Ok(Self { x, alpha, beta })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn with_x(&self, x: f64) -> Result<Self> {
        Self::new(x, self.alpha, self.beta)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.x, alpha, self.beta)
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.x, self.alpha, beta)
    }
}

/// Split point `s ≥ 0` of the incomplete functions.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SplitPoint(f64);

impl SplitPoint {
    pub fn new(s: f64) -> Result<Self> {
        if s.is_finite() && s >= 0.0 {
            Ok(Self(s))
        } else {
            Err(domain(format!("split point must be finite and >= 0, got {s}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy)]
enum Region {
    Whole,
    Above(f64),
    Below(f64),
}

/// `∫_region x^{t+α} t^β lnⁿ(t) / Γ(t+α+1) dt`, without the `1/Γ(β+1)`.
fn moment(p: &VolterraParams, n: u32, region: Region, tol: f64) -> Result<EvalResult> {
    let (alpha, ln_x) = (p.alpha, p.x.ln());
    let weight = move |t: f64| ((t + alpha) * ln_x - ln_gamma_raw(t + alpha + 1.0)).exp();
    let tail = TailModel::GammaRatio { x: p.x, alpha };
    let spec = |lower: f64, upper: UpperLimit| {
        IntegrandSpec::new(&weight, lower, upper)
            .left_exponent(p.beta)
            .log_power(n)
            .tail(tail)
    };
    match region {
        Region::Whole => quad::integrate_semi_infinite(&spec(0.0, UpperLimit::Infinity), tol),
        Region::Above(s) => quad::integrate_semi_infinite(&spec(s, UpperLimit::Infinity), tol),
        Region::Below(0.0) => Ok(EvalResult::exact(0.0)),
        Region::Below(s) => quad::integrate_finite(&spec(0.0, UpperLimit::Finite(s)), tol),
    }
}

fn normalized(p: &VolterraParams, region: Region, tol: f64) -> Result<EvalResult> {
    // Keep the bound on the normalized value at tol.
    let recip = (-ln_gamma_raw(p.beta + 1.0)).exp();
    let raw = moment(p, 0, region, tol / recip.max(f64::MIN_POSITIVE))?;
    Ok(raw.scale(recip))
}

/// `μ(x, β, α)`.
pub fn mu(p: &VolterraParams, tol: f64) -> Result<EvalResult> {
    normalized(p, Region::Whole, tol)
}

/// `ν(x) = μ(x, 0, 0)`.
pub fn nu(x: f64, tol: f64) -> Result<EvalResult> {
    mu(&VolterraParams::new(x, 0.0, 0.0)?, tol)
}

/// `ν(x, α) = μ(x, 0, α)`.
pub fn nu_alpha(x: f64, alpha: f64, tol: f64) -> Result<EvalResult> {
    mu(&VolterraParams::new(x, alpha, 0.0)?, tol)
}

/// `μ(x, β) = μ(x, β, 0)`.
pub fn mu_beta(x: f64, beta: f64, tol: f64) -> Result<EvalResult> {
    mu(&VolterraParams::new(x, 0.0, beta)?, tol)
}

/// Upper incomplete function `μ(x, β, α, s)`, the integral over `[s, ∞)`.
pub fn mu_upper(p: &VolterraParams, s: SplitPoint, tol: f64) -> Result<EvalResult> {
    if s.0 == 0.0 {
        return mu(p, tol);
    }
    normalized(p, Region::Above(s.0), tol)
}

/// Lower incomplete function `μ*(x, β, α, s)`, the integral over `[0, s]`.
pub fn mu_lower(p: &VolterraParams, s: SplitPoint, tol: f64) -> Result<EvalResult> {
    normalized(p, Region::Below(s.0), tol)
}

/// `G_β(x, α, s) = μ(x,β,α,s) / μ(x,β,α)`.
pub fn g(p: &VolterraParams, s: SplitPoint, tol: f64) -> Result<EvalResult> {
    let whole = moment(p, 0, Region::Whole, tol)?;
    let above = if s.0 == 0.0 {
        whole
    } else {
        moment(p, 0, Region::Above(s.0), tol)?
    };
    above.checked_div(whole, "mu")
}

/// `G*_β(x, α, s) = μ*(x,β,α,s) / μ(x,β,α)`.
pub fn g_star(p: &VolterraParams, s: SplitPoint, tol: f64) -> Result<EvalResult> {
    let whole = moment(p, 0, Region::Whole, tol)?;
    let below = moment(p, 0, Region::Below(s.0), tol)?;
    below.checked_div(whole, "mu")
}

/// `Dₙ = ∂ⁿ/∂βⁿ [Γ(β+1) μ(x,β,α)] = ∫_0^∞ x^{t+α} t^β lnⁿ(t) / Γ(t+α+1) dt`.
///
/// The log weight changes sign at `t = 1`; the integral is split there and
/// the bound is the sum of the two one-signed pieces.
pub fn f_derivative(n: u32, p: &VolterraParams, tol: f64) -> Result<EvalResult> {
    moment(p, n, Region::Whole, tol)
}

/// `K(β) = ∂²/∂β² ln F(β) = (D₀D₂ − D₁²) / D₀²`.
pub fn k_beta(p: &VolterraParams, tol: f64) -> Result<EvalResult> {
    let d0 = f_derivative(0, p, tol)?;
    let d1 = f_derivative(1, p, tol)?;
    let d2 = f_derivative(2, p, tol)?;
    d0.mul(d2).sub(d1.square()).checked_div(d0.square(), "D0^2")
}

/// `f(x) = ∫_0^∞ e^{-xt} dt / (t (ln² t + π²))` for `x > 0`.
///
/// With `t = e^u` this is `∫ e^{-x e^u} du / (u² + π²)` over the real line,
/// which is then compactified by `u = π tan θ` into the bounded integrand
/// `exp(-x e^{π tan θ}) / π` on `(-π/2, π/2)`.
pub fn nu_neg_complement(x: f64, tol: f64) -> Result<EvalResult> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("nu_neg_complement needs x > 0, got {x}")));
    }
    quad::integrate_real_line(|u: f64| (-x * u.exp()).exp() / (u * u + PI * PI), PI, tol)
}

/// `e^{-x} − f(x)` for `x > 0`.
pub fn nu_neg(x: f64, tol: f64) -> Result<EvalResult> {
    let complement = nu_neg_complement(x, tol)?;
    Ok(EvalResult::exact((-x).exp()).sub(complement))
}
