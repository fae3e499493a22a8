use std::fmt;
use std::str::FromStr;

use volterra_core::ineqlab::{Param, PointParams};
use volterra_core::means::power_mean;
use volterra_core::volterra::{self, SplitPoint, VolterraParams};
use volterra_core::{EvalResult, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionId {
    Nu,
    NuAlpha,
    MuBeta,
    Mu,
    MuUpper,
    MuLower,
    G,
    GStar,
    FDeriv,
    KBeta,
    NuNeg,
    NuNegComplement,
    PowerMean,
}

impl FunctionId {
    pub const ALL: [FunctionId; 13] = [
        FunctionId::Nu,
        FunctionId::NuAlpha,
        FunctionId::MuBeta,
        FunctionId::Mu,
        FunctionId::MuUpper,
        FunctionId::MuLower,
        FunctionId::G,
        FunctionId::GStar,
        FunctionId::FDeriv,
        FunctionId::KBeta,
        FunctionId::NuNeg,
        FunctionId::NuNegComplement,
        FunctionId::PowerMean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionId::Nu => "nu",
            FunctionId::NuAlpha => "nu-alpha",
            FunctionId::MuBeta => "mu-beta",
            FunctionId::Mu => "mu",
            FunctionId::MuUpper => "mu-upper",
            FunctionId::MuLower => "mu-lower",
            FunctionId::G => "g",
            FunctionId::GStar => "g-star",
            FunctionId::FDeriv => "f-deriv",
            FunctionId::KBeta => "k-beta",
            FunctionId::NuNeg => "nu-neg",
            FunctionId::NuNegComplement => "nu-neg-complement",
            FunctionId::PowerMean => "power-mean",
        }
    }

    /// Parameters the function reads, in grid order.
    pub fn params(self) -> &'static [Param] {
        use Param::*;
        match self {
            FunctionId::Nu | FunctionId::NuNeg | FunctionId::NuNegComplement => &[X],
            FunctionId::NuAlpha => &[X, Alpha],
            FunctionId::MuBeta => &[X, Beta],
            FunctionId::Mu | FunctionId::KBeta => &[X, Alpha, Beta],
            FunctionId::MuUpper | FunctionId::MuLower | FunctionId::G | FunctionId::GStar => {
                &[X, Alpha, Beta, S]
            }
            FunctionId::FDeriv => &[X, Alpha, Beta, N],
            FunctionId::PowerMean => &[X, Y, Lambda, R],
        }
    }

    pub fn eval(self, pt: &PointParams, tol: f64) -> Result<EvalResult> {
        let get = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::Domain(format!("`{self}` needs --{name}")))
        };
        let x = || get(pt.x, "x");
        let vp = || VolterraParams::new(x()?, get(pt.alpha, "alpha")?, get(pt.beta, "beta")?);
        let s = || SplitPoint::new(get(pt.s, "s")?);
        match self {
            FunctionId::Nu => volterra::nu(x()?, tol),
            FunctionId::NuAlpha => volterra::nu_alpha(x()?, get(pt.alpha, "alpha")?, tol),
            FunctionId::MuBeta => volterra::mu_beta(x()?, get(pt.beta, "beta")?, tol),
            FunctionId::Mu => volterra::mu(&vp()?, tol),
            FunctionId::MuUpper => volterra::mu_upper(&vp()?, s()?, tol),
            FunctionId::MuLower => volterra::mu_lower(&vp()?, s()?, tol),
            FunctionId::G => volterra::g(&vp()?, s()?, tol),
            FunctionId::GStar => volterra::g_star(&vp()?, s()?, tol),
            FunctionId::FDeriv => {
                let n = pt.n.ok_or_else(|| Error::Domain(format!("`{self}` needs --n")))?;
                volterra::f_derivative(n, &vp()?, tol)
            }
            FunctionId::KBeta => volterra::k_beta(&vp()?, tol),
            FunctionId::NuNeg => volterra::nu_neg(x()?, tol),
            FunctionId::NuNegComplement => volterra::nu_neg_complement(x()?, tol),
            FunctionId::PowerMean => {
                let r = pt.r.ok_or_else(|| Error::Domain(format!("`{self}` needs --r")))?;
                let v = power_mean(r, x()?, get(pt.y, "y")?, get(pt.lambda, "lambda")?)?;
                // Closed form; only rounding remains.
                Ok(EvalResult::new(v, 4.0 * f64::EPSILON * v, 0))
            }
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FunctionId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = FunctionId::ALL.iter().map(|f| f.as_str()).collect();
                format!("unknown function `{s}` (expected one of {})", known.join(", "))
            })
    }
}
