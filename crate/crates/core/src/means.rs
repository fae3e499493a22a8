//! Weighted two-point power means `M_r(x₁, x₂; λ)` over the extended reals.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Orders with `|r|` below this use the geometric-mean limit.
const NEAR_ZERO_ORDER: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PowerMeanOrder {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

impl PowerMeanOrder {
    pub fn finite(r: f64) -> Result<Self> {
        if r.is_finite() {
            Ok(Self::Finite(r))
        } else {
            Self::try_from(r)
        }
    }

    /// Position on the extended real line, for ordering.
    pub fn as_f64(self) -> f64 {
        match self {
            Self::NegInfinity => f64::NEG_INFINITY,
            Self::Finite(r) => r,
            Self::PosInfinity => f64::INFINITY,
        }
    }
}

impl TryFrom<f64> for PowerMeanOrder {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        if r.is_nan() {
            Err(domain("power mean order is NaN"))
        } else if r == f64::INFINITY {
            Ok(Self::PosInfinity)
        } else if r == f64::NEG_INFINITY {
            Ok(Self::NegInfinity)
        } else {
            Ok(Self::Finite(r))
        }
    }
}

impl PartialOrd for PowerMeanOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.as_f64().partial_cmp(&other.as_f64())
    }
}

impl fmt::Display for PowerMeanOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegInfinity => f.write_str("-inf"),
            Self::Finite(r) => write!(f, "{r:?}"),
            Self::PosInfinity => f.write_str("inf"),
        }
    }
}

impl FromStr for PowerMeanOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" | "max" => Ok(Self::PosInfinity),
            "-inf" | "-infinity" | "min" => Ok(Self::NegInfinity),
            other => other
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("power mean order `{s}`: {e}")))
                .and_then(Self::try_from),
        }
    }
}

/// `M_r(x₁, x₂; λ)` for `x₁, x₂ > 0` and `λ ∈ (0, 1)`.
pub fn power_mean(r: PowerMeanOrder, x1: f64, x2: f64, lambda: f64) -> Result<f64> {
    if !(x1 > 0.0 && x1.is_finite() && x2 > 0.0 && x2.is_finite()) {
        return Err(domain(format!("power mean needs positive arguments, got {x1}, {x2}")));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(domain(format!("power mean weight must lie in (0,1), got {lambda}")));
    }
    Ok(power_mean_unchecked(r, x1, x2, lambda))
}

pub(crate) fn power_mean_unchecked(r: PowerMeanOrder, x1: f64, x2: f64, lambda: f64) -> f64 {
    match r {
        PowerMeanOrder::NegInfinity => x1.min(x2),
        PowerMeanOrder::PosInfinity => x1.max(x2),
        PowerMeanOrder::Finite(r) if r.abs() < NEAR_ZERO_ORDER => {
            (lambda * x1.ln() + (1.0 - lambda) * x2.ln()).exp()
        }
        PowerMeanOrder::Finite(r) => {
            // Factor out the larger argument so x^r cannot overflow.
            let m = x1.max(x2);
            let (a, b) = (x1 / m, x2 / m);
            m * (lambda * a.powf(r) + (1.0 - lambda) * b.powf(r)).powf(1.0 / r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PowerMeanOrder::*;

    #[test]
    fn closed_forms() {
        let m = |r, a, b, l| power_mean(r, a, b, l).unwrap();
        assert!((m(Finite(1.0), 2.0, 6.0, 0.25) - 5.0).abs() < 1e-15);
        assert!((m(Finite(0.0), 4.0, 9.0, 0.5) - 6.0).abs() < 1e-14);
        assert!((m(Finite(2.0), 1.0, 7.0, 0.5) - 5.0).abs() < 1e-14);
        assert_eq!(m(NegInfinity, 3.0, 2.0, 0.9), 2.0);
        assert_eq!(m(PosInfinity, 3.0, 2.0, 0.9), 3.0);
    }

    #[test]
    fn domain_errors() {
        assert!(power_mean(Finite(1.0), 0.0, 1.0, 0.5).is_err());
        assert!(power_mean(Finite(1.0), 1.0, -2.0, 0.5).is_err());
        assert!(power_mean(Finite(1.0), 1.0, 2.0, 0.0).is_err());
        assert!(power_mean(Finite(1.0), 1.0, 2.0, 1.0).is_err());
        assert!(PowerMeanOrder::try_from(f64::NAN).is_err());
    }

    #[test]
    fn parse_and_display() {
        for s in ["inf", "-inf", "0.5", "-2.0"] {
            let r: PowerMeanOrder = s.parse().unwrap();
            assert_eq!(r.to_string().parse::<PowerMeanOrder>().unwrap(), r);
        }
        assert_eq!("max".parse::<PowerMeanOrder>().unwrap(), PosInfinity);
        assert!("abc".parse::<PowerMeanOrder>().is_err());
    }

    #[test]
    fn large_orders_do_not_overflow() {
        let v = power_mean(Finite(400.0), 10.0, 20.0, 0.5).unwrap();
        assert!(v.is_finite() && v < 20.0 && v > 19.9);
    }
}
