//! Real-argument Gamma-family primitives: `ln Γ`, `1/Γ`, `ψ` and `ψ′`.
//!
//! `ln Γ` is delegated to the musl-derived `libm::lgamma`, which keeps full
//! relative accuracy near the zeros at 1 and 2. Digamma and trigamma shift the
//! argument up to at least [`ASYMPTOTIC_THRESHOLD`] with the standard
//! recurrences and then sum the Bernoulli asymptotic series.

use crate::error::{domain, Result};

/// Abscissa of the minimum of Γ on (0, ∞); the positive root of ψ.
pub const GAMMA_MIN_ABSCISSA: f64 = 1.4616321449683623;

const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

/// B_{2k} / (2k) for k = 1..8.
const DIGAMMA_SERIES: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// B_{2k} for k = 1..8.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// A finite, strictly positive real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(domain(format!("expected a finite positive argument, got {value}")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = crate::Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

pub fn ln_gamma(z: PositiveReal) -> f64 {
    ln_gamma_raw(z.0)
}

/// `1/Γ(z)`, computed as `exp(-ln Γ(z))`.
pub fn recip_gamma(z: PositiveReal) -> f64 {
    (-ln_gamma_raw(z.0)).exp()
}

pub fn digamma(z: PositiveReal) -> f64 {
    digamma_raw(z.0)
}

pub fn trigamma(z: PositiveReal) -> f64 {
    trigamma_raw(z.0)
}

/// Unchecked `ln Γ` for the integrand hot paths, where `z > 0` holds by
/// construction.
#[inline]
pub(crate) fn ln_gamma_raw(z: f64) -> f64 {
    libm::lgamma(z)
}

pub(crate) fn digamma_raw(z: f64) -> f64 {
    let mut shift = 0.0;
    let mut w = z;
    while w < ASYMPTOTIC_THRESHOLD {
        shift -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    // Horner over the series in 1/w^2, highest order first.
    let mut series = 0.0;
    for &c in DIGAMMA_SERIES.iter().rev() {
        series = (series + c) * inv2;
    }
    shift + w.ln() - 0.5 / w - series
}

pub(crate) fn trigamma_raw(z: f64) -> f64 {
    let mut shift = 0.0;
    let mut w = z;
    while w < ASYMPTOTIC_THRESHOLD {
        shift += 1.0 / (w * w);
        w += 1.0;
    }
    // ψ′(w) ~ 1/w + 1/(2w²) + Σ B_{2k} / w^{2k+1}
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &b in BERNOULLI_EVEN.iter().rev() {
        series = (series + b) * inv2;
    }
    shift + inv + 0.5 * inv2 + series * inv
}
