//! Slow reference evaluator for `μ`, `μ(·, s)` and `μ*(·, s)`.
//!
//! Deliberately shares no quadrature code with [`crate::quad`]: it runs
//! fixed-step composite trapezoid sums at three step sizes and Richardson
//! extrapolates them (Romberg to order h⁶). On `(0, 1]` it works in the
//! variable `v = -ln t`, where `t^β dt = e^{-(β+1)v} dv` is smooth and the
//! left-endpoint singularity disappears; on `[1, 300]` it works in `t`
//! directly. Everything past `t = 300` is bounded analytically.

use std::fmt::Write as _;

use crate::error::{domain, Error, Result};
use crate::eval::EvalResult;
use crate::gammakit::ln_gamma_raw;
use crate::volterra::VolterraParams;

/// Hard truncation point of the reference integral.
pub const TRUNCATION: f64 = 300.0;

/// Target absolute accuracy.
pub const ORACLE_TARGET: f64 = 1e-10;

/// Steps per unit length of the coarsest trapezoid sum.
const PANELS_PER_UNIT: f64 = 128.0;

/// Upper bound of 1/Γ on (0, ∞), attained at the minimum of Γ.
const MAX_RECIP_GAMMA: f64 = 1.1293;

/// `μ` integrated over `[s_lower, s_upper)`; `None` means `+∞`.
pub fn oracle_mu(p: &VolterraParams, s_lower: f64, s_upper: Option<f64>) -> Result<EvalResult> {
    let (x, alpha, beta) = (p.x(), p.alpha(), p.beta());
    let upper = s_upper.unwrap_or(f64::INFINITY);
    if !(s_lower >= 0.0 && s_lower.is_finite() && upper >= s_lower) {
        return Err(domain(format!("bad oracle interval [{s_lower}, {upper}]")));
    }
    // Unit-step ratio at the truncation point; must certify geometric decay.
    let ratio = x * (1.0 + 1.0 / TRUNCATION).powf(beta).max(1.0) / (TRUNCATION + alpha + 1.0);
    if upper > TRUNCATION && ratio > 0.5 {
        return Err(domain(format!("x = {x} too large for truncation at {TRUNCATION}")));
    }

    let ln_x = x.ln();
    // x^{t+α} t^β / Γ(t+α+1), in log space.
    let weight = move |t: f64| ((t + alpha) * ln_x - ln_gamma_raw(t + alpha + 1.0) + beta * t.ln()).exp();

    let mut total = EvalResult::exact(0.0);
    if upper == s_lower {
        return Ok(total);
    }

    // (0, 1] piece in v = -ln t.
    if s_lower < 1.0 {
        let t_hi = upper.min(1.0);
        let v_lo = -t_hi.ln();
        let (v_hi, tail) = if s_lower > 0.0 {
            (-s_lower.ln(), 0.0)
        } else {
            // Past v_hi the integrand is below C e^{-(β+1)v}.
            let c = MAX_RECIP_GAMMA * x.powf(alpha).max(x.powf(alpha + 1.0));
            let rate = beta + 1.0;
            let v_hi = ((c / (rate * 1e-15)).ln() / rate).max(v_lo + 1.0);
            (v_hi, c * (-rate * v_hi).exp() / rate)
        };
        let in_v = |v: f64| {
            let t = (-v).exp();
            weight(t) * t
        };
        let piece = romberg(&in_v, v_lo, v_hi);
        total = total.add(EvalResult {
            abs_error_bound: piece.abs_error_bound + tail,
            ..piece
        });
    }

    // [1, 300] piece in t.
    let t_lo = s_lower.max(1.0);
    let t_hi = upper.min(TRUNCATION);
    if t_hi > t_lo {
        total = total.add(romberg(&weight, t_lo, t_hi));
    }
    if upper > TRUNCATION {
        let cut = t_lo.max(TRUNCATION);
        total = total.add(EvalResult::new(0.0, 2.0 * weight(cut), 1));
    }

    let norm = (-ln_gamma_raw(beta + 1.0)).exp();
    Ok(total.scale(norm))
}

/// Neumaier-compensated running sum; the trapezoid sums reach ~10⁵ terms.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Trapezoid sums at `N`, `2N`, `4N` panels, extrapolated twice. The bound
/// is twice the gap between the last two extrapolants plus rounding.
fn romberg<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> EvalResult {
    let n0 = (((b - a) * PANELS_PER_UNIT).ceil() as usize).max(8);
    let mut sums = [0.0f64; 3];
    let mut abs_sum = 0.0;
    let mut evaluations = 0;
    for (level, sum) in sums.iter_mut().enumerate() {
        let n = n0 << level;
        let h = (b - a) / n as f64;
        let (fa, fb) = (f(a), f(b));
        let mut acc = CompensatedSum::default();
        let mut acc_abs = CompensatedSum::default();
        acc.add(0.5 * (fa + fb));
        acc_abs.add(0.5 * (fa.abs() + fb.abs()));
        for i in 1..n {
            let v = f(a + i as f64 * h);
            acc.add(v);
            acc_abs.add(v.abs());
        }
        evaluations += n + 1;
        *sum = acc.total() * h;
        abs_sum = acc_abs.total() * h;
    }
    let r1 = (4.0 * sums[1] - sums[0]) / 3.0;
    let r1_fine = (4.0 * sums[2] - sums[1]) / 3.0;
    let r2 = (16.0 * r1_fine - r1) / 15.0;
    let bound = 2.0 * (r2 - r1_fine).abs() + 64.0 * f64::EPSILON * abs_sum;
    EvalResult::new(r2, bound, evaluations)
}

/// A row of the golden-value file.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRow {
    pub function: String,
    pub x: f64,
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub value: f64,
    pub bound: f64,
}

pub const GOLDEN_HEADER: &str = "function,x,alpha,beta,s,value,bound";
pub const GOLDEN_VERSION_LINE: &str = "# volterra golden values v1";

/// Points minted into `golden.csv`: `(function, x, alpha, beta, s)`.
pub fn golden_points() -> Vec<(&'static str, f64, f64, f64, f64)> {
    let mut pts = vec![
        ("mu", 1.0, 0.0, 0.0, 0.0),
        ("mu", 1.0, 1.0, 0.0, 0.0),
        ("mu-lower", 1.0, 0.0, 0.0, 1.0),
        ("mu-upper", 1.0, 0.0, 0.0, 1.0),
    ];
    for &x in &[0.3, 2.0, 5.0] {
        for &(alpha, beta) in &[(0.0, -0.5), (1.0, 1.0), (-0.5, 2.5)] {
            pts.push(("mu", x, alpha, beta, 0.0));
            pts.push(("mu-lower", x, alpha, beta, 1.3));
            pts.push(("mu-upper", x, alpha, beta, 1.3));
        }
    }
    pts
}

pub fn golden_rows() -> Result<Vec<GoldenRow>> {
    golden_points()
        .into_iter()
        .map(|(function, x, alpha, beta, s)| {
            let p = VolterraParams::new(x, alpha, beta)?;
            let r = match function {
                "mu" => oracle_mu(&p, 0.0, None)?,
                "mu-lower" => oracle_mu(&p, 0.0, Some(s))?,
                "mu-upper" => oracle_mu(&p, s, None)?,
                other => return Err(Error::Parse(format!("no oracle for `{other}`"))),
            };
            Ok(GoldenRow {
                function: function.to_string(),
                x,
                alpha,
                beta,
                s,
                value: r.value,
                bound: r.abs_error_bound,
            })
        })
        .collect()
}

pub fn render_golden(rows: &[GoldenRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{GOLDEN_VERSION_LINE}");
    let _ = writeln!(out, "{GOLDEN_HEADER}");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:?},{:?},{:?},{:?},{:?},{:?}",
            r.function, r.x, r.alpha, r.beta, r.s, r.value, r.bound
        );
    }
    out
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == GOLDEN_HEADER => {}
        other => return Err(Error::Parse(format!("unexpected golden header {other:?}"))),
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(Error::Parse(format!("expected 7 fields: {line}")));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{s}: {e}")))
            };
            Ok(GoldenRow {
                function: f[0].to_string(),
                x: num(f[1])?,
                alpha: num(f[2])?,
                beta: num(f[3])?,
                s: num(f[4])?,
                value: num(f[5])?,
                bound: num(f[6])?,
            })
        })
        .collect()
}
