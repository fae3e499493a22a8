use std::fmt;

use serde::Serialize;

use crate::eval::EvalResult;
use crate::means::PowerMeanOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// `margin > combined_error`.
    Holds,
    /// `|margin| ≤ combined_error`: consistent with the inequality, but not
    /// resolved at this tolerance.
    Inconclusive,
    /// `margin < -combined_error`.
    Fails,
}

impl Verdict {
    pub fn classify(margin: f64, combined_error: f64) -> Self {
        if margin > combined_error {
            Verdict::Holds
        } else if margin < -combined_error {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fails => "fails",
        }
    }

    /// Severity rank used to pick the worst of several verdicts.
    pub(crate) fn rank(self) -> u8 {
        match self {
            Verdict::Holds => 0,
            Verdict::Inconclusive => 1,
            Verdict::Fails => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameter record of one evaluated point; unused parameters stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PointParams {
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub beta2: Option<f64>,
    pub beta3: Option<f64>,
    pub s: Option<f64>,
    pub s2: Option<f64>,
    pub n: Option<u32>,
    pub lambda: Option<f64>,
    pub r: Option<PowerMeanOrder>,
    pub delta: Option<f64>,
    pub h: Option<f64>,
}

impl PointParams {
    pub const COLUMNS: [&'static str; 13] = [
        "x", "y", "alpha", "beta", "beta2", "beta3", "s", "s2", "n", "lambda", "r", "delta", "h",
    ];

    /// Cells in [`Self::COLUMNS`] order, round-trip decimal, empty when unset.
    pub fn cells(&self) -> [String; 13] {
        let f = |v: Option<f64>| v.map(|v| format!("{v:?}")).unwrap_or_default();
        [
            f(self.x),
            f(self.y),
            f(self.alpha),
            f(self.beta),
            f(self.beta2),
            f(self.beta3),
            f(self.s),
            f(self.s2),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            f(self.lambda),
            self.r.map(|r| r.to_string()).unwrap_or_default(),
            f(self.delta),
            f(self.h),
        ]
    }
}

/// One inequality instance, oriented so that `margin ≥ 0` means it holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub params: PointParams,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub combined_error: f64,
    pub verdict: Verdict,
}

impl InequalityReport {
    /// Builds a report for `lhs ≤ rhs`, where `margin` was assembled from
    /// the operands (so its bound carries the propagated error). Rounding
    /// in forming the margin is added on top.
    pub fn new(
        name: impl Into<String>,
        params: PointParams,
        lhs: f64,
        rhs: f64,
        margin: EvalResult,
    ) -> Self {
        let rounding = 4.0 * f64::EPSILON * (lhs.abs() + rhs.abs());
        let combined_error = margin.abs_error_bound + rounding;
        Self {
            name: name.into(),
            params,
            lhs,
            rhs,
            margin: margin.value,
            combined_error,
            verdict: Verdict::classify(margin.value, combined_error),
        }
    }

    /// `lhs ≤ rhs` with `margin = rhs − lhs`.
    pub fn from_sides(name: impl Into<String>, params: PointParams, lhs: EvalResult, rhs: EvalResult) -> Self {
        Self::new(name, params, lhs.value, rhs.value, rhs.sub(lhs))
    }

    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Fails
    }
}
