//! Numerical checks of the inequalities satisfied by the Volterra family,
//! with verdicts that respect the propagated quadrature error, and ordered
//! parallel sweeps over parameter grids.

mod checks;
mod report;
mod sweep;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub use checks::{
    complete_monotonicity, delta_n, delta_n_check, g_monotone_beta, g_monotone_beta_pairs,
    g_power_mean, geometric_convexity, kimberling, logconcavity, logconvexity_h, schur,
    subadditivity, turan_alpha, turan_beta, worst_verdict, CheckOptions, CmTarget, GKind,
    LogConcaveTarget, MAX_CM_ORDER,
};
pub use report::{InequalityReport, PointParams, Verdict};
pub use sweep::{acceptance_plan, sweep, sweep_plan, GridSpec, Param, PlanEntry, SweepConfig, SweepOutput};

/// Minimum abscissa of Γ on the positive axis, used by the `G`/`G*` hypotheses.
pub use crate::gammakit::GAMMA_MIN_ABSCISSA as Z_STAR;

/// Stable identifiers of the checks, as used on the command line and in CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    GeometricConvexity,
    TuranAlpha,
    TuranBeta,
    Kimberling,
    DeltaN,
    Schur,
    LogConcavity(LogConcaveTarget),
    LogConvexityH,
    CmMuRecipX,
    CmNuNegComplement,
    CmExpControl,
    PowerMean(GKind),
    MonotoneBeta,
    Subadditivity,
}

impl CheckId {
    pub const ALL: [CheckId; 18] = [
        CheckId::GeometricConvexity,
        CheckId::TuranAlpha,
        CheckId::TuranBeta,
        CheckId::Kimberling,
        CheckId::DeltaN,
        CheckId::Schur,
        CheckId::LogConcavity(LogConcaveTarget::MuInBeta),
        CheckId::LogConcavity(LogConcaveTarget::MuInAlpha),
        CheckId::LogConcavity(LogConcaveTarget::GInBeta),
        CheckId::LogConcavity(LogConcaveTarget::GStarInBeta),
        CheckId::LogConvexityH,
        CheckId::CmMuRecipX,
        CheckId::CmNuNegComplement,
        CheckId::CmExpControl,
        CheckId::PowerMean(GKind::G),
        CheckId::PowerMean(GKind::GStar),
        CheckId::MonotoneBeta,
        CheckId::Subadditivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::GeometricConvexity => "geometric-convexity",
            CheckId::TuranAlpha => "turan-alpha",
            CheckId::TuranBeta => "turan-beta",
            CheckId::Kimberling => "kimberling",
            CheckId::DeltaN => "delta-n",
            CheckId::Schur => "schur",
            CheckId::LogConcavity(t) => t.id(),
            CheckId::LogConvexityH => "logconvexity-h",
            CheckId::CmMuRecipX => "cm-mu-recip-x",
            CheckId::CmNuNegComplement => "cm-nu-neg-complement",
            CheckId::CmExpControl => "cm-exp-control",
            CheckId::PowerMean(GKind::G) => "power-mean-g",
            CheckId::PowerMean(GKind::GStar) => "power-mean-g-star",
            CheckId::MonotoneBeta => "monotone-beta",
            CheckId::Subadditivity => "subadditivity",
        }
    }

}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}
