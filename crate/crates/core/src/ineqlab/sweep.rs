use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::means::PowerMeanOrder;
use crate::quad::DEFAULT_TOL;
use crate::volterra::{SplitPoint, VolterraParams};

use super::checks::{self, CheckOptions, CmTarget, GKind, LogConcaveTarget};
use super::report::{InequalityReport, PointParams};
use super::CheckId;

/// Step used by the complete monotonicity checks when the grid gives none.
pub const DEFAULT_CM_STEP: f64 = 0.1;

/// Grid parameter names, in the order points are enumerated (first varies slowest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    X,
    Y,
    Alpha,
    Beta,
    Beta2,
    Beta3,
    S,
    S2,
    N,
    Lambda,
    R,
    Delta,
    H,
}

impl Param {
    pub const ALL: [Param; 13] = [
        Param::X,
        Param::Y,
        Param::Alpha,
        Param::Beta,
        Param::Beta2,
        Param::Beta3,
        Param::S,
        Param::S2,
        Param::N,
        Param::Lambda,
        Param::R,
        Param::Delta,
        Param::H,
    ];

    pub fn name(self) -> &'static str {
        PointParams::COLUMNS[self as usize]
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown grid parameter `{s}`")))
    }
}

/// Per-parameter value lists; a sweep visits their Cartesian product,
/// restricted to the parameters each check uses.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridSpec {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub beta2: Vec<f64>,
    pub beta3: Vec<f64>,
    pub s: Vec<f64>,
    pub s2: Vec<f64>,
    pub n: Vec<u32>,
    pub lambda: Vec<f64>,
    pub r: Vec<PowerMeanOrder>,
    pub delta: Vec<f64>,
    pub h: Vec<f64>,
}

#[derive(Clone, Copy)]
enum Value {
    Real(f64),
    Int(u32),
    Order(PowerMeanOrder),
}

impl GridSpec {
    /// Replaces the list of `param` with parsed `values`.
    pub fn set_from_strs<S: AsRef<str>>(&mut self, param: Param, values: &[S]) -> Result<()> {
        let reals = || -> Result<Vec<f64>> {
            values
                .iter()
                .map(|v| {
                    let v = v.as_ref().trim();
                    v.parse::<f64>()
                        .map_err(|e| Error::Parse(format!("{param} value `{v}`: {e}")))
                })
                .collect()
        };
        match param {
            Param::N => {
                self.n = values
                    .iter()
                    .map(|v| {
                        let v = v.as_ref().trim();
                        v.parse::<u32>()
                            .map_err(|e| Error::Parse(format!("n value `{v}`: {e}")))
                    })
                    .collect::<Result<_>>()?
            }
            Param::R => {
                self.r = values
                    .iter()
                    .map(|v| v.as_ref().trim().parse())
                    .collect::<Result<_>>()?
            }
            _ => *self.reals_mut(param) = reals()?,
        }
        Ok(())
    }

    fn reals_mut(&mut self, param: Param) -> &mut Vec<f64> {
        match param {
            Param::X => &mut self.x,
            Param::Y => &mut self.y,
            Param::Alpha => &mut self.alpha,
            Param::Beta => &mut self.beta,
            Param::Beta2 => &mut self.beta2,
            Param::Beta3 => &mut self.beta3,
            Param::S => &mut self.s,
            Param::S2 => &mut self.s2,
            Param::Lambda => &mut self.lambda,
            Param::Delta => &mut self.delta,
            Param::H => &mut self.h,
            Param::N | Param::R => unreachable!("not a real-valued parameter"),
        }
    }

    fn values(&self, param: Param) -> Vec<Value> {
        let reals = |v: &[f64]| v.iter().copied().map(Value::Real).collect();
        match param {
            Param::X => reals(&self.x),
            Param::Y => reals(&self.y),
            Param::Alpha => reals(&self.alpha),
            Param::Beta => reals(&self.beta),
            Param::Beta2 => reals(&self.beta2),
            Param::Beta3 => reals(&self.beta3),
            Param::S => reals(&self.s),
            Param::S2 => reals(&self.s2),
            Param::N => self.n.iter().copied().map(Value::Int).collect(),
            Param::Lambda => reals(&self.lambda),
            Param::R => self.r.iter().copied().map(Value::Order).collect(),
            Param::Delta => reals(&self.delta),
            Param::H if self.h.is_empty() => vec![Value::Real(DEFAULT_CM_STEP)],
            Param::H => reals(&self.h),
        }
    }

    /// Number of values listed for `param`.
    pub fn count(&self, param: Param) -> usize {
        match param {
            Param::N => self.n.len(),
            Param::R => self.r.len(),
            Param::X => self.x.len(),
            Param::Y => self.y.len(),
            Param::Alpha => self.alpha.len(),
            Param::Beta => self.beta.len(),
            Param::Beta2 => self.beta2.len(),
            Param::Beta3 => self.beta3.len(),
            Param::S => self.s.len(),
            Param::S2 => self.s2.len(),
            Param::Lambda => self.lambda.len(),
            Param::Delta => self.delta.len(),
            Param::H => self.h.len(),
        }
    }

    /// Cartesian product over `dims`, in [`Param::ALL`] order.
    pub fn points(&self, dims: &[Param]) -> Vec<PointParams> {
        let mut out = vec![PointParams::default()];
        for param in Param::ALL.into_iter().filter(|p| dims.contains(p)) {
            let values = self.values(param);
            out = out
                .into_iter()
                .flat_map(|pt| values.iter().map(move |&v| with_value(pt, param, v)))
                .collect();
        }
        out
    }
}

fn with_value(mut pt: PointParams, param: Param, v: Value) -> PointParams {
    match (param, v) {
        (Param::N, Value::Int(n)) => pt.n = Some(n),
        (Param::R, Value::Order(r)) => pt.r = Some(r),
        (p, Value::Real(v)) => {
            let slot = match p {
                Param::X => &mut pt.x,
                Param::Y => &mut pt.y,
                Param::Alpha => &mut pt.alpha,
                Param::Beta => &mut pt.beta,
                Param::Beta2 => &mut pt.beta2,
                Param::Beta3 => &mut pt.beta3,
                Param::S => &mut pt.s,
                Param::S2 => &mut pt.s2,
                Param::Lambda => &mut pt.lambda,
                Param::Delta => &mut pt.delta,
                Param::H => &mut pt.h,
                Param::N | Param::R => unreachable!(),
            };
            *slot = Some(v);
        }
        _ => unreachable!("value kind does not match parameter"),
    }
    pt
}

fn dims(check: CheckId) -> &'static [Param] {
    use Param::*;
    match check {
        CheckId::GeometricConvexity => &[X, Y, Alpha, Beta, Lambda],
        CheckId::TuranAlpha | CheckId::TuranBeta => &[X, Alpha, Beta],
        CheckId::Kimberling => &[X, Y],
        CheckId::DeltaN => &[X, Alpha, Beta, N],
        CheckId::Schur => &[X, Alpha, Beta, Beta2, Beta3, N],
        CheckId::LogConcavity(LogConcaveTarget::GInBeta | LogConcaveTarget::GStarInBeta) => {
            &[X, Alpha, Beta, S, Delta]
        }
        CheckId::LogConcavity(_) | CheckId::LogConvexityH => &[X, Alpha, Beta, Delta],
        CheckId::CmMuRecipX => &[X, Alpha, Beta, N, H],
        CheckId::CmNuNegComplement | CheckId::CmExpControl => &[X, N, H],
        CheckId::PowerMean(_) => &[X, Alpha, Beta, Beta2, S, Lambda, R],
        CheckId::MonotoneBeta => &[X, Alpha, S],
        CheckId::Subadditivity => &[X, Alpha, Beta, S, S2],
    }
}

fn vp(pt: &PointParams) -> Result<VolterraParams> {
    VolterraParams::new(req(pt.x), req(pt.alpha), req(pt.beta))
}

fn req<T>(v: Option<T>) -> T {
    v.expect("grid enumeration fills every parameter of the check")
}

fn split(v: Option<f64>) -> Result<SplitPoint> {
    SplitPoint::new(req(v))
}

/// Evaluates `check` at one grid point.
fn evaluate(
    check: CheckId,
    pt: &PointParams,
    grid: &GridSpec,
    opts: &CheckOptions,
    tol: f64,
) -> Result<Vec<InequalityReport>> {
    Ok(match check {
        CheckId::GeometricConvexity => vec![checks::geometric_convexity(
            req(pt.x),
            req(pt.y),
            req(pt.lambda),
            req(pt.alpha),
            req(pt.beta),
            tol,
        )?],
        CheckId::TuranAlpha => vec![checks::turan_alpha(&vp(pt)?, tol)?],
        CheckId::TuranBeta => checks::turan_beta(&vp(pt)?, tol)?.to_vec(),
        CheckId::Kimberling => checks::kimberling(req(pt.x), req(pt.y), tol)?.to_vec(),
        CheckId::DeltaN => vec![checks::delta_n_check(req(pt.n), &vp(pt)?, tol)?],
        CheckId::Schur => vec![checks::schur(
            req(pt.n),
            req(pt.x),
            req(pt.alpha),
            [req(pt.beta), req(pt.beta2), req(pt.beta3)],
            tol,
        )?],
        CheckId::LogConcavity(target) => {
            let s = pt.s.map(SplitPoint::new).transpose()?;
            vec![checks::logconcavity(target, &vp(pt)?, s, req(pt.delta), opts, tol)?]
        }
        CheckId::LogConvexityH => vec![checks::logconvexity_h(&vp(pt)?, req(pt.delta), tol)?],
        CheckId::CmMuRecipX => {
            let target = CmTarget::MuRecipX {
                alpha: req(pt.alpha),
                beta: req(pt.beta),
            };
            checks::complete_monotonicity(target, &[req(pt.x)], req(pt.n), req(pt.h), tol)?
        }
        CheckId::CmNuNegComplement | CheckId::CmExpControl => {
            let target = if check == CheckId::CmExpControl {
                CmTarget::ExpControl
            } else {
                CmTarget::NuNegComplement
            };
            checks::complete_monotonicity(target, &[req(pt.x)], req(pt.n), req(pt.h), tol)?
        }
        CheckId::PowerMean(kind) => vec![checks::g_power_mean(
            kind,
            req(pt.r),
            req(pt.x),
            req(pt.alpha),
            (req(pt.beta), req(pt.beta2)),
            req(pt.lambda),
            split(pt.s)?,
            opts,
            tol,
        )?],
        CheckId::MonotoneBeta => vec![checks::g_monotone_beta(
            req(pt.x),
            req(pt.alpha),
            split(pt.s)?,
            &grid.beta,
            tol,
        )?],
        CheckId::Subadditivity => {
            checks::subadditivity(&vp(pt)?, split(pt.s)?, split(pt.s2)?, opts, tol)?.to_vec()
        }
    })
}

/// Tolerance, hypothesis options and worker bound of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub tol: f64,
    pub options: CheckOptions,
    /// Upper bound on worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            options: CheckOptions::default(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutput {
    pub reports: Vec<InequalityReport>,
    /// Grid points left out because they violate a check's hypotheses.
    pub skipped: usize,
}

/// One block of a sweep plan: checks run over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanEntry {
    pub checks: Vec<CheckId>,
    pub grid: GridSpec,
}

/// Sweeps `checks` over `grid`. Points are evaluated in parallel; reports
/// come back in grid order (checks in the given order, then points).
pub fn sweep(grid: &GridSpec, checks: &[CheckId], cfg: &SweepConfig) -> Result<SweepOutput> {
    sweep_plan(
        &[PlanEntry {
            checks: checks.to_vec(),
            grid: grid.clone(),
        }],
        cfg,
    )
}

/// Runs every block of `plan` in order.
pub fn sweep_plan(plan: &[PlanEntry], cfg: &SweepConfig) -> Result<SweepOutput> {
    let tasks: Vec<(CheckId, PointParams, &GridSpec)> = plan
        .iter()
        .flat_map(|entry| {
            entry.checks.iter().flat_map(move |&check| {
                entry
                    .grid
                    .points(dims(check))
                    .into_iter()
                    .map(move |pt| (check, pt, &entry.grid))
            })
        })
        .collect();
    let run = || -> Vec<Result<Vec<InequalityReport>>> {
        tasks
            .par_iter()
            .map(|(check, pt, grid)| evaluate(*check, pt, grid, &cfg.options, cfg.tol))
            .collect()
    };
    let results = match cfg.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    };
    let mut out = SweepOutput::default();
    for result in results {
        match result {
            Ok(reports) => out.reports.extend(reports),
            Err(Error::Hypothesis { .. }) => out.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Seed of the random β triples in the Schur block of [`acceptance_plan`].
pub const SCHUR_SEED: u64 = 0x5c4e_0001;

/// The verification grids of the acceptance run: Turán in α and β, `Δₙ`,
/// Schur over seeded random triples, Kimberling, log-concavity and
/// log-convexity, power-mean bounds, monotonicity in β and sub-additivity.
pub fn acceptance_plan() -> Vec<PlanEntry> {
    fn g(f: impl FnOnce(&mut GridSpec)) -> GridSpec {
        let mut grid = GridSpec::default();
        f(&mut grid);
        grid
    }
    let mut plan = vec![
        PlanEntry {
            checks: vec![CheckId::TuranAlpha, CheckId::TuranBeta],
            grid: g(|g| {
                g.x = vec![0.3, 1.0, 2.0, 5.0];
                g.alpha = vec![-0.5, 0.0, 1.0, 3.0];
                g.beta = vec![-0.5, 0.0, 1.0, 2.5];
            }),
        },
        PlanEntry {
            checks: vec![CheckId::DeltaN],
            grid: g(|g| {
                g.n = vec![1, 3, 5];
                g.x = vec![0.5, 1.0, 2.0];
                g.alpha = vec![0.0, 1.0];
                g.beta = vec![-0.5, 0.0, 1.0];
            }),
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SCHUR_SEED);
    for _ in 0..20 {
        let [b1, b2, b3]: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-0.9..3.0));
        plan.push(PlanEntry {
            checks: vec![CheckId::Schur],
            grid: g(|g| {
                g.n = vec![1];
                g.x = vec![0.5, 1.0];
                g.alpha = vec![0.0, 1.0];
                g.beta = vec![b1];
                g.beta2 = vec![b2];
                g.beta3 = vec![b3];
            }),
        });
    }
    let t6 = |g: &mut GridSpec| {
        g.x = vec![0.3, 0.5, 0.8];
        g.alpha = vec![1.5, 2.0, 3.0];
        g.s = vec![0.5, 1.0, 2.0];
    };
    plan.push(PlanEntry {
        checks: vec![CheckId::Kimberling],
        grid: g(|g| {
            g.x = vec![0.1, 0.5, 1.0, 2.0];
            g.y = g.x.clone();
        }),
    });
    plan.push(PlanEntry {
        checks: vec![
            CheckId::LogConcavity(LogConcaveTarget::MuInBeta),
            CheckId::LogConcavity(LogConcaveTarget::MuInAlpha),
            CheckId::LogConvexityH,
        ],
        grid: g(|g| {
            g.x = vec![0.5, 1.0, 2.0];
            g.alpha = vec![0.0, 1.0];
            g.beta = vec![0.0, 1.0];
            g.delta = vec![0.25, 0.5, 1.0];
        }),
    });
    plan.push(PlanEntry {
        checks: vec![
            CheckId::LogConcavity(LogConcaveTarget::GInBeta),
            CheckId::LogConcavity(LogConcaveTarget::GStarInBeta),
        ],
        grid: g(|g| {
            t6(g);
            g.beta = vec![0.0, 1.0];
            g.delta = vec![0.25, 0.5];
        }),
    });
    for (b1, b2) in [(0.0, 1.0), (-0.5, 2.0)] {
        plan.push(PlanEntry {
            checks: vec![CheckId::PowerMean(GKind::G), CheckId::PowerMean(GKind::GStar)],
            grid: g(|g| {
                t6(g);
                g.beta = vec![b1];
                g.beta2 = vec![b2];
                g.lambda = vec![0.25, 0.5, 0.75];
                g.r = vec![PowerMeanOrder::Finite(0.0), PowerMeanOrder::PosInfinity];
            }),
        });
    }
    plan.push(PlanEntry {
        checks: vec![CheckId::MonotoneBeta],
        grid: g(|g| {
            g.x = vec![0.3, 0.5, 0.8];
            g.alpha = vec![2.0];
            g.s = vec![0.5, 1.0, 2.0];
            g.beta = vec![-0.5, 0.0, 0.5, 1.0, 2.0];
        }),
    });
    plan.push(PlanEntry {
        checks: vec![CheckId::Subadditivity],
        grid: g(|g| {
            g.x = vec![0.3, 0.7];
            g.alpha = vec![0.0, 2.0];
            g.beta = vec![0.0, 1.0, 2.0];
            g.s = vec![0.3, 0.7, 1.5];
            g.s2 = g.s.clone();
        }),
    });
    plan
}
