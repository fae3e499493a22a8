//! Individual inequality checks. Every check returns reports oriented so
//! that a nonnegative margin means the inequality holds; hypotheses that a
//! point fails are reported as [`Error::Hypothesis`] before anything is
//! evaluated.

use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::gammakit::GAMMA_MIN_ABSCISSA;
use crate::means::{power_mean_unchecked, PowerMeanOrder};
use crate::volterra::{self, SplitPoint, VolterraParams};

use super::report::{InequalityReport, PointParams, Verdict};

/// Highest finite-difference order accepted by the complete monotonicity checks.
pub const MAX_CM_ORDER: u32 = 6;

/// Which hypotheses the checks enforce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Master switch; when false only the domain of the functions is checked.
    pub enforce: bool,
    /// Log-concavity of `G`, `G*` in β (and the power-mean corollaries):
    /// require `α > z*`.
    pub g_alpha_above_zstar: bool,
    /// Same family: require `s > z*` instead of, or on top of, `α > z*`.
    pub g_s_above_zstar: bool,
    /// Sub-additivity of `G` / super-additivity of `G*`: require `β ≥ 0`.
    pub subadditivity_beta_nonneg: bool,
    /// Accept `0 < r < ∞` for the power-mean checks, compared in the lower
    /// (`r ≤ 0`) orientation where nothing is guaranteed.
    pub exploratory_power_mean: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            enforce: true,
            g_alpha_above_zstar: true,
            g_s_above_zstar: false,
            subadditivity_beta_nonneg: true,
            exploratory_power_mean: false,
        }
    }
}

fn require(ok: bool, check: &str, reason: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis {
            check: check.to_string(),
            reason: reason(),
        })
    }
}

fn params(x: f64, alpha: f64, beta: f64) -> PointParams {
    PointParams {
        x: Some(x),
        alpha: Some(alpha),
        beta: Some(beta),
        ..Default::default()
    }
}

fn mu_at(x: f64, alpha: f64, beta: f64, tol: f64) -> Result<EvalResult> {
    volterra::mu(&VolterraParams::new(x, alpha, beta)?, tol)
}

/// `μ(x^λ y^{1-λ}) ≤ μ(x)^λ μ(y)^{1-λ}`.
pub fn geometric_convexity(
    x: f64,
    y: f64,
    lambda: f64,
    alpha: f64,
    beta: f64,
    tol: f64,
) -> Result<InequalityReport> {
    const ID: &str = "geometric-convexity";
    require((0.0..=1.0).contains(&lambda), ID, || format!("lambda = {lambda} outside [0, 1]"))?;
    let mid = if x == y { x } else { x.powf(lambda) * y.powf(1.0 - lambda) };
    let lhs = mu_at(mid, alpha, beta, tol)?;
    let mx = mu_at(x, alpha, beta, tol)?;
    let my = if x == y { mx } else { mu_at(y, alpha, beta, tol)? };
    let rhs = mx.powf(lambda).mul(my.powf(1.0 - lambda));
    let p = PointParams {
        y: Some(y),
        lambda: Some(lambda),
        ..params(x, alpha, beta)
    };
    Ok(InequalityReport::from_sides(ID, p, lhs, rhs))
}

/// `μ(x,β,α) μ(x,β,α+2) ≤ μ(x,β,α+1)²`.
pub fn turan_alpha(p: &VolterraParams, tol: f64) -> Result<InequalityReport> {
    let (x, a, b) = (p.x(), p.alpha(), p.beta());
    let m0 = volterra::mu(p, tol)?;
    let m1 = mu_at(x, a + 1.0, b, tol)?;
    let m2 = mu_at(x, a + 2.0, b, tol)?;
    Ok(InequalityReport::from_sides("turan-alpha", params(x, a, b), m0.mul(m2), m1.square()))
}

/// Two-sided Turán bound in β:
/// `0 ≤ μ(β+1)² − μ(β)μ(β+2) ≤ μ(β+1)²/(β+2)`.
///
/// The first report is `μ(β)μ(β+2) ≤ μ(β+1)²`; the second compares the
/// difference against the upper bound.
pub fn turan_beta(p: &VolterraParams, tol: f64) -> Result<[InequalityReport; 2]> {
    let (x, a, b) = (p.x(), p.alpha(), p.beta());
    let m0 = volterra::mu(p, tol)?;
    let m1 = mu_at(x, a, b + 1.0, tol)?;
    let m2 = mu_at(x, a, b + 2.0, tol)?;
    let prod = m0.mul(m2);
    let sq = m1.square();
    let diff = sq.sub(prod);
    let bound = sq.scale(1.0 / (b + 2.0));
    let pp = params(x, a, b);
    Ok([
        InequalityReport::from_sides("turan-beta-lower", pp, prod, sq),
        InequalityReport::from_sides("turan-beta-upper", pp, diff, bound),
    ])
}

/// `f(x) f(y) ≤ f(x+y)` for the log-Cauchy integral `f`, and the equivalent
/// product form `ν₋(x)ν₋(y) + ν₋(x+y) ≤ e^{-x}ν₋(y) + e^{-y}ν₋(x)` with
/// `ν₋ = e^{-x} − f`.
pub fn kimberling(x: f64, y: f64, tol: f64) -> Result<[InequalityReport; 2]> {
    let fx = volterra::nu_neg_complement(x, tol)?;
    let fy = volterra::nu_neg_complement(y, tol)?;
    let fxy = volterra::nu_neg_complement(x + y, tol)?;
    let p = PointParams {
        x: Some(x),
        y: Some(y),
        ..Default::default()
    };
    let (ex, ey, exy) = (
        EvalResult::exact((-x).exp()),
        EvalResult::exact((-y).exp()),
        EvalResult::exact((-(x + y)).exp()),
    );
    let (nx, ny, nxy) = (ex.sub(fx), ey.sub(fy), exy.sub(fxy));
    let lhs = nx.mul(ny).add(nxy);
    let rhs = ex.mul(ny).add(ey.mul(nx));
    Ok([
        InequalityReport::from_sides("kimberling", p, fx.mul(fy), fxy),
        InequalityReport::from_sides("kimberling-mal", p, lhs, rhs),
    ])
}

/// `Δₙ(β) = D_{n-1} D_{n+1} − Dₙ²`.
pub fn delta_n(n: u32, p: &VolterraParams, tol: f64) -> Result<EvalResult> {
    if n == 0 {
        return Err(crate::error::domain("delta_n needs n >= 1"));
    }
    let lo = volterra::f_derivative(n - 1, p, tol)?;
    let mid = volterra::f_derivative(n, p, tol)?;
    let hi = volterra::f_derivative(n + 1, p, tol)?;
    Ok(lo.mul(hi).sub(mid.square()))
}

/// `Dₙ² ≤ D_{n-1} D_{n+1}` for odd `n`.
pub fn delta_n_check(n: u32, p: &VolterraParams, tol: f64) -> Result<InequalityReport> {
    const ID: &str = "delta-n";
    require(n % 2 == 1, ID, || format!("n = {n} must be odd"))?;
    let lo = volterra::f_derivative(n - 1, p, tol)?;
    let mid = volterra::f_derivative(n, p, tol)?;
    let hi = volterra::f_derivative(n + 1, p, tol)?;
    let pp = PointParams {
        n: Some(n),
        ..params(p.x(), p.alpha(), p.beta())
    };
    Ok(InequalityReport::from_sides(ID, pp, mid.square(), lo.mul(hi)))
}

/// Schur-type inequality
/// `Σ_cyc (β₁−β₂)(β₁−β₃) Δₙ(β₁) ≥ 0` for odd `n`.
///
/// Terms with a negative coefficient form the left side, the rest the right.
pub fn schur(n: u32, x: f64, alpha: f64, betas: [f64; 3], tol: f64) -> Result<InequalityReport> {
    const ID: &str = "schur";
    require(n % 2 == 1, ID, || format!("n = {n} must be odd"))?;
    let mut lhs = EvalResult::exact(0.0);
    let mut rhs = EvalResult::exact(0.0);
    for i in 0..3 {
        let (bi, bj, bk) = (betas[i], betas[(i + 1) % 3], betas[(i + 2) % 3]);
        let coef = (bi - bj) * (bi - bk);
        if coef == 0.0 {
            continue;
        }
        let d = delta_n(n, &VolterraParams::new(x, alpha, bi)?, tol)?;
        if coef > 0.0 {
            rhs = rhs.add(d.scale(coef));
        } else {
            lhs = lhs.add(d.scale(-coef));
        }
    }
    let pp = PointParams {
        n: Some(n),
        beta2: Some(betas[1]),
        beta3: Some(betas[2]),
        ..params(x, alpha, betas[0])
    };
    Ok(InequalityReport::from_sides(ID, pp, lhs, rhs))
}

/// Function whose log-concavity is tested by [`logconcavity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogConcaveTarget {
    /// `β ↦ μ(x, β, α)`.
    MuInBeta,
    /// `α ↦ μ(x, β, α)`.
    MuInAlpha,
    /// `β ↦ G_β(x, α, s)`.
    GInBeta,
    /// `β ↦ G*_β(x, α, s)`.
    GStarInBeta,
}

impl LogConcaveTarget {
    pub fn id(self) -> &'static str {
        match self {
            Self::MuInBeta => "logconcavity-mu-beta",
            Self::MuInAlpha => "logconcavity-mu-alpha",
            Self::GInBeta => "logconcavity-g-beta",
            Self::GStarInBeta => "logconcavity-g-star-beta",
        }
    }

    fn varies_alpha(self) -> bool {
        self == Self::MuInAlpha
    }

    fn needs_split(self) -> bool {
        matches!(self, Self::GInBeta | Self::GStarInBeta)
    }
}

fn g_hypotheses(id: &str, x: f64, alpha: f64, s: f64, opts: &CheckOptions) -> Result<()> {
    if !opts.enforce {
        return Ok(());
    }
    require(x < 1.0, id, || format!("x = {x} must be < 1"))?;
    if opts.g_alpha_above_zstar {
        require(alpha > GAMMA_MIN_ABSCISSA, id, || {
            format!("alpha = {alpha} must exceed {GAMMA_MIN_ABSCISSA}")
        })?;
    }
    if opts.g_s_above_zstar {
        require(s > GAMMA_MIN_ABSCISSA, id, || format!("s = {s} must exceed {GAMMA_MIN_ABSCISSA}"))?;
    }
    Ok(())
}

/// `φ(m−δ) φ(m+δ) ≤ φ(m)²`, where `m` is `p.beta()` (or `p.alpha()` for
/// [`LogConcaveTarget::MuInAlpha`]).
pub fn logconcavity(
    target: LogConcaveTarget,
    p: &VolterraParams,
    s: Option<SplitPoint>,
    delta: f64,
    opts: &CheckOptions,
    tol: f64,
) -> Result<InequalityReport> {
    let id = target.id();
    let m = if target.varies_alpha() { p.alpha() } else { p.beta() };
    require(delta >= 0.0, id, || format!("delta = {delta} must be >= 0"))?;
    require(m - delta > -1.0, id, || format!("m - delta = {} must exceed -1", m - delta))?;
    let s = if target.needs_split() {
        let s = s.ok_or_else(|| crate::error::domain(format!("{id} needs a split point s")))?;
        g_hypotheses(id, p.x(), p.alpha(), s.get(), opts)?;
        Some(s)
    } else {
        None
    };
    let at = |m: f64| -> Result<EvalResult> {
        let q = if target.varies_alpha() { p.with_alpha(m)? } else { p.with_beta(m)? };
        match (target, s) {
            (LogConcaveTarget::GInBeta, Some(s)) => volterra::g(&q, s, tol),
            (LogConcaveTarget::GStarInBeta, Some(s)) => volterra::g_star(&q, s, tol),
            _ => volterra::mu(&q, tol),
        }
    };
    let centre = at(m)?;
    let (lo, hi) = if delta == 0.0 { (centre, centre) } else { (at(m - delta)?, at(m + delta)?) };
    let pp = PointParams {
        s: s.map(SplitPoint::get),
        delta: Some(delta),
        ..params(p.x(), p.alpha(), p.beta())
    };
    Ok(InequalityReport::from_sides(id, pp, lo.mul(hi), centre.square()))
}

/// `H(m)² ≤ H(m−δ) H(m+δ)` for `H(β) = Γ(β+1) μ(x,β,α)`, with `m = p.beta()`.
pub fn logconvexity_h(p: &VolterraParams, delta: f64, tol: f64) -> Result<InequalityReport> {
    const ID: &str = "logconvexity-h";
    let m = p.beta();
    require(delta >= 0.0, ID, || format!("delta = {delta} must be >= 0"))?;
    require(m - delta > -1.0, ID, || format!("m - delta = {} must exceed -1", m - delta))?;
    let centre = volterra::f_derivative(0, p, tol)?;
    let (lo, hi) = if delta == 0.0 {
        (centre, centre)
    } else {
        (
            volterra::f_derivative(0, &p.with_beta(m - delta)?, tol)?,
            volterra::f_derivative(0, &p.with_beta(m + delta)?, tol)?,
        )
    };
    let pp = PointParams {
        delta: Some(delta),
        ..params(p.x(), p.alpha(), m)
    };
    Ok(InequalityReport::from_sides(ID, pp, centre.square(), lo.mul(hi)))
}

/// Function sampled by [`complete_monotonicity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CmTarget {
    /// `x ↦ μ(1/x, β, α)`.
    MuRecipX { alpha: f64, beta: f64 },
    /// The log-Cauchy integral `f`.
    NuNegComplement,
    /// `x ↦ e^{-x}`, a known completely monotone control.
    ExpControl,
}

impl CmTarget {
    pub fn id(&self) -> &'static str {
        match self {
            Self::MuRecipX { .. } => "cm-mu-recip-x",
            Self::NuNegComplement => "cm-nu-neg-complement",
            Self::ExpControl => "cm-exp-control",
        }
    }

    fn eval(&self, x: f64, tol: f64) -> Result<EvalResult> {
        match *self {
            Self::MuRecipX { alpha, beta } => mu_at(1.0 / x, alpha, beta, tol),
            Self::NuNegComplement => volterra::nu_neg_complement(x, tol),
            Self::ExpControl => Ok(EvalResult::exact((-x).exp())),
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `(-1)ⁿ Δₕⁿ φ(x) ≥ 0` for every `x` in `xs` and every `n ≤ order`,
/// one report per `(x, n)`.
pub fn complete_monotonicity(
    target: CmTarget,
    xs: &[f64],
    order: u32,
    h: f64,
    tol: f64,
) -> Result<Vec<InequalityReport>> {
    let id = target.id();
    require(h > 0.0 && h.is_finite(), id, || format!("step h = {h} must be > 0"))?;
    require(order <= MAX_CM_ORDER, id, || format!("order {order} exceeds {MAX_CM_ORDER}"))?;
    if let CmTarget::MuRecipX { alpha, .. } = target {
        require(alpha >= 0.0, id, || format!("alpha = {alpha} must be >= 0"))?;
    }
    let mut out = Vec::with_capacity(xs.len() * (order as usize + 1));
    for &x in xs {
        let samples = (0..=order)
            .map(|j| target.eval(x + f64::from(j) * h, tol))
            .collect::<Result<Vec<_>>>()?;
        for n in 0..=order {
            // (-1)^n Δ^n φ(x) = Σ_j (-1)^j C(n,j) φ(x + j h)
            let mut lhs = EvalResult::exact(0.0);
            let mut rhs = EvalResult::exact(0.0);
            for (j, sample) in samples.iter().enumerate().take(n as usize + 1) {
                let term = sample.scale(binomial(n, j as u32));
                if j % 2 == 0 {
                    rhs = rhs.add(term);
                } else {
                    lhs = lhs.add(term);
                }
            }
            let mut pp = PointParams {
                x: Some(x),
                n: Some(n),
                h: Some(h),
                ..Default::default()
            };
            if let CmTarget::MuRecipX { alpha, beta } = target {
                pp.alpha = Some(alpha);
                pp.beta = Some(beta);
            }
            out.push(InequalityReport::from_sides(id, pp, lhs, rhs));
        }
    }
    Ok(out)
}

/// `G` or `G*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GKind {
    G,
    GStar,
}

impl GKind {
    fn eval(self, p: &VolterraParams, s: SplitPoint, tol: f64) -> Result<EvalResult> {
        match self {
            GKind::G => volterra::g(p, s, tol),
            GKind::GStar => volterra::g_star(p, s, tol),
        }
    }

    fn power_mean_id(self) -> &'static str {
        match self {
            GKind::G => "power-mean-g",
            GKind::GStar => "power-mean-g-star",
        }
    }
}

/// `M_r(a, b; λ)` of two bounded values, with first-order propagation.
fn power_mean_bounded(r: PowerMeanOrder, a: EvalResult, b: EvalResult, lambda: f64) -> EvalResult {
    let m = power_mean_unchecked(r, a.value, b.value, lambda);
    let err = match r {
        PowerMeanOrder::NegInfinity | PowerMeanOrder::PosInfinity => {
            a.abs_error_bound.max(b.abs_error_bound)
        }
        PowerMeanOrder::Finite(r) => {
            let da = lambda * (a.value / m).powf(r - 1.0);
            let db = (1.0 - lambda) * (b.value / m).powf(r - 1.0);
            da * a.abs_error_bound + db * b.abs_error_bound
        }
    };
    EvalResult {
        value: m,
        abs_error_bound: err,
        nodes_used: a.nodes_used + b.nodes_used,
        converged: a.converged && b.converged,
    }
}

/// Power-mean form of log-concavity in β:
/// for `r ≤ 0`, `M_r(φ(β₁), φ(β₂); λ) ≤ φ(λβ₁ + (1−λ)β₂)`;
/// for `r = ∞`, `φ(λβ₁ + (1−λ)β₂) ≤ max(φ(β₁), φ(β₂))`.
#[allow(clippy::too_many_arguments)]
pub fn g_power_mean(
    kind: GKind,
    r: PowerMeanOrder,
    x: f64,
    alpha: f64,
    betas: (f64, f64),
    lambda: f64,
    s: SplitPoint,
    opts: &CheckOptions,
    tol: f64,
) -> Result<InequalityReport> {
    let id = kind.power_mean_id();
    require(lambda > 0.0 && lambda < 1.0, id, || format!("lambda = {lambda} outside (0, 1)"))?;
    require(s.get() > 0.0, id, || "s must be > 0".to_string())?;
    if let PowerMeanOrder::Finite(v) = r {
        require(v <= 0.0 || !opts.enforce || opts.exploratory_power_mean, id, || {
            format!("order r = {v} > 0 is not covered")
        })?;
    }
    g_hypotheses(id, x, alpha, s.get(), opts)?;
    let (b1, b2) = betas;
    let mid = if b1 == b2 { b1 } else { lambda * b1 + (1.0 - lambda) * b2 };
    let v1 = kind.eval(&VolterraParams::new(x, alpha, b1)?, s, tol)?;
    let v2 = if b1 == b2 { v1 } else { kind.eval(&VolterraParams::new(x, alpha, b2)?, s, tol)? };
    let vm = if b1 == b2 { v1 } else { kind.eval(&VolterraParams::new(x, alpha, mid)?, s, tol)? };
    let mean = power_mean_bounded(r, v1, v2, lambda);
    let pp = PointParams {
        s: Some(s.get()),
        beta2: Some(b2),
        lambda: Some(lambda),
        r: Some(r),
        ..params(x, alpha, b1)
    };
    Ok(match r {
        PowerMeanOrder::PosInfinity => InequalityReport::from_sides(id, pp, vm, mean),
        _ => InequalityReport::from_sides(id, pp, mean, vm),
    })
}

/// Reports for every successive pair of `beta_grid`: `G` must not decrease
/// and `G*` must not increase as β increases. Margins are oriented by the
/// direction of each step, so a descending grid is checked equally.
pub fn g_monotone_beta_pairs(
    x: f64,
    alpha: f64,
    s: SplitPoint,
    beta_grid: &[f64],
    tol: f64,
) -> Result<Vec<InequalityReport>> {
    let mut vals = Vec::with_capacity(beta_grid.len());
    for &b in beta_grid {
        let p = VolterraParams::new(x, alpha, b)?;
        vals.push((volterra::g(&p, s, tol)?, volterra::g_star(&p, s, tol)?));
    }
    let mut out = Vec::new();
    for (i, w) in beta_grid.windows(2).enumerate() {
        let (b0, b1) = (w[0], w[1]);
        let ((g0, gs0), (g1, gs1)) = (vals[i], vals[i + 1]);
        let pp = PointParams {
            s: Some(s.get()),
            beta2: Some(b1),
            ..params(x, alpha, b0)
        };
        // Arrange each pair as (value at smaller β, value at larger β).
        let ((ga, gb), (gsa, gsb)) = if b0 <= b1 { ((g0, g1), (gs0, gs1)) } else { ((g1, g0), (gs1, gs0)) };
        out.push(InequalityReport::from_sides("monotone-beta-g", pp, ga, gb));
        out.push(InequalityReport::from_sides("monotone-beta-g-star", pp, gsb, gsa));
    }
    Ok(out)
}

/// Worst pair of [`g_monotone_beta_pairs`], renamed `monotone-beta`.
pub fn g_monotone_beta(
    x: f64,
    alpha: f64,
    s: SplitPoint,
    beta_grid: &[f64],
    tol: f64,
) -> Result<InequalityReport> {
    const ID: &str = "monotone-beta";
    require(beta_grid.len() >= 2, ID, || "beta grid needs at least two points".to_string())?;
    let pairs = g_monotone_beta_pairs(x, alpha, s, beta_grid, tol)?;
    let worst = pairs
        .into_iter()
        .reduce(|a, b| if worse(&b, &a) { b } else { a })
        .expect("at least one pair");
    Ok(InequalityReport {
        name: ID.to_string(),
        ..worst
    })
}

fn worse(a: &InequalityReport, b: &InequalityReport) -> bool {
    let rank = |r: &InequalityReport| r.verdict.rank();
    rank(a) > rank(b) || (rank(a) == rank(b) && a.margin - a.combined_error < b.margin - b.combined_error)
}

/// `G(s+s′) ≤ G(s) G(s′)` and `G*(s) + G*(s′) ≤ G*(s+s′) + G*(s) G*(s′)`.
pub fn subadditivity(
    p: &VolterraParams,
    s: SplitPoint,
    s2: SplitPoint,
    opts: &CheckOptions,
    tol: f64,
) -> Result<[InequalityReport; 2]> {
    const ID: &str = "subadditivity";
    if opts.enforce && opts.subadditivity_beta_nonneg {
        require(p.beta() >= 0.0, ID, || format!("beta = {} must be >= 0", p.beta()))?;
    }
    let sum = SplitPoint::new(s.get() + s2.get())?;
    let (ga, gb, gab) = (volterra::g(p, s, tol)?, volterra::g(p, s2, tol)?, volterra::g(p, sum, tol)?);
    let (ha, hb, hab) = (
        volterra::g_star(p, s, tol)?,
        volterra::g_star(p, s2, tol)?,
        volterra::g_star(p, sum, tol)?,
    );
    let pp = PointParams {
        s: Some(s.get()),
        s2: Some(s2.get()),
        ..params(p.x(), p.alpha(), p.beta())
    };
    Ok([
        InequalityReport::from_sides("subadditivity-g", pp, gab, ga.mul(gb)),
        InequalityReport::from_sides("subadditivity-g-star", pp, ha.add(hb), hab.add(ha.mul(hb))),
    ])
}

/// Verdict over a batch: the most severe one.
pub fn worst_verdict<'a>(reports: impl IntoIterator<Item = &'a InequalityReport>) -> Option<Verdict> {
    reports.into_iter().map(|r| r.verdict).max_by_key(|v| v.rank())
}
