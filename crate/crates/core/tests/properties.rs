use proptest::prelude::*;

use volterra_core::gammakit::{digamma, ln_gamma, recip_gamma, trigamma, PositiveReal};
use volterra_core::ineqlab::{kimberling, turan_alpha, Verdict};
use volterra_core::means::{power_mean, PowerMeanOrder};
use volterra_core::oracle::oracle_mu;
use volterra_core::quad::{integrate_finite, IntegrandSpec, UpperLimit, DEFAULT_TOL as TOL};
use volterra_core::volterra::{self, SplitPoint, VolterraParams};

fn pr(z: f64) -> PositiveReal {
    PositiveReal::new(z).unwrap()
}

fn params() -> impl Strategy<Value = VolterraParams> {
    (0.1f64..5.0, -0.9f64..3.0, -0.9f64..3.0).prop_map(|(x, a, b)| VolterraParams::new(x, a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ln_gamma_recurrence(z in 0.1f64..100.0) {
        let lhs = ln_gamma(pr(z + 1.0)) - ln_gamma(pr(z));
        prop_assert!((lhs - z.ln()).abs() <= 1e-12 * z.ln().abs().max(1.0));
    }

    #[test]
    fn recip_gamma_inverts(z in 0.1f64..50.0) {
        let prod = recip_gamma(pr(z)) * ln_gamma(pr(z)).exp();
        prop_assert!((prod - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn digamma_increasing_trigamma_positive(z in 0.05f64..200.0, dz in 1e-3f64..5.0) {
        prop_assert!(digamma(pr(z + dz)) > digamma(pr(z)));
        prop_assert!(trigamma(pr(z)) > 0.0);
    }

    #[test]
    fn power_mean_order_monotone(
        a in 1e-3f64..1e3, b in 1e-3f64..1e3, lambda in 0.01f64..0.99,
        r1 in -20.0f64..20.0, r2 in -20.0f64..20.0,
    ) {
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let m_lo = power_mean(PowerMeanOrder::Finite(lo), a, b, lambda).unwrap();
        let m_hi = power_mean(PowerMeanOrder::Finite(hi), a, b, lambda).unwrap();
        prop_assert!(m_lo <= m_hi * (1.0 + 1e-12));
        let min = power_mean(PowerMeanOrder::NegInfinity, a, b, lambda).unwrap();
        let max = power_mean(PowerMeanOrder::PosInfinity, a, b, lambda).unwrap();
        prop_assert!(min <= m_lo * (1.0 + 1e-12) && m_hi <= max * (1.0 + 1e-12));
    }

    #[test]
    fn power_mean_idempotent(a in 1e-3f64..1e3, lambda in 0.01f64..0.99, r in -20.0f64..20.0) {
        for order in [PowerMeanOrder::Finite(r), PowerMeanOrder::NegInfinity, PowerMeanOrder::PosInfinity] {
            let m = power_mean(order, a, a, lambda).unwrap();
            prop_assert!((m - a).abs() <= 4.0 * f64::EPSILON * a);
        }
    }

    #[test]
    fn power_mean_continuous_at_zero(a in 1e-3f64..1e3, b in 1e-3f64..1e3, lambda in 0.01f64..0.99) {
        let m0 = power_mean(PowerMeanOrder::Finite(0.0), a, b, lambda).unwrap();
        for r in [1e-8, -1e-8, 1e-7] {
            let m = power_mean(PowerMeanOrder::Finite(r), a, b, lambda).unwrap();
            prop_assert!((m - m0).abs() <= 1e-6 * m0);
        }
    }

    #[test]
    fn split_quadrature_is_additive(c in 0.05f64..3.9, k in 0.1f64..3.0) {
        let f = move |t: f64| (-k * t).exp() * (1.0 + t * t).recip();
        let whole = integrate_finite(&IntegrandSpec::new(&f, 0.0, UpperLimit::Finite(4.0)), TOL).unwrap();
        let a = integrate_finite(&IntegrandSpec::new(&f, 0.0, UpperLimit::Finite(c)), TOL).unwrap();
        let b = integrate_finite(&IntegrandSpec::new(&f, c, UpperLimit::Finite(4.0)), TOL).unwrap();
        let bound = whole.abs_error_bound + a.abs_error_bound + b.abs_error_bound;
        prop_assert!((a.value + b.value - whole.value).abs() <= bound);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn incomplete_parts_sum_to_whole(p in params(), s in 0.0f64..5.0) {
        let s = SplitPoint::new(s).unwrap();
        let whole = volterra::mu(&p, TOL).unwrap();
        let up = volterra::mu_upper(&p, s, TOL).unwrap();
        let low = volterra::mu_lower(&p, s, TOL).unwrap();
        let bound = whole.abs_error_bound + up.abs_error_bound + low.abs_error_bound;
        prop_assert!((up.value + low.value - whole.value).abs() <= bound);
    }

    #[test]
    fn normalized_parts_complement(p in params(), s in 0.0f64..5.0) {
        let s = SplitPoint::new(s).unwrap();
        let g = volterra::g(&p, s, TOL).unwrap();
        let h = volterra::g_star(&p, s, TOL).unwrap();
        prop_assert!((g.value + h.value - 1.0).abs() <= g.abs_error_bound + h.abs_error_bound);
    }

    #[test]
    fn monotone_in_split_point(p in params(), mut grid in prop::collection::vec(0.0f64..6.0, 2..6)) {
        grid.sort_by(f64::total_cmp);
        let mut prev: Option<(volterra_core::EvalResult, volterra_core::EvalResult)> = None;
        for s in grid {
            let s = SplitPoint::new(s).unwrap();
            let low = volterra::mu_lower(&p, s, TOL).unwrap();
            let up = volterra::mu_upper(&p, s, TOL).unwrap();
            if let Some((pl, pu)) = prev {
                prop_assert!(low.value >= pl.value - low.abs_error_bound - pl.abs_error_bound);
                prop_assert!(up.value <= pu.value + up.abs_error_bound + pu.abs_error_bound);
            }
            prev = Some((low, up));
        }
    }

    #[test]
    fn values_positive_and_ratios_bounded(p in params(), s in 0.0f64..5.0) {
        let s = SplitPoint::new(s).unwrap();
        for v in [
            volterra::mu(&p, TOL).unwrap(),
            volterra::mu_upper(&p, s, TOL).unwrap(),
            volterra::mu_lower(&p, s, TOL).unwrap(),
        ] {
            prop_assert!(v.value >= -v.abs_error_bound);
        }
        for v in [volterra::g(&p, s, TOL).unwrap(), volterra::g_star(&p, s, TOL).unwrap()] {
            prop_assert!(v.value >= -v.abs_error_bound && v.value <= 1.0 + v.abs_error_bound);
        }
    }

    #[test]
    fn zeroth_derivative_is_scaled_mu(p in params()) {
        let d0 = volterra::f_derivative(0, &p, TOL).unwrap();
        let g = ln_gamma(pr(p.beta() + 1.0)).exp();
        let mu = volterra::mu(&p, TOL).unwrap().scale(g);
        prop_assert!((d0.value - mu.value).abs() <= d0.abs_error_bound + mu.abs_error_bound + 1e-14 * d0.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadrature_matches_oracle(p in params(), s in 0.0f64..5.0) {
        let sp = SplitPoint::new(s).unwrap();
        let pairs = [
            (volterra::mu(&p, TOL).unwrap(), oracle_mu(&p, 0.0, None).unwrap()),
            (volterra::mu_upper(&p, sp, TOL).unwrap(), oracle_mu(&p, s, None).unwrap()),
            (volterra::mu_lower(&p, sp, TOL).unwrap(), oracle_mu(&p, 0.0, Some(s)).unwrap()),
        ];
        for (q, o) in pairs {
            prop_assert!((q.value - o.value).abs() <= q.abs_error_bound + o.abs_error_bound, "{q:?} {o:?}");
        }
    }

    #[test]
    fn kimberling_forms_agree_in_sign(x in 0.01f64..6.0, y in 0.01f64..6.0) {
        let [kim, mal] = kimberling(x, y, TOL).unwrap();
        prop_assert_eq!(kim.verdict, mal.verdict);
        prop_assert!(kim.margin > 0.0 && mal.margin > 0.0);
    }

    #[test]
    fn turan_verdict_stable_under_tighter_tol(p in params()) {
        let a = turan_alpha(&p, 1e-9).unwrap();
        let b = turan_alpha(&p, 1e-10).unwrap();
        let flip = matches!((a.verdict, b.verdict), (Verdict::Holds, Verdict::Fails) | (Verdict::Fails, Verdict::Holds));
        prop_assert!(!flip, "{a:?} {b:?}");
    }
}
