use volterra_core::oracle::{golden_points, parse_golden};
use volterra_core::quad::DEFAULT_TOL as TOL;
use volterra_core::volterra::{self, SplitPoint, VolterraParams};

const GOLDEN: &str = include_str!("../data/golden.csv");

#[test]
fn quadrature_matches_golden_file() {
    let rows = parse_golden(GOLDEN).unwrap();
    assert_eq!(rows.len(), golden_points().len());
    for row in rows {
        let p = VolterraParams::new(row.x, row.alpha, row.beta).unwrap();
        let s = SplitPoint::new(row.s).unwrap();
        let r = match row.function.as_str() {
            "mu" => volterra::mu(&p, TOL),
            "mu-lower" => volterra::mu_lower(&p, s, TOL),
            "mu-upper" => volterra::mu_upper(&p, s, TOL),
            other => panic!("unexpected function {other}"),
        }
        .unwrap();
        assert!(
            (r.value - row.value).abs() <= r.abs_error_bound + row.bound,
            "{row:?} vs {r:?}"
        );
    }
}

#[test]
fn golden_file_lists_the_minted_points() {
    let rows = parse_golden(GOLDEN).unwrap();
    for (row, (f, x, a, b, s)) in rows.iter().zip(golden_points()) {
        assert_eq!((row.function.as_str(), row.x, row.alpha, row.beta, row.s), (f, x, a, b, s));
        assert!(row.bound < 1e-10);
    }
}
