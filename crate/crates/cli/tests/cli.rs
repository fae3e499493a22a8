use std::path::PathBuf;
use std::process::{Command, Output};

use volterra_core::ineqlab::turan_alpha;
use volterra_core::oracle::parse_golden;
use volterra_core::volterra::VolterraParams;

fn volterra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_volterra"))
        .args(args)
        .env_remove("VOLTERRA_TOL")
        .output()
        .expect("run volterra")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn pair(line: &str) -> (f64, f64) {
    let (v, b) = line.trim().split_once(',').unwrap();
    (v.parse().unwrap(), b.parse().unwrap())
}

fn golden_text() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/golden.csv")).unwrap()
}

#[test]
fn eval_g_at_zero_split_is_one() {
    let o = volterra(&["eval", "g", "--x", "0.5", "--alpha", "2", "--beta", "1", "--s", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1.0,"), "{}", stdout(&o));
}

#[test]
fn eval_lower_at_zero_split_is_exact_zero() {
    let o = volterra(&["eval", "mu-lower", "--s", "0", "--x", "1.3", "--alpha", "0.5", "--beta", "-0.5"]);
    assert_eq!(stdout(&o), "0.0,0.0\n");
}

#[test]
fn eval_nu_matches_golden() {
    let row = parse_golden(&golden_text()).unwrap().remove(0);
    assert_eq!((row.function.as_str(), row.x, row.alpha, row.beta), ("mu", 1.0, 0.0, 0.0));
    let o = volterra(&["eval", "nu", "--x", "1"]);
    let (v, b) = pair(&stdout(&o));
    assert!((v - row.value).abs() <= b + row.bound, "{v} {b}");
}

#[test]
fn eval_domain_error_exits_2_naming_the_condition() {
    let o = volterra(&["eval", "mu", "--x", "-1", "--alpha", "0", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("x must be finite and > 0"), "{err}");

    let o = volterra(&["eval", "mu", "--x", "1", "--alpha", "-1", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
}

#[test]
fn eval_usage_errors_exit_2() {
    assert_eq!(volterra(&["eval", "mu", "--x", "1"]).status.code(), Some(2));
    assert_eq!(volterra(&["eval", "nu", "--x", "1,2"]).status.code(), Some(2));
    assert_eq!(volterra(&["eval", "zeta", "--x", "1"]).status.code(), Some(2));
    assert_eq!(volterra(&["eval", "nu", "--x", "1", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn eval_prints_round_trip_decimals() {
    let o = volterra(&["eval", "power-mean", "--x", "4", "--y", "9", "--lambda", "0.5", "--r", "0"]);
    let (v, _) = pair(&stdout(&o));
    assert!((v - 6.0).abs() < 1e-14);
    let o = volterra(&["eval", "k-beta", "--x", "0.7", "--alpha", "0.1", "--beta", "0.2"]);
    let text = stdout(&o);
    let (v, b) = pair(&text);
    assert_eq!(text.trim(), format!("{v:?},{b:?}"));
}

#[test]
fn tolerance_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_volterra"));
        c.args(["eval", "nu", "--x", "1"]).args(extra).env_remove("VOLTERRA_TOL");
        if let Some(t) = env {
            c.env("VOLTERRA_TOL", t);
        }
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(Some("1e-6"), &[]), run(None, &["--tol", "1e-6"]));
    assert_ne!(run(Some("1e-6"), &[]), run(None, &[]));
    assert_eq!(run(Some("1e-6"), &["--tol", "1e-10"]), run(None, &[]));
}

#[test]
fn verify_single_point_matches_library() {
    let o = volterra(&["verify", "turan-alpha", "--x", "1", "--alpha", "0", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "check,x,y,alpha,beta,beta2,beta3,s,s2,n,lambda,r,delta,h,lhs,rhs,margin,combined_error,verdict"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(lines.next().is_none());
    let r = turan_alpha(&VolterraParams::new(1.0, 0.0, 0.0).unwrap(), 1e-10).unwrap();
    assert_eq!(row[0], "turan-alpha");
    assert_eq!(row[14..], [
        format!("{:?}", r.lhs),
        format!("{:?}", r.rhs),
        format!("{:?}", r.margin),
        format!("{:?}", r.combined_error),
        "holds".to_string(),
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 reports"));
}

#[test]
fn verify_exit_codes() {
    let o = volterra(&["verify", "turan-alpha", "--x", "5", "--alpha", "-0.5", "--beta", "-0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with(",fails"));
    assert_eq!(volterra(&["verify", "no-such-check", "--x", "1"]).status.code(), Some(2));
}

#[test]
fn looser_tolerance_adds_no_fails() {
    let args = [
        "verify", "turan-alpha", "turan-beta", "delta-n", "--x", "0.3,1,2", "--alpha", "0,1", "--beta",
        "-0.5,0,1", "--n", "1,3",
    ];
    let fine = stdout(&volterra(&args));
    let mut loose_args = args.to_vec();
    loose_args.extend(["--tol", "1e-6"]);
    let loose = stdout(&volterra(&loose_args));
    let verdicts = |t: &str| t.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect::<Vec<_>>();
    let (a, b) = (verdicts(&fine), verdicts(&loose));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!(!(y == "fails" && x != "fails"), "{x} -> {y}");
    }
}

#[test]
fn verify_grid_file_equals_flags() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("grid_turan.csv");
    std::fs::write(&path, "x,alpha,beta\n0.3,0,-0.5\n2,1,\n").unwrap();
    let from_file = volterra(&["verify", "turan-beta", "--grid", path.to_str().unwrap()]);
    let from_flags = volterra(&["verify", "turan-beta", "--x", "0.3,2", "--alpha", "0,1", "--beta", "-0.5"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_flags));
    assert_eq!(stdout(&from_file).lines().count(), 1 + 2 * 2 * 2);
}

#[test]
fn table_single_point_equals_eval() {
    let t = volterra(&["table", "mu", "--x", "2", "--alpha", "1", "--beta", "-0.5"]);
    let e = volterra(&["eval", "mu", "--x", "2", "--alpha", "1", "--beta", "-0.5"]);
    let text = stdout(&t);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "function,x,alpha,beta,value,abs_error_bound");
    let row = lines.next().unwrap();
    assert_eq!(row, format!("mu,2.0,1.0,-0.5,{}", stdout(&e).trim()));
}

#[test]
fn table_csv_and_json_agree() {
    let args = ["table", "g-star", "--x", "0.5,1", "--alpha", "2", "--beta", "0,1", "--s", "1"];
    let csv = stdout(&volterra(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&volterra(&json_args))).unwrap();
    let records = json.as_array().unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(records.len(), 4);
    for (row, rec) in rows.iter().zip(records) {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(rec["function"], "g-star");
        for (i, key) in ["x", "alpha", "beta", "s", "value", "abs_error_bound"].iter().enumerate() {
            assert_eq!(cells[i + 1].parse::<f64>().unwrap(), rec[key].as_f64().unwrap(), "{key}");
        }
    }
}

#[test]
fn table_empty_grid() {
    assert_eq!(stdout(&volterra(&["table", "nu"])), "function,x,value,abs_error_bound\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&volterra(&["table", "nu", "--format", "json"]))).unwrap();
    assert_eq!(json, serde_json::json!([]));
}

#[test]
fn golden_regenerates_the_checked_in_file() {
    let o = volterra(&["golden"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden_text());
}
