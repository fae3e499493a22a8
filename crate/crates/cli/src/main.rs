mod functions;
mod grid;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use volterra_core::ineqlab::{
    acceptance_plan, sweep_plan, CheckId, CheckOptions, InequalityReport, Param, PlanEntry,
    PointParams, SweepConfig, Verdict,
};
use volterra_core::oracle::{golden_rows, render_golden};
use volterra_core::quad::DEFAULT_TOL;

use functions::FunctionId;
use grid::GridArgs;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] volterra_core::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "volterra", version, about = "Volterra functions: evaluation, tables and inequality checks")]
struct Cli {
    /// Absolute error tolerance of each evaluation.
    #[arg(long, global = true, env = "VOLTERRA_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function at one point; prints `value,abs_error_bound`.
    Eval {
        function: FunctionId,
        #[command(flatten)]
        params: GridArgs,
    },
    /// Run inequality checks and write one CSV row per report.
    ///
    /// Without parameter flags or --grid the built-in verification grids are
    /// used. Exits 0 when nothing fails, 1 otherwise.
    Verify {
        /// Check ids; all checks when omitted.
        checks: Vec<String>,
        #[command(flatten)]
        params: GridArgs,
        /// Maximum number of worker threads.
        #[arg(long)]
        parallel: Option<usize>,
        /// Evaluate points outside the hypotheses of each check too.
        #[arg(long)]
        no_hypotheses: bool,
        /// Run the sub-additivity checks for negative beta as well.
        #[arg(long)]
        allow_negative_beta: bool,
        /// Require s above the minimum abscissa of Gamma in the G checks.
        #[arg(long)]
        s_above_zstar: bool,
        /// Accept positive finite power-mean orders.
        #[arg(long)]
        exploratory: bool,
    },
    /// Tabulate a function over a grid.
    Table {
        function: FunctionId,
        #[command(flatten)]
        params: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Regenerate the golden-value file from the reference integrator.
    Golden {
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Eval { function, params } => {
            let pt = single_point(function, &params)?;
            let r = function.eval(&pt, cli.tol)?;
            writeln!(out, "{},{}", num(r.value), num(r.abs_error_bound))?;
            ExitCode::SUCCESS
        }
        Command::Verify {
            checks,
            params,
            parallel,
            no_hypotheses,
            allow_negative_beta,
            s_above_zstar,
            exploratory,
        } => {
            let checks = checks
                .iter()
                .map(|c| c.parse::<CheckId>())
                .collect::<Result<Vec<_>, _>>()?;
            let plan = if params.is_empty() {
                default_plan(&checks)
            } else {
                let checks = if checks.is_empty() { CheckId::ALL.to_vec() } else { checks };
                vec![PlanEntry {
                    checks,
                    grid: params.to_grid()?,
                }]
            };
            let defaults = CheckOptions::default();
            let cfg = SweepConfig {
                tol: cli.tol,
                threads: parallel,
                options: CheckOptions {
                    enforce: !no_hypotheses,
                    g_s_above_zstar: s_above_zstar,
                    subadditivity_beta_nonneg: !allow_negative_beta,
                    exploratory_power_mean: exploratory,
                    ..defaults
                },
            };
            let result = sweep_plan(&plan, &cfg)?;
            write_reports(&mut out, &result.reports)?;
            let count = |v| result.reports.iter().filter(|r| r.verdict == v).count();
            let fails = count(Verdict::Fails);
            eprintln!(
                "{} reports: {} holds, {} inconclusive, {} fails; {} points outside hypotheses skipped",
                result.reports.len(),
                count(Verdict::Holds),
                count(Verdict::Inconclusive),
                fails,
                result.skipped
            );
            if fails == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Table {
            function,
            params,
            format,
        } => {
            let points = params.to_grid()?.points(function.params());
            let rows = points
                .iter()
                .map(|pt| function.eval(pt, cli.tol).map(|r| (pt, r)))
                .collect::<Result<Vec<_>, _>>()?;
            let columns = function.params();
            match format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    let mut header = vec!["function"];
                    header.extend(columns.iter().map(|p| p.name()));
                    header.extend(["value", "abs_error_bound"]);
                    w.write_record(&header)?;
                    for (pt, r) in &rows {
                        let cells = pt.cells();
                        let mut rec = vec![function.to_string()];
                        rec.extend(columns.iter().map(|&p| cells[p as usize].clone()));
                        rec.extend([num(r.value), num(r.abs_error_bound)]);
                        w.write_record(&rec)?;
                    }
                    w.flush()?;
                }
                Format::Json => {
                    let records: Vec<Value> = rows
                        .iter()
                        .map(|(pt, r)| {
                            let mut m = Map::new();
                            m.insert("function".into(), function.as_str().into());
                            for &p in columns {
                                m.insert(p.name().into(), json_param(pt, p));
                            }
                            m.insert("value".into(), r.value.into());
                            m.insert("abs_error_bound".into(), r.abs_error_bound.into());
                            Value::Object(m)
                        })
                        .collect();
                    serde_json::to_writer_pretty(&mut out, &records)?;
                    writeln!(out)?;
                }
            }
            ExitCode::SUCCESS
        }
        Command::Golden { output } => {
            let text = render_golden(&golden_rows()?);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            ExitCode::SUCCESS
        }
    };
    out.flush()?;
    Ok(code)
}

/// Round-trip decimal.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn single_point(function: FunctionId, params: &GridArgs) -> Result<PointParams, CliError> {
    let grid = params.to_grid()?;
    for &p in function.params() {
        match grid.count(p) {
            1 => {}
            0 => return Err(CliError::Usage(format!("`{function}` needs --{p}"))),
            _ => return Err(CliError::Usage(format!("eval takes a single value for --{p}"))),
        }
    }
    Ok(grid.points(function.params())[0])
}

/// Built-in verification grids, restricted to `checks` when any are given.
fn default_plan(checks: &[CheckId]) -> Vec<PlanEntry> {
    acceptance_plan()
        .into_iter()
        .filter_map(|mut entry| {
            if !checks.is_empty() {
                entry.checks.retain(|c| checks.contains(c));
            }
            (!entry.checks.is_empty()).then_some(entry)
        })
        .collect()
}

fn write_reports<W: Write>(out: W, reports: &[InequalityReport]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["check"];
    header.extend(PointParams::COLUMNS);
    header.extend(["lhs", "rhs", "margin", "combined_error", "verdict"]);
    w.write_record(&header)?;
    for r in reports {
        let mut rec = vec![r.name.clone()];
        rec.extend(r.params.cells());
        rec.extend([
            num(r.lhs),
            num(r.rhs),
            num(r.margin),
            num(r.combined_error),
            r.verdict.to_string(),
        ]);
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn json_param(pt: &PointParams, p: Param) -> Value {
    match p {
        Param::N => pt.n.map_or(Value::Null, Value::from),
        Param::R => pt.r.map_or(Value::Null, |r| Value::from(r.to_string())),
        _ => {
            let cell = &pt.cells()[p as usize];
            cell.parse::<f64>().map_or(Value::Null, Value::from)
        }
    }
}
