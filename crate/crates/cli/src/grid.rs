use std::path::Path;

use clap::Args;
use volterra_core::ineqlab::{GridSpec, Param};

use crate::CliError;

/// Parameter flags. Each takes one value, or a comma-separated list for
/// `verify` and `table`.
#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<String>>,
    /// Second argument (Kimberling checks, power mean).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta2: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta3: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s2: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub n: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<String>>,
    /// Power-mean order; `inf`, `-inf` or a real.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub r: Option<Vec<String>>,
    /// Half-width of the midpoint log-concavity tests.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub delta: Option<Vec<String>>,
    /// Step of the finite-difference monotonicity tests.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Option<Vec<String>>,
    /// CSV file whose header names parameters; each column lists that
    /// parameter's values (blank cells are ignored).
    #[arg(long)]
    pub grid: Option<std::path::PathBuf>,
}

impl GridArgs {
    fn flag(&self, p: Param) -> Option<&Vec<String>> {
        match p {
            Param::X => self.x.as_ref(),
            Param::Y => self.y.as_ref(),
            Param::Alpha => self.alpha.as_ref(),
            Param::Beta => self.beta.as_ref(),
            Param::Beta2 => self.beta2.as_ref(),
            Param::Beta3 => self.beta3.as_ref(),
            Param::S => self.s.as_ref(),
            Param::S2 => self.s2.as_ref(),
            Param::N => self.n.as_ref(),
            Param::Lambda => self.lambda.as_ref(),
            Param::R => self.r.as_ref(),
            Param::Delta => self.delta.as_ref(),
            Param::H => self.h.as_ref(),
        }
    }

    /// True when neither a grid file nor any parameter flag was given.
    pub fn is_empty(&self) -> bool {
        self.grid.is_none() && Param::ALL.iter().all(|&p| self.flag(p).is_none())
    }

    /// Grid file first, then flags on top.
    pub fn to_grid(&self) -> Result<GridSpec, CliError> {
        let mut grid = match &self.grid {
            Some(path) => read_grid_file(path)?,
            None => GridSpec::default(),
        };
        for p in Param::ALL {
            if let Some(values) = self.flag(p) {
                grid.set_from_strs(p, values)?;
            }
        }
        Ok(grid)
    }
}

pub fn read_grid_file(path: &Path) -> Result<GridSpec, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let params = reader
        .headers()?
        .iter()
        .map(|h| h.parse::<Param>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut columns: Vec<Vec<String>> = vec![Vec::new(); params.len()];
    for record in reader.records() {
        for (col, cell) in columns.iter_mut().zip(record?.iter()) {
            if !cell.is_empty() {
                col.push(cell.to_string());
            }
        }
    }
    let mut grid = GridSpec::default();
    for (p, values) in params.into_iter().zip(columns) {
        grid.set_from_strs(p, &values)?;
    }
    Ok(grid)
}
