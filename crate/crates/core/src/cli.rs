//! Command-line front end: `analyze`, `scan`, `spectrum` and `constants`.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::config::{parse_config, ConfigError, RunConfig};
use crate::constants::PhysicalConstants;
use crate::deuteron::{k_grid, ModelKind};
use crate::limits::{predict_count, run_full_analysis, scan_exclusion, Analysis};
use crate::output::{
    render_analysis, render_constants, render_curve, render_spectrum, OutputFormat, SpectrumRow,
    SpectrumTable,
};
use crate::rates::{deuteron_rate, deuteron_spectrum};

/// k-grid for spectrum output, in units of κ.
pub const SPECTRUM_GRID_LO: f64 = 0.01;
pub const SPECTRUM_GRID_HI: f64 = 20.0;
pub const SPECTRUM_GRID_POINTS: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "collapse-bounds",
    version,
    about = "Collapse-model coupling bounds from deuteron dissociation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON configuration; every key is optional.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,

    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Override the deuteron model kind.
    #[arg(long, global = true, value_parser = parse_model_kind)]
    pub model: Option<ModelKind>,

    /// Override the number of standard deviations for the upper limit.
    #[arg(long = "nsigma", global = true, value_name = "X")]
    pub n_sigma: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full counting analysis and report the coupling bounds.
    Analyze {
        /// Also report the expected CSL count for the configured g_n.
        #[arg(long)]
        predict: bool,
    },
    /// Scan λ/a² and emit the exclusion curve.
    Scan,
    /// Emit the dissociation rate per unit relative momentum.
    Spectrum {
        /// Report failed grid points instead of aborting.
        #[arg(long)]
        keep_going: bool,
    },
    /// Print physical constants and GRW defaults.
    Constants,
}

fn parse_model_kind(s: &str) -> Result<ModelKind, String> {
    match s {
        "zero-range" => Ok(ModelKind::ZeroRange),
        "hulthen" => Ok(ModelKind::Hulthen),
        other => Err(format!("unknown model `{other}`, expected zero-range or hulthen")),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Analysis(#[from] crate::error::Error),
}

impl CliError {
    /// Short machine-greppable code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Config(e) => e.code(),
            CliError::Analysis(e) if e.is_numerical() => "numerical",
            CliError::Analysis(crate::error::Error::InvalidRange(_)) => "range",
            CliError::Analysis(_) => "invalid",
        }
    }

    /// 1 for usage or configuration problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Analysis(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let bytes = fs::read(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&bytes)?
        }
        None => RunConfig::default(),
    };
    if let Some(kind) = cli.model {
        cfg.model.kind = kind;
    }
    if let Some(n) = cli.n_sigma {
        cfg.n_sigma = n;
    }
    Ok(cfg)
}

/// Computes the spectrum over the default logarithmic k-grid. An unset g_n
/// is taken as 0 (proton-only coupling).
pub fn spectrum_table(a: &Analysis, keep_going: bool) -> crate::error::Result<SpectrumTable> {
    let g_n = a.collapse.g_n().unwrap_or(0.0);
    let p = a.collapse.with_g_n(g_n)?;
    let grid = k_grid(&a.model, SPECTRUM_GRID_LO, SPECTRUM_GRID_HI, SPECTRUM_GRID_POINTS)?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut failures = Vec::new();
    for k in grid {
        match deuteron_spectrum(&p, &a.model, k, &a.constants, &a.quadrature) {
            Ok(d) => rows.push(SpectrumRow {
                k_per_fm: k,
                rate_density: Some(d),
            }),
            Err(e) if keep_going => {
                failures.push(format!("k={k:e}: {e}"));
                rows.push(SpectrumRow {
                    k_per_fm: k,
                    rate_density: None,
                });
            }
            Err(e) => return Err(e),
        }
    }
    let trapezoid_rate = rows
        .windows(2)
        .filter_map(|w| match (w[0].rate_density, w[1].rate_density) {
            (Some(a), Some(b)) => Some(0.5 * (a + b) * (w[1].k_per_fm - w[0].k_per_fm)),
            _ => None,
        })
        .sum();
    Ok(SpectrumTable {
        g_n,
        deuteron_rate: deuteron_rate(&p, &a.model, &a.constants)?.per_bound_state,
        trapezoid_rate,
        rows,
        failures,
    })
}

/// Runs one invocation and returns what should be written.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    if let Command::Constants = cli.command {
        return Ok(render_constants(&PhysicalConstants::standard(), cli.format));
    }
    let cfg = load_config(cli)?;
    let analysis = cfg.to_analysis().map_err(ConfigError::from)?;
    match cli.command {
        Command::Analyze { predict } => {
            let report = run_full_analysis(&analysis)?;
            let prediction = if predict {
                if analysis.collapse.g_n().is_none() {
                    return Err(CliError::Config(ConfigError::Schema {
                        path: "collapse.g_n".into(),
                        message: "required by --predict".into(),
                    }));
                }
                Some(predict_count(&analysis)?)
            } else {
                None
            };
            Ok(render_analysis(&report, prediction.as_ref(), cli.format))
        }
        Command::Scan => Ok(render_curve(&scan_exclusion(&analysis)?, cli.format)),
        Command::Spectrum { keep_going } => Ok(render_spectrum(
            &spectrum_table(&analysis, keep_going)?,
            cli.format,
        )),
        Command::Constants => unreachable!("handled above"),
    }
}

/// Executes and writes output; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|text| match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => {
                Err(CliError::Io(format!("cannot write to standard output: {e}")))
            }
            _ => Ok(()),
        },
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            e.exit_code()
        }
    }
}
