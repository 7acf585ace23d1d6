//! The `scottsc` command-line front end.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::Parser;

pub use commands::execute;
pub use config::{CommandKind, Format, Parameters, RunConfig};
pub use output::{config_from_json, format_float, render, render_csv, render_json, render_sidecar, RunOutput};

use crate::error::{Error, Result};

/// Thread count override for the rayon pool.
pub const THREADS_ENV: &str = "SCOTTSC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "scottsc", version, about = "Semiclassical eigenvalue sums and the Scott correction")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: CommandKind,
    /// Nuclear charge.
    #[arg(long)]
    pub z: Option<f64>,
    /// Strictly decreasing semiclassical parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<f64>>,
    /// Localization rule such as h^-0.8.
    #[arg(long = "a-rule", allow_hyphen_values = true)]
    pub a_rule: Option<String>,
    /// Grid size: TF points, radial intervals or points per h.
    #[arg(long)]
    pub points: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Exit with status 1 when accuracy warnings are raised.
    #[arg(long)]
    pub strict: bool,
}

impl Cli {
    pub fn to_config(&self) -> RunConfig {
        RunConfig {
            command: self.command,
            parameters: Parameters { z: self.z, h: self.h.clone(), a_rule: self.a_rule.clone(), points: self.points },
            output_path: self.out.as_ref().map(|p| p.to_string_lossy().into_owned()),
            format: self.format,
            strict: self.strict,
        }
    }
}

/// Outcome of [`run`]: the rendered artifact and whether strict mode failed.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub config: RunConfig,
    pub output: RunOutput,
    pub rendered: String,
    pub strict_failure: bool,
}

/// Resolves, executes and renders; writes files when an output path is set.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    let config = config.resolved()?;
    let output = execute(&config)?;
    let rendered = render(&config, &output)?;
    if let Some(path) = &config.output_path {
        std::fs::write(path, &rendered)?;
        if config.format == Format::Csv {
            std::fs::write(format!("{path}.json"), render_sidecar(&config, &output)?)?;
        }
    }
    let strict_failure = config.strict && output.accuracy_warnings() > 0;
    Ok(RunReport { config, output, rendered, strict_failure })
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| Error::invalid(format!("{THREADS_ENV} must be an integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::invalid(format!("cannot configure threads: {e}")))?;
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

/// Process entry point; returns the exit status.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return 2;
    }
    match run(&cli.to_config()) {
        Ok(report) => {
            if report.config.output_path.is_none() {
                print!("{}", report.rendered);
            }
            for w in &report.output.warnings {
                eprintln!("warning: {w}");
            }
            if report.strict_failure {
                eprintln!("error: {} accuracy warning(s) in strict mode", report.output.accuracy_warnings());
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
