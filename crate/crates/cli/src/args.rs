use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "schurc",
    version,
    about = "Schur-Weyl block simulator and compression planner"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Read additional `key=value` flags from FILE; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irrep and multiplicity dimensions of every block.
    #[command(args_override_self = true)]
    Dims(DimsArgs),
    /// Block weights of the N-fold product state.
    #[command(args_override_self = true)]
    Qdist(QdistArgs),
    /// Kept blocks, encoding dimension, qubit counts and bounds.
    #[command(args_override_self = true)]
    Plan(PlanArgs),
    /// Exact protocol error of the planned truncation.
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Plans and errors over a grid of N and epsilon.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Block simulator against the dense reference.
    #[command(name = "oracle-check", args_override_self = true)]
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: usize,
    /// Row limit; defaults to d.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Args)]
pub struct QdistArgs {
    #[arg(long)]
    pub n: u32,
    /// Comma-separated eigenvalues.
    #[arg(long)]
    pub spectrum: String,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, conflicts_with = "zero_error")]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub zero_error: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, conflicts_with = "zero_error")]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub zero_error: bool,
    /// Polar angle of the Bloch vector (qubits only).
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Azimuth of the Bloch vector (qubits only).
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `a:b:step` (arithmetic) or `a:b:*k` (geometric).
    #[arg(long)]
    pub n_range: String,
    #[arg(long)]
    pub spectrum: String,
    /// Comma-separated tolerances for approximate plans.
    #[arg(long)]
    pub epsilon_list: Option<String>,
    #[arg(long, conflicts_with_all = ["epsilon_list", "budget_exponent"])]
    pub zero_error: bool,
    /// Budget plans with `d_enc ≤ ⌊N^x⌋`.
    #[arg(long, conflicts_with = "epsilon_list")]
    pub budget_exponent: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Seed for the random keep set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

const SUBCOMMANDS: [&str; 6] = ["dims", "qdist", "plan", "simulate", "sweep", "oracle-check"];

/// Turns the lines of a config file into flags. Blank lines and `#` comments
/// are skipped; `key=true` becomes a bare flag and `key=false` is dropped.
pub fn config_flags(text: &str) -> Result<Vec<OsString>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got {line:?}", i + 1))?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: invalid key {key:?}", i + 1));
        }
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<(usize, usize, OsString)> {
    for (i, a) in args.iter().enumerate() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return args.get(i + 1).map(|v| (i, 2, v.clone()));
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some((i, 1, v.into()));
        }
    }
    None
}

/// Splices the flags of `--config FILE` in directly after the subcommand so
/// that explicit flags, which come later, override them.
pub fn expand_config(mut args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some((at, len, path)) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| format!("cannot read config {}: {e}", path.to_string_lossy()))?;
    let extra = config_flags(&text)?;
    args.drain(at..at + len);
    let sub = args
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .ok_or_else(|| "a subcommand is required".to_string())?;
    args.splice(sub + 1..sub + 1, extra);
    Ok(args)
}
