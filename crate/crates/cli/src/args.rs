use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "summa", version, about = "Fourier summability kernels, means, maximal operators and norms on the torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a summability kernel on the grid
    Kernel(KernelArgs),
    /// Apply a summability mean to a test function
    Means(MeansArgs),
    /// Evaluate a maximal operator on a test function
    Maxop(MaxopArgs),
    /// Compute a function-space norm
    Norm(NormArgs),
    /// Run harness suites and write the JSON report
    Verify(VerifyArgs),
    /// Write the data (or an SVG) for one of the catalogued figures
    Figure(FigureArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.trim().parse::<i64>() {
        Ok(v) if v > 0 => Ok(v as usize),
        Ok(v) => Err(format!("must be a positive integer (got {v})")),
        Err(_) => Err(format!("'{s}' is not an integer")),
    }
}

/// Flags shared by the computing subcommands.
#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Common {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// 1, 2, inf, or rect
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    /// dirichlet, fejer, riesz, cesaro or theta
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// index; repeat for a multi-index
    #[arg(long, allow_negative_numbers = true, value_parser = positive)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub n: Vec<usize>,
    /// theta catalog id, e.g. fejer, riesz(1,2), weierstrass
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// JSON file with any of the flags; flags given on the command line win
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct KernelArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct MeansArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// test function, e.g. bump(2), jump, trig(8,1), spike(0.1)
    #[arg(long = "f")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct MaxopArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long = "f")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    /// cube, cone, strong, poisson, theta-cone or theta-box
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct NormArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long = "f")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    /// lp, weak, llogl, herz, herz-prime, dp, dp-shell or wiener
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<String>,
    /// exponent (p for L_p, weak L_p and D_p; q for Herz; power for L log L)
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyArgs {
    /// suite id, or `all`
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    /// write runtime_seconds as 0 so reports are byte-identical
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub no_timing: bool,
    /// suite parameters (config file only)
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite_config: Option<Value>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct FigureArgs {
    /// f13 … f28
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<i64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// Overlay the flags on the config file: anything given on the command line
/// replaces the file's value.
pub fn merge<T: Serialize + DeserializeOwned>(flags: T, config: Option<&PathBuf>) -> Result<T, CliError> {
    let Some(path) = config else { return Ok(flags) };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage("--config", format!("{}: {e}", path.display())))?;
    let mut base: Value =
        serde_json::from_str(&text).map_err(|e| CliError::usage("--config", format!("{}: {e}", path.display())))?;
    if !base.is_object() {
        return Err(CliError::usage("--config", "the config file must hold a JSON object"));
    }
    let over = serde_json::to_value(&flags).map_err(|e| CliError::usage("--config", e.to_string()))?;
    if let (Some(b), Value::Object(o)) = (base.as_object_mut(), over) {
        for (k, v) in o {
            b.insert(k, v);
        }
    }
    serde_json::from_value(base).map_err(|e| CliError::usage("--config", e.to_string()))
}
