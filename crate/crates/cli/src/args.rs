use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "plasma",
    version,
    about = "Evaluate, verify and sample the correlation kernels of random normal matrix ensembles",
    args_override_self = true,
    subcommand_required = false,
    arg_required_else_help = true
)]
pub struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true, env = "PLASMA_KERNEL_THREADS")]
    pub threads: Option<usize>,

    /// Output directory for CSV/JSON artifacts.
    #[arg(long, global = true, default_value = "plasma-out")]
    pub out: PathBuf,

    /// TOML file with default flag values; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Print the acceptance thresholds table and exit.
    #[arg(long)]
    pub show_thresholds: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a finite-n or limiting kernel on a square grid.
    Eval(EvalArgs),
    /// Check one of the kernel identities against its threshold.
    Verify(VerifyArgs),
    /// Tabulate finite-n errors against a limiting kernel.
    Converge(ConvergeArgs),
    /// Monte Carlo histogram of rescaled eigenvalue moduli.
    Sample(SampleArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    /// Limiting kernel spec, e.g. free-boundary, hard-edge, mittag-leffler:2.
    #[arg(long, conflicts_with = "finite", required_unless_present = "finite")]
    pub limit: Option<String>,
    /// Finite-n potential: ginibre, hard-edge or power:λ.
    #[arg(long)]
    pub finite: Option<String>,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    /// Rescaling frame for finite-n kernels.
    #[arg(long, default_value = "boundary")]
    pub frame: String,
    /// Square grid a:b:step.
    #[arg(long, default_value = "-3:3:0.1", allow_hyphen_values = true)]
    pub grid: String,
    /// Second argument `re,im`; the diagonal K(z, z) when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    Ward,
    MassOne,
    Series,
    Eighth,
    Inequalities,
    Positivity,
    Polarized,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub equation: Equation,
    /// Limiting kernel spec.
    #[arg(long, default_value = "free-boundary")]
    pub spec: String,
    /// Square grid a:b:step (equation-specific default).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Polar quadrature r_max,n_radial,n_angular.
    #[arg(long)]
    pub quad: Option<String>,
    #[arg(long, default_value_t = 1e-3)]
    pub fd_step: f64,
    /// Point sets as random:k (positivity, polarized, inequalities).
    #[arg(long)]
    pub points: Option<String>,
    /// Number of random point sets for positivity.
    #[arg(long, default_value_t = 100)]
    pub sets: usize,
    /// Use the complementary kernel G(1 - Φ) for positivity.
    #[arg(long)]
    pub complementary: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Series truncation N, or `inf` for the resummed series.
    #[arg(long, default_value = "80")]
    pub n_terms: String,
    /// Edge shift a for the eighth formula.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub shift: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvergeMode {
    Kernel,
    Sections,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvergeArgs {
    #[arg(long, default_value = "ginibre")]
    pub pot: String,
    #[arg(long, default_value = "boundary")]
    pub frame: String,
    /// Comma-separated matrix sizes.
    #[arg(long, default_value = "64,256,1024")]
    pub n: String,
    /// Target limiting kernel (defaults to the one matching pot and frame).
    #[arg(long)]
    pub spec: Option<String>,
    /// Real-axis grid a:b:step.
    #[arg(long, default_value = "-3:3:0.05", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, value_enum, default_value = "kernel")]
    pub mode: ConvergeMode,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, default_value = "ginibre")]
    pub pot: String,
    /// boundary or singularity.
    #[arg(long, default_value = "boundary")]
    pub frame: String,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 4000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of bins (default: width 0.1).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Histogram window lo:hi (default -3:1 at the boundary, 0:4 at a singularity).
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
}
