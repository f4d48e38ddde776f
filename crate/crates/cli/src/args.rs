use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Load balancing model, optimizer and simulator for macro/femto networks.
#[derive(Parser, Debug)]
#[command(name = "femtolb", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "FEMTOLB_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluates the analytic model at the configured operating point.
    Analyze(Common),
    /// Solves for the optimal operating point in the configured mode.
    Optimize(Common),
    /// Runs a Monte Carlo campaign of the configured scheme.
    Simulate(SimulateArgs),
    /// Compares analysis and simulation at one or more service radii.
    Validate(ValidateArgs),
    /// Repeats analyze, optimize or simulate along one parameter axis.
    Sweep(SweepArgs),
    /// Prints the structural conditions and the deployment checklist.
    ReportConditions(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// TOML configuration; built-in defaults when omitted.
    #[arg(long, short)]
    pub config: Option<PathBuf>,

    /// Override a configuration key, e.g. `--set fbs_mean=50`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,

    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long)]
    pub drops: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,

    /// Per-drop records, one line per drop.
    #[arg(long)]
    pub records: Option<PathBuf>,

    /// Tune the scheme first: the analytic optimum for OA/HA, the band
    /// split for Div schemes, the bias for CoLB.
    #[arg(long)]
    pub calibrate: bool,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: Common,

    /// Service radii to compare at; the configured radius when omitted.
    #[arg(long, value_delimiter = ',')]
    pub radii: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,

    /// Swept parameter.
    #[arg(long = "var", value_enum)]
    pub axis: Axis,

    /// Comma separated values of the swept parameter.
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,

    /// Work done at every point.
    #[arg(long, value_enum, default_value_t = Task::Optimize)]
    pub task: Task,

    /// Directory for two-column `<metric>.dat` series.
    #[arg(long)]
    pub series: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Subscriber benefit ratio.
    #[value(name = "M")]
    M,
    /// Mean femtocells per macrocell.
    #[value(name = "N_f")]
    Nf,
    /// Indoor/outdoor user density ratio.
    #[value(name = "k_in")]
    Kin,
    /// Femtocell admission cap.
    #[value(name = "N_max")]
    Nmax,
    /// Service radius.
    #[value(name = "d_f")]
    Df,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::M => "M",
            Axis::Nf => "N_f",
            Axis::Kin => "k_in",
            Axis::Nmax => "N_max",
            Axis::Df => "d_f",
        }
    }

    /// `key=value` override setting this axis.
    pub fn assignment(self, value: f64) -> Result<String, String> {
        let key = match self {
            Axis::M => "benefit_ratio",
            Axis::Nf => "fbs_mean",
            Axis::Kin => "indoor_factor",
            Axis::Df => "service_radius",
            Axis::Nmax => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(format!("N_max value {value} is not a positive integer"));
                }
                return Ok(format!("n_max={}", value as usize));
            }
        };
        Ok(format!("{key}={value:?}"))
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Analyze,
    Optimize,
    Simulate,
}
