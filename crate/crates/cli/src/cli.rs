use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "skidsim",
    version,
    about = "Traction-mode skid dynamics of a rear-drive vehicle"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the model at one state and print every derived quantity.
    Eval(EvalArgs),
    /// Tabulate the yaw angular acceleration over a grid.
    Sweep(SweepArgs),
    /// Find the self-stabilization speed for a range of slip angles.
    Vstab(VstabArgs),
    /// Integrate the skid in time.
    Simulate(SimulateArgs),
    /// Run invariant and consistency diagnostics on a configuration.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// JSON run configuration.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
}

/// Overrides for the configured initial state.
#[derive(Debug, Args)]
pub struct StateArgs {
    /// Speed of the front axle centre, m/s.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "v_kmh")]
    pub v: Option<f64>,
    /// Speed of the front axle centre, km/h.
    #[arg(long, allow_hyphen_values = true)]
    pub v_kmh: Option<f64>,
    /// Yaw rate, rad/s.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Front-wheel slip angle, degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// Angle of the rear reaction, degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Drive-wheel slip; sets the grip coefficient through the configured grip model.
    #[arg(long)]
    pub s_x: Option<f64>,
    /// Grip coefficient; overrides the configuration and any grip model.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub state: StateArgs,
    /// Print a JSON object instead of the text report.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarArg {
    /// Speed, m/s.
    #[value(name = "v_x1")]
    VX1,
    /// Yaw rate, rad/s.
    #[value(name = "omega_z")]
    OmegaZ,
    /// Grip coefficient.
    Phi,
    /// Drive-wheel slip.
    #[value(name = "s_x")]
    SX,
    /// Slip angle, degrees.
    #[value(name = "delta_1")]
    Delta1,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Named preset (fig2a .. fig2f).
    #[arg(long, conflicts_with_all = ["x_var", "series_var"])]
    pub preset: Option<String>,
    /// Swept variable for a custom grid.
    #[arg(long, value_enum, requires_all = ["x_lo", "x_hi"])]
    pub x_var: Option<VarArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_hi: Option<f64>,
    /// Number of grid points, ends included.
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    /// Variable taking one value per output column.
    #[arg(long, value_enum, requires = "series")]
    pub series_var: Option<VarArg>,
    /// Comma-separated series values, in boundary units.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub series: Vec<f64>,
    #[command(flatten)]
    pub state: StateArgs,
    /// Output CSV path.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Debug, Args)]
pub struct VstabArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Yaw rate at skid onset, rad/s.
    #[arg(long, default_value_t = 0.1)]
    pub omega: f64,
    /// First slip angle, degrees.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub delta_from: f64,
    /// Last slip angle, degrees.
    #[arg(long, default_value_t = 8.0, allow_hyphen_values = true)]
    pub delta_to: f64,
    /// Slip angle step, degrees.
    #[arg(long, default_value_t = 1.0)]
    pub delta_step: f64,
    /// Angle of the rear reaction, degrees.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Grip coefficient; overrides the configuration.
    #[arg(long)]
    pub phi: Option<f64>,
    /// Lower end of the speed bracket, km/h.
    #[arg(long, default_value_t = 0.36)]
    pub v_lo_kmh: f64,
    /// Upper end of the speed bracket, km/h.
    #[arg(long, default_value_t = 360.0)]
    pub v_hi_kmh: f64,
    /// Output CSV path; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub state: StateArgs,
    /// Integration step, s.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// End time, s.
    #[arg(long, default_value_t = 5.0)]
    pub t_end: f64,
    /// Record every k-th step (the last step is always recorded).
    #[arg(long, default_value_t = 1)]
    pub record_every: usize,
    /// Keep integrating after the yaw rate crosses zero.
    #[arg(long)]
    pub no_stop: bool,
    /// Output CSV path.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Number of randomized states.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}
