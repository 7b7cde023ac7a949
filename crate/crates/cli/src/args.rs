//! Command-line syntax.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Experiment runner for positivity-preserving integrators of production–destruction systems.
///
/// Every command writes one CSV table. Its first line is a `#` comment that
/// holds the fully resolved command; re-running that command reproduces the
/// file byte for byte.
#[derive(Debug, Parser)]
#[command(name = "pds-cli", version)]
pub struct Cli {
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// The experiments.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrates a benchmark problem and prints the trajectory.
    Solve(SolveArgs),
    /// Finds the largest oscillation-free time step on an (ε, θ, Δt) grid.
    ScanDt(ScanArgs),
    /// Estimates the observed order of accuracy on a problem with a closed-form solution.
    Convergence(ConvergenceArgs),
    /// Classifies methods by their first step from a vanishing initial component.
    VanishingIc(VanishingArgs),
    /// Checks whether the first step moves towards the steady state.
    Direction(DirectionArgs),
    /// Positivity thresholds of the stability functions of Runge–Kutta tableaus.
    Stability(StabilityArgs),
    /// Steady-state undershoot on the scalar problem u' = −k|u|u + 1.
    ScalarCfl(ScalarCflArgs),
    /// Coarse sweep of a parametric family: Δt bound and vanishing-IC class per parameter.
    ParamSweep(SweepArgs),
}

/// Overrides of the problem parameters.
#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Problem as `name[:key=value,...]` (linear2x2, scalar, robertson, hires).
    #[arg(long, default_value = "linear2x2")]
    pub problem: String,
    /// Overrides θ of linear2x2.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Overrides ε of linear2x2, or the initial floor of robertson/hires.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Overrides k of the scalar problem.
    #[arg(long)]
    pub k: Option<f64>,
}

/// Time-grid families for `solve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    /// Equal steps.
    Uniform,
    /// Geometrically growing steps, for stiff kinetics over long horizons.
    Exponential,
}

impl GridKind {
    pub(crate) fn as_str(self) -> &'static str {
        match self {
            GridKind::Uniform => "uniform",
            GridKind::Exponential => "exponential",
        }
    }
}

/// `solve` options.
#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Scheme, e.g. `mpe`, `mprk22:alpha=1`, `mpdec:order=5,nodes=gl`.
    #[arg(long)]
    pub scheme: String,
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Number of time steps.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Final time (default: the problem's own final time).
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Time-grid family.
    #[arg(long, value_enum, default_value_t = GridKind::Uniform)]
    pub grid: GridKind,
    /// First exponential step as a fraction of the interval length.
    #[arg(long, default_value_t = problems::DEFAULT_FIRST_STEP_FRACTION)]
    pub first_step_fraction: f64,
    /// Print every n-th step (the final step is always printed).
    #[arg(long, default_value_t = 1)]
    pub every: usize,
}

/// A Patankar-type scheme or a Runge–Kutta tableau.
#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    /// Patankar-type scheme, e.g. `mprk22:alpha=1`.
    #[arg(long, conflicts_with = "tableau", required_unless_present = "tableau")]
    pub scheme: Option<String>,
    /// Runge–Kutta tableau, e.g. `radau_iia3`.
    #[arg(long)]
    pub tableau: Option<String>,
}

/// Scan-grid overrides; unset values take the command's defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Smallest time step.
    #[arg(long)]
    pub dt_min: Option<f64>,
    /// Largest time step.
    #[arg(long)]
    pub dt_max: Option<f64>,
    /// Time steps per doubling.
    #[arg(long)]
    pub dt_per_octave: Option<usize>,
    /// Smallest ε (ε runs log-uniformly up to ½).
    #[arg(long)]
    pub eps_min: Option<f64>,
    /// Number of ε values.
    #[arg(long)]
    pub eps_points: Option<usize>,
    /// Smallest θ (θ runs log-uniformly up to ½ and is mirrored to 1 − θ).
    #[arg(long)]
    pub theta_min: Option<f64>,
    /// Number of θ values in (0, ½].
    #[arg(long)]
    pub theta_points: Option<usize>,
}

/// `scan-dt` options.
#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Print the bound for every θ instead of the per-Δt records.
    #[arg(long)]
    pub by_theta: bool,
}

/// `convergence` options.
#[derive(Debug, Clone, Args)]
pub struct ConvergenceArgs {
    /// Patankar-type scheme.
    #[arg(long)]
    pub scheme: String,
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Final time.
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    /// Comma-separated time steps (default: 2⁻⁴, …, 2⁻⁹).
    #[arg(long, value_delimiter = ',')]
    pub dts: Vec<f64>,
}

/// `vanishing-ic` options.
#[derive(Debug, Clone, Args)]
pub struct VanishingArgs {
    /// Scheme to probe; repeat the flag for several (default: a representative list).
    #[arg(long)]
    pub scheme: Vec<String>,
    /// Runge–Kutta tableau to probe; repeatable.
    #[arg(long)]
    pub tableau: Vec<String>,
}

/// `direction` options.
#[derive(Debug, Clone, Args)]
pub struct DirectionArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    /// θ of a single check (requires --eps and --dt).
    #[arg(long, requires_all = ["eps", "dt"])]
    pub theta: Option<f64>,
    /// ε of a single check.
    #[arg(long, requires_all = ["theta", "dt"])]
    pub eps: Option<f64>,
    /// Δt of a single check.
    #[arg(long, requires_all = ["theta", "eps"])]
    pub dt: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

/// `stability` options.
#[derive(Debug, Clone, Args)]
pub struct StabilityArgs {
    /// Tableau name, or `all`.
    #[arg(long, default_value = "all")]
    pub tableau: String,
    /// Largest time step examined.
    #[arg(long, default_value_t = 64.0)]
    pub dt_max: f64,
}

/// `scalar-cfl` options.
#[derive(Debug, Clone, Args)]
pub struct ScalarCflArgs {
    /// Patankar-type scheme.
    #[arg(long)]
    pub scheme: String,
    /// Rate constant k.
    #[arg(long, default_value_t = 1e4)]
    pub k: f64,
    /// Comma-separated CFL numbers.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,5,10,20,50")]
    pub cfls: Vec<f64>,
}

/// Families swept by `param-sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// MPRK(4,3,α,β).
    Mprk43,
    /// MPRK(2,2,α).
    Mprk22,
    /// MPRKSO(2,2,α,β).
    Mprkso22,
}

impl Family {
    pub(crate) fn as_str(self) -> &'static str {
        match self {
            Family::Mprk43 => "mprk43",
            Family::Mprk22 => "mprk22",
            Family::Mprkso22 => "mprkso22",
        }
    }
}

/// `param-sweep` options.
#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Family to sweep.
    #[arg(long, value_enum, default_value_t = Family::Mprk43)]
    pub family: Family,
    #[command(flatten)]
    pub grid: GridArgs,
}
