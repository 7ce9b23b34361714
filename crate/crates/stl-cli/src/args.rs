use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Target-area throughput of robotic swarm entry strategies.
///
/// Every command writes CSV (UTF-8, LF, `.` decimals) to stdout or to `--out`. When a
/// file is written, a `<file>.manifest.json` next to it records the command line,
/// parameters, tool version, output digests and run time; `stl replay` re-executes it
/// and checks the outputs byte for byte.
#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "stl", version)]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "STL_JOBS")]
    pub jobs: Option<usize>,
    /// Read angle arguments (`--theta`, `--omega-max`) in degrees.
    #[arg(long, global = true)]
    pub deg: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum Command {
    /// Closed-form throughput curves for one strategy.
    #[command(subcommand)]
    Throughput(ThroughputCmd),
    /// Kinematic simulation of one strategy.
    ///
    /// Output CSV: `t,n,f_measured,f_analytic`, one row per distinct arrival instant
    /// (times measured from the first arrival). Trace CSV: `t,robot_id,x,y,phase`.
    Simulate(SimulateArgs),
    /// Strategy comparison over u = s/d.
    ///
    /// Output CSV: `u,f_p,f_h_min,f_h_max,f_h_T,f_t_T,f_t_asym`; empty where undefined.
    Compare(CompareArgs),
    /// Closed form against brute-force enumeration.
    #[command(subcommand)]
    OracleCheck(OracleCmd),
    /// Regenerate figure data as CSV bundles.
    Figures(FiguresArgs),
    /// Re-run a manifest and verify every output is byte-identical.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Swarm {
    /// Target radius (m).
    #[arg(long)]
    pub s: f64,
    /// Minimum inter-robot distance (m).
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TimeGrid {
    /// Last time of the curve (s).
    #[arg(long, default_value_t = 100.0)]
    pub t_max: f64,
    /// Time step of the curve (s).
    #[arg(long, default_value_t = 0.1)]
    pub dt: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Output {
    /// Write here instead of stdout (a manifest is written alongside).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum ThroughputCmd {
    /// Two-robot delay versus approach angle. CSV: `theta,delay_ratio,min_delay`.
    Point {
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        /// Angles sampled evenly in [0, π).
        #[arg(long, default_value_t = 180)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Two offset lanes (s < d/2). CSV: `t,f_analytic,f_asymptotic`.
    Compact {
        #[command(flatten)]
        swarm: Swarm,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        #[command(flatten)]
        grid: TimeGrid,
        #[command(flatten)]
        out: Output,
    },
    /// Parallel lanes (s >= d/2). CSV: `t,f_analytic,f_asymptotic`.
    Parallel {
        #[command(flatten)]
        swarm: Swarm,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        #[command(flatten)]
        grid: TimeGrid,
        #[command(flatten)]
        out: Output,
    },
    /// Hexagonal packing. CSV: `t,f_analytic,f_low,f_high`; `--breakdown` emits JSON.
    Hex {
        #[command(flatten)]
        swarm: Swarm,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        /// Packing angle in [0, π/3).
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[command(flatten)]
        grid: TimeGrid,
        /// Emit the per-T counting breakdown as JSON instead of CSV.
        #[arg(long)]
        breakdown: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Touch and run. CSV: `t,f_analytic,f_asymptotic`; `--scan-k`: `k,f_asymptotic,feasible`.
    Touchrun {
        #[command(flatten)]
        swarm: Swarm,
        #[arg(long, default_value_t = 0.1)]
        v: f64,
        /// Lane count (required unless `--scan-k`).
        #[arg(long)]
        k: Option<usize>,
        /// Maximum turning rate (rad/s).
        #[arg(long)]
        omega_max: Option<f64>,
        /// Tabulate every K of the lane domain instead of a time curve.
        #[arg(long)]
        scan_k: bool,
        #[command(flatten)]
        grid: TimeGrid,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum StrategyName {
    Compact,
    Parallel,
    Hex,
    Touchrun,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub strategy: StrategyName,
    #[command(flatten)]
    pub swarm: Swarm,
    /// Speed (default 1, or 0.1 for touch and run).
    #[arg(long)]
    pub v: Option<f64>,
    /// Packing angle for `hex`.
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// Lane count for `touchrun`.
    #[arg(long)]
    pub k: Option<usize>,
    /// Robots to seed.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Sampling step (s).
    #[arg(long, default_value_t = 0.1)]
    pub dt: f64,
    /// Seed exactly `n` robots, even if more arrive in the same final sample.
    #[arg(long)]
    pub exact_n: bool,
    #[command(flatten)]
    pub out: Output,
    /// Also write every robot's position at every sample.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 0.0)]
    pub u_min: f64,
    #[arg(long, default_value_t = 7.0)]
    pub u_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Horizon for the fixed-time columns (s).
    #[arg(long, default_value_t = 10_000.0)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    /// Evenly spaced packing angles tried per u (π/6 is always added).
    #[arg(long, default_value_t = 1000)]
    pub theta_samples: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum OracleCmd {
    /// Random hexagonal configurations: closed form N_R + N_S against enumeration.
    Hex {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Print one row per configuration.
        #[arg(long)]
        table: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum FigureName {
    All,
    Pointdelay,
    Results1qw,
    Tppar,
    Tphex,
    Tpit,
    Ksit,
    FhfpLarge,
    FhfpZoom,
    Numhigherftfh,
    Ftbelowfh,
    GrafKthroughput,
    Limitshexpack,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FiguresArgs {
    #[arg(long, value_enum, default_value_t = FigureName::All)]
    pub fig: FigureName,
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
    /// Robots per simulated run.
    #[arg(long, default_value_t = 200)]
    pub robots: usize,
    /// Packing angles tried per u in the comparison figures.
    #[arg(long, default_value_t = 1000)]
    pub theta_samples: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
}
