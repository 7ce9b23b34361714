use std::f64::consts::{FRAC_PI_3, PI};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stl_core::comparison::{self, SweepConfig};
use stl_core::core_model::{floor13, round13};
use stl_core::hex_packing::{self, HexConfig};
use stl_core::point_target::{self, ApproachAngle};
use stl_core::simulator::{self, SimConfig, SimOutcome, Strategy};
use stl_core::{compact_lanes, hex_oracle, parallel_lanes, touch_run, SwarmParams};

use crate::args::{
    Cli, Command, CompareArgs, OracleCmd, SimulateArgs, StrategyName, ThroughputCmd, TimeGrid,
};
use crate::error::{CliError, CliResult};
use crate::figures;
use crate::manifest::Artifact;

/// Everything a command produced; nothing has been written yet.
#[derive(Debug, Default)]
pub struct Run {
    pub artifacts: Vec<Artifact>,
    /// Human-readable remarks for stderr.
    pub notes: Vec<String>,
    /// Set when the command completed but its check did not pass.
    pub failure: Option<String>,
}

impl Run {
    fn single(path: Option<PathBuf>, bytes: Vec<u8>) -> Self {
        Run { artifacts: vec![Artifact::new(path, bytes)], ..Default::default() }
    }
}

/// Builds a CSV document with LF line endings.
pub fn csv_bytes<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r.into_iter().collect::<Vec<_>>()).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn time_grid(g: &TimeGrid) -> CliResult<Vec<f64>> {
    if g.dt.is_nan() || g.dt <= 0.0 || !g.dt.is_finite() {
        return Err(CliError::Usage("--dt must be > 0".into()));
    }
    if g.t_max.is_nan() || g.t_max < g.dt || !g.t_max.is_finite() {
        return Err(CliError::Usage("--t-max must be >= --dt".into()));
    }
    let n = floor13(g.t_max / g.dt) as usize;
    Ok((1..=n).map(|i| round13(i as f64 * g.dt)).collect())
}

fn angle(cli: &Cli, x: f64) -> f64 {
    if cli.deg {
        x.to_radians()
    } else {
        x
    }
}

pub fn execute(cli: &Cli) -> CliResult<Run> {
    match &cli.command {
        Command::Throughput(t) => throughput(cli, t),
        Command::Simulate(a) => simulate(cli, a),
        Command::Compare(a) => compare(a),
        Command::OracleCheck(OracleCmd::Hex { samples, seed, table, out }) => {
            oracle_hex(*samples, *seed, *table, out.out.clone())
        }
        Command::Figures(a) => figures::generate(a),
        Command::Replay(_) => Err(CliError::Usage("replay cannot be nested".into())),
    }
}

fn throughput(cli: &Cli, cmd: &ThroughputCmd) -> CliResult<Run> {
    match cmd {
        ThroughputCmd::Point { d, v, samples, out } => {
            if *samples == 0 {
                return Err(CliError::Usage("--samples must be >= 1".into()));
            }
            if !(d.is_finite() && *d > 0.0 && v.is_finite() && *v > 0.0) {
                return Err(stl_core::SwarmError::Domain("need d > 0 and v > 0".into()).into());
            }
            let mut rows = Vec::new();
            for i in 0..*samples {
                let th = i as f64 * PI / *samples as f64;
                let r = point_target::normalized_delay(ApproachAngle::new(th)?);
                rows.push(vec![th.to_string(), r.to_string(), (r * d / v).to_string()]);
            }
            Ok(Run::single(out.out.clone(), csv_bytes(&["theta", "delay_ratio", "min_delay"], rows)))
        }
        ThroughputCmd::Compact { swarm, v, grid, out } => {
            let p = SwarmParams::new(*v, swarm.d, swarm.s)?;
            let lim = compact_lanes::asymptotic(&p)?;
            let mut rows = Vec::new();
            for t in time_grid(grid)? {
                rows.push(vec![t.to_string(), compact_lanes::throughput_at(t, &p)?.to_string(), lim.to_string()]);
            }
            Ok(Run::single(out.out.clone(), csv_bytes(&["t", "f_analytic", "f_asymptotic"], rows)))
        }
        ThroughputCmd::Parallel { swarm, v, grid, out } => {
            let p = SwarmParams::new(*v, swarm.d, swarm.s)?;
            let lim = parallel_lanes::asymptotic(&p)?;
            let mut rows = Vec::new();
            for t in time_grid(grid)? {
                rows.push(vec![t.to_string(), parallel_lanes::throughput_at(t, &p)?.to_string(), lim.to_string()]);
            }
            Ok(Run::single(out.out.clone(), csv_bytes(&["t", "f_analytic", "f_asymptotic"], rows)))
        }
        ThroughputCmd::Hex { swarm, v, theta, grid, breakdown, out } => {
            let p = SwarmParams::new(*v, swarm.d, swarm.s)?;
            let cfg = HexConfig::new(angle(cli, *theta))?;
            let ts = time_grid(grid)?;
            if *breakdown {
                let all = ts
                    .iter()
                    .map(|&t| hex_packing::breakdown(t, &cfg, &p))
                    .collect::<stl_core::Result<Vec<_>>>()?;
                let mut json = serde_json::to_string_pretty(&all).expect("breakdown serializes");
                json.push('\n');
                return Ok(Run::single(out.out.clone(), json.into_bytes()));
            }
            let (lo, hi) = hex_packing::asymptotic_bounds(&cfg, &p)?;
            let mut rows = Vec::new();
            for t in ts {
                rows.push(vec![
                    t.to_string(),
                    hex_packing::throughput_at(t, &cfg, &p)?.to_string(),
                    lo.to_string(),
                    hi.to_string(),
                ]);
            }
            Ok(Run::single(out.out.clone(), csv_bytes(&["t", "f_analytic", "f_low", "f_high"], rows)))
        }
        ThroughputCmd::Touchrun { swarm, v, k, omega_max, scan_k, grid, out } => {
            let p = SwarmParams::new(*v, swarm.d, swarm.s)?;
            let omega = omega_max.map(|w| angle(cli, w));
            let feasible = touch_run::feasible_lanes(&p, omega)?;
            if *scan_k {
                let (lo, hi) = touch_run::lane_domain(&p)?;
                let mut rows = Vec::new();
                for kk in lo..=hi {
                    rows.push(vec![
                        kk.to_string(),
                        touch_run::asymptotic(kk, &p)?.to_string(),
                        feasible.contains(&kk).to_string(),
                    ]);
                }
                return Ok(Run::single(out.out.clone(), csv_bytes(&["k", "f_asymptotic", "feasible"], rows)));
            }
            let k = k.ok_or_else(|| CliError::Usage("--k is required unless --scan-k is given".into()))?;
            if !feasible.contains(&k) {
                let cfg = touch_run::build_config(k, &p)?;
                return Err(stl_core::SwarmError::Domain(format!(
                    "K = {k} needs turning rate {} rad/s, above --omega-max",
                    cfg.omega
                ))
                .into());
            }
            let lim = touch_run::asymptotic(k, &p)?;
            let mut rows = Vec::new();
            for t in time_grid(grid)? {
                rows.push(vec![t.to_string(), touch_run::throughput_at(k, t, &p)?.to_string(), lim.to_string()]);
            }
            Ok(Run::single(out.out.clone(), csv_bytes(&["t", "f_analytic", "f_asymptotic"], rows)))
        }
    }
}

/// Closed-form throughput at `t` for the simulated strategy.
pub fn analytic_f(strategy: Strategy, t: f64, p: &SwarmParams) -> stl_core::Result<f64> {
    match strategy {
        Strategy::Compact => compact_lanes::throughput_at(t, p),
        Strategy::Parallel => parallel_lanes::throughput_at(t, p),
        Strategy::Hex { theta } => hex_packing::throughput_at(t, &HexConfig::new(theta)?, p),
        Strategy::TouchRun { k } => touch_run::throughput_at(k, t, p),
    }
}

/// CSV `t,n,f_measured,f_analytic` for a finished run.
pub fn series_csv(out: &SimOutcome, cfg: &SimConfig) -> CliResult<Vec<u8>> {
    let mut rows = Vec::new();
    for s in &out.series.samples {
        let analytic = if s.t > 0.0 { Some(analytic_f(cfg.strategy, s.t, &cfg.params)?) } else { None };
        rows.push(vec![s.t.to_string(), s.n.to_string(), cell(s.f), cell(analytic)]);
    }
    Ok(csv_bytes(&["t", "n", "f_measured", "f_analytic"], rows))
}

pub fn sim_config(cli: &Cli, a: &SimulateArgs) -> CliResult<SimConfig> {
    let strategy = match a.strategy {
        StrategyName::Compact => Strategy::Compact,
        StrategyName::Parallel => Strategy::Parallel,
        StrategyName::Hex => Strategy::Hex { theta: angle(cli, a.theta) },
        StrategyName::Touchrun => Strategy::TouchRun {
            k: a.k.ok_or_else(|| CliError::Usage("--k is required for --strategy touchrun".into()))?,
        },
    };
    let v = a.v.unwrap_or(strategy.default_speed());
    let mut cfg = SimConfig::new(strategy, SwarmParams::new(v, a.swarm.d, a.swarm.s)?, a.n);
    cfg.dt = a.dt;
    if a.exact_n {
        cfg.complete_final_wave = false;
    }
    cfg.record_trace = a.trace.is_some();
    Ok(cfg)
}

fn simulate(cli: &Cli, a: &SimulateArgs) -> CliResult<Run> {
    let cfg = sim_config(cli, a)?;
    let out = simulator::run(&cfg)?;
    let mut run = Run::single(a.out.out.clone(), series_csv(&out, &cfg)?);
    if let Some(path) = &a.trace {
        run.artifacts.push(Artifact::new(Some(path.clone()), out.trace_csv().into_bytes()));
    }
    run.notes.push(format!(
        "{} robots, final f = {}, min distance = {}, {} steps",
        out.robots,
        cell(out.final_f()),
        out.min_distance,
        out.steps
    ));
    Ok(run)
}

fn compare(a: &CompareArgs) -> CliResult<Run> {
    let cfg = SweepConfig {
        u_min: a.u_min,
        u_max: a.u_max,
        points: a.points,
        t: a.t,
        v: a.v,
        d: a.d,
        theta_samples: a.theta_samples,
    };
    let pts = comparison::sweep(&cfg)?;
    Ok(Run::single(a.out.out.clone(), comparison::curve_to_csv(&pts).into_bytes()))
}

/// One random hexagonal configuration of the oracle check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCase {
    pub u: f64,
    pub theta: f64,
    pub t: f64,
    pub d: f64,
    pub v: f64,
    pub closed: u64,
    pub oracle: u64,
}

/// `u ∈ [0.5, 10]`, `θ ∈ [0, π/3)`, `T ∈ (0, 50·d/v]`, with `d` and `v` varied too.
pub fn oracle_cases(samples: usize, seed: u64) -> stl_core::Result<Vec<OracleCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let u: f64 = rng.gen_range(0.5..=10.0);
        let theta: f64 = rng.gen_range(0.0..FRAC_PI_3);
        let d: f64 = rng.gen_range(0.5..2.0);
        let v: f64 = rng.gen_range(0.5..2.0);
        let t = (50.0 - rng.gen_range(0.0..50.0)) * d / v;
        let p = SwarmParams::new(v, d, u * d)?;
        let cfg = HexConfig::new(theta)?;
        out.push(OracleCase {
            u,
            theta,
            t,
            d,
            v,
            closed: hex_packing::total_count(t, &cfg, &p)?,
            oracle: hex_oracle::count(t, &cfg, &p)?,
        });
    }
    Ok(out)
}

fn oracle_hex(samples: usize, seed: u64, table: bool, out: Option<PathBuf>) -> CliResult<Run> {
    let cases = oracle_cases(samples, seed)?;
    let ok = cases.iter().filter(|c| c.closed == c.oracle).count();
    let mut text = String::new();
    if table {
        text.push_str("i,u,theta,t,d,v,closed,oracle,status\n");
        for (i, c) in cases.iter().enumerate() {
            let status = if c.closed == c.oracle { "OK" } else { "FAIL" };
            text.push_str(&format!(
                "{i},{},{},{},{},{},{},{},{status}\n",
                c.u, c.theta, c.t, c.d, c.v, c.closed, c.oracle
            ));
        }
    }
    text.push_str(&format!("{ok}/{} OK\n", cases.len()));
    let mut run = Run::single(out, text.into_bytes());
    if let Some(c) = cases.iter().find(|c| c.closed != c.oracle) {
        run.failure = Some(format!(
            "counterexample: u = {}, theta = {}, T = {}, d = {}, v = {}: closed form {} vs enumeration {}",
            c.u, c.theta, c.t, c.d, c.v, c.closed, c.oracle
        ));
    }
    Ok(run)
}
