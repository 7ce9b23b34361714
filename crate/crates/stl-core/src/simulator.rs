//! Constant-speed kinematic replay of each strategy.
//!
//! Robots are seeded so that the first arrival happens exactly on a sample instant.
//! Straight-lane robots are positioned from the step index (no accumulated drift);
//! touch-and-run robots follow an entry → arc → exit state machine whose phase
//! switches are located exactly inside the step.
//!
//! A robot is marked arrived at the first sample instant `k·dt` such that its motion
//! during `((k−1)·dt, k·dt]` came within `s` of the centre. This reports the
//! continuous arrival time rounded up to the sampling grid, so tangential passes are
//! never missed and the measured counts equal the closed forms at every sample.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::core_model::{ceil13, round13, throughput_from_arrivals, SwarmParams, ThroughputSeries};
use crate::error::{domain, Result, SwarmError};
use crate::hex_oracle::Lattice;
use crate::hex_packing::HexConfig;
use crate::touch_run::{self, LanePath, TouchRunConfig};
use crate::{compact_lanes, parallel_lanes};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Strategy {
    Compact,
    Parallel,
    Hex { theta: f64 },
    TouchRun { k: usize },
}

impl Strategy {
    /// Default speed: 1, or 0.1 for touch and run.
    pub fn default_speed(&self) -> f64 {
        match self {
            Strategy::TouchRun { .. } => 0.1,
            _ => 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Compact => "compact",
            Strategy::Parallel => "parallel",
            Strategy::Hex { .. } => "hex",
            Strategy::TouchRun { .. } => "touchrun",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub strategy: Strategy,
    pub params: SwarmParams,
    pub n_robots: usize,
    pub dt: f64,
    /// Also seed every robot that arrives in the same sample as the last of the
    /// `n_robots` earliest ones, so the final sample matches the closed forms.
    pub complete_final_wave: bool,
    pub record_trace: bool,
}

impl SimConfig {
    /// `dt = 0.1`; final waves completed except for touch-and-run, which seeds exactly `n`.
    pub fn new(strategy: Strategy, params: SwarmParams, n_robots: usize) -> Self {
        SimConfig {
            strategy,
            params,
            n_robots,
            dt: 0.1,
            complete_final_wave: !matches!(strategy, Strategy::TouchRun { .. }),
            record_trace: false,
        }
    }

    /// [`SimConfig::new`] at the strategy's default speed.
    pub fn standard(strategy: Strategy, d: f64, s: f64, n_robots: usize) -> Result<Self> {
        Ok(Self::new(
            strategy,
            SwarmParams::new(strategy.default_speed(), d, s)?,
            n_robots,
        ))
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.dt <= 0.0 || !self.dt.is_finite() {
            return domain("dt must be > 0");
        }
        if self.n_robots < 2 {
            return domain("n_robots must be >= 2");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Straight,
    Entry,
    Arc,
    Exit,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Straight => "straight",
            Phase::Entry => "entry",
            Phase::Arc => "arc",
            Phase::Exit => "exit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
enum Motion {
    /// Straight line from `start` along `heading`.
    Linear { start: (f64, f64) },
    /// Touch-and-run lane; `turned` is the arc angle covered so far.
    Lane { turned: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotState {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub lane: usize,
    pub phase: Phase,
    pub arrived_at: Option<f64>,
    motion: Motion,
}

impl RobotState {
    fn dist(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: f64,
    pub robot_id: usize,
    pub x: f64,
    pub y: f64,
    pub phase: Phase,
}

struct Seed {
    pos: (f64, f64),
    heading: f64,
    lane: usize,
    phase: Phase,
    /// Continuous arrival time.
    t: f64,
}

fn touch_config(k: usize, p: &SwarmParams) -> Result<TouchRunConfig> {
    let cfg = touch_run::build_config(k, p)?;
    if cfg.r <= 0.0 {
        return domain(format!(
            "K = {k} has a zero turning radius and cannot be driven"
        ));
    }
    Ok(cfg)
}

/// Distance travelled before a touch-and-run robot of wave 0 reaches its tangent point:
/// at least `d` of straight entry, padded so the arrival lands on a sample instant.
fn touch_lead(cfg: &TouchRunConfig, p: &SwarmParams, dt: f64) -> f64 {
    let half = cfg.arc_length() / 2.0;
    let ell = p.v * dt;
    ell * ceil13((half + p.d) / ell)
}

/// Every seed whose continuous arrival time is at most `horizon`.
fn candidates(cfg: &SimConfig, horizon: f64) -> Result<Vec<Seed>> {
    let p = &cfg.params;
    let reach = p.v * horizon;
    let mut out = Vec::new();
    match cfg.strategy {
        Strategy::Compact => {
            let l = compact_lanes::layout(p)?;
            let mut k = 0.0;
            while k * l.d_e <= reach {
                out.push(Seed {
                    pos: (k * l.d_e, p.s),
                    heading: PI,
                    lane: 0,
                    phase: Phase::Straight,
                    t: k * l.d_e / p.v,
                });
                k += 1.0;
            }
            let mut k = 0.0;
            while l.d_p + k * l.d_e <= reach {
                let x = l.d_p + k * l.d_e;
                out.push(Seed {
                    pos: (x, -p.s),
                    heading: PI,
                    lane: 1,
                    phase: Phase::Straight,
                    t: x / p.v,
                });
                k += 1.0;
            }
        }
        Strategy::Parallel => {
            let l = parallel_lanes::layout(p)?;
            for i in 1..=l.lanes {
                let lead = l.d_extra[i - 1] - l.d_j();
                let mut k = 0.0;
                while k * p.d + lead <= reach {
                    out.push(Seed {
                        pos: (p.s + k * p.d - l.d_j(), l.lane_y(i, p)),
                        heading: PI,
                        lane: i - 1,
                        phase: Phase::Straight,
                        t: (k * p.d + lead) / p.v,
                    });
                    k += 1.0;
                }
            }
        }
        Strategy::Hex { theta } => {
            let hc = HexConfig::new(theta)?;
            if round13(2.0 * p.s / p.d - 1.0) < 0.0 {
                return domain("hexagonal packing needs d <= 2s");
            }
            let lattice = Lattice::new(hc.theta, p.d, (p.s, 0.0));
            for q in lattice.in_box(p.s - p.d, p.s + reach + p.d, -p.s - p.d, p.s + p.d) {
                if round13((q.x - p.s) / p.d) < 0.0 || round13((q.y.abs() - p.s) / p.d) > 0.0 {
                    continue;
                }
                let t = (q.x - (p.s * p.s - q.y * q.y).max(0.0).sqrt()) / p.v;
                if t <= horizon {
                    out.push(Seed {
                        pos: (q.x, q.y),
                        heading: PI,
                        lane: 0,
                        phase: Phase::Straight,
                        t: t.max(0.0),
                    });
                }
            }
        }
        Strategy::TouchRun { k } => {
            let tc = touch_config(k, p)?;
            let lead = touch_lead(&tc, p, cfg.dt);
            for lane in 0..k {
                let path = LanePath::new(&tc, p, lane);
                let mut m = 0.0;
                while lead + m * tc.d_o <= reach {
                    let sigma = -lead - m * tc.d_o;
                    out.push(Seed {
                        pos: path.point_at(sigma),
                        heading: path.heading_at(sigma),
                        lane,
                        phase: Phase::Entry,
                        t: (lead + m * tc.d_o) / p.v,
                    });
                    m += 1.0;
                }
            }
        }
    }
    Ok(out)
}

fn d_max(cfg: &SimConfig) -> Result<f64> {
    let p = &cfg.params;
    Ok(match cfg.strategy {
        Strategy::Compact => compact_lanes::layout(p)?.d_e,
        Strategy::Parallel | Strategy::Hex { .. } => p.d,
        Strategy::TouchRun { k } => touch_config(k, p)?.d_o,
    })
}

/// Seeds the `n_robots` earliest arrivals (plus the rest of their final sample when
/// [`SimConfig::complete_final_wave`] is set), ordered by arrival.
pub fn place_initial(cfg: &SimConfig) -> Result<Vec<RobotState>> {
    cfg.validate()?;
    let p = &cfg.params;
    let mut horizon = (cfg.n_robots as f64 + 2.0) * d_max(cfg)? / p.v + 1.0;
    let slot = |t: f64| ceil13(t / cfg.dt) as i64;
    let seeds = loop {
        let mut seeds = candidates(cfg, horizon)?;
        seeds.sort_by(|a, b| slot(a.t).cmp(&slot(b.t)).then(a.t.total_cmp(&b.t)));
        let complete = slot(horizon) - 1;
        let ready = seeds.iter().filter(|s| slot(s.t) <= complete).count();
        if ready >= cfg.n_robots && slot(seeds[cfg.n_robots - 1].t) < complete {
            let mut n = cfg.n_robots;
            if cfg.complete_final_wave {
                let last = slot(seeds[n - 1].t);
                while n < seeds.len() && slot(seeds[n].t) == last {
                    n += 1;
                }
            }
            seeds.truncate(n);
            break seeds;
        }
        horizon *= 2.0;
        if !horizon.is_finite() {
            return Err(SwarmError::Simulation(
                "could not seed the requested robots".into(),
            ));
        }
    };
    Ok(seeds
        .into_iter()
        .enumerate()
        .map(|(id, s)| RobotState {
            id,
            x: s.pos.0,
            y: s.pos.1,
            heading: s.heading,
            lane: s.lane,
            phase: s.phase,
            arrived_at: None,
            motion: match s.phase {
                Phase::Straight => Motion::Linear { start: s.pos },
                _ => Motion::Lane { turned: 0.0 },
            },
        })
        .collect())
}

fn segment_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return a.0.hypot(a.1);
    }
    let t = (-(a.0 * dx + a.1 * dy) / len2).clamp(0.0, 1.0);
    (a.0 + t * dx).hypot(a.1 + t * dy)
}

/// World state for one run; stepped single-threaded.
#[derive(Debug, Clone)]
pub struct SimWorld {
    pub cfg: SimConfig,
    pub robots: Vec<RobotState>,
    pub step_index: u64,
    /// Smallest pairwise distance seen at any sample instant.
    pub min_distance: f64,
    pub trace: Vec<TraceRow>,
    touch: Option<TouchRunConfig>,
}

impl SimWorld {
    pub fn new(cfg: &SimConfig) -> Result<Self> {
        let robots = place_initial(cfg)?;
        let touch = match cfg.strategy {
            Strategy::TouchRun { k } => Some(touch_config(k, &cfg.params)?),
            _ => None,
        };
        let mut w = SimWorld {
            cfg: cfg.clone(),
            robots,
            step_index: 0,
            min_distance: f64::INFINITY,
            trace: Vec::new(),
            touch,
        };
        let s = w.cfg.params.s;
        let d = w.cfg.params.d;
        for r in &mut w.robots {
            if round13((r.dist() - s) / d) <= 0.0 {
                r.arrived_at = Some(0.0);
            }
        }
        w.observe();
        Ok(w)
    }

    pub fn time(&self) -> f64 {
        self.step_index as f64 * self.cfg.dt
    }

    pub fn all_arrived(&self) -> bool {
        self.robots.iter().all(|r| r.arrived_at.is_some())
    }

    fn observe(&mut self) {
        let n = self.robots.len();
        for a in 0..n {
            for b in a + 1..n {
                let (p, q) = (&self.robots[a], &self.robots[b]);
                self.min_distance = self.min_distance.min((p.x - q.x).hypot(p.y - q.y));
            }
        }
        if self.cfg.record_trace {
            let t = round13(self.time());
            self.trace.extend(self.robots.iter().map(|r| TraceRow {
                t,
                robot_id: r.id,
                x: r.x,
                y: r.y,
                phase: r.phase,
            }));
        }
    }

    /// Advances every robot by `v·dt` and records arrivals and the distance audit.
    pub fn step(&mut self) {
        self.step_index += 1;
        let t = self.time();
        let p = self.cfg.params;
        let ell = p.v * self.cfg.dt;
        let touch = self.touch;
        for r in &mut self.robots {
            let before = (r.x, r.y);
            let closest = match r.motion {
                Motion::Linear { start } => {
                    let travel = p.v * t;
                    r.x = start.0 + travel * r.heading.cos();
                    r.y = start.1 + travel * r.heading.sin();
                    segment_distance(before, (r.x, r.y))
                }
                Motion::Lane { .. } => {
                    let cfg = touch.as_ref().expect("touch-and-run lanes");
                    advance_lane(r, cfg, &p, ell)
                }
            };
            if r.arrived_at.is_none() && round13((closest - p.s) / p.d) <= 0.0 {
                r.arrived_at = Some(t);
            }
        }
        self.observe();
    }
}

/// Moves a lane robot `ell` along its path; returns the closest approach to the centre.
fn advance_lane(r: &mut RobotState, cfg: &TouchRunConfig, p: &SwarmParams, ell: f64) -> f64 {
    let path = LanePath::new(cfg, p, r.lane);
    let beta = cfg.beta();
    let mut left = ell;
    let mut closest = r.dist();
    while left > 0.0 {
        match r.phase {
            Phase::Entry => {
                let (ux, uy) = (r.heading.cos(), r.heading.sin());
                let pu = r.x * ux + r.y * uy;
                let disc = pu * pu - (r.x * r.x + r.y * r.y) + cfg.d_r * cfg.d_r;
                let tau = if disc >= 0.0 {
                    (-pu - disc.sqrt()).max(0.0)
                } else {
                    f64::INFINITY
                };
                let from = (r.x, r.y);
                if round13((tau - left) / p.d) <= 0.0 {
                    let q = path.turn_in();
                    r.x = q.0;
                    r.y = q.1;
                    r.phase = Phase::Arc;
                    r.heading = path.heading_at(-path.half_arc());
                    left -= tau.min(left);
                } else {
                    r.x += left * ux;
                    r.y += left * uy;
                    left = 0.0;
                }
                closest = closest.min(segment_distance(from, (r.x, r.y)));
            }
            Phase::Arc => {
                let Motion::Lane { turned } = &mut r.motion else {
                    unreachable!()
                };
                let remaining = cfg.r * (beta - *turned);
                let run = left.min(remaining);
                let a = *turned;
                *turned += run / cfg.r;
                let b = *turned;
                let sigma = cfg.r * (b - beta / 2.0);
                if a <= beta / 2.0 && beta / 2.0 <= b {
                    closest = closest.min(path.centre().0.hypot(path.centre().1) - cfg.r);
                }
                left -= run;
                if run >= remaining {
                    let q = path.turn_out();
                    r.x = q.0;
                    r.y = q.1;
                    r.phase = Phase::Exit;
                    r.heading = path.heading_at(path.half_arc() + 1.0);
                } else {
                    let q = path.point_at(sigma);
                    r.x = q.0;
                    r.y = q.1;
                    r.heading = path.heading_at(sigma);
                }
                closest = closest.min(r.dist());
            }
            Phase::Exit | Phase::Straight => {
                // Unit-gain correction of the heading error against the exit lane.
                let target = path.heading_at(path.half_arc() + 1.0);
                let err = (r.heading - target + PI).rem_euclid(2.0 * PI) - PI;
                r.heading -= err;
                let from = (r.x, r.y);
                r.x += left * r.heading.cos();
                r.y += left * r.heading.sin();
                left = 0.0;
                closest = closest.min(segment_distance(from, (r.x, r.y)));
            }
        }
    }
    closest
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimOutcome {
    /// Sorted arrival times, first arrival at 0, multiples of `dt`.
    pub arrivals: Vec<f64>,
    pub series: ThroughputSeries,
    pub min_distance: f64,
    pub steps: u64,
    pub robots: usize,
    pub trace: Vec<TraceRow>,
}

impl SimOutcome {
    /// `(N(T) − 1)/T` from the measured arrivals.
    pub fn measured_f_at(&self, t: f64) -> f64 {
        let n = self
            .arrivals
            .iter()
            .filter(|&&a| round13(a - t) <= 0.0)
            .count();
        (n as f64 - 1.0) / t
    }

    pub fn final_f(&self) -> Option<f64> {
        self.series.final_f()
    }

    /// CSV `robot,t` in arrival order.
    pub fn arrivals_csv(&self) -> String {
        let mut out = String::from("robot,t\n");
        for (i, t) in self.arrivals.iter().enumerate() {
            out.push_str(&format!("{i},{t}\n"));
        }
        out
    }

    /// CSV `t,robot_id,x,y,phase`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("t,robot_id,x,y,phase\n");
        for r in &self.trace {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.t,
                r.robot_id,
                r.x,
                r.y,
                r.phase.as_str()
            ));
        }
        out
    }
}

/// Steps until every seeded robot has arrived.
pub fn run(cfg: &SimConfig) -> Result<SimOutcome> {
    let mut w = SimWorld::new(cfg)?;
    let p = cfg.params;
    let first = w.robots.iter().map(|r| r.x.hypot(r.y)).fold(0.0, f64::max);
    let limit = 10.0 * (cfg.n_robots as f64 * d_max(cfg)? + first) / p.v;
    while !w.all_arrived() {
        if w.time() > limit {
            let waiting = w.robots.iter().filter(|r| r.arrived_at.is_none()).count();
            return Err(SwarmError::Simulation(format!(
                "{waiting} robots still travelling at t = {:.3} s (limit {limit:.3} s)",
                w.time()
            )));
        }
        w.step();
    }
    let mut steps: Vec<f64> = w.robots.iter().filter_map(|r| r.arrived_at).collect();
    steps.sort_by(f64::total_cmp);
    let t0 = steps[0];
    let arrivals: Vec<f64> = steps.iter().map(|t| round13(t - t0)).collect();
    Ok(SimOutcome {
        series: throughput_from_arrivals(&arrivals)?,
        arrivals,
        min_distance: w.min_distance,
        steps: w.step_index,
        robots: w.robots.len(),
        trace: std::mem::take(&mut w.trace),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn compact_seed_layout() {
        let cfg = SimConfig::standard(Strategy::Compact, 1.0, 0.45, 6).unwrap();
        let r = place_initial(&cfg).unwrap();
        assert_eq!((r[0].x, r[0].y), (0.0, 0.45));
        assert_eq!((r[1].x, r[1].y), (0.5, -0.45));
        assert_eq!((r[2].x, r[2].y), (1.0, 0.45));
    }

    #[test]
    fn parallel_first_robots() {
        let cfg = SimConfig::standard(Strategy::Parallel, 1.0, 3.0, 40).unwrap();
        let r = place_initial(&cfg).unwrap();
        assert_eq!((r[0].x, r[0].y), (3.0, 0.0));
        for lane in 0..7 {
            let first = r
                .iter()
                .filter(|q| q.lane == lane)
                .map(|q| q.x)
                .fold(f64::INFINITY, f64::min);
            let y = r.iter().find(|q| q.lane == lane).unwrap().y;
            assert_eq!((first, y), (3.0, 3.0 - lane as f64));
        }
    }

    #[test]
    fn straight_step_is_exact() {
        let cfg = SimConfig::standard(Strategy::Parallel, 1.0, 3.0, 10).unwrap();
        let mut w = SimWorld::new(&cfg).unwrap();
        let before: Vec<(f64, f64)> = w.robots.iter().map(|r| (r.x, r.y)).collect();
        w.step();
        for (r, b) in w.robots.iter().zip(before) {
            assert_abs_diff_eq!(r.x, b.0 - 0.1, epsilon = 1e-12);
            assert_abs_diff_eq!(r.y, b.1, epsilon = 1e-12);
        }
    }

    #[test]
    fn arc_chord() {
        let cfg = SimConfig::standard(Strategy::TouchRun { k: 6 }, 1.0, 3.0, 6).unwrap();
        let tc = touch_run::build_config(6, &cfg.params).unwrap();
        let mut w = SimWorld::new(&cfg).unwrap();
        while w.robots[0].phase != Phase::Arc {
            w.step();
        }
        w.step();
        let a = (w.robots[0].x, w.robots[0].y);
        w.step();
        let b = (w.robots[0].x, w.robots[0].y);
        let omega = cfg.params.v / tc.r;
        let chord = 2.0 * tc.r * (omega * cfg.dt / 2.0).sin();
        assert_abs_diff_eq!((a.0 - b.0).hypot(a.1 - b.1), chord, epsilon = 1e-9);
    }

    #[test]
    fn rejects_bad_configs() {
        let p = SwarmParams::new(1.0, 1.0, 3.0).unwrap();
        assert!(run(&SimConfig::new(Strategy::TouchRun { k: 40 }, p, 10)).is_err());
        assert!(run(&SimConfig::new(Strategy::Compact, p, 10)).is_err());
        assert!(run(&SimConfig::new(Strategy::Parallel, p, 1)).is_err());
        let mut c = SimConfig::new(Strategy::Parallel, p, 5);
        c.dt = 0.0;
        assert!(run(&c).is_err());
        let q = SwarmParams::new(1.0, 1.0, 1.0 / 3f64.sqrt()).unwrap();
        assert!(run(&SimConfig::new(Strategy::TouchRun { k: 3 }, q, 6)).is_err());
    }

    #[test]
    fn deterministic() {
        let cfg = SimConfig::standard(Strategy::Hex { theta: 0.4 }, 1.0, 2.0, 40).unwrap();
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.arrivals, b.arrivals);
        assert_eq!(a.min_distance, b.min_distance);
    }
}
