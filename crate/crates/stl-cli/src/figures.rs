//! Data behind each figure, one CSV per curve family, written under `--out-dir`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use rayon::prelude::*;
use stl_core::comparison::{self, Horizon, SweepConfig};
use stl_core::hex_packing::{self, HexConfig, SQRT3};
use stl_core::point_target::{self, ApproachAngle};
use stl_core::simulator::{self, SimConfig, Strategy};
use stl_core::{compact_lanes, parallel_lanes, touch_run, SwarmParams};

use crate::args::{FigureName, FiguresArgs};
use crate::commands::{analytic_f, cell, csv_bytes, Run};
use crate::error::{CliError, CliResult};
use crate::manifest::Artifact;

const ALL: [FigureName; 12] = [
    FigureName::Pointdelay,
    FigureName::Results1qw,
    FigureName::Tppar,
    FigureName::Tphex,
    FigureName::Tpit,
    FigureName::Ksit,
    FigureName::FhfpLarge,
    FigureName::FhfpZoom,
    FigureName::Numhigherftfh,
    FigureName::Ftbelowfh,
    FigureName::GrafKthroughput,
    FigureName::Limitshexpack,
];

pub fn slug(fig: FigureName) -> &'static str {
    match fig {
        FigureName::All => "all",
        FigureName::Pointdelay => "pointdelay",
        FigureName::Results1qw => "results1qw",
        FigureName::Tppar => "tppar",
        FigureName::Tphex => "tphex",
        FigureName::Tpit => "tpit",
        FigureName::Ksit => "ksit",
        FigureName::FhfpLarge => "fhfpLarge",
        FigureName::FhfpZoom => "fhfpZoom",
        FigureName::Numhigherftfh => "numhigherftfh",
        FigureName::Ftbelowfh => "ftbelowfh",
        FigureName::GrafKthroughput => "grafKthroughput",
        FigureName::Limitshexpack => "limitshexpack",
    }
}

struct Ctx<'a> {
    args: &'a FiguresArgs,
    out: Vec<Artifact>,
}

impl Ctx<'_> {
    fn emit(&mut self, fig: FigureName, part: &str, bytes: Vec<u8>) {
        let name = if part.is_empty() {
            format!("{}.csv", slug(fig))
        } else {
            format!("{}_{part}.csv", slug(fig))
        };
        self.out.push(Artifact::new(Some(self.args.out_dir.join(name)), bytes));
    }
}

pub fn generate(a: &FiguresArgs) -> CliResult<Run> {
    if a.robots < 2 {
        return Err(CliError::Usage("--robots must be >= 2".into()));
    }
    if a.theta_samples < 2 {
        return Err(CliError::Usage("--theta-samples must be >= 2".into()));
    }
    let mut ctx = Ctx { args: a, out: Vec::new() };
    let figs: Vec<FigureName> = if a.fig == FigureName::All { ALL.to_vec() } else { vec![a.fig] };
    for fig in figs {
        figure(&mut ctx, fig)?;
    }
    Ok(Run { artifacts: ctx.out, ..Default::default() })
}

fn figure(ctx: &mut Ctx, fig: FigureName) -> CliResult<()> {
    match fig {
        FigureName::All => unreachable!("expanded by generate"),
        FigureName::Pointdelay => {
            let rows = (0..180).map(|i| {
                let th = i as f64 * PI / 180.0;
                let r = ApproachAngle::new(th).map(point_target::normalized_delay).unwrap_or(f64::NAN);
                vec![th.to_string(), r.to_string()]
            });
            ctx.emit(fig, "", csv_bytes(&["theta", "delay_ratio"], rows));
        }
        FigureName::Results1qw => {
            for s in [0.3, 0.45] {
                let p = SwarmParams::new(1.0, 1.0, s)?;
                let lim = compact_lanes::asymptotic(&p)?;
                let bytes = simulated(Strategy::Compact, p, ctx.args.robots, &[lim])?;
                ctx.emit(fig, &format!("s{s}"), bytes);
            }
        }
        FigureName::Tppar => {
            for s in [3.0, 6.0] {
                let p = SwarmParams::new(1.0, 1.0, s)?;
                let lim = parallel_lanes::asymptotic(&p)?;
                let bytes = simulated(Strategy::Parallel, p, ctx.args.robots, &[lim])?;
                ctx.emit(fig, &format!("s{s}"), bytes);
            }
        }
        FigureName::Tphex => {
            for s in [3.0, 6.0] {
                for (tag, theta) in [("0", 0.0), ("pi6", FRAC_PI_6)] {
                    let p = SwarmParams::new(1.0, 1.0, s)?;
                    let (lo, hi) = hex_packing::asymptotic_bounds(&HexConfig::new(theta)?, &p)?;
                    let bytes = simulated(Strategy::Hex { theta }, p, ctx.args.robots, &[lo, hi])?;
                    ctx.emit(fig, &format!("s{s}_theta{tag}"), bytes);
                }
            }
        }
        FigureName::Tpit => {
            for (s, k) in [(3.0, 10), (6.0, 19)] {
                let p = SwarmParams::new(0.1, 1.0, s)?;
                let lim = touch_run::asymptotic(k, &p)?;
                let bytes = simulated(Strategy::TouchRun { k }, p, ctx.args.robots, &[lim])?;
                ctx.emit(fig, &format!("s{s}_k{k}"), bytes);
            }
        }
        FigureName::Ksit => {
            for s in [3.0, 6.0] {
                let p = SwarmParams::new(0.1, 1.0, s)?;
                let ks = touch_run::feasible_lanes(&p, Some(FRAC_PI_2))?;
                let n = ctx.args.robots;
                let rows = ks
                    .par_iter()
                    .map(|&k| -> CliResult<Vec<String>> {
                        let out = simulator::run(&SimConfig::new(Strategy::TouchRun { k }, p, n))?;
                        let t_last = out.arrivals.last().copied().unwrap_or(0.0);
                        let at = if t_last > 0.0 { Some(touch_run::throughput_at(k, t_last, &p)?) } else { None };
                        Ok(vec![
                            k.to_string(),
                            cell(out.final_f()),
                            cell(at),
                            touch_run::asymptotic(k, &p)?.to_string(),
                            out.min_distance.to_string(),
                        ])
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                ctx.emit(
                    fig,
                    &format!("s{s}"),
                    csv_bytes(&["k", "f_measured", "f_analytic", "f_asymptotic", "min_distance"], rows),
                );
            }
        }
        FigureName::FhfpLarge => {
            let pts = comparison::sweep(&sweep_cfg(0.0, 7.0, 141, ctx.args.theta_samples))?;
            ctx.emit(fig, "", comparison::curve_to_csv(&pts).into_bytes());
        }
        FigureName::FhfpZoom => {
            let pts = comparison::sweep(&sweep_cfg(0.5, 0.9, 81, ctx.args.theta_samples))?;
            ctx.emit(fig, "", comparison::curve_to_csv(&pts).into_bytes());
        }
        FigureName::Numhigherftfh => {
            let lo = 1.0 / SQRT3;
            for (tag, hi) in [("small", 3.0), ("large", 1000.0)] {
                let rows = (0..200)
                    .into_par_iter()
                    .map(|i| -> CliResult<Vec<String>> {
                        let u = lo + (hi - lo) * i as f64 / 199.0;
                        let (k, ft) = comparison::f_t_of_u(u, Horizon::Limit, 1.0, 1.0)?;
                        Ok(vec![
                            u.to_string(),
                            cell(comparison::f_h_min(u, 1.0, 1.0)),
                            cell(comparison::f_h_max(u, 1.0, 1.0)),
                            ft.to_string(),
                            k.to_string(),
                        ])
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                ctx.emit(fig, tag, csv_bytes(&["u", "f_h_min", "f_h_max", "f_t_asym", "k"], rows));
            }
        }
        FigureName::Ftbelowfh => {
            let pts = comparison::sweep(&sweep_cfg(1.0 / SQRT3, 7.0, 141, ctx.args.theta_samples))?;
            let rows = pts.iter().map(|q| {
                let gap = q.f_h_at_t.zip(q.f_t_at_t).map(|(h, t)| h - t);
                vec![q.u.to_string(), cell(q.f_h_at_t), cell(q.f_t_at_t), cell(gap)]
            });
            ctx.emit(fig, "", csv_bytes(&["u", "f_h_T", "f_t_T", "f_h_minus_f_t"], rows));
        }
        FigureName::GrafKthroughput => {
            for (s, d) in [(3.0, 1.0), (6.0, 1.0), (10.0, 1.0), (3.0, 0.5)] {
                let p = SwarmParams::new(1.0, d, s)?;
                let (lo, hi) = touch_run::lane_domain(&p)?;
                let mut rows = Vec::new();
                for k in lo..=hi {
                    let c = touch_run::build_config(k, &p)?;
                    rows.push(vec![
                        k.to_string(),
                        touch_run::asymptotic(k, &p)?.to_string(),
                        c.r.to_string(),
                        c.d_o.to_string(),
                    ]);
                }
                ctx.emit(fig, &format!("s{s}_d{d}"), csv_bytes(&["k", "f_asymptotic", "r", "d_o"], rows));
            }
        }
        FigureName::Limitshexpack => {
            for s in [3.0, 6.0] {
                let p = SwarmParams::new(1.0, 1.0, s)?;
                let circle = hex_packing::upper_bound_asymptotic(&p)?;
                let mut rows = Vec::new();
                for i in 0..=600 {
                    let theta = (i as f64 * FRAC_PI_3 / 600.0).min(FRAC_PI_3 * (1.0 - 1e-12));
                    let (lo, hi) = hex_packing::asymptotic_bounds(&HexConfig::new(theta)?, &p)?;
                    rows.push(vec![theta.to_string(), lo.to_string(), hi.to_string(), circle.to_string()]);
                }
                ctx.emit(fig, &format!("s{s}"), csv_bytes(&["theta", "f_low", "f_high", "f_circle"], rows));
            }
        }
    }
    Ok(())
}

fn sweep_cfg(u_min: f64, u_max: f64, points: usize, theta_samples: usize) -> SweepConfig {
    SweepConfig { u_min, u_max, points, t: 1e4, v: 1.0, d: 1.0, theta_samples }
}

/// Simulated series with the closed form and constant reference lines appended.
fn simulated(strategy: Strategy, p: SwarmParams, n: usize, refs: &[f64]) -> CliResult<Vec<u8>> {
    let out = simulator::run(&SimConfig::new(strategy, p, n))?;
    let mut header = vec!["t", "n", "f_measured", "f_analytic"];
    header.extend(match refs.len() {
        1 => &["f_asymptotic"][..],
        _ => &["f_low", "f_high"][..],
    });
    let mut rows = Vec::new();
    for s in &out.series.samples {
        let a = if s.t > 0.0 { Some(analytic_f(strategy, s.t, &p)?) } else { None };
        let mut row = vec![s.t.to_string(), s.n.to_string(), cell(s.f), cell(a)];
        row.extend(refs.iter().map(|r| r.to_string()));
        rows.push(row);
    }
    Ok(csv_bytes(&header, rows))
}
