//! Strategy comparison as a function of `u = s/d`.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core_model::{floor13, SwarmParams};
use crate::error::{domain, Result};
use crate::hex_packing::{self, HexConfig, SQRT3};
use crate::touch_run;

/// `u` above which parallel lanes never beat the hexagonal lower bound.
pub fn crossover_u() -> f64 {
    (SQRT3 + 2.0) / (4.0 - 2.0 * SQRT3)
}

/// Parallel-lane limit `⌊2u + 1⌋·v/d`; absent for `u < 1/2`.
pub fn f_p(u: f64, v: f64, d: f64) -> Option<f64> {
    (u >= 0.5).then(|| floor13(2.0 * u + 1.0) * v / d)
}

/// Hexagonal lower bound `(2/√3)(2u − 1)·v/d` (attained at `θ = π/6`); absent for `u < 1/2`.
pub fn f_h_min(u: f64, v: f64, d: f64) -> Option<f64> {
    (u >= 0.5).then(|| 2.0 / SQRT3 * (2.0 * u - 1.0) * v / d)
}

/// Hexagonal upper bound `(2/√3)(2u + 1)·v/d`; absent for `u < 1/2`.
pub fn f_h_max(u: f64, v: f64, d: f64) -> Option<f64> {
    (u >= 0.5).then(|| 2.0 / SQRT3 * (2.0 * u + 1.0) * v / d)
}

fn params_of(u: f64, v: f64, d: f64) -> Result<SwarmParams> {
    SwarmParams::new(v, d, u * d)
}

/// Sorted, de-duplicated union of the grids `i·(π/3)/n` plus `π/6`.
pub fn theta_candidates(grids: &[usize]) -> Vec<f64> {
    let mut out: Vec<f64> = grids
        .iter()
        .flat_map(|&n| (0..n).map(move |i| i as f64 * FRAC_PI_3 / n as f64))
        .chain(std::iter::once(FRAC_PI_6))
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Best packing angle for `f_h(T, θ)` over `n_samples` evenly spaced angles plus `π/6`.
pub fn best_theta(t: f64, p: &SwarmParams, n_samples: usize) -> Result<(f64, f64)> {
    best_theta_grids(t, p, &[n_samples])
}

/// Like [`best_theta`] over the union of several grids. Ties go to the smaller angle.
pub fn best_theta_grids(t: f64, p: &SwarmParams, grids: &[usize]) -> Result<(f64, f64)> {
    if grids.is_empty() || grids.iter().any(|&n| n < 2) {
        return domain("every θ grid needs at least 2 samples");
    }
    let mut best = (0.0, f64::NEG_INFINITY);
    for theta in theta_candidates(grids) {
        let f = hex_packing::throughput_at(t, &HexConfig::new(theta)?, p)?;
        if f > best.1 {
            best = (theta, f);
        }
    }
    Ok(best)
}

/// `K(u) = ⌊π / arcsin(1/(2u))⌋`.
pub fn k_of_u(u: f64) -> Result<usize> {
    Ok(touch_run::lane_domain(&params_of(u, 1.0, 1.0)?)?.1)
}

/// Turning radius in units of `d`.
pub fn r_of_u_k(u: f64, k: usize) -> Result<f64> {
    Ok(touch_run::build_config(k, &params_of(u, 1.0, 1.0)?)?.r)
}

/// Arc-derived spacing `d′(u, K)` in units of `d`.
pub fn d_prime_of_u_k(u: f64, k: usize) -> Result<f64> {
    Ok(touch_run::build_config(k, &params_of(u, 1.0, 1.0)?)?.d_prime)
}

/// Where touch-and-run throughput is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Horizon {
    Limit,
    At(f64),
}

/// Best touch-and-run throughput over `K ∈ [3, K(u)]` as `(K*, f)`; ties go to the smaller `K`.
pub fn f_t_of_u(u: f64, horizon: Horizon, v: f64, d: f64) -> Result<(usize, f64)> {
    let p = params_of(u, v, d)?;
    let (lo, hi) = touch_run::lane_domain(&p)?;
    let mut best = (lo, f64::NEG_INFINITY);
    for k in lo..=hi {
        let f = match horizon {
            Horizon::Limit => k as f64 / d_prime_of_u_k(u, k)?.max(1.0) * v / d,
            Horizon::At(t) => touch_run::throughput_at(k, t, &p)?,
        };
        if f > best.1 {
            best = (k, f);
        }
    }
    Ok(best)
}

/// One row of the comparison curves; fields are absent where a strategy is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyCurvePoint {
    pub u: f64,
    pub f_p: Option<f64>,
    pub f_h_min: Option<f64>,
    pub f_h_max: Option<f64>,
    pub f_h_at_t: Option<f64>,
    pub f_t_at_t: Option<f64>,
    pub f_t_asym: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub u_min: f64,
    pub u_max: f64,
    pub points: usize,
    pub t: f64,
    pub v: f64,
    pub d: f64,
    pub theta_samples: usize,
}

impl SweepConfig {
    /// Inclusive, uniform grid.
    pub fn u_grid(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.u_min],
            n => (0..n)
                .map(|i| self.u_min + (self.u_max - self.u_min) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

pub fn curve_point(
    u: f64,
    t: f64,
    v: f64,
    d: f64,
    theta_samples: usize,
) -> Result<StrategyCurvePoint> {
    let hex = if u >= 0.5 {
        Some(best_theta(t, &params_of(u, v, d)?, theta_samples)?.1)
    } else {
        None
    };
    let touch = u >= 1.0 / SQRT3 && touch_run::lane_domain(&params_of(u, v, d)?).is_ok();
    let (f_t_at_t, f_t_asym) = if touch {
        (
            Some(f_t_of_u(u, Horizon::At(t), v, d)?.1),
            Some(f_t_of_u(u, Horizon::Limit, v, d)?.1),
        )
    } else {
        (None, None)
    };
    Ok(StrategyCurvePoint {
        u,
        f_p: f_p(u, v, d),
        f_h_min: f_h_min(u, v, d),
        f_h_max: f_h_max(u, v, d),
        f_h_at_t: hex,
        f_t_at_t,
        f_t_asym,
    })
}

/// Evaluates every grid point in parallel; output order follows the grid.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<StrategyCurvePoint>> {
    if cfg.u_min.is_nan()
        || cfg.u_min < 0.0
        || cfg.u_max.is_nan()
        || cfg.u_max < cfg.u_min
        || !cfg.u_max.is_finite()
    {
        return domain("need 0 <= u_min <= u_max");
    }
    if cfg.t <= 0.0 || !cfg.t.is_finite() {
        return domain("T must be > 0");
    }
    if cfg.theta_samples < 2 {
        return domain("theta_samples must be >= 2");
    }
    cfg.u_grid()
        .into_par_iter()
        .map(|u| curve_point(u, cfg.t, cfg.v, cfg.d, cfg.theta_samples))
        .collect()
}

/// CSV with header `u,f_p,f_h_min,f_h_max,f_h_T,f_t_T,f_t_asym`; absent values are empty.
pub fn curve_to_csv(points: &[StrategyCurvePoint]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record([
        "u", "f_p", "f_h_min", "f_h_max", "f_h_T", "f_t_T", "f_t_asym",
    ])
    .expect("in-memory write");
    let cell = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for q in points {
        w.write_record([
            q.u.to_string(),
            cell(q.f_p),
            cell(q.f_h_min),
            cell(q.f_h_max),
            cell(q.f_h_at_t),
            cell(q.f_t_at_t),
            cell(q.f_t_asym),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn crossover_value() {
        assert_abs_diff_eq!(crossover_u(), 6.9641, epsilon = 1e-4);
        for i in 0..500 {
            let u = 6.97 + i as f64 * 0.5;
            assert!(f_p(u, 1.0, 1.0).unwrap() <= f_h_min(u, 1.0, 1.0).unwrap());
        }
        assert!(f_p(3.0, 1.0, 1.0).unwrap() > f_h_min(3.0, 1.0, 1.0).unwrap());
    }

    #[test]
    fn absent_fields() {
        let q = curve_point(0.3, 100.0, 1.0, 1.0, 10).unwrap();
        assert!(q.f_p.is_none() && q.f_h_at_t.is_none() && q.f_t_asym.is_none());
        let q = curve_point(0.55, 100.0, 1.0, 1.0, 10).unwrap();
        assert!(q.f_p.is_some() && q.f_h_at_t.is_some() && q.f_t_asym.is_none());
        let q = curve_point(1.0 / SQRT3, 100.0, 1.0, 1.0, 10).unwrap();
        assert!(q.f_t_asym.is_some());
    }

    #[test]
    fn k_of_u_values() {
        assert_eq!(k_of_u(1.0 / SQRT3).unwrap(), 3);
        assert_eq!(k_of_u(3.0).unwrap(), 18);
        assert!(k_of_u(0.5).is_err());
    }

    #[test]
    fn f_t_matches_best_k() {
        for s in [1.0, 3.0, 6.0, 10.0] {
            let p = SwarmParams::new(0.5, 1.0, s).unwrap();
            let (k, f) = touch_run::best_k(&p).unwrap();
            let (k2, f2) = f_t_of_u(s, Horizon::Limit, 0.5, 1.0).unwrap();
            assert_eq!(k, k2);
            assert_abs_diff_eq!(f, f2, epsilon = 1e-12);
        }
    }

    #[test]
    fn theta_pool_is_superset() {
        let p = SwarmParams::new(1.0, 1.0, 2.3).unwrap();
        let a = best_theta_grids(50.0, &p, &[99]).unwrap().1;
        let b = best_theta_grids(50.0, &p, &[100]).unwrap().1;
        let c = best_theta_grids(50.0, &p, &[99, 100]).unwrap().1;
        assert_eq!(c, a.max(b));
        assert!(theta_candidates(&[4]).contains(&FRAC_PI_6));
    }

    #[test]
    fn grid_is_inclusive() {
        let c = SweepConfig {
            u_min: 0.0,
            u_max: 7.0,
            points: 8,
            t: 1.0,
            v: 1.0,
            d: 1.0,
            theta_samples: 2,
        };
        assert_eq!(c.u_grid(), vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
    }

    #[test]
    fn sweep_order_and_csv() {
        let c = SweepConfig {
            u_min: 0.0,
            u_max: 2.0,
            points: 9,
            t: 20.0,
            v: 1.0,
            d: 1.0,
            theta_samples: 6,
        };
        let pts = sweep(&c).unwrap();
        assert!(pts.windows(2).all(|w| w[0].u < w[1].u));
        let csv = curve_to_csv(&pts);
        assert!(csv.starts_with("u,f_p,f_h_min,f_h_max,f_h_T,f_t_T,f_t_asym\n"));
        assert_eq!(csv.lines().count(), 10);
        assert_eq!(csv, curve_to_csv(&sweep(&c).unwrap()));
    }
}
