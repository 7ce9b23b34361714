//! Point target (`s = 0`): minimum arrival delay of two robots on crossing lines.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::core_model::SwarmParams;
use crate::error::{domain, Result};

/// Angle between two straight approach lines, in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ApproachAngle(f64);

impl ApproachAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta < 0.0 {
            return domain(format!("approach angle must be in [0, π), got {theta}"));
        }
        if theta >= PI || 1.0 + theta.cos() <= 0.0 {
            return domain("robots face each other exactly (θ = π)");
        }
        Ok(ApproachAngle(theta))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// `√(2/(1+cos θ))`, the delay in units of `d/v`.
pub fn normalized_delay(theta: ApproachAngle) -> f64 {
    (2.0 / (1.0 + theta.0.cos())).sqrt()
}

/// Smallest delay between arrivals keeping the two robots `d` apart.
pub fn min_delay(theta: ApproachAngle, p: &SwarmParams) -> f64 {
    p.d / p.v * normalized_delay(theta)
}

/// A single queue is optimal for a point target.
pub fn optimal_point_throughput(p: &SwarmParams) -> f64 {
    p.v / p.d
}

/// Distance at time `t` between a robot reaching the target at `t = 0` along
/// direction 0 and one reaching it at `t = tau` along direction `theta`.
pub fn separation_at(t: f64, tau: f64, theta: f64, v: f64) -> f64 {
    let (a, b) = (v * t, v * (t - tau));
    let dx = a - b * theta.cos();
    let dy = -b * theta.sin();
    dx.hypot(dy)
}

/// Numerical minimum of [`separation_at`] over `t`: dense grid, then golden-section refinement.
pub fn min_separation(theta: ApproachAngle, tau: f64, v: f64) -> f64 {
    let span = 10.0 * tau.abs().max(1e-3);
    let n = 4000usize;
    let f = |t: f64| separation_at(t, tau, theta.0, v);
    let step = 2.0 * span / n as f64;
    let (mut best_i, mut best) = (0usize, f64::INFINITY);
    for i in 0..=n {
        let val = f(-span + step * i as f64);
        if val < best {
            best = val;
            best_i = i;
        }
    }
    let mut lo = -span + step * (best_i as f64 - 1.0);
    let mut hi = -span + step * (best_i as f64 + 1.0);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    best.min(f(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit() -> SwarmParams {
        SwarmParams::new(1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn delay_examples() {
        let p = unit();
        assert_abs_diff_eq!(
            min_delay(ApproachAngle::new(0.0).unwrap(), &p),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            min_delay(ApproachAngle::new(PI / 3.0).unwrap(), &p),
            1.1547,
            epsilon = 1e-4
        );
        assert_abs_diff_eq!(
            min_delay(ApproachAngle::new(PI / 2.0).unwrap(), &p),
            std::f64::consts::SQRT_2,
            epsilon = 1e-4
        );
        assert_abs_diff_eq!(
            normalized_delay(ApproachAngle::new(2.0 * PI / 3.0).unwrap()),
            2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn head_on_rejected() {
        assert!(ApproachAngle::new(PI).is_err());
        assert!(ApproachAngle::new(-0.1).is_err());
        assert!(ApproachAngle::new(f64::NAN).is_err());
    }

    #[test]
    fn single_queue() {
        assert_eq!(optimal_point_throughput(&unit()), 1.0);
        assert_eq!(
            optimal_point_throughput(&SwarmParams::new(2.0, 1.0, 0.0).unwrap()),
            2.0
        );
        assert_abs_diff_eq!(
            optimal_point_throughput(&SwarmParams::new(0.1, 0.5, 0.0).unwrap()),
            0.2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn minimum_delay_keeps_distance() {
        let p = SwarmParams::new(0.7, 1.3, 0.0).unwrap();
        for k in 0..30 {
            let th = ApproachAngle::new(k as f64 * 0.1).unwrap();
            let tau = min_delay(th, &p);
            let m = min_separation(th, tau, p.v);
            assert!(m >= p.d - 1e-9, "θ={} min={m}", th.radians());
            assert!(
                m <= p.d + 1e-6,
                "delay is not minimal at θ={}",
                th.radians()
            );
        }
    }
}
