//! Straight parallel lanes spaced `d` apart across the target, `s ≥ d/2`.

use serde::{Deserialize, Serialize};

use crate::core_model::{ceil13, floor13, round13, SwarmParams};
use crate::error::{domain, Result};

/// Lane `i` (1-based) starts at `(s, s − (i−1)d)` relative to the target centre.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelLayout {
    pub lanes: usize,
    /// 1-based index of the lane whose first robot arrives first.
    pub j: usize,
    /// Extra travel `d_i` of lane `i` beyond `x = s` (index `i − 1`).
    pub d_extra: Vec<f64>,
}

impl ParallelLayout {
    pub fn lane_y(&self, i: usize, p: &SwarmParams) -> f64 {
        p.s - (i as f64 - 1.0) * p.d
    }

    pub fn d_j(&self) -> f64 {
        self.d_extra[self.j - 1]
    }
}

pub fn layout(p: &SwarmParams) -> Result<ParallelLayout> {
    let (s, d) = (p.s, p.d);
    if round13(s / d - 0.5) < 0.0 {
        return domain("parallel lanes need s >= d/2");
    }
    let lanes = floor13(2.0 * s / d) as usize + 1;
    let d_extra = (1..=lanes)
        .map(|i| {
            let y = s - (i as f64 - 1.0) * d;
            s - (s * s - y * y).max(0.0).sqrt()
        })
        .collect();
    let lo = floor13(s / d);
    let hi = ceil13(s / d);
    let j = if round13(((s - lo * d).abs() - (s - hi * d).abs()) / d) <= 0.0 {
        lo as usize + 1
    } else {
        hi as usize + 1
    };
    Ok(ParallelLayout { lanes, j, d_extra })
}

fn lane_count(l: &ParallelLayout, i: usize, t: f64, p: &SwarmParams) -> u64 {
    let lead = l.d_extra[i - 1] - l.d_j();
    let slack = p.v * t - lead;
    if round13(slack / p.d) < 0.0 {
        0
    } else {
        floor13(slack / p.d + 1.0) as u64
    }
}

/// Robots of lane `i` (1-based) arrived by `T`.
pub fn robots_in_lane(i: usize, t: f64, p: &SwarmParams) -> Result<u64> {
    let l = layout(p)?;
    if i == 0 || i > l.lanes {
        return domain(format!("lane index {i} outside 1..={}", l.lanes));
    }
    if t < 0.0 {
        return domain("T must be >= 0");
    }
    Ok(lane_count(&l, i, t, p))
}

/// Total robots arrived by `T` over all lanes.
pub fn total_arrived(t: f64, p: &SwarmParams) -> Result<u64> {
    let l = layout(p)?;
    if t < 0.0 {
        return domain("T must be >= 0");
    }
    Ok((1..=l.lanes).map(|i| lane_count(&l, i, t, p)).sum())
}

pub fn throughput_at(t: f64, p: &SwarmParams) -> Result<f64> {
    if t <= 0.0 || !t.is_finite() {
        return domain("T must be > 0");
    }
    Ok((total_arrived(t, p)? as f64 - 1.0) / t)
}

pub fn asymptotic(p: &SwarmParams) -> Result<f64> {
    layout(p)?;
    Ok(floor13(2.0 * p.s / p.d + 1.0) * p.v / p.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(s: f64) -> SwarmParams {
        SwarmParams::new(1.0, 1.0, s).unwrap()
    }

    #[test]
    fn layout_s3() {
        let l = layout(&params(3.0)).unwrap();
        assert_eq!(l.lanes, 7);
        assert_eq!(l.j, 4);
        assert_eq!(l.d_j(), 0.0);
        assert_abs_diff_eq!(l.d_extra[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(l.d_extra[1], 3.0 - 5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn tie_picks_floor_branch() {
        let l = layout(&params(0.5)).unwrap();
        assert_eq!((l.lanes, l.j), (2, 1));
    }

    #[test]
    fn lane_counts() {
        let p = params(3.0);
        assert_eq!(robots_in_lane(4, 0.0, &p).unwrap(), 1);
        assert_eq!(robots_in_lane(4, 1.0, &p).unwrap(), 2);
        assert_eq!(robots_in_lane(1, 0.5, &p).unwrap(), 0);
        assert_eq!(robots_in_lane(2, 0.5, &p).unwrap(), 0);
        assert_eq!(robots_in_lane(2, 0.8, &p).unwrap(), 1);
        assert!(robots_in_lane(0, 1.0, &p).is_err());
        assert!(robots_in_lane(8, 1.0, &p).is_err());
    }

    #[test]
    fn limits() {
        assert_eq!(asymptotic(&params(3.0)).unwrap(), 7.0);
        assert_eq!(asymptotic(&params(6.0)).unwrap(), 13.0);
        assert_eq!(asymptotic(&params(0.5)).unwrap(), 2.0);
        assert!(asymptotic(&params(0.4)).is_err());
        let f = throughput_at(1000.0, &params(3.0)).unwrap();
        assert!((f - 7.0).abs() / 7.0 < 0.01);
    }

    #[test]
    fn before_second_arrival() {
        let p = params(3.0);
        // Second arrivals happen at d_3 = d_5 = 3 − √8 ≈ 0.17.
        assert_eq!(throughput_at(0.1, &p).unwrap(), 0.0);
    }
}
