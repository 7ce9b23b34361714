//! Touch and run: `K` curved lanes, each turning tangent to the target boundary.
//!
//! Lane `k` owns the sector of central angle `α = 2π/K` around bisector angle `k·α`.
//! A robot comes in parallel to the sector's left edge at offset `d/2`, turns
//! counter-clockwise on an arc of radius `r` whose closest point to the centre is at
//! distance `s`, and leaves parallel to the right edge at offset `d/2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::core_model::{floor13, round13, SwarmParams};
use crate::error::{domain, Result};

/// Geometry of one lane layout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TouchRunConfig {
    pub k: usize,
    pub alpha: f64,
    /// Turning radius.
    pub r: f64,
    /// Arc-derived spacing before taking the max with `d`.
    pub d_prime: f64,
    /// In-lane spacing.
    pub d_o: f64,
    /// Distance from the centre where the robot starts and stops turning.
    pub d_r: f64,
    /// Turning rate `v/r`.
    pub omega: f64,
}

impl TouchRunConfig {
    /// Arc angle `β = π − α`.
    pub fn beta(&self) -> f64 {
        PI - self.alpha
    }

    pub fn arc_length(&self) -> f64 {
        self.r * self.beta()
    }
}

fn k_max_raw(p: &SwarmParams) -> Result<usize> {
    if p.s <= 0.0 || round13(p.s / p.d - 0.5) < 0.0 {
        return domain("touch and run needs s >= d/2");
    }
    Ok(floor13(PI / (p.d / (2.0 * p.s)).asin()) as usize)
}

/// `(3, K_max)` with `K_max = ⌊π / arcsin(d/(2s))⌋`.
pub fn lane_domain(p: &SwarmParams) -> Result<(usize, usize)> {
    if round13(p.s / p.d - 1.0 / 3f64.sqrt()) < 0.0 {
        return domain("touch and run is only defined for u = s/d >= 1/√3");
    }
    let k = k_max_raw(p)?;
    if k < 3 {
        return domain("touch and run lane domain is empty");
    }
    Ok((3, k))
}

/// Feasible lane counts when turning is limited to `omega_max` (rad/s).
pub fn feasible_lanes(p: &SwarmParams, omega_max: Option<f64>) -> Result<Vec<usize>> {
    let (lo, hi) = lane_domain(p)?;
    let mut out = Vec::new();
    for k in lo..=hi {
        let cfg = build_config(k, p)?;
        if omega_max.is_none_or(|w| cfg.r > 0.0 && round13(cfg.omega - w) <= 0.0) {
            out.push(k);
        }
    }
    Ok(out)
}

/// Turning radius `(s·sin(α/2) − d/2)/(1 − sin(α/2))`.
pub fn turning_radius(k: usize, p: &SwarmParams) -> f64 {
    let h = (PI / k as f64).sin();
    (p.s * h - p.d / 2.0) / (1.0 - h)
}

/// Arc-derived spacing `d′` for turning radius `r` and sector angle `alpha`.
pub fn arc_spacing(r: f64, alpha: f64, d: f64) -> f64 {
    let (sh, ch) = ((alpha / 2.0).sin(), (alpha / 2.0).cos());
    if 2.0 * r * ch < d {
        r * (PI - alpha) + (d - 2.0 * r * ch) / sh
    } else {
        2.0 * r * (d / (2.0 * r)).asin()
    }
}

/// Lane geometry for `K` lanes. A radius of exactly zero (the largest `K` when
/// `π/arcsin(d/(2s))` is an integer) is accepted as the degenerate corner lane.
pub fn build_config(k: usize, p: &SwarmParams) -> Result<TouchRunConfig> {
    let (lo, hi) = lane_domain(p)?;
    if k < lo || k > hi {
        return domain(format!("K = {k} outside lane domain [{lo}, {hi}]"));
    }
    let alpha = 2.0 * PI / k as f64;
    let mut r = turning_radius(k, p);
    if round13(r / p.d) < 0.0 {
        return domain(format!("K = {k} gives a negative turning radius"));
    }
    r = r.max(0.0);
    let d_prime = arc_spacing(r, alpha, p.d);
    let d_o = p.d.max(d_prime);
    let d_r = (p.s * (2.0 * r + p.s) - r * p.d).max(0.0).sqrt();
    Ok(TouchRunConfig {
        k,
        alpha,
        r,
        d_prime,
        d_o,
        d_r,
        omega: p.v / r,
    })
}

/// `(1/T)(K·⌊vT/d_o + 1⌋ − 1)`.
pub fn throughput_at(k: usize, t: f64, p: &SwarmParams) -> Result<f64> {
    if t <= 0.0 || !t.is_finite() {
        return domain("T must be > 0");
    }
    let cfg = build_config(k, p)?;
    Ok((k as f64 * floor13(p.v * t / cfg.d_o + 1.0) - 1.0) / t)
}

/// `K·v/d_o`.
pub fn asymptotic(k: usize, p: &SwarmParams) -> Result<f64> {
    let cfg = build_config(k, p)?;
    Ok(k as f64 * p.v / cfg.d_o)
}

/// Lane count maximising the asymptotic throughput; ties go to the smaller `K`.
pub fn best_k(p: &SwarmParams) -> Result<(usize, f64)> {
    best_k_with(p, None)
}

/// [`best_k`] restricted to lanes with `v/r ≤ omega_max`.
pub fn best_k_with(p: &SwarmParams, omega_max: Option<f64>) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for k in feasible_lanes(p, omega_max)? {
        let f = asymptotic(k, p)?;
        if best.is_none_or(|(_, b)| f > b) {
            best = Some((k, f));
        }
    }
    best.ok_or_else(|| crate::SwarmError::Domain("no feasible lane count".into()))
}

/// One lane's centre-line, parameterised by arc length `σ` with `σ = 0` at the
/// point of closest approach.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LanePath {
    pub bisector: f64,
    pub alpha: f64,
    pub r: f64,
    pub s: f64,
}

/// Which piece of a lane a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Segment {
    Entry,
    Arc,
    Exit,
}

fn rot(v: (f64, f64), a: f64) -> (f64, f64) {
    let (c, s) = (a.cos(), a.sin());
    (c * v.0 - s * v.1, s * v.0 + c * v.1)
}

impl LanePath {
    pub fn new(cfg: &TouchRunConfig, p: &SwarmParams, lane: usize) -> Self {
        LanePath {
            bisector: lane as f64 * cfg.alpha,
            alpha: cfg.alpha,
            r: cfg.r,
            s: p.s,
        }
    }

    pub fn half_arc(&self) -> f64 {
        self.r * (PI - self.alpha) / 2.0
    }

    /// Turning centre.
    pub fn centre(&self) -> (f64, f64) {
        rot((self.s + self.r, 0.0), self.bisector)
    }

    /// Outward direction of the entry line; the robot travels against it.
    pub fn entry_axis(&self) -> (f64, f64) {
        rot((1.0, 0.0), self.bisector + self.alpha / 2.0)
    }

    /// Direction of travel on the exit line.
    pub fn exit_axis(&self) -> (f64, f64) {
        rot((1.0, 0.0), self.bisector - self.alpha / 2.0)
    }

    /// Where the entry line meets the arc.
    pub fn turn_in(&self) -> (f64, f64) {
        let c = self.centre();
        let n = rot((self.r, 0.0), self.bisector + self.alpha / 2.0 + PI / 2.0);
        (c.0 + n.0, c.1 + n.1)
    }

    /// Where the arc meets the exit line.
    pub fn turn_out(&self) -> (f64, f64) {
        let c = self.centre();
        let n = rot((self.r, 0.0), self.bisector - self.alpha / 2.0 - PI / 2.0);
        (c.0 + n.0, c.1 + n.1)
    }

    pub fn segment(&self, sigma: f64) -> Segment {
        let h = self.half_arc();
        if sigma < -h {
            Segment::Entry
        } else if sigma <= h {
            Segment::Arc
        } else {
            Segment::Exit
        }
    }

    pub fn point_at(&self, sigma: f64) -> (f64, f64) {
        let h = self.half_arc();
        match self.segment(sigma) {
            Segment::Entry => {
                let (t, e) = (self.turn_in(), self.entry_axis());
                let l = -h - sigma;
                (t.0 + l * e.0, t.1 + l * e.1)
            }
            Segment::Arc => {
                let c = self.centre();
                let ang = self.bisector + PI + if self.r > 0.0 { sigma / self.r } else { 0.0 };
                let q = rot((self.r, 0.0), ang);
                (c.0 + q.0, c.1 + q.1)
            }
            Segment::Exit => {
                let (t, e) = (self.turn_out(), self.exit_axis());
                let l = sigma - h;
                (t.0 + l * e.0, t.1 + l * e.1)
            }
        }
    }

    /// Heading of travel at `σ`.
    pub fn heading_at(&self, sigma: f64) -> f64 {
        match self.segment(sigma) {
            Segment::Entry => self.bisector + self.alpha / 2.0 + PI,
            Segment::Arc => {
                self.bisector + 3.0 * PI / 2.0 + if self.r > 0.0 { sigma / self.r } else { 0.0 }
            }
            Segment::Exit => self.bisector - self.alpha / 2.0,
        }
    }
}

/// Smallest distance between any two robots when every lane carries robots at
/// `σ0 − m·d_o`, `m = 0..waves`, and `σ0` sweeps `[lo, hi]` in `steps` samples.
pub fn audit_min_distance(
    cfg: &TouchRunConfig,
    p: &SwarmParams,
    waves: usize,
    span: (f64, f64),
    steps: usize,
) -> f64 {
    let paths: Vec<LanePath> = (0..cfg.k).map(|l| LanePath::new(cfg, p, l)).collect();
    let mut min = f64::INFINITY;
    let mut pts = Vec::with_capacity(cfg.k * waves);
    for i in 0..=steps {
        let s0 = span.0 + (span.1 - span.0) * i as f64 / steps as f64;
        pts.clear();
        for path in &paths {
            for m in 0..waves {
                pts.push(path.point_at(s0 - m as f64 * cfg.d_o));
            }
        }
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                min = min.min((pts[a].0 - pts[b].0).hypot(pts[a].1 - pts[b].1));
            }
        }
    }
    min
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(s: f64, v: f64) -> SwarmParams {
        SwarmParams::new(v, 1.0, s).unwrap()
    }

    #[test]
    fn domains() {
        assert_eq!(lane_domain(&params(3.0, 1.0)).unwrap(), (3, 18));
        assert_eq!(lane_domain(&params(6.0, 1.0)).unwrap(), (3, 37));
        assert_eq!(
            lane_domain(&params(1.0 / 3f64.sqrt(), 1.0)).unwrap(),
            (3, 3)
        );
        assert!(lane_domain(&params(0.55, 1.0)).is_err());
    }

    #[test]
    fn turning_limit() {
        let w = Some(PI / 2.0);
        assert_eq!(
            *feasible_lanes(&params(3.0, 0.1), w)
                .unwrap()
                .last()
                .unwrap(),
            16
        );
        assert_eq!(
            *feasible_lanes(&params(6.0, 0.1), w)
                .unwrap()
                .last()
                .unwrap(),
            33
        );
    }

    #[test]
    fn four_lanes() {
        let c = build_config(4, &params(3.0, 1.0)).unwrap();
        assert_abs_diff_eq!(c.r, 5.5355, epsilon = 1e-4);
        // √(3(2r + 3) − r) = √36.678…
        assert_abs_diff_eq!(c.d_r, 6.0562, epsilon = 1e-4);
        assert!(c.d_o >= 1.0);
    }

    #[test]
    fn degenerate_boundary_lane() {
        let c = build_config(3, &params(1.0 / 3f64.sqrt(), 1.0)).unwrap();
        assert_eq!(c.r, 0.0);
        assert_eq!(best_k(&params(1.0 / 3f64.sqrt(), 1.0)).unwrap().0, 3);
    }

    #[test]
    fn throughput_forms() {
        let p = params(3.0, 1.0);
        let c = build_config(10, &p).unwrap();
        let t = 1e-6;
        assert_abs_diff_eq!(throughput_at(10, t, &p).unwrap(), 9.0 / t, epsilon = 1e-3);
        assert_abs_diff_eq!(
            throughput_at(10, c.d_o, &p).unwrap(),
            19.0 / c.d_o,
            epsilon = 1e-9
        );
        let lim = asymptotic(10, &p).unwrap();
        assert!((throughput_at(10, 1e4, &p).unwrap() - lim).abs() / lim < 0.01);
        assert_abs_diff_eq!(
            asymptotic(10, &params(3.0, 2.0)).unwrap(),
            2.0 * lim,
            epsilon = 1e-12
        );
    }

    #[test]
    fn best_is_scan_max() {
        for s in [3.0, 6.0] {
            let p = params(s, 1.0);
            let (k, f) = best_k(&p).unwrap();
            let (lo, hi) = lane_domain(&p).unwrap();
            for j in lo..=hi {
                let g = asymptotic(j, &p).unwrap();
                assert!(g <= f);
                if j < k {
                    assert!(g < f);
                }
            }
        }
    }

    #[test]
    fn path_geometry() {
        let p = params(3.0, 1.0);
        let c = build_config(7, &p).unwrap();
        let path = LanePath::new(&c, &p, 2);
        let (a, b) = (path.turn_in(), path.turn_out());
        assert_abs_diff_eq!(a.0.hypot(a.1), c.d_r, epsilon = 1e-9);
        assert_abs_diff_eq!(b.0.hypot(b.1), c.d_r, epsilon = 1e-9);
        let h = path.half_arc();
        for sig in [-h - 1e-12, -h, 0.0, h, h + 1e-12] {
            let q = path.point_at(sig);
            assert!(q.0.hypot(q.1) >= p.s - 1e-9);
        }
        let m = path.point_at(0.0);
        assert_abs_diff_eq!(m.0.hypot(m.1), p.s, epsilon = 1e-9);
    }
}
