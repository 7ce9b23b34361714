//! Brute-force lattice enumeration of the robots arrived by `T` under hexagonal packing.
//!
//! Points are generated from the basis `d·e(θ)`, `d·e(θ + 2π/3)` around the first robot
//! and kept by direct Euclidean membership tests; nothing here reuses the column
//! formulas of [`crate::hex_packing`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::core_model::{round13, SwarmParams};
use crate::error::{domain, Result};
use crate::hex_packing::{HexConfig, SEAM_GUARD};

/// A lattice site: `(x_h, y_h)` are the basis coefficients, `(x, y)` the plane position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x_h: i64,
    pub y_h: i64,
    pub x: f64,
    pub y: f64,
}

/// Which part of the arrival region a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    Rectangle,
    Cap,
}

/// Lattice anchored at `origin` with basis angle `theta`.
#[derive(Debug, Clone, Copy)]
pub struct Lattice {
    pub origin: (f64, f64),
    e1: (f64, f64),
    e2: (f64, f64),
}

impl Lattice {
    pub fn new(theta: f64, d: f64, origin: (f64, f64)) -> Self {
        let a2 = theta + 2.0 * PI / 3.0;
        Lattice {
            origin,
            e1: (d * theta.cos(), d * theta.sin()),
            e2: (d * a2.cos(), d * a2.sin()),
        }
    }

    pub fn point(&self, i: i64, j: i64) -> LatticePoint {
        let (a, b) = (i as f64, j as f64);
        LatticePoint {
            x_h: i,
            y_h: j,
            x: self.origin.0 + a * self.e1.0 + b * self.e2.0,
            y: self.origin.1 + a * self.e1.1 + b * self.e2.1,
        }
    }

    /// All points whose coefficients can land inside the box `[x_lo, x_hi] × [y_lo, y_hi]`.
    pub fn in_box(&self, x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Vec<LatticePoint> {
        let det = self.e1.0 * self.e2.1 - self.e2.0 * self.e1.1;
        let coef = |x: f64, y: f64| {
            let (dx, dy) = (x - self.origin.0, y - self.origin.1);
            (
                (dx * self.e2.1 - self.e2.0 * dy) / det,
                (self.e1.0 * dy - dx * self.e1.1) / det,
            )
        };
        let corners = [
            coef(x_lo, y_lo),
            coef(x_lo, y_hi),
            coef(x_hi, y_lo),
            coef(x_hi, y_hi),
        ];
        let i_lo = corners
            .iter()
            .map(|c| c.0)
            .fold(f64::INFINITY, f64::min)
            .floor() as i64
            - 1;
        let i_hi = corners
            .iter()
            .map(|c| c.0)
            .fold(f64::NEG_INFINITY, f64::max)
            .ceil() as i64
            + 1;
        let j_lo = corners
            .iter()
            .map(|c| c.1)
            .fold(f64::INFINITY, f64::min)
            .floor() as i64
            - 1;
        let j_hi = corners
            .iter()
            .map(|c| c.1)
            .fold(f64::NEG_INFINITY, f64::max)
            .ceil() as i64
            + 1;
        let mut out = Vec::new();
        for i in i_lo..=i_hi {
            for j in j_lo..=j_hi {
                let q = self.point(i, j);
                if q.x >= x_lo && q.x <= x_hi && q.y >= y_lo && q.y <= y_hi {
                    out.push(q);
                }
            }
        }
        out
    }
}

/// Membership of a point in the arrival region at time `T`, first robot at `(s, 0)`.
pub fn classify(q: &LatticePoint, t: f64, cfg: &HexConfig, p: &SwarmParams) -> Option<Part> {
    classify_at(q, t, cfg, p, p.s)
}

/// Membership with the first robot at `(x0, 0)`.
pub fn classify_at(
    q: &LatticePoint,
    t: f64,
    cfg: &HexConfig,
    p: &SwarmParams,
    x0: f64,
) -> Option<Part> {
    let (d, s) = (p.d, p.s);
    let vt = p.v * t;
    let xr = (q.x - x0) / d;
    let yr = q.y / d;
    let sd = s / d;
    let wd = (vt - s) / d;
    let disc = round13((xr - wd).hypot(yr) - sd) <= 0.0;
    if round13(wd) > 0.0 {
        if round13(xr) >= 0.0 && round13(xr - wd) <= 0.0 && round13(yr.abs() - sd) <= 0.0 {
            return Some(Part::Rectangle);
        }
        // Lattice steps along a column (`+y_h` moves by d·cos(θ + 2π/3) in x) from the seam.
        let steps = (xr - wd) / -(cfg.theta + 2.0 * PI / 3.0).cos();
        if disc && round13(steps) >= SEAM_GUARD {
            return Some(Part::Cap);
        }
        None
    } else if disc && round13(xr) >= 0.0 {
        Some(Part::Cap)
    } else {
        None
    }
}

/// Every lattice point inside the arrival region at time `T`.
pub fn enumerate_region(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<Vec<LatticePoint>> {
    Ok(enumerate_parts(t, cfg, p)?
        .into_iter()
        .map(|(q, _)| q)
        .collect())
}

/// Same as [`enumerate_region`], tagged with the region part.
pub fn enumerate_parts(
    t: f64,
    cfg: &HexConfig,
    p: &SwarmParams,
) -> Result<Vec<(LatticePoint, Part)>> {
    enumerate_anchored(t, cfg, p, p.s)
}

/// Enumeration with the first robot at `(x0, 0)`.
pub fn enumerate_anchored(
    t: f64,
    cfg: &HexConfig,
    p: &SwarmParams,
    x0: f64,
) -> Result<Vec<(LatticePoint, Part)>> {
    if t <= 0.0 || !t.is_finite() {
        return domain("T must be > 0");
    }
    if p.s.is_nan() || p.s <= 0.0 {
        return domain("hexagonal packing needs s > 0");
    }
    let pad = 2.0 * p.d;
    let lattice = Lattice::new(cfg.theta, p.d, (x0, 0.0));
    let pts = lattice.in_box(x0 - pad, x0 + p.v * t + pad, -p.s - pad, p.s + pad);
    Ok(pts
        .into_iter()
        .filter_map(|q| classify_at(&q, t, cfg, p, x0).map(|part| (q, part)))
        .collect())
}

pub fn count(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<u64> {
    Ok(enumerate_parts(t, cfg, p)?.len() as u64)
}

/// `(rectangle, cap)` split of [`count`].
pub fn count_parts(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<(u64, u64)> {
    let parts = enumerate_parts(t, cfg, p)?;
    let rect = parts.iter().filter(|(_, k)| *k == Part::Rectangle).count() as u64;
    Ok((rect, parts.len() as u64 - rect))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: f64) -> SwarmParams {
        SwarmParams::new(1.0, 1.0, s).unwrap()
    }

    #[test]
    fn tiny_t_is_first_robot() {
        let cfg = HexConfig::new(0.4).unwrap();
        let pts = enumerate_region(1e-6, &cfg, &params(3.0)).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].x - 3.0).abs() < 1e-12 && pts[0].y.abs() < 1e-12);
    }

    #[test]
    fn lattice_spacing() {
        let l = Lattice::new(0.3, 1.5, (0.0, 0.0));
        let pts = l.in_box(-5.0, 5.0, -5.0, 5.0);
        let mut min = f64::INFINITY;
        for (a, p) in pts.iter().enumerate() {
            for q in &pts[a + 1..] {
                min = min.min((p.x - q.x).hypot(p.y - q.y));
            }
        }
        assert!((min - 1.5).abs() < 1e-9);
    }
}
