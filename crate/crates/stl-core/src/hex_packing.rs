//! Closed-form robot counts for a hexagonally packed corridor of width `2s`.
//!
//! The swarm moves towards `−x`; the first robot sits at the anchor `(x0, y0) = (s, 0)`,
//! exactly on the target boundary at `t = 0`. By time `T` the robots that have arrived
//! are those inside a rectangle `[x0, c_x] × [−s, s]` with `c_x = x0 + vT − s`, plus a
//! half disc of radius `s` centred at `(c_x, y0)` on its right. When `vT ≤ s` only the
//! part of that disc with `x ≥ x0` remains.
//!
//! Rectangle columns are counted in a frame rotated by `ψ = π/3 − θ` about the anchor;
//! the half disc is counted in a frame rotated by `−θ` about the rectangle robot
//! nearest to `(c_x, y0)`. Both frames index the same lattice.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

use serde::{Deserialize, Serialize};

use crate::core_model::{ceil13, floor13, iceil, ifloor, round13, SwarmParams};
use crate::error::{domain, Result};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Half-disc robots closer than this (in lattice steps along a column) to the
/// rectangle's right edge are treated as lying on it, hence already counted.
pub const SEAM_GUARD: f64 = 0.001;

/// Packing angle `θ ∈ [0, π/3)` and its complement `ψ = π/3 − θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HexConfig {
    pub theta: f64,
    pub psi: f64,
}

impl HexConfig {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..FRAC_PI_3).contains(&theta) {
            return domain(format!("packing angle must be in [0, π/3), got {theta}"));
        }
        Ok(HexConfig {
            theta,
            psi: FRAC_PI_3 - theta,
        })
    }

    /// Reduces any angle modulo the lattice period `π/3`.
    pub fn wrapped(theta: f64) -> Result<Self> {
        let mut t = theta.rem_euclid(FRAC_PI_3);
        if t >= FRAC_PI_3 {
            t = 0.0;
        }
        HexConfig::new(t)
    }
}

/// Integer lattice coordinates to plane: `origin + R(rotation)·H·(x_h, y_h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HexFrame {
    pub forward: [[f64; 2]; 2],
    pub inverse: [[f64; 2]; 2],
    pub rotation: f64,
    pub origin: (f64, f64),
}

impl HexFrame {
    pub fn new(d: f64, rotation: f64, origin: (f64, f64)) -> Self {
        HexFrame {
            forward: [[d, -d / 2.0], [0.0, SQRT3 * d / 2.0]],
            inverse: [[1.0 / d, 1.0 / (SQRT3 * d)], [0.0, 2.0 / (SQRT3 * d)]],
            rotation,
            origin,
        }
    }

    /// Frame of the rectangle count, anchored at the first robot.
    pub fn rectangle(cfg: &HexConfig, p: &SwarmParams) -> Self {
        HexFrame::new(p.d, -cfg.psi, anchor(p))
    }

    /// Frame of the half-disc count, anchored at `last`.
    pub fn semicircle(cfg: &HexConfig, p: &SwarmParams, last: (f64, f64)) -> Self {
        HexFrame::new(p.d, cfg.theta, last)
    }

    pub fn to_plane(&self, x_h: f64, y_h: f64) -> (f64, f64) {
        let f = &self.forward;
        let gx = f[0][0] * x_h + f[0][1] * y_h;
        let gy = f[1][0] * x_h + f[1][1] * y_h;
        let (c, s) = (self.rotation.cos(), self.rotation.sin());
        (
            self.origin.0 + c * gx - s * gy,
            self.origin.1 + s * gx + c * gy,
        )
    }

    pub fn to_hex(&self, x: f64, y: f64) -> (f64, f64) {
        let (dx, dy) = (x - self.origin.0, y - self.origin.1);
        let (c, s) = (self.rotation.cos(), self.rotation.sin());
        let gx = c * dx + s * dy;
        let gy = -s * dx + c * dy;
        let m = &self.inverse;
        (m[0][0] * gx + m[0][1] * gy, m[1][0] * gx + m[1][1] * gy)
    }
}

/// Position of the first robot.
pub fn anchor(p: &SwarmParams) -> (f64, f64) {
    (p.s, 0.0)
}

/// Every intermediate quantity of one evaluation of `f_h(T, θ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexCountBreakdown {
    pub t: f64,
    pub theta: f64,
    pub n_l_minus: i64,
    pub n_l_plus: i64,
    pub k_prime: i64,
    pub rect_count: u64,
    pub semi_count: u64,
    pub last_robot: (f64, f64),
    pub c_x: f64,
    pub c_rot: (f64, f64),
    pub b: i64,
    pub u: i64,
}

impl HexCountBreakdown {
    pub fn total(&self) -> u64 {
        self.rect_count + self.semi_count
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    Below,
    Mid,
    Above,
}

/// Per-evaluation constants.
#[derive(Debug, Clone, Copy)]
struct Geom {
    s: f64,
    d: f64,
    vt: f64,
    theta: f64,
    x0: f64,
    y0: f64,
    c_x: f64,
    /// Rectangle width `vT − s`.
    w: f64,
    has_rect: bool,
    side: Side,
    sin_psi: f64,
    cos_psi: f64,
    sin_phi: f64,
    cos_phi: f64,
}

impl Geom {
    fn new(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<Self> {
        if t <= 0.0 || !t.is_finite() {
            return domain("T must be > 0");
        }
        if p.s.is_nan() || p.s <= 0.0 {
            return domain("hexagonal packing needs s > 0");
        }
        let vt = p.v * t;
        let (x0, y0) = anchor(p);
        let phi = cfg.psi - FRAC_PI_6;
        let side = match round13(phi) {
            x if x > 0.0 => Side::Above,
            x if x < 0.0 => Side::Below,
            _ => Side::Mid,
        };
        Ok(Geom {
            s: p.s,
            d: p.d,
            vt,
            theta: cfg.theta,
            x0,
            y0,
            c_x: x0 + vt - p.s,
            w: vt - p.s,
            has_rect: round13((vt - p.s) / p.d) > 0.0,
            side,
            sin_psi: cfg.psi.sin(),
            cos_psi: cfg.psi.cos(),
            sin_phi: phi.sin(),
            cos_phi: phi.cos(),
        })
    }

    fn lane_lines(&self) -> (i64, i64) {
        let k = 2.0 / (SQRT3 * self.d);
        let side = self.s * self.sin_phi.abs();
        let minus = ifloor(k * side);
        let plus = ifloor(k * (self.w * self.cos_phi + side) + 1.0);
        (minus, plus)
    }

    fn k_prime(&self) -> i64 {
        let k = 2.0 / (SQRT3 * self.d);
        iceil(k * (self.w * self.cos_phi - self.s * self.sin_phi.abs()))
    }

    fn rect_range(&self, x_h: i64) -> (f64, f64) {
        let xh = x_h as f64;
        let sd = self.s / self.d;
        let wd = self.w / self.d;
        let lo1 = (self.sin_psi * xh - sd) / self.cos_phi;
        let hi1 = (self.sin_psi * xh + sd) / self.cos_phi;
        match self.side {
            Side::Mid => (xh / 2.0 - sd, xh / 2.0 + sd),
            Side::Above => {
                let lo2 = -self.cos_psi * xh / self.sin_phi;
                let hi2 = (wd - self.cos_psi * xh) / self.sin_phi;
                (lo1.max(lo2), hi1.min(hi2))
            }
            Side::Below => {
                let lo2 = (wd - self.cos_psi * xh) / self.sin_phi;
                let hi2 = -self.cos_psi * xh / self.sin_phi;
                (lo1.max(lo2), hi1.min(hi2))
            }
        }
    }

    /// Plane offset from the anchor of rectangle-frame lattice point `(x_h, y_h)`.
    fn rect_offset(&self, xh: f64, yh: f64) -> (f64, f64) {
        (
            self.d * (self.cos_psi * xh + self.sin_phi * yh),
            self.d * (-self.sin_psi * xh + self.cos_phi * yh),
        )
    }

    /// Rectangle count and the robot nearest (L1) to `(c_x, y0)`.
    fn scan_rectangle(&self) -> (u64, Option<(f64, f64)>) {
        if !self.has_rect {
            return (0, None);
        }
        let (minus, plus) = self.lane_lines();
        let mut count = 0u64;
        for x_h in -minus..plus {
            let (y1, y2) = self.rect_range(x_h);
            count += (ifloor(y2) - iceil(y1) + 1).max(0) as u64;
        }
        // Column x_h lies at perpendicular distance |x_h·√3/2 − w·cos φ / d| (in units of d)
        // from (c_x, y0), a lower bound on the L1 distance of its points; scan from the
        // right edge and stop once that bound exceeds the best key.
        let c_col = self.w * self.cos_phi / self.d;
        let mut best: Option<([f64; 3], (f64, f64))> = None;
        for x_h in (-minus..plus).rev() {
            let xh = x_h as f64;
            if let Some((k, _)) = &best {
                if xh * SQRT3 / 2.0 < c_col && c_col - xh * SQRT3 / 2.0 - 1e-9 > k[0] {
                    break;
                }
            }
            let (y1, y2) = self.rect_range(x_h);
            let (lo, hi) = (iceil(y1), ifloor(y2));
            if hi < lo {
                continue;
            }
            let mut cands = [lo, hi, lo, lo, lo, lo];
            if self.sin_phi != 0.0 {
                let b = (self.w / self.d - self.cos_psi * xh) / self.sin_phi;
                cands[2] = (b.floor() as i64).clamp(lo, hi);
                cands[3] = (b.ceil() as i64).clamp(lo, hi);
            }
            let b = self.sin_psi * xh / self.cos_phi;
            cands[4] = (b.floor() as i64).clamp(lo, hi);
            cands[5] = (b.ceil() as i64).clamp(lo, hi);
            for &yh in &cands {
                let (dx, y) = self.rect_offset(xh, yh as f64);
                let key = [
                    round13(((self.w - dx).abs() + y.abs()) / self.d),
                    round13(y.abs() / self.d),
                    -round13(y / self.d),
                ];
                let better = match &best {
                    None => true,
                    Some((k, _)) => key < *k,
                };
                if better {
                    best = Some((key, (self.x0 + dx, self.y0 + y)));
                }
            }
        }
        (count, best.map(|b| b.1))
    }

    /// `C_{−θ}`: half-disc centre seen from `last` in the `−θ` rotated frame.
    fn c_rot(&self, last: (f64, f64)) -> (f64, f64) {
        let (cx, cy) = (self.c_x - last.0, self.y0 - last.1);
        let (c, s) = (self.theta.cos(), self.theta.sin());
        (c * cx + s * cy, -s * cx + c * cy)
    }

    fn semi_bounds(&self, last: (f64, f64)) -> (i64, i64) {
        let k = 2.0 / (SQRT3 * self.d);
        let (sa, ca) = (
            (FRAC_PI_3 - self.theta).sin(),
            (FRAC_PI_3 - self.theta).cos(),
        );
        if self.has_rect {
            let proj = sa * (self.c_x - last.0) + ca * (self.y0 - last.1);
            let b = iceil(k * (sa * (self.c_x - last.0) + ca * (self.y0 - last.1 - self.s)));
            let u = ifloor(k * (proj + self.s));
            (b, u)
        } else {
            let r = (2.0 * self.s * self.vt - self.vt * self.vt).max(0.0).sqrt();
            let b = iceil(-k * r * (self.theta + FRAC_PI_6).sin());
            let u = if self.topmost_point_reachable() {
                ifloor(k * (sa * (self.c_x - self.x0) + self.s))
            } else {
                ifloor(k * r * (self.theta - FRAC_PI_3).cos())
            };
            (b, u)
        }
    }

    /// Whether the disc point furthest along the column normal lies right of `x = x0`.
    /// Same test as comparing the angle of that point with `π/2 − θ`, without the
    /// quadrant ambiguity of an arctangent of a ratio.
    fn topmost_point_reachable(&self) -> bool {
        round13((self.s * (FRAC_PI_6 + self.theta).cos() - (self.s - self.vt)) / self.d) >= 0.0
    }

    fn semi_range(&self, x_h: i64, last: (f64, f64)) -> Option<(f64, f64)> {
        let (cx, cy) = self.c_rot(last);
        let d = self.d;
        let xh = x_h as f64;
        let a = d * xh - cx;
        let q = SQRT3 * a - cy;
        let delta = 4.0 * self.s * self.s - q * q;
        if round13(delta / (d * d)) < 0.0 {
            return None;
        }
        let root = delta.max(0.0).sqrt();
        let c1 = (a + SQRT3 * cy - root) / (2.0 * d);
        let c2 = (a + SQRT3 * cy + root) / (2.0 * d);
        let den = (5.0 * FRAC_PI_6 - self.theta).sin();
        let (sl, cl) = (
            (FRAC_PI_2 - self.theta).sin(),
            (FRAC_PI_2 - self.theta).cos(),
        );
        let l = if self.has_rect {
            let l = (sl * a + cl * cy) / (d * den);
            let rl = round13(l);
            if rl - rl.floor() < SEAM_GUARD {
                l - 1.0
            } else {
                l
            }
        } else {
            sl * xh / den
        };
        Some((c1, l.min(c2)))
    }

    fn count_semi(&self, last: (f64, f64)) -> u64 {
        let (b, u) = self.semi_bounds(last);
        (b..=u)
            .filter_map(|x_h| self.semi_range(x_h, last))
            .map(|(y1, y2)| (ifloor(y2) - iceil(y1) + 1).max(0) as u64)
            .sum()
    }

    fn breakdown(&self) -> HexCountBreakdown {
        let (rect_count, last) = self.scan_rectangle();
        let last = last.unwrap_or((self.x0, self.y0));
        let (n_l_minus, n_l_plus, k_prime) = if self.has_rect {
            let (m, p) = self.lane_lines();
            (m, p, self.k_prime())
        } else {
            (0, 0, 0)
        };
        let (b, u) = self.semi_bounds(last);
        HexCountBreakdown {
            t: 0.0,
            theta: self.theta,
            n_l_minus,
            n_l_plus,
            k_prime,
            rect_count,
            semi_count: self.count_semi(last),
            last_robot: last,
            c_x: self.c_x,
            c_rot: self.c_rot(last),
            b,
            u,
        }
    }
}

fn require_corridor(p: &SwarmParams) -> Result<()> {
    if round13(2.0 * p.s / p.d - 1.0) < 0.0 {
        return domain("hexagonal packing needs d <= 2s");
    }
    Ok(())
}

/// Best asymptotic throughput of any packing through a corridor of width `2s`.
pub fn upper_bound_asymptotic(p: &SwarmParams) -> Result<f64> {
    require_corridor(p)?;
    Ok(2.0 / SQRT3 * (2.0 * p.s / p.d + 1.0) * p.v / p.d)
}

/// Column lines left (`n_l⁻`) and right (`n_l⁺`) of the anchor crossing the rectangle.
pub fn lane_line_counts(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<(i64, i64)> {
    let g = Geom::new(t, cfg, p)?;
    if !g.has_rect {
        return domain("rectangle absent: vT <= s");
    }
    Ok(g.lane_lines())
}

/// Column index past which column lines leave through the rectangle's right side.
pub fn k_prime(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<i64> {
    let g = Geom::new(t, cfg, p)?;
    if !g.has_rect {
        return domain("rectangle absent: vT <= s");
    }
    Ok(g.k_prime())
}

/// Real bounds `(Y1ᴿ, Y2ᴿ)` on `y_h` for rectangle column `x_h`.
pub fn rect_column_range(x_h: i64, t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<(f64, f64)> {
    Ok(Geom::new(t, cfg, p)?.rect_range(x_h))
}

/// Robots inside the rectangle (`N_R`).
pub fn count_rectangle(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<u64> {
    Ok(Geom::new(t, cfg, p)?.scan_rectangle().0)
}

/// Rectangle robot minimising `|c_x − x| + |y0 − y|`; the anchor when there is no rectangle.
/// Ties go to the smaller `|y − y0|`, then to `y ≥ y0`.
pub fn last_robot_in_rectangle(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<(f64, f64)> {
    let g = Geom::new(t, cfg, p)?;
    Ok(g.scan_rectangle().1.unwrap_or((g.x0, g.y0)))
}

/// Column range `[B, U]` of the half disc in the frame anchored at `last`.
pub fn semicircle_bounds(
    t: f64,
    cfg: &HexConfig,
    p: &SwarmParams,
    last: (f64, f64),
) -> Result<(i64, i64)> {
    Ok(Geom::new(t, cfg, p)?.semi_bounds(last))
}

/// Real bounds `(Y1ˢ, Y2ˢ)` on `y_h` for half-disc column `x_h`; `None` when the
/// column misses the disc.
pub fn semicircle_column_range(
    x_h: i64,
    t: f64,
    cfg: &HexConfig,
    p: &SwarmParams,
    last: (f64, f64),
) -> Result<Option<(f64, f64)>> {
    Ok(Geom::new(t, cfg, p)?.semi_range(x_h, last))
}

/// Robots in the half disc (`N_S`), counted from an explicit frame origin.
/// When `vT > s`, any lattice point works as `last`; the count does not depend on it.
/// Otherwise the cap is anchored at the first robot and `last` must be that robot.
pub fn count_semicircle_from(
    t: f64,
    cfg: &HexConfig,
    p: &SwarmParams,
    last: (f64, f64),
) -> Result<u64> {
    Ok(Geom::new(t, cfg, p)?.count_semi(last))
}

/// Robots in the half disc (`N_S`).
pub fn count_semicircle(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<u64> {
    let g = Geom::new(t, cfg, p)?;
    let last = g.scan_rectangle().1.unwrap_or((g.x0, g.y0));
    Ok(g.count_semi(last))
}

pub fn breakdown(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<HexCountBreakdown> {
    let mut b = Geom::new(t, cfg, p)?.breakdown();
    b.t = t;
    Ok(b)
}

/// `N_R + N_S`: robots arrived by `T`, the first one included.
pub fn total_count(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<u64> {
    Ok(breakdown(t, cfg, p)?.total())
}

pub fn throughput_at(t: f64, cfg: &HexConfig, p: &SwarmParams) -> Result<f64> {
    require_corridor(p)?;
    Ok((total_count(t, cfg, p)? as f64 - 1.0) / t)
}

/// `(low, high]` bracket of the limit of `f_h(T, θ)`.
pub fn asymptotic_bounds(cfg: &HexConfig, p: &SwarmParams) -> Result<(f64, f64)> {
    require_corridor(p)?;
    let mid = 4.0 * p.v * p.s / (SQRT3 * p.d * p.d);
    let half = 2.0 * p.v * (cfg.theta - FRAC_PI_6).cos() / (SQRT3 * p.d);
    Ok((mid - half, mid + half))
}

/// Integers in `[ceil13(y1), floor13(y2)]`, zero when the range is empty.
pub fn column_size(y1: f64, y2: f64) -> u64 {
    (floor13(y2) - ceil13(y1) + 1.0).max(0.0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(s: f64) -> SwarmParams {
        SwarmParams::new(1.0, 1.0, s).unwrap()
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn frame_roundtrip() {
        let f = HexFrame::new(1.3, 0.4, (2.0, -1.0));
        let m = f.forward;
        let i = f.inverse;
        for r in 0..2 {
            for c in 0..2 {
                let v = m[r][0] * i[0][c] + m[r][1] * i[1][c];
                assert_abs_diff_eq!(v, if r == c { 1.0 } else { 0.0 }, epsilon = 1e-12);
            }
        }
        let (x, y) = f.to_plane(3.0, -2.0);
        let (a, b) = f.to_hex(x, y);
        assert_abs_diff_eq!(a, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b, -2.0, epsilon = 1e-12);
    }

    #[test]
    fn frames_share_lattice() {
        let cfg = HexConfig::new(0.37).unwrap();
        let p = params(3.0);
        let rect = HexFrame::rectangle(&cfg, &p);
        let semi = HexFrame::semicircle(&cfg, &p, rect.to_plane(4.0, 7.0));
        for (a, b) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-3.0, 5.0)] {
            let (x, y) = semi.to_plane(a, b);
            let (h1, h2) = rect.to_hex(x, y);
            assert_abs_diff_eq!(h1, h1.round(), epsilon = 1e-9);
            assert_abs_diff_eq!(h2, h2.round(), epsilon = 1e-9);
        }
    }

    #[test]
    fn config_range() {
        assert!(HexConfig::new(FRAC_PI_3).is_err());
        assert!(HexConfig::new(-0.01).is_err());
        assert_abs_diff_eq!(
            HexConfig::wrapped(FRAC_PI_3 + 0.1).unwrap().theta,
            0.1,
            epsilon = 1e-12
        );
    }

    #[test]
    fn upper_bounds() {
        assert_abs_diff_eq!(
            upper_bound_asymptotic(&params(3.0)).unwrap(),
            14.0 / SQRT3,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            upper_bound_asymptotic(&params(6.0)).unwrap(),
            26.0 / SQRT3,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            upper_bound_asymptotic(&params(0.5)).unwrap(),
            4.0 / SQRT3,
            epsilon = 1e-12
        );
        assert!(upper_bound_asymptotic(&params(0.4)).is_err());
    }

    #[test]
    fn mid_angle_forms() {
        let cfg = HexConfig::new(FRAC_PI_6).unwrap();
        let p = params(3.0);
        assert_eq!(lane_line_counts(9.8, &cfg, &p).unwrap().0, 0);
        let (y1, y2) = rect_column_range(4, 9.8, &cfg, &p).unwrap();
        assert_abs_diff_eq!(y1, 2.0 - 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y2, 2.0 + 3.0, epsilon = 1e-12);
    }

    #[test]
    fn small_t_counts_first_robot_only() {
        for th in [0.0, 0.3, FRAC_PI_6, 1.0] {
            let cfg = HexConfig::new(th).unwrap();
            let b = breakdown(1e-6, &cfg, &params(3.0)).unwrap();
            assert_eq!((b.rect_count, b.semi_count), (0, 1), "θ={th}");
            assert_eq!(throughput_at(1e-6, &cfg, &params(3.0)).unwrap(), 0.0);
        }
    }

    #[test]
    fn empty_rectangle_at_vt_equal_s() {
        let cfg = HexConfig::new(0.0).unwrap();
        assert_eq!(count_rectangle(3.0, &cfg, &params(3.0)).unwrap(), 0);
        assert_eq!(
            last_robot_in_rectangle(3.0, &cfg, &params(3.0)).unwrap(),
            (3.0, 0.0)
        );
        assert!(lane_line_counts(3.0, &cfg, &params(3.0)).is_err());
    }

    #[test]
    fn semicircle_independent_of_frame_origin() {
        let cfg = HexConfig::new(0.21).unwrap();
        let p = params(4.5);
        let t = 13.7;
        let rect = HexFrame::rectangle(&cfg, &p);
        let reference = count_semicircle(t, &cfg, &p).unwrap();
        for (a, b) in [(0.0, 0.0), (5.0, 3.0), (12.0, 2.0), (-2.0, -4.0)] {
            let origin = rect.to_plane(a, b);
            assert_eq!(
                count_semicircle_from(t, &cfg, &p, origin).unwrap(),
                reference
            );
        }
    }

    #[test]
    fn bounds_at_mid_angle() {
        let cfg = HexConfig::new(FRAC_PI_6).unwrap();
        let p = params(3.0);
        let (lo, hi) = asymptotic_bounds(&cfg, &p).unwrap();
        assert_abs_diff_eq!(lo, 2.0 / SQRT3 * 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 2.0 / SQRT3 * 7.0, epsilon = 1e-12);
        for th in [0.0, 0.2, 0.9] {
            let (_, hi) = asymptotic_bounds(&HexConfig::new(th).unwrap(), &p).unwrap();
            assert!(hi <= upper_bound_asymptotic(&p).unwrap() + 1e-12);
        }
    }
}
