//! Two offset lanes tangent to a small target, `0 < s < d/2`.

use serde::{Deserialize, Serialize};

use crate::core_model::{floor13, SwarmParams};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompactRegime {
    /// `0 < s ≤ √3·d/4`: lanes too close for an equilateral formation.
    Narrow,
    /// `√3·d/4 < s < d/2`.
    Wide,
}

/// Lane geometry: lanes at `y = ±s`, the second lane trailing by `d_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompactLayout {
    pub d_p: f64,
    pub d_e: f64,
    pub regime: CompactRegime,
}

pub fn layout(p: &SwarmParams) -> Result<CompactLayout> {
    let (s, d) = (p.s, p.d);
    if s <= 0.0 {
        return domain("compact lanes need s > 0; use point_target for s = 0");
    }
    if s >= d / 2.0 {
        return domain("compact lanes need s < d/2; use parallel_lanes for s >= d/2");
    }
    if s <= 3f64.sqrt() * d / 4.0 {
        // d_e >= d holds exactly here; the max only absorbs rounding at the boundary.
        let d_e = (2.0 * (d * d - 4.0 * s * s).max(0.0).sqrt()).max(d);
        Ok(CompactLayout {
            d_p: d_e / 2.0,
            d_e,
            regime: CompactRegime::Narrow,
        })
    } else {
        Ok(CompactLayout {
            d_p: d / 2.0,
            d_e: d,
            regime: CompactRegime::Wide,
        })
    }
}

/// Robots arrived by `T` in the leading and trailing lane.
pub fn lane_counts(t: f64, p: &SwarmParams) -> Result<(u64, u64)> {
    let l = layout(p)?;
    if t < 0.0 {
        return domain("T must be >= 0");
    }
    let vt = p.v * t;
    let n1 = floor13(vt / l.d_e + 1.0) as u64;
    let n2 = floor13((vt - l.d_p) / l.d_e + 1.0).max(0.0) as u64;
    Ok((n1, n2))
}

pub fn throughput_at(t: f64, p: &SwarmParams) -> Result<f64> {
    let l = layout(p)?;
    if t <= 0.0 || !t.is_finite() {
        return domain("T must be > 0");
    }
    let q = p.v * t / l.d_e;
    Ok((floor13(q) + floor13(q + 0.5)) / t)
}

pub fn asymptotic(p: &SwarmParams) -> Result<f64> {
    let l = layout(p)?;
    Ok(match l.regime {
        CompactRegime::Narrow => p.v / (p.d * (1.0 - (2.0 * p.s / p.d).powi(2)).sqrt()),
        CompactRegime::Wide => 2.0 * p.v / p.d,
    })
}
