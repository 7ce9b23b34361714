//! Swarm parameters, the shared rounding policy and the two throughput definitions.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Decimal places kept before any floor/ceil on a computed quantity.
pub const ROUND_DECIMALS: i32 = 13;

/// Rounds to 13 decimal places. Values too large for the scaling are returned unchanged.
pub fn round13(x: f64) -> f64 {
    let y = (x * 1e13).round() / 1e13;
    if y.is_finite() {
        y
    } else {
        x
    }
}

/// `floor` after [`round13`].
pub fn floor13(x: f64) -> f64 {
    round13(x).floor()
}

/// `ceil` after [`round13`].
pub fn ceil13(x: f64) -> f64 {
    round13(x).ceil()
}

/// `floor13` as a signed integer.
pub fn ifloor(x: f64) -> i64 {
    floor13(x) as i64
}

/// `ceil13` as a signed integer.
pub fn iceil(x: f64) -> i64 {
    ceil13(x) as i64
}

/// Speed `v` (m/s), minimum inter-robot distance `d` (m) and target radius `s` (m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwarmParams {
    pub v: f64,
    pub d: f64,
    pub s: f64,
}

impl SwarmParams {
    pub fn new(v: f64, d: f64, s: f64) -> Result<Self> {
        let p = SwarmParams { v, d, s };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v.is_finite() && self.d.is_finite() && self.s.is_finite()) {
            return domain("v, d and s must be finite");
        }
        if self.v <= 0.0 {
            return domain(format!("speed v must be > 0, got {}", self.v));
        }
        if self.d <= 0.0 {
            return domain(format!("distance d must be > 0, got {}", self.d));
        }
        if self.s < 0.0 {
            return domain(format!("radius s must be >= 0, got {}", self.s));
        }
        Ok(())
    }

    /// Ratio `s/d`.
    pub fn u(&self) -> RatioU {
        RatioU(self.s / self.d)
    }

    /// Same distances, different speed.
    pub fn with_speed(&self, v: f64) -> Self {
        SwarmParams { v, ..*self }
    }
}

/// Dimensionless ratio `u = s/d`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct RatioU(pub f64);

impl RatioU {
    pub fn of(p: &SwarmParams) -> Self {
        p.u()
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// One point of a throughput curve. `f` is absent at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThroughputSample {
    pub t: f64,
    pub n: usize,
    pub f: Option<f64>,
}

/// Cumulative arrivals over time, measured from the first arrival.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ThroughputSeries {
    pub samples: Vec<ThroughputSample>,
}

impl ThroughputSeries {
    /// Throughput at the last sample, if any time has elapsed.
    pub fn final_f(&self) -> Option<f64> {
        self.samples.last().and_then(|s| s.f)
    }

    /// Recomputes `f` from `(t, n)`.
    pub fn recompute(&self) -> ThroughputSeries {
        let samples = self
            .samples
            .iter()
            .map(|s| ThroughputSample {
                f: if s.t > 0.0 {
                    Some((s.n as f64 - 1.0) / s.t)
                } else {
                    None
                },
                ..*s
            })
            .collect();
        ThroughputSeries { samples }
    }

    /// CSV with header `t,n,f`; `f` is blank where undefined.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(["t", "n", "f"]).expect("in-memory write");
        for s in &self.samples {
            let f = s.f.map(|f| f.to_string()).unwrap_or_default();
            w.write_record([s.t.to_string(), s.n.to_string(), f])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
    }
}

fn check_sorted(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) {
        return domain("arrival times must be finite");
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return domain("arrival times must be sorted ascending");
    }
    Ok(())
}

/// Builds the `(t, n, (n-1)/t)` series with times shifted so the first arrival is at 0.
///
/// Simultaneous arrivals collapse into one sample carrying the cumulative count, so
/// `t` is strictly increasing.
pub fn throughput_from_arrivals(arrival_times: &[f64]) -> Result<ThroughputSeries> {
    if arrival_times.is_empty() {
        return domain("arrival list is empty");
    }
    check_sorted(arrival_times)?;
    let t0 = arrival_times[0];
    let mut samples: Vec<ThroughputSample> = Vec::new();
    for (idx, &raw) in arrival_times.iter().enumerate() {
        let t = raw - t0;
        let n = idx + 1;
        let f = if t > 0.0 {
            Some((n as f64 - 1.0) / t)
        } else {
            None
        };
        match samples.last_mut() {
            Some(last) if last.t == t => {
                last.n = n;
                last.f = f;
            }
            _ => samples.push(ThroughputSample { t, n, f }),
        }
    }
    Ok(ThroughputSeries { samples })
}

/// Inverse of the mean gap between consecutive arrivals.
pub fn mean_interarrival_throughput(arrival_times: &[f64]) -> Result<f64> {
    if arrival_times.len() < 2 {
        return domain("at least two arrivals are required");
    }
    check_sorted(arrival_times)?;
    let gaps: f64 = arrival_times.windows(2).map(|w| w[1] - w[0]).sum();
    let mean = gaps / (arrival_times.len() - 1) as f64;
    if mean <= 0.0 {
        return domain("all arrivals are simultaneous; throughput is unbounded");
    }
    Ok(1.0 / mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_snaps_float_noise() {
        assert_eq!(floor13(2.9999999999999996), 3.0);
        assert_eq!(ceil13(3.0000000000000004), 3.0);
        assert_eq!(floor13(2.99), 2.0);
        assert_eq!(round13(f64::MAX), f64::MAX);
    }

    #[test]
    fn params_validation() {
        assert!(SwarmParams::new(1.0, 1.0, 0.0).is_ok());
        assert!(SwarmParams::new(0.0, 1.0, 1.0).is_err());
        assert!(SwarmParams::new(1.0, -1.0, 1.0).is_err());
        assert!(SwarmParams::new(1.0, 1.0, -0.1).is_err());
        assert!(SwarmParams::new(f64::NAN, 1.0, 1.0).is_err());
        assert_eq!(SwarmParams::new(1.0, 2.0, 3.0).unwrap().u(), RatioU(1.5));
    }

    #[test]
    fn unit_queue() {
        let s = throughput_from_arrivals(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.final_f(), Some(1.0));
        assert_eq!(s.samples[0].f, None);
        assert_eq!(s.samples[0].n, 1);
    }

    #[test]
    fn single_arrival() {
        let s = throughput_from_arrivals(&[5.0]).unwrap();
        assert_eq!(
            s.samples,
            vec![ThroughputSample {
                t: 0.0,
                n: 1,
                f: None
            }]
        );
    }

    #[test]
    fn half_second_gaps() {
        let s = throughput_from_arrivals(&[0.0, 0.5, 1.0, 1.5]).unwrap();
        assert_eq!(s.final_f(), Some(2.0));
    }

    #[test]
    fn errors() {
        assert!(throughput_from_arrivals(&[]).is_err());
        assert!(throughput_from_arrivals(&[1.0, 0.5]).is_err());
        assert!(mean_interarrival_throughput(&[1.0]).is_err());
        assert!(mean_interarrival_throughput(&[2.0, 1.0]).is_err());
    }

    #[test]
    fn mean_gap() {
        assert_eq!(
            mean_interarrival_throughput(&[0.0, 1.0, 2.0, 3.0]).unwrap(),
            1.0
        );
        assert_eq!(mean_interarrival_throughput(&[0.0, 2.0]).unwrap(), 0.5);
    }

    #[test]
    fn ties_collapse() {
        let s = throughput_from_arrivals(&[1.0, 1.0, 2.0, 2.0, 2.0]).unwrap();
        assert_eq!(s.samples.len(), 2);
        assert_eq!(s.samples[0].n, 2);
        assert_eq!(
            s.samples[1],
            ThroughputSample {
                t: 1.0,
                n: 5,
                f: Some(4.0)
            }
        );
    }

    #[test]
    fn csv_blank_first_f() {
        let s = throughput_from_arrivals(&[0.0, 2.0]).unwrap();
        assert_eq!(s.to_csv(), "t,n,f\n0,1,\n2,2,0.5\n");
    }
}
