//! Common-target-area throughput of robotic swarm entry strategies.
//!
//! Closed forms for compact lanes, parallel lanes, hexagonal packing and touch-and-run,
//! a brute-force lattice oracle for the hexagonal counts, strategy comparison over
//! `u = s/d` and a constant-speed kinematic simulator used for cross-validation.

pub mod compact_lanes;
pub mod comparison;
pub mod core_model;
pub mod error;
pub mod hex_oracle;
pub mod hex_packing;
pub mod parallel_lanes;
pub mod point_target;
pub mod simulator;
pub mod touch_run;

pub use core_model::{SwarmParams, ThroughputSeries};
pub use error::{Result, SwarmError};
