use thiserror::Error;

/// Errors raised by the throughput models and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwarmError {
    /// A precondition on the inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// The simulator could not complete a run.
    #[error("simulation error: {0}")]
    Simulation(String),
}

pub type Result<T> = std::result::Result<T, SwarmError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(SwarmError::Domain(msg.into()))
}
