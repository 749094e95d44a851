//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by flux construction, Riemann solvers, the front tracking
/// evolution, the finite volume scheme, and the experiment harness.
#[derive(Debug, Error)]
pub enum FtError {
    /// A flux failed a monotonicity or positivity check.
    #[error("invalid flux `{name}`: {reason}")]
    InvalidFlux { name: String, reason: String },

    /// A state or flux value left the working range of a piecewise linear
    /// flux. Usually means the working range was chosen too small.
    #[error("{what} = {value} outside range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// The explicit upwind scheme was configured with an unstable time step.
    #[error("CFL violation: lambda * max flux Lipschitz constant = {product} > 1")]
    CflViolation { product: f64 },

    /// The event loop exceeded its safety cap; indicates a tie-handling bug
    /// or a working-range blowup rather than a physical configuration.
    #[error("front tracking did not terminate within {cap} events")]
    NonTermination { cap: u64 },

    /// A malformed experiment or CLI configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// File I/O failure, annotated with the offending path.
    #[error("i/o error on `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, FtError>;
