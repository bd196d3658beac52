//! Few-qubit spin-star quantum refrigerator: closed-form thermodynamics,
//! exact-diagonalization oracles, and collision-model cooling dynamics.
//!
//! The working medium is a central qubit coupled to `N` ancilla qubits by a
//! longitudinal Ising interaction,
//!
//! ```text
//! H = h Σ_{n=0}^{N} σ_z,n + g σ_z,0 Σ_{n=1}^{N} σ_z,n
//! ```
//!
//! which is diagonal in the computational basis, so every equilibrium
//! property has a closed form. [`analytic`] holds those closed forms,
//! [`cycle`] builds the four-stroke refrigeration cycle on top of them, and
//! [`oracle`] provides independent brute-force routes (configuration
//! enumeration, dense diagonalization) used to validate both. [`collision`]
//! implements the repeated-interaction cooling of a two-qubit Ising target
//! by baths whose populations are set by the refrigerator output.
//!
//! All bulk computation is done in dimensionless variables `x = βh`,
//! `r = g/h`; physical units (GHz, mK, ns) attach only at the boundaries in
//! [`params`].

pub mod analytic;
pub mod collision;
pub mod cycle;
pub mod oracle;
pub mod params;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Output could not be written.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A parameter failed domain validation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A requested problem size exceeds an enforced ceiling.
    #[error("resource ceiling exceeded: {what} = {requested} > {ceiling}")]
    ResourceCeiling {
        what: &'static str,
        requested: usize,
        ceiling: usize,
    },

    /// Cycle efficiency is undefined at g = 0: no work is exchanged and the
    /// cycle degenerates to the identity.
    #[error("cycle efficiency undefined at g = 0 (degenerate cycle, zero work)")]
    DegenerateCycle,

    /// Recycled-work efficiency requires the engine to return less work than
    /// the cycle consumed.
    #[error("recycled engine work {w_engine} must be below the cycle work {w_cycle}")]
    EngineWorkExceedsCycle { w_engine: f64, w_cycle: f64 },

    /// An operator expected to be Hermitian was not.
    #[error("matrix is not Hermitian: max |A - A†| element = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    /// Operator dimensions do not match.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A bath frequency matched no transition of the target system, so its
    /// jump operator would be identically zero.
    #[error(
        "no transition of qubit {qubit} at frequency {omega} (available: {available:?}); \
         the jump operator would be empty"
    )]
    NoMatchingTransition {
        qubit: usize,
        omega: f64,
        available: Vec<f64>,
    },

    /// A transition frequency vanished, breaking the secular approximation.
    #[error("zero-frequency transition on qubit {qubit}: |h ± J| = 0 breaks the secular form")]
    ZeroFrequencyTransition { qubit: usize },

    /// The Liouvillian kernel is multi-dimensional: the baths do not connect
    /// the whole state space and the steady state is not unique.
    #[error(
        "steady state not unique: Liouvillian kernel has dimension {kernel_dim}; \
         the configured baths leave part of the state space disconnected"
    )]
    NonUniqueSteadyState { kernel_dim: usize },

    /// Numerical integration produced an unphysical state.
    #[error(
        "integration unstable at t = {t} ns: min eigenvalue {min_eigenvalue:.3e} < -1e-8; \
         reduce the time step"
    )]
    IntegrationUnstable { t: f64, min_eigenvalue: f64 },

    /// A requested effective temperature cannot be reached by any coupling.
    #[error(
        "target β_eff = {requested} is outside the reachable range ({lo}, {hi}); \
         the deep-coupling bound is β_eff → (N+1)β"
    )]
    UnreachableTarget { requested: f64, lo: f64, hi: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
