//! Collision-model cooling of a small Ising target by spin-star
//! refrigerators.
//!
//! The target (a pair of coupled qubits in the reference setup) exchanges
//! excitations with streams of refrigerant qubits, one stream per transition
//! frequency ω. Each stream enters the collision with fixed ground/excited
//! populations, so its effect coarse-grains to a Lindblad dissipator
//!
//! ```text
//! L(ρ) = Σ_baths γ·[ p_g·D(A(ω)) + p_e·D(A†(ω)) ]
//! ```
//!
//! with `D(A)ρ = AρA† - ½{A†A, ρ}` and secular jump operators built from
//! the target's energy eigenspaces ([`target`]). When the populations obey
//! `p_e/p_g = e^{-βω}` (a thermal stream), the unique fixed point is the
//! target Gibbs state at β; streams fed by spin-star refrigerators realize
//! this at β_eff instead, cooling the target below its environment. Bath
//! populations can also pool several star qubits ([`refrigerant_populations`]).

pub mod dynamics;
pub mod target;

pub use dynamics::{
    evolve, fit_inverse_temperature, steady_state, write_trajectory_csv, Liouvillian, Trajectory,
};
pub use target::{TargetIsingModel, Transition};

use crate::analytic::{ancilla_populations, central_populations};
use crate::params::ReducedParams;
use crate::{Error, Result};

/// One dissipative contact: a stream of two-level systems at frequency ω
/// hitting one target qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    /// Target qubit the stream couples to (0-based).
    pub qubit: usize,
    /// Transition frequency (angular GHz); must match a transition of the
    /// target on that qubit.
    pub omega: f64,
    /// Ground-state population of the incoming stream.
    pub p_ground: f64,
    /// Excited-state population of the incoming stream.
    pub p_excited: f64,
    /// Coarse-grained collision rate γ (1/ns).
    pub rate: f64,
}

impl BathSpec {
    pub fn new(qubit: usize, omega: f64, p_ground: f64, p_excited: f64, rate: f64) -> Result<Self> {
        if omega <= 0.0 || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bath frequency must be positive and finite, got {omega}"
            )));
        }
        if !(0.0..=1.0).contains(&p_ground) || !(0.0..=1.0).contains(&p_excited) {
            return Err(Error::InvalidParameter(format!(
                "bath populations must lie in [0, 1], got ({p_ground}, {p_excited})"
            )));
        }
        if (p_ground + p_excited - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "bath populations must sum to 1, got {}",
                p_ground + p_excited
            )));
        }
        if rate < 0.0 || !rate.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bath rate must be non-negative and finite, got {rate}"
            )));
        }
        Ok(Self { qubit, omega, p_ground, p_excited, rate })
    }

    /// Stream at thermal equilibrium: `p_e/p_g = e^{-βω}`.
    pub fn thermal(qubit: usize, omega: f64, beta: f64, rate: f64) -> Result<Self> {
        if beta <= 0.0 || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "inverse temperature must be positive and finite, got {beta}"
            )));
        }
        let p_excited = 1.0 / (1.0 + (beta * omega).exp());
        let p_ground = 1.0 / (1.0 + (-beta * omega).exp());
        Self::new(qubit, omega, p_ground, p_excited, rate)
    }
}

/// Thermal contacts at inverse temperature β on every transition of the
/// target, all at the same rate. This models plain environment exposure,
/// and, evaluated at β_eff, ideal refrigerant streams.
pub fn thermal_bath_set(model: &TargetIsingModel, beta: f64, rate: f64) -> Result<Vec<BathSpec>> {
    model
        .transitions()?
        .iter()
        .map(|t| BathSpec::thermal(t.qubit, t.omega, beta, rate))
        .collect()
}

/// Which star qubits are pooled into the refrigerant stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolMode {
    /// Central qubit only: populations at β_eff.
    CentralOnly,
    /// All N+1 qubits pooled.
    Whole,
    /// The center plus this many ancillas.
    CentralPlusAncillas(usize),
}

/// Ground/excited populations `(p_g, p_e)` of the refrigerant stream drawn
/// from a spin star at parameters `p`.
///
/// A pool of the center plus `n` ancillas averages the per-qubit fractions
/// `(p_down⁰ + n·p_down')/(n+1)` and likewise for up, with the single-qubit
/// pairs from [`central_populations`] and [`ancilla_populations`]; spin up
/// is the excited state for h > 0. Both entries are sums of positive terms,
/// so deeply polarized pools keep their tiny excited fraction instead of
/// cancelling it away. [`PoolMode::CentralOnly`] reproduces the
/// central-qubit marginal, so `½·ln(p_g/p_e) = x_eff` exactly.
pub fn refrigerant_populations(p: &ReducedParams, mode: PoolMode) -> Result<(f64, f64)> {
    let pooled = |n_pooled: usize| {
        let center = central_populations(p);
        let ancilla = ancilla_populations(p);
        let k = n_pooled as f64 + 1.0;
        (
            (center.p_down + n_pooled as f64 * ancilla.p_down) / k,
            (center.p_up + n_pooled as f64 * ancilla.p_up) / k,
        )
    };
    match mode {
        PoolMode::CentralOnly => {
            let state = central_populations(p);
            Ok((state.p_down, state.p_up))
        }
        PoolMode::Whole => Ok(pooled(p.n_ancillas)),
        PoolMode::CentralPlusAncillas(n_pooled) => {
            if n_pooled > p.n_ancillas {
                return Err(Error::InvalidParameter(format!(
                    "cannot pool {n_pooled} ancillas, the star has only {}",
                    p.n_ancillas
                )));
            }
            Ok(pooled(n_pooled))
        }
    }
}
