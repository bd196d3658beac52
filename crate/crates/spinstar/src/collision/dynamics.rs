//! Lindblad dynamics of the collision-cooled target.
//!
//! Repeated brief collisions with refrigerant qubits coarse-grain into a
//! Lindblad generator built from dissipators alone,
//!
//! ```text
//! L(ρ) = Σ_k γ_k ( p_g,k D[A_k] + p_e,k D[A_k†] ) ρ,
//! D[A]ρ = A ρ A† − ½{A†A, ρ},
//! ```
//!
//! with one lowering/raising pair per bath line. Thermal weights obey the
//! detailed-balance ratio `p_e/p_g = e^{−βω}`, which pins the unique fixed
//! point to the Gibbs state of the target at β; the fixed-step integrator
//! and the null-space solver below provide two independent routes to that
//! state and are tested against each other.
//!
//! Density matrices are vectorized column-major, so `vec(AρB) = (Bᵀ ⊗ A)
//! vec(ρ)` and the generator becomes a `d² × d²` matrix whose kernel holds
//! the stationary states.

use std::io::Write;

use num_complex::Complex64;

pub(crate) use crate::oracle::dense::CMatrix;

use super::target::TargetIsingModel;
use super::BathSpec;
use crate::oracle::dense::hermiticity_deviation;
use crate::oracle::DensityMatrix;
use crate::params::{temperature_from_beta, UnitConvention};
use crate::{Error, Result};

/// Eigenvalues of a sampled state below this are an integration failure.
const POSITIVITY_FLOOR: f64 = -1e-8;

/// Singular values below this fraction of the largest count as null space.
const KERNEL_TOLERANCE: f64 = 1e-10;

/// One dissipator channel `w · D[A]` with its adjoint matrices cached.
struct Channel {
    weight: f64,
    op: CMatrix,
    op_dag: CMatrix,
    op_dag_op: CMatrix,
}

/// The full Lindblad generator for a target coupled to a set of baths.
pub struct Liouvillian {
    dim: usize,
    channels: Vec<Channel>,
}

impl Liouvillian {
    /// Assemble the generator, one lowering and one raising channel per
    /// bath line. Channels with zero weight are dropped; a bath whose
    /// frequency matches no transition of its qubit is an error.
    pub fn build(model: &TargetIsingModel, baths: &[BathSpec]) -> Result<Self> {
        if baths.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one bath is required to build a Liouvillian".into(),
            ));
        }
        let mut channels = Vec::with_capacity(2 * baths.len());
        for bath in baths {
            let (lowering, raising) = model.jump_operators(bath.qubit, bath.omega)?;
            let cool = bath.rate * bath.p_ground;
            let heat = bath.rate * bath.p_excited;
            if cool > 0.0 {
                channels.push(Channel {
                    weight: cool,
                    op_dag_op: &raising * &lowering,
                    op: lowering.clone(),
                    op_dag: raising.clone(),
                });
            }
            if heat > 0.0 {
                channels.push(Channel {
                    weight: heat,
                    op_dag_op: &lowering * &raising,
                    op: raising,
                    op_dag: lowering,
                });
            }
        }
        if channels.is_empty() {
            return Err(Error::InvalidParameter(
                "all bath channel weights vanish; the generator would be zero".into(),
            ));
        }
        Ok(Self { dim: model.dim(), channels })
    }

    /// Hilbert-space dimension the generator acts on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of nonzero dissipator channels.
    pub fn n_channels(&self) -> usize {
        self.channels.len()
    }

    /// Sum of all channel weights (an overall rate scale, 1/ns).
    pub fn total_weight(&self) -> f64 {
        self.channels.iter().map(|c| c.weight).sum()
    }

    /// Apply the generator to a matrix: `L(ρ)`.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let half = Complex64::new(0.5, 0.0);
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for ch in &self.channels {
            let sandwich = &ch.op * rho * &ch.op_dag;
            let anticommutator = &ch.op_dag_op * rho + rho * &ch.op_dag_op;
            out += (sandwich - anticommutator * half) * Complex64::new(ch.weight, 0.0);
        }
        out
    }

    /// The generator as a `d² × d²` matrix on column-major vectorized states.
    ///
    /// `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)` turns each channel into
    /// `w [ conj(A) ⊗ A − ½ I ⊗ A†A − ½ (A†A)ᵀ ⊗ I ]`. Cost grows as d⁶;
    /// meant for the few-qubit targets this module is scoped to.
    pub fn superoperator(&self) -> CMatrix {
        let d = self.dim;
        let eye = CMatrix::identity(d, d);
        let half = Complex64::new(0.5, 0.0);
        let mut sup = CMatrix::zeros(d * d, d * d);
        for ch in &self.channels {
            let term = ch.op.conjugate().kronecker(&ch.op)
                - eye.kronecker(&ch.op_dag_op) * half
                - ch.op_dag_op.transpose().kronecker(&eye) * half;
            sup += term * Complex64::new(ch.weight, 0.0);
        }
        sup
    }
}

/// A sampled solution of `ρ̇ = L(ρ)`.
#[derive(Debug)]
pub struct Trajectory {
    /// Sample times (ns), starting at 0 and ending at the final time.
    pub times: Vec<f64>,
    /// The state at each sample time.
    pub states: Vec<DensityMatrix>,
    /// Largest |tr ρ − 1| seen at any integration step.
    pub max_trace_drift: f64,
    /// Largest Hermiticity deviation seen before per-step symmetrization.
    pub max_hermiticity_deviation: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The state at the final time.
    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("a trajectory holds at least its initial state")
    }
}

/// One classical fourth-order Runge-Kutta step of `ρ̇ = L(ρ)`.
fn rk4_step(liouvillian: &Liouvillian, rho: &CMatrix, dt: f64) -> CMatrix {
    let c = |v: f64| Complex64::new(v, 0.0);
    let k1 = liouvillian.apply(rho);
    let k2 = liouvillian.apply(&(rho + &k1 * c(0.5 * dt)));
    let k3 = liouvillian.apply(&(rho + &k2 * c(0.5 * dt)));
    let k4 = liouvillian.apply(&(rho + &k3 * c(dt)));
    rho + (k1 + k2 * c(2.0) + k3 * c(2.0) + k4) * c(dt / 6.0)
}

/// Integrate `ρ̇ = L(ρ)` from `initial` to `t_final` with fixed steps `dt`,
/// recording every `sample_stride`-th step (plus the initial and final
/// states).
///
/// The state is re-symmetrized after every step and the discarded asymmetry
/// tracked; the trace is left untouched so its drift is an honest error
/// gauge. Each *recorded* state is checked for positivity — an eigenvalue
/// below −10⁻⁸, or any non-finite entry, aborts with
/// [`Error::IntegrationUnstable`]. A last partial step lands exactly on
/// `t_final` when it is not a multiple of `dt`.
pub fn evolve(
    initial: &DensityMatrix,
    liouvillian: &Liouvillian,
    t_final: f64,
    dt: f64,
    sample_stride: usize,
) -> Result<Trajectory> {
    if initial.dim() != liouvillian.dim() {
        return Err(Error::DimensionMismatch {
            left: initial.dim(),
            right: liouvillian.dim(),
        });
    }
    if t_final <= 0.0 || !t_final.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "final time must be positive and finite, got {t_final}"
        )));
    }
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "step size must be positive and finite, got {dt}"
        )));
    }
    if sample_stride == 0 {
        return Err(Error::InvalidParameter("sample stride must be at least 1".into()));
    }

    let n_full = (t_final / dt).floor() as usize;
    let mut remainder = t_final - n_full as f64 * dt;
    if remainder <= 1e-12 * t_final {
        remainder = 0.0;
    }

    let mut rho = initial.matrix().clone();
    let mut trajectory = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        max_trace_drift: 0.0,
        max_hermiticity_deviation: 0.0,
    };

    let record = |t: f64, rho: &CMatrix, trajectory: &mut Trajectory| -> Result<()> {
        if !rho.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::IntegrationUnstable { t, min_eigenvalue: f64::NAN });
        }
        let state = DensityMatrix::from_matrix_unchecked(rho.clone());
        let min_eigenvalue = state.min_eigenvalue();
        if !min_eigenvalue.is_finite() || min_eigenvalue < POSITIVITY_FLOOR {
            return Err(Error::IntegrationUnstable { t, min_eigenvalue });
        }
        trajectory.times.push(t);
        trajectory.states.push(state);
        Ok(())
    };

    record(0.0, &rho, &mut trajectory)?;

    let advance = |rho: &mut CMatrix, step: f64, trajectory: &mut Trajectory| {
        let next = rk4_step(liouvillian, rho, step);
        let asymmetry = hermiticity_deviation(&next);
        if asymmetry > trajectory.max_hermiticity_deviation {
            trajectory.max_hermiticity_deviation = asymmetry;
        }
        *rho = (&next + &next.adjoint()) * Complex64::new(0.5, 0.0);
        let drift = (rho.trace() - Complex64::ONE).norm();
        if drift > trajectory.max_trace_drift {
            trajectory.max_trace_drift = drift;
        }
    };

    for step in 1..=n_full {
        advance(&mut rho, dt, &mut trajectory);
        let due = step % sample_stride == 0;
        let final_step = step == n_full && remainder == 0.0;
        if due || final_step {
            record(step as f64 * dt, &rho, &mut trajectory)?;
        }
    }
    if remainder > 0.0 {
        advance(&mut rho, remainder, &mut trajectory);
        record(t_final, &rho, &mut trajectory)?;
    }

    Ok(trajectory)
}

/// The stationary state of the generator, from the null space of its
/// superoperator.
///
/// A singular-value decomposition isolates the kernel (σ ≤ 10⁻¹⁰ σ_max). A
/// kernel of dimension two or more means the baths do not connect all of
/// state space and no single steady state exists
/// ([`Error::NonUniqueSteadyState`]); otherwise the kernel vector is
/// devectorized, made Hermitian, normalized to unit trace, and checked for
/// positivity.
pub fn steady_state(liouvillian: &Liouvillian) -> Result<DensityMatrix> {
    let dim = liouvillian.dim();
    let svd = liouvillian.superoperator().svd(false, true);
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().fold(0.0_f64, |a, &b| a.max(b));
    if sigma_max == 0.0 {
        return Err(Error::NonUniqueSteadyState { kernel_dim: dim * dim });
    }
    let tol = KERNEL_TOLERANCE * sigma_max;
    let kernel: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] <= tol).collect();
    if kernel.len() >= 2 {
        return Err(Error::NonUniqueSteadyState { kernel_dim: kernel.len() });
    }
    let Some(&idx) = kernel.first() else {
        let sigma_min = sigma.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        return Err(Error::InvalidParameter(format!(
            "no null singular vector found (smallest σ/σ_max = {:.3e})",
            sigma_min / sigma_max
        )));
    };

    // Rows of V† are the conjugated right-singular vectors.
    let v_t = svd.v_t.as_ref().expect("V requested from the decomposition");
    let entries: Vec<Complex64> = v_t.row(idx).iter().map(|z| z.conj()).collect();
    let mut rho = CMatrix::from_column_slice(dim, dim, &entries);

    let trace = rho.trace();
    if trace.norm() < 1e-12 {
        return Err(Error::InvalidParameter(
            "stationary vector is traceless, not a state; the kernel is degenerate".into(),
        ));
    }
    rho /= trace;
    rho = (&rho + &rho.adjoint()) * Complex64::new(0.5, 0.0);
    rho /= Complex64::new(rho.trace().re, 0.0);

    let state = DensityMatrix::new(rho)?;
    let min_eigenvalue = state.min_eigenvalue();
    if min_eigenvalue < POSITIVITY_FLOOR {
        return Err(Error::InvalidParameter(format!(
            "stationary vector has eigenvalue {min_eigenvalue:.3e} < 0, not a state"
        )));
    }
    Ok(state)
}

/// Least-squares inverse temperature of a population distribution over known
/// energy levels.
///
/// Fits `ln p = −βE + const`; for an exact Gibbs state the fit is exact.
/// Populations are floored at 10⁻²⁸⁰ before taking logs. The slope may come
/// out zero or negative (e.g. for a flat or inverted distribution) — callers
/// decide what that means for them.
pub fn fit_inverse_temperature(populations: &[f64], energies: &[f64]) -> Result<f64> {
    if populations.len() != energies.len() {
        return Err(Error::DimensionMismatch {
            left: populations.len(),
            right: energies.len(),
        });
    }
    if populations.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least two levels to fit a temperature".into(),
        ));
    }
    if populations.iter().any(|&p| !p.is_finite() || p < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "populations must be finite and non-negative, got {populations:?}"
        )));
    }
    let logs: Vec<f64> = populations.iter().map(|&p| p.max(1e-280).ln()).collect();
    let n = logs.len() as f64;
    let e_mean: f64 = energies.iter().sum::<f64>() / n;
    let log_mean: f64 = logs.iter().sum::<f64>() / n;
    let mut covariance = 0.0;
    let mut variance = 0.0;
    for (&e, &l) in energies.iter().zip(&logs) {
        covariance += (e - e_mean) * (l - log_mean);
        variance += (e - e_mean) * (e - e_mean);
    }
    if variance == 0.0 {
        return Err(Error::InvalidParameter(
            "all energy levels are equal; a temperature fit is undefined".into(),
        ));
    }
    Ok(-covariance / variance)
}

/// Write a trajectory as CSV: one row per sample with the populations, the
/// fitted effective temperature, and the trace distance to a reference
/// state.
///
/// Columns: `time_ns`, one `pop_<bits>` per basis configuration (qubit 0 is
/// the leftmost bit, `0` = spin up), `effective_temperature_mk`, and
/// `trace_distance_to_target_gibbs`. The temperature column holds `NaN`
/// whenever the fitted slope is not a positive inverse temperature.
pub fn write_trajectory_csv<W: Write>(
    mut out: W,
    trajectory: &Trajectory,
    model: &TargetIsingModel,
    reference: &DensityMatrix,
    convention: UnitConvention,
) -> Result<()> {
    if trajectory.is_empty() {
        return Err(Error::InvalidParameter("cannot write an empty trajectory".into()));
    }
    let dim = model.dim();
    if reference.dim() != dim || trajectory.states[0].dim() != dim {
        return Err(Error::DimensionMismatch {
            left: trajectory.states[0].dim(),
            right: dim,
        });
    }
    let energies = model.diagonal_energies();
    let width = model.n_qubits();

    write!(out, "time_ns")?;
    for config in 0..dim {
        write!(out, ",pop_{config:0width$b}")?;
    }
    writeln!(out, ",effective_temperature_mk,trace_distance_to_target_gibbs")?;

    for (t, state) in trajectory.times.iter().zip(&trajectory.states) {
        let populations = state.populations();
        let beta_fit = fit_inverse_temperature(&populations, &energies)?;
        let temperature = if beta_fit > 0.0 && beta_fit.is_finite() {
            temperature_from_beta(beta_fit, convention)?
        } else {
            f64::NAN
        };
        let distance = state.trace_distance(reference)?;
        write!(out, "{t}")?;
        for p in &populations {
            write!(out, ",{p}")?;
        }
        writeln!(out, ",{temperature},{distance}")?;
    }
    Ok(())
}
