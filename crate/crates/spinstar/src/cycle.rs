//! Four-stroke refrigeration cycle built on the spin-star closed forms.
//!
//! The strokes, all at fixed gap `h` and environment temperature `β`:
//!
//! 1. couple the thermalized star (work `W1 = E1 - E0`),
//! 2. rethermalize with the environment (heat `Q2 = E2 - E1`),
//! 3. decouple (work `W2 = E3 - E2`),
//! 4. rethermalize again (heat `Q4 = E0 - E3`), closing the cycle.
//!
//! After stroke 2 the central qubit sits at the effective inverse
//! temperature `x_eff`, so one cycle extracts
//! `Q_c = tanh(x_eff) - tanh(x)` (units of `h`) from it. The efficiency
//! variants divide that yield (or the whole-star version of it) by the net
//! work `W_cycle = W1 + W2`. All energies here are per `h`; multiply by `h`
//! to return to GHz.

use crate::analytic::{
    ancilla_populations, central_populations, AncillaState, CentralQubitState,
};
use crate::params::ReducedParams;
use crate::{Error, Result};

/// Energies, works, and heats of one refrigeration cycle, in units of `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleReport {
    /// Uncoupled thermal energy, -(N+1)·tanh x.
    pub e0: f64,
    /// Energy right after the coupling quench (product state, full H).
    pub e1: f64,
    /// Energy after rethermalizing under the full Hamiltonian.
    pub e2: f64,
    /// Energy right after the decoupling quench.
    pub e3: f64,
    /// Coupling work E1 - E0.
    pub w1: f64,
    /// Decoupling work E3 - E2.
    pub w2: f64,
    /// Net work input per cycle, W1 + W2, evaluated in a cancellation-free
    /// arrangement (it may differ from the literal sum of `w1` and `w2` by
    /// their last bits, which matters once the net work is exponentially
    /// smaller than either stroke).
    pub w_cycle: f64,
    /// Heat from the environment during stroke 2, E2 - E1.
    pub q2: f64,
    /// Heat from the environment during stroke 4, E0 - E3.
    pub q4: f64,
    /// Effective inverse temperature (×h) of the central qubit after
    /// stroke 2.
    pub x_eff: f64,
    /// Cooling efficiency; `None` when r = 0 and the cycle does no work.
    pub epsilon: Option<f64>,
}

/// Stroke energies of the cycle at parameters `p`.
///
/// The post-quench energies follow from expectation values in the Gibbs
/// state: `E2 = ⟨H⟩`, and the decoupling stroke removes exactly the
/// interaction part, `E3 = E2 - ⟨H_int⟩`. The coupling stroke acts on the
/// product thermal state, where `⟨H_int⟩ = g·N·tanh²(βh)`.
pub fn stroke_energies(p: &ReducedParams) -> CycleReport {
    let n = p.n();
    let tx = p.x.tanh();
    let t_up = (p.x * (1.0 + p.r)).tanh();
    let t_down = (p.x * (1.0 - p.r)).tanh();
    let state = central_populations(p);

    // Exponentially small deficits from the saturated limit tanh y → 1:
    //     ε  = 2σ(2x),   ε_d = 2σ(2x(1-r)),   ε_u = 2σ(2x(1+r)),
    // with σ(y) = 1/(1+e^y), so tanh x = 1 - ε and t_{u,d} = 1 - ε_{u,d}.
    // The population-weighted differences below cancel violently in parts
    // of the parameter plane; rewriting them in the deficits, which always
    // carry full relative precision, keeps the results clean.
    let sigma = |y: f64| 1.0 / (1.0 + y.exp());
    let eps = 2.0 * sigma(2.0 * p.x);
    let eps_down = 2.0 * sigma(2.0 * p.x * (1.0 - p.r));
    let eps_up = 2.0 * sigma(2.0 * p.x * (1.0 + p.r));

    let e0 = -(n + 1.0) * tx;
    let w1 = n * p.r * tx * tx;
    let e1 = e0 + w1;

    // E2 = ⟨H⟩/h = -∂ln Z/∂x at fixed r.
    let e2 = (state.p_up - state.p_down)
        - n * (state.p_up * (1.0 + p.r) * t_up + state.p_down * (1.0 - p.r) * t_down);
    // ⟨H_int⟩/h = -(r/x)·∂ln Z/∂r = -r·N·(p_up·t_up - p_down·t_down). The
    // plain bracket has a zero crossing (large x, r > 0) where it rounds to
    // noise; substituting p_{up,down} = (1 ∓ tanh x_eff)/2 turns it into a
    // difference of two like-scaled, fully-precise terms:
    //     p_up·t_up - p_down·t_down
    //         = (ε_d - ε_u)/2 - tanh(x_eff)·(2 - ε_d - ε_u)/2.
    let h_int = -p.r
        * n
        * (0.5 * (eps_down - eps_up) - 0.5 * state.x_eff.tanh() * (2.0 - eps_down - eps_up));
    let w2 = -h_int;
    let e3 = e2 + w2;

    // W1 + W2 = r·N·[tanh²x + p_up·t_up - p_down·t_down]. At strong field
    // the bracket is a difference of values within e^{-2x} of 1; in the
    // deficits the constants cancel algebraically, leaving
    //     W_cycle = r·N·[ (ε_d - 2ε + ε²) + p_up·(2 - ε_d - ε_u) ].
    let w_cycle = p.r
        * n
        * ((eps_down - 2.0 * eps + eps * eps) + state.p_up * (2.0 - eps_down - eps_up));
    let epsilon = if p.r == 0.0 || w_cycle == 0.0 {
        None
    } else {
        Some((state.x_eff.tanh() - tx) / w_cycle)
    };

    CycleReport {
        e0,
        e1,
        e2,
        e3,
        w1,
        w2,
        w_cycle,
        q2: e2 - e1,
        q4: e0 - e3,
        x_eff: state.x_eff,
        epsilon,
    }
}

/// Central-qubit cooling efficiency, `ε = (tanh x_eff - tanh x) / W_cycle`.
///
/// Errors with [`Error::DegenerateCycle`] at r = 0, where no work is done
/// and no cooling happens; reporting 0/0 as a number would silently poison
/// parameter sweeps.
pub fn efficiency(p: &ReducedParams) -> Result<f64> {
    stroke_energies(p).epsilon.ok_or(Error::DegenerateCycle)
}

/// Whole-system efficiency, `ε_whole = (E0 - E3) / W_cycle`.
///
/// Credits the heat the entire star (not just the central qubit) dumps into
/// the environment during stroke 4. Exceeds [`efficiency`] for every r < 0
/// because the polarized ancillas carry extractable heat of their own.
pub fn efficiency_whole(p: &ReducedParams) -> Result<f64> {
    let report = stroke_energies(p);
    if report.epsilon.is_none() {
        return Err(Error::DegenerateCycle);
    }
    Ok((report.e0 - report.e3) / report.w_cycle)
}

/// Efficiency when an auxiliary engine returns `w_engine` of the cycle work.
///
/// `ε_re = (tanh x_eff - tanh x) / (W_cycle - w_engine)`; equals
/// [`efficiency`] at `w_engine = 0`. `w_engine` is in units of `h` and must
/// stay below the cycle work.
pub fn efficiency_recycled(p: &ReducedParams, w_engine: f64) -> Result<f64> {
    if !w_engine.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "recycled work must be finite, got {w_engine}"
        )));
    }
    let report = stroke_energies(p);
    if report.epsilon.is_none() {
        return Err(Error::DegenerateCycle);
    }
    if w_engine >= report.w_cycle {
        return Err(Error::EngineWorkExceedsCycle {
            w_engine,
            w_cycle: report.w_cycle,
        });
    }
    Ok((report.x_eff.tanh() - p.x.tanh()) / (report.w_cycle - w_engine))
}

/// Effective inverse temperatures of pooled subsystems after stroke 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CooperativeReport {
    /// Pooled over all N+1 qubits (×h).
    pub x_eff_whole: f64,
    /// Pooled over the N ancillas only (×h).
    pub x_eff_ancilla: f64,
    /// Pooled over the center plus the `n` ancillas requested (×h).
    pub x_eff_pool: f64,
    /// Whole-system efficiency at these parameters; `None` when r = 0.
    pub epsilon_whole: Option<f64>,
    /// True when a pooled polarization saturated (population ratio 0 or ∞)
    /// and the corresponding field is ±∞.
    pub saturated: bool,
}

/// Field (×h) whose two-level Gibbs ratio reproduces a pool's mean
/// populations: `x_pool = (1/2)·ln(n_down/n_up)` for a pool of `k`
/// ancillas, optionally joined by the central qubit.
///
/// Two arrangements cover the two conditioning regimes. A weakly polarized
/// pool (mean magnetization |μ| ≤ 1/2) gets `-atanh(μ)`, with the
/// magnetization assembled from population *deviations*: at strong
/// coupling with r > 0 an inverted center nearly cancels one ancilla's
/// polarization — the up and down counts agree to nine digits while their
/// difference is the answer — and the deviation form keeps every digit of
/// that difference. A strongly polarized pool gets the direct count
/// ratio, whose minority count is a sum of exponentially small positive
/// terms and whose logarithm is then perfectly conditioned.
fn pool_field(
    center: Option<&CentralQubitState>,
    ancilla: &AncillaState,
    k: f64,
    saturated: &mut bool,
) -> f64 {
    let pol_ancilla = ancilla.p_up - ancilla.p_down;
    let (members, magnetization) = match center {
        Some(c) => {
            let pol_center = -c.x_eff.tanh();
            let m = if pol_center >= 0.0 && pol_ancilla <= 0.0 {
                (1.0 - k) + 2.0 * (k * ancilla.p_up - c.p_down)
            } else if pol_center <= 0.0 && pol_ancilla >= 0.0 {
                (k - 1.0) - 2.0 * (k * ancilla.p_down - c.p_up)
            } else {
                pol_center + k * pol_ancilla
            };
            (k + 1.0, m)
        }
        None => (k, k * pol_ancilla),
    };
    let mean = magnetization / members;
    if mean.abs() <= 0.5 {
        return -mean.atanh();
    }
    let (center_up, center_down) = center.map_or((0.0, 0.0), |c| (c.p_up, c.p_down));
    let n_up = center_up + k * ancilla.p_up;
    let n_down = center_down + k * ancilla.p_down;
    if n_down <= 0.0 {
        *saturated = true;
        return f64::NEG_INFINITY;
    }
    if n_up <= 0.0 {
        *saturated = true;
        return f64::INFINITY;
    }
    0.5 * (n_down.ln() - n_up.ln())
}

/// Effective temperatures when several qubits of the star are pooled into
/// one cooling resource.
///
/// A pool counts its expected up and down two-level populations and maps
/// the ratio back to a field — see [`pool_field`] for the two numerical
/// arrangements behind that map. Pools reported:
///
/// * whole star (center plus all N ancillas),
/// * ancillas only,
/// * center plus the `n` ancillas requested, which interpolates exactly
///   between the central qubit at `n = 0` and the whole star at `n = N`.
///
/// The ancillas warm the pool, so for r < 0 the pools order strictly:
/// `x_eff > x_eff_pool(n) > x_eff_ancilla` for 1 ≤ n ≤ N-1.
pub fn cooperative_temperatures(p: &ReducedParams, n_pooled: usize) -> Result<CooperativeReport> {
    if p.n_ancillas == 0 {
        return Err(Error::InvalidParameter(
            "pooled temperatures need at least one ancilla".into(),
        ));
    }
    if n_pooled > p.n_ancillas {
        return Err(Error::InvalidParameter(format!(
            "cannot pool {n_pooled} ancillas, the star has only {}",
            p.n_ancillas
        )));
    }
    let n = p.n();
    let center = central_populations(p);
    let ancilla = ancilla_populations(p);
    let mut saturated = false;

    let x_eff_whole = pool_field(Some(&center), &ancilla, n, &mut saturated);
    let x_eff_ancilla = pool_field(None, &ancilla, n, &mut saturated);
    let x_eff_pool = pool_field(Some(&center), &ancilla, n_pooled as f64, &mut saturated);

    let epsilon_whole = match efficiency_whole(p) {
        Ok(value) => Some(value),
        Err(Error::DegenerateCycle) => None,
        Err(other) => return Err(other),
    };

    Ok(CooperativeReport {
        x_eff_whole,
        x_eff_ancilla,
        x_eff_pool,
        epsilon_whole,
        saturated,
    })
}
