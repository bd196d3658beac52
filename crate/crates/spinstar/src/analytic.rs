//! Closed-form equilibrium thermodynamics of the longitudinal-Ising spin star.
//!
//! With `x = βh` and `r = g/h` the partition function splits over the two
//! central-qubit orientations,
//!
//! ```text
//! Z = 2^N · [ e^{-x} cosh^N(x(1+r)) + e^{x} cosh^N(x(1-r)) ]
//! ```
//!
//! because each ancilla sees the local field `h ± g` once the central spin is
//! fixed. Everything here is an exact function of that split: central-qubit
//! populations, the effective inverse temperature
//!
//! ```text
//! x_eff = x + (N/2)·[ ln cosh(x(1-r)) - ln cosh(x(1+r)) ]
//! ```
//!
//! its monotone derivative in `r`, and the thermal magnetizations used by the
//! cooperative-cooling estimates. All formulas are kept in the log domain so
//! deep-coupling regimes (`|r·x|` of several hundred) evaluate without
//! overflow.

use crate::params::ReducedParams;

/// Numerically stable `ln cosh(y)`, valid for any finite `y`.
///
/// For large `|y|` uses `ln cosh y = |y| + ln(1 + e^{-2|y|}) - ln 2`, which
/// never forms `e^{|y|}`. Below the crossover that arrangement subtracts two
/// near-equal terms (the result is only ~y²/2), so the small-`|y|` branch
/// computes `ln(1 + (cosh y - 1))` with `cosh y - 1 = 2 sinh²(y/2)`, keeping
/// full relative precision all the way down to `y = 0`.
pub fn logcosh(y: f64) -> f64 {
    let a = y.abs();
    if a < 1.0 {
        let s = (0.5 * a).sinh();
        (2.0 * s * s).ln_1p()
    } else {
        a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
    }
}

/// Log-sum-exp of two values.
fn logaddexp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// Log weights (up to the common 2^N factor) of the two central orientations.
///
/// `w_up = e^{-x} cosh^N(x(1+r))`, `w_down = e^{x} cosh^N(x(1-r))`; the up
/// state costs `+h` of field energy, and its ancillas sit in the shifted
/// field `h + g`.
fn orientation_log_weights(p: &ReducedParams) -> (f64, f64) {
    let n = p.n();
    let lw_up = -p.x + n * logcosh(p.x * (1.0 + p.r));
    let lw_down = p.x + n * logcosh(p.x * (1.0 - p.r));
    (lw_up, lw_down)
}

/// ln Z of the (N+1)-qubit Gibbs state.
pub fn log_partition_function(p: &ReducedParams) -> f64 {
    let (lw_up, lw_down) = orientation_log_weights(p);
    p.n() * std::f64::consts::LN_2 + logaddexp(lw_up, lw_down)
}

/// Z in the linear domain.
///
/// Overflows to `+inf` once `ln Z` exceeds ~709; use
/// [`log_partition_function`] for anything quantitative at strong coupling.
pub fn partition_function(p: &ReducedParams) -> f64 {
    log_partition_function(p).exp()
}

/// Marginal state of the central qubit in the joint Gibbs state.
///
/// The marginal is diagonal, so the two populations and the effective
/// inverse temperature they define carry all of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralQubitState {
    /// P(z₀ = +1).
    pub p_up: f64,
    /// P(z₀ = -1).
    pub p_down: f64,
    /// Dimensionless effective inverse temperature, x_eff = β_eff·h.
    pub x_eff: f64,
}

/// ln(1 + e^{-2|y|}), the remainder after peeling `|y| - ln 2` off ln cosh y.
fn logcosh_tail(y: f64) -> f64 {
    (-2.0 * y.abs()).exp().ln_1p()
}

/// Dimensionless effective inverse temperature of the central qubit.
///
/// `x_eff > x` means the central qubit is colder than the environment; the
/// deep-coupling limit `r → -∞` approaches `(N+1)·x`.
///
/// Two algebraically equal arrangements are used. The direct one,
///
/// ```text
/// x_eff = x + (N/2)·[ln cosh(x(1-r)) - ln cosh(x(1+r))]
/// ```
///
/// loses leading digits when the ln cosh terms dwarf the result (e.g. near
/// the zero crossing of x_eff at large x, r > 0). Peeling the exact linear
/// part `|y| - ln 2` off each ln cosh and folding it into the bare-field
/// term leaves
///
/// ```text
/// x_eff = x·(1 - N·r) + (N/2)·[t(x(1-r)) - t(x(1+r))]   for |r| ≤ 1,
/// t(y)  = ln(1 + e^{-2|y|}) ≤ ln 2
/// ```
///
/// with linear parts `x·(1+N)` for r ≤ -1 and `x·(1-N)` for r ≥ 1. Each
/// call routes to whichever arrangement sums the smaller magnitudes around
/// the final value.
pub fn x_eff(p: &ReducedParams) -> f64 {
    let n = p.n();
    let a = p.x * (1.0 - p.r);
    let b = p.x * (1.0 + p.r);
    // |a| - |b| collapses to an exact multiple of x on each side of r = ±1
    // (x > 0 always).
    let linear = if p.r <= -1.0 {
        p.x * (1.0 + n)
    } else if p.r <= 1.0 {
        p.x * (1.0 - n * p.r)
    } else {
        p.x * (1.0 - n)
    };
    // Largest intermediate magnitude of each arrangement; the winner loses
    // the fewest leading digits to cancellation.
    let direct_scale = p.x + 0.5 * n * (a.abs() + b.abs());
    let split_scale = linear.abs() + n * std::f64::consts::LN_2;
    if split_scale < direct_scale {
        linear + 0.5 * n * (logcosh_tail(a) - logcosh_tail(b))
    } else {
        p.x + 0.5 * n * (logcosh(a) - logcosh(b))
    }
}

/// Populations and effective temperature of the central qubit.
pub fn central_populations(p: &ReducedParams) -> CentralQubitState {
    let xe = x_eff(p);
    // p_down / p_up = e^{2·x_eff}; both sigmoid forms are overflow-safe.
    let p_up = 1.0 / (1.0 + (2.0 * xe).exp());
    let p_down = 1.0 / (1.0 + (-2.0 * xe).exp());
    CentralQubitState { p_up, p_down, x_eff: xe }
}

/// ∂x_eff/∂r, the dimensionless coupling response.
///
/// ```text
/// ∂x_eff/∂r = -(N·x/2)·[ tanh(x(1-r)) + tanh(x(1+r)) ]
/// ```
///
/// Both tanh arguments share the sign structure of the fields `h ∓ g`, and
/// the bracket is positive wherever x > 0, so x_eff is strictly decreasing
/// in r: pushing g negative always cools the central qubit. The physical
/// derivative ∂β_eff/∂g equals this value divided by h².
pub fn x_eff_derivative(p: &ReducedParams) -> f64 {
    let n = p.n();
    -0.5 * n * p.x * ((p.x * (1.0 - p.r)).tanh() + (p.x * (1.0 + p.r)).tanh())
}

/// Thermal magnetizations of the joint Gibbs state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetizationReport {
    /// ⟨Σ_{n=0}^{N} σ_z,n⟩, center included. Bounded by N+1 in magnitude.
    pub s_total: f64,
    /// ⟨Σ_{n=1}^{N} σ_z,n⟩, ancillas only. Bounded by N in magnitude.
    pub s_ancilla: f64,
}

/// Total and ancilla-only magnetizations, ⟨Ŝ_z⟩ = -(1/β)·∂lnZ/∂h.
///
/// Conditioned on the central orientation, each ancilla is a free spin in
/// the shifted field, so the ancilla magnetization is a population-weighted
/// mix of `-tanh(x(1±r))`. The identity
/// `s_total - s_ancilla = -tanh(x_eff)` (the central-qubit magnetization)
/// holds to rounding and is pinned in the tests.
pub fn magnetizations(p: &ReducedParams) -> MagnetizationReport {
    let n = p.n();
    let state = central_populations(p);
    let t_up = (p.x * (1.0 + p.r)).tanh();
    let t_down = (p.x * (1.0 - p.r)).tanh();
    let s_ancilla = -n * (state.p_up * t_up + state.p_down * t_down);
    let s_total = (state.p_up - state.p_down) + s_ancilla;
    MagnetizationReport { s_total, s_ancilla }
}

/// Thermal populations of a single ancilla (all ancillas are equivalent).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaState {
    /// P(z_n = +1) for any one ancilla.
    pub p_up: f64,
    /// P(z_n = -1) for any one ancilla.
    pub p_down: f64,
}

/// Single-ancilla populations, averaged over the central orientation.
///
/// Conditioned on the central qubit, each ancilla is a free spin in the
/// shifted field `h(1 ± r)`, so with `σ(z) = 1/(1 + eᶻ)`:
///
/// ```text
/// p_up   = p_up⁰·σ(2x(1+r)) + p_down⁰·σ(2x(1-r))
/// p_down = p_up⁰·σ(-2x(1+r)) + p_down⁰·σ(-2x(1-r))
/// ```
///
/// where `p_up⁰`, `p_down⁰` are the central populations. Every term is
/// non-negative, so sums of these fractions over a pool of qubits never
/// cancel; pooled polarizations built from them stay accurate deep into
/// saturation, where differences of net magnetizations lose every
/// significant digit. The per-qubit magnetization identity
/// `p_up - p_down = ⟨Ŝ'_z⟩/N` holds to rounding.
pub fn ancilla_populations(p: &ReducedParams) -> AncillaState {
    let state = central_populations(p);
    let sig = |z: f64| 1.0 / (1.0 + z.exp());
    let a_up = 2.0 * p.x * (1.0 + p.r);
    let a_down = 2.0 * p.x * (1.0 - p.r);
    AncillaState {
        p_up: state.p_up * sig(a_up) + state.p_down * sig(a_down),
        p_down: state.p_up * sig(-a_up) + state.p_down * sig(-a_down),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ReducedParams;
    use approx::assert_relative_eq;

    fn rp(x: f64, r: f64, n: usize) -> ReducedParams {
        ReducedParams::new(x, r, n).unwrap()
    }

    #[test]
    fn logcosh_matches_naive_form_in_safe_range() {
        for y in [-20.0, -3.0, -0.7, -1e-8, 0.0, 1e-8, 0.4, 2.0, 15.0] {
            assert_relative_eq!(logcosh(y), y.cosh().ln(), epsilon = 1e-14, max_relative = 1e-14);
        }
        // Far outside the range where cosh overflows.
        assert_relative_eq!(
            logcosh(800.0),
            800.0 - std::f64::consts::LN_2,
            max_relative = 1e-15
        );
        assert_eq!(logcosh(500.0), logcosh(-500.0));
    }

    #[test]
    fn partition_function_single_ancilla() {
        // x = 1, r = -1, N = 1: four configurations with Boltzmann factors
        // 3·e^{-1} + e^{3}.
        let z = partition_function(&rp(1.0, -1.0, 1));
        let expected = 3.0 * (-1.0f64).exp() + (3.0f64).exp();
        assert_relative_eq!(z, expected, max_relative = 1e-14);
        assert_relative_eq!(z, 21.1892, max_relative = 1e-5);
    }

    #[test]
    fn log_partition_function_survives_deep_coupling() {
        let lz = log_partition_function(&rp(5.0, -100.0, 20));
        assert!(lz.is_finite());
        // Dominant configuration: center down, ancillas up, energy
        // -(1 - N·(1 - r))·x ... pinned instead via the weight bound below.
        assert!(partition_function(&rp(5.0, -100.0, 20)).is_infinite());
    }

    #[test]
    fn central_populations_single_ancilla() {
        let state = central_populations(&rp(1.0, -1.0, 1));
        assert_relative_eq!(state.p_down, 0.96528, max_relative = 1e-5);
        assert_relative_eq!(state.p_up + state.p_down, 1.0, max_relative = 1e-15);
        assert!(state.p_down > state.p_up);
    }

    #[test]
    fn x_eff_reference_point() {
        // x = 1, r = -1, N = 6: x_eff = 1 + 3·ln cosh 2.
        let xe = x_eff(&rp(1.0, -1.0, 6));
        assert_relative_eq!(xe, 1.0 + 3.0 * (2.0f64.cosh()).ln(), max_relative = 1e-14);
        assert_relative_eq!(xe, 4.9750082, max_relative = 1e-7);
        // Ratio form used by the temperature sweeps: T_eff/T.
        assert_relative_eq!(1.0 / xe, 0.2010047, max_relative = 1e-6);
    }

    #[test]
    fn x_eff_keeps_relative_precision_near_zero_crossing() {
        // x = 5, r = 1/2, N = 2: the linear parts cancel exactly and the
        // result is carried entirely by the ln(1+e^{-2|y|}) tails, so the
        // split arrangement is good to full relative precision even though
        // x_eff is three orders of magnitude below x.
        let xe = x_eff(&rp(5.0, 0.5, 2));
        assert_relative_eq!(xe, 6.715042586844355e-3, max_relative = 1e-14);
        let direct = (-5.0f64).exp().ln_1p() - (-15.0f64).exp().ln_1p();
        assert_relative_eq!(xe, direct, max_relative = 1e-15);
    }

    #[test]
    fn x_eff_saturates_at_deep_coupling() {
        for n in [1usize, 6, 20] {
            let xe = x_eff(&rp(1.0, -100.0, n));
            let bound = (n as f64 + 1.0) * 1.0;
            assert!(
                (xe - bound).abs() <= 1e-10 * bound,
                "N = {n}: x_eff = {xe}, bound = {bound}"
            );
        }
    }

    #[test]
    fn x_eff_strictly_decreasing_in_r() {
        for n in [1usize, 3, 6] {
            for x in [0.1, 1.0, 5.0] {
                let mut prev = f64::INFINITY;
                for k in 0..=600 {
                    let r = -3.0 + k as f64 * 0.01;
                    let xe = x_eff(&rp(x, r, n));
                    assert!(xe < prev, "x_eff not decreasing at x={x}, r={r}, N={n}");
                    prev = xe;
                }
            }
        }
    }

    #[test]
    fn x_eff_gain_is_linear_in_ancilla_count() {
        for (x, r) in [(0.5, -0.7), (1.0, -1.0), (2.0, 0.4)] {
            let p3 = rp(x, r, 3);
            let p6 = rp(x, r, 6);
            let gain3 = x_eff(&p3) - x;
            let gain6 = x_eff(&p6) - x;
            assert_relative_eq!(gain6, 2.0 * gain3, max_relative = 1e-13);
        }
    }

    #[test]
    fn derivative_reference_points() {
        // r = 0: both tanh terms coincide.
        let p = rp(1.3, 0.0, 5);
        assert_relative_eq!(x_eff_derivative(&p), -5.0 * 1.3 * 1.3f64.tanh(), max_relative = 1e-15);
        // Strictly negative wherever the tanh difference is representable.
        for r in [-20.0, -2.0, 0.0, 1.5, 20.0] {
            assert!(x_eff_derivative(&rp(0.7, r, 4)) < 0.0);
        }
        // Deep in saturation both tanh factors round to ±1 and the slope
        // underflows to -0; it must never come out positive.
        for r in [-100.0, 100.0] {
            assert!(x_eff_derivative(&rp(0.7, r, 4)) <= 0.0);
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let delta = 1e-6;
        for n in [1usize, 4, 9] {
            for x in [0.1, 1.0, 3.0] {
                for r in [-2.5, -1.0, -0.3, 0.0, 0.8, 2.0] {
                    let d = x_eff_derivative(&rp(x, r, n));
                    let fd =
                        (x_eff(&rp(x, r + delta, n)) - x_eff(&rp(x, r - delta, n))) / (2.0 * delta);
                    assert_relative_eq!(d, fd, max_relative = 1e-6);
                }
            }
        }
    }

    #[test]
    fn magnetization_identities() {
        for n in [1usize, 2, 6, 11] {
            for x in [0.2, 1.0, 4.0] {
                for r in [-2.0, -0.5, 0.0, 0.5, 1.0] {
                    let p = rp(x, r, n);
                    let m = magnetizations(&p);
                    let nf = n as f64;
                    assert!(m.s_total.abs() <= nf + 1.0);
                    assert!(m.s_ancilla.abs() <= nf);
                    // Central-qubit magnetization closes the identity.
                    assert_relative_eq!(
                        m.s_total - m.s_ancilla,
                        -x_eff(&p).tanh(),
                        epsilon = 1e-14,
                        max_relative = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn magnetization_decouples_at_zero_coupling() {
        for n in [1usize, 4, 7] {
            let p = rp(0.9, 0.0, n);
            let m = magnetizations(&p);
            let bare = -0.9f64.tanh();
            assert_relative_eq!(m.s_total, (n as f64 + 1.0) * bare, max_relative = 1e-14);
            assert_relative_eq!(m.s_ancilla, n as f64 * bare, max_relative = 1e-14);
        }
    }

    #[test]
    fn ancilla_population_identities() {
        for n in [1usize, 2, 6, 12] {
            for x in [0.2, 1.0, 5.0] {
                for r in [-2.0, -0.5, 0.0, 0.5, 1.0] {
                    let p = rp(x, r, n);
                    let a = ancilla_populations(&p);
                    assert!(a.p_up >= 0.0 && a.p_down >= 0.0);
                    assert_relative_eq!(a.p_up + a.p_down, 1.0, max_relative = 1e-14);
                    // Per-qubit magnetization from the same conditioning.
                    let m = magnetizations(&p);
                    assert_relative_eq!(
                        a.p_up - a.p_down,
                        m.s_ancilla / n as f64,
                        epsilon = 1e-15,
                        max_relative = 1e-13
                    );
                }
            }
        }
    }

    #[test]
    fn ancilla_populations_decouple_at_zero_coupling() {
        let a = ancilla_populations(&rp(0.9, 0.0, 5));
        assert_relative_eq!(a.p_up, 1.0 / (1.0 + 1.8f64.exp()), max_relative = 1e-15);
        assert_relative_eq!(a.p_down, 1.0 / (1.0 + (-1.8f64).exp()), max_relative = 1e-15);
    }

    #[test]
    fn ancilla_populations_survive_saturation() {
        // Deep-cooling corner: the up fraction is ~4e-57 (dominated by the
        // center flipping up, which drags its ancillas along) and must come
        // out positive, not rounded to zero through cancellation.
        let a = ancilla_populations(&rp(5.0, -20.0, 12));
        assert!(a.p_up > 0.0);
        assert!(a.p_up < 1e-50);
        assert_relative_eq!(a.p_down, 1.0, max_relative = 1e-15);
    }
}
