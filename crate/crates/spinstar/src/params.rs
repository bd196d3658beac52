//! Model parameters and unit conventions.
//!
//! Physical inputs are frequencies in GHz and temperatures in mK; every
//! closed form downstream runs on the dimensionless triple `(x, r, N)` with
//! `x = βh` and `r = g/h`. The reduction here is the only place units enter,
//! so evaluating with `(h, g, β)` or with `(c·h, c·g, β/c)` yields identical
//! dimensionless results.

use crate::{Error, Result};

/// Planck constant, J·s (exact SI value).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / std::f64::consts::TAU;

/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// How a frequency in GHz is mapped to an energy when forming βE.
///
/// The gap parameter `h` of a superconducting qubit is quoted in GHz, but
/// whether that figure is an angular frequency (`E = ħω`) or an ordinary
/// frequency (`E = h_P·ν`) changes every thermal ratio by 2π. Both readings
/// are supported; [`UnitConvention::Angular`] is the default used by the
/// presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitConvention {
    /// Frequencies are angular: βE = ħ · (f · 10⁹) / (k_B T).
    #[default]
    Angular,
    /// Frequencies are ordinary: βE = h_P · (f · 10⁹) / (k_B T).
    Ordinary,
}

impl UnitConvention {
    /// Energy quantum in joules for a 1 GHz frequency under this convention.
    fn joules_per_ghz(self) -> f64 {
        match self {
            UnitConvention::Angular => HBAR * 1e9,
            UnitConvention::Ordinary => PLANCK * 1e9,
        }
    }

    /// Name used in CSV headers and config files.
    pub fn label(self) -> &'static str {
        match self {
            UnitConvention::Angular => "angular",
            UnitConvention::Ordinary => "ordinary",
        }
    }
}

impl std::str::FromStr for UnitConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "angular" => Ok(UnitConvention::Angular),
            "ordinary" => Ok(UnitConvention::Ordinary),
            other => Err(Error::InvalidParameter(format!(
                "unknown unit convention '{other}' (expected 'angular' or 'ordinary')"
            ))),
        }
    }
}

/// Inverse temperature β in 1/GHz for a temperature in mK.
///
/// The gap `h_ghz` only fixes the dimensionless product `x = β·h`; β itself
/// depends on the convention and temperature alone. Errors on `T ≤ 0` or
/// `h ≤ 0`.
pub fn beta_from_temperature(t_mk: f64, h_ghz: f64, convention: UnitConvention) -> Result<f64> {
    if t_mk <= 0.0 || !t_mk.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "temperature must be positive and finite, got {t_mk} mK"
        )));
    }
    if h_ghz <= 0.0 || !h_ghz.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gap must be positive and finite, got {h_ghz} GHz"
        )));
    }
    Ok(convention.joules_per_ghz() / (BOLTZMANN * t_mk * 1e-3))
}

/// Temperature in mK corresponding to an inverse temperature β in 1/GHz.
///
/// Exact inverse of [`beta_from_temperature`] up to rounding.
pub fn temperature_from_beta(beta: f64, convention: UnitConvention) -> Result<f64> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature must be positive and finite, got {beta} GHz⁻¹"
        )));
    }
    Ok(convention.joules_per_ghz() / (BOLTZMANN * beta) * 1e3)
}

/// Physical parameters of the spin-star refrigerator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinStarParams {
    /// Qubit gap parameter h (GHz), common to center and ancillas. Positive.
    pub h: f64,
    /// Longitudinal coupling g (GHz); g < 0 cools the central qubit.
    pub g: f64,
    /// Number of ancilla qubits.
    pub n_ancillas: usize,
    /// Inverse environment temperature β (1/GHz). Positive.
    pub beta: f64,
}

impl SpinStarParams {
    pub fn new(h: f64, g: f64, n_ancillas: usize, beta: f64) -> Result<Self> {
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gap h must be positive and finite, got {h}"
            )));
        }
        if !g.is_finite() {
            return Err(Error::InvalidParameter(format!("coupling g must be finite, got {g}")));
        }
        if beta <= 0.0 || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "inverse temperature must be positive and finite, got {beta}"
            )));
        }
        Ok(Self { h, g, n_ancillas, beta })
    }

    /// Dimensionless reduction (x, r, N).
    pub fn reduce(&self) -> ReducedParams {
        ReducedParams {
            x: self.beta * self.h,
            r: self.g / self.h,
            n_ancillas: self.n_ancillas,
        }
    }
}

/// Dimensionless spin-star parameters: `x = βh`, `r = g/h`.
///
/// Every closed form in [`crate::analytic`] and [`crate::cycle`] is a
/// function of this triple only. Energies they return are in units of `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    /// x = βh > 0.
    pub x: f64,
    /// r = g/h.
    pub r: f64,
    /// Number of ancilla qubits.
    pub n_ancillas: usize,
}

impl ReducedParams {
    pub fn new(x: f64, r: f64, n_ancillas: usize) -> Result<Self> {
        if x <= 0.0 || !x.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "x = βh must be positive and finite, got {x}"
            )));
        }
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!("r = g/h must be finite, got {r}")));
        }
        Ok(Self { x, r, n_ancillas })
    }

    /// Attach physical units again, choosing a gap `h` in GHz.
    pub fn expand(&self, h: f64) -> Result<SpinStarParams> {
        SpinStarParams::new(h, self.r * h, self.n_ancillas, self.x / h)
    }

    pub(crate) fn n(&self) -> f64 {
        self.n_ancillas as f64
    }
}
