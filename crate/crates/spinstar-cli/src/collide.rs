//! `spinstar collide`: cool a two-qubit longitudinal Ising target with
//! spin-star refrigerant streams.
//!
//! The run is described by a TOML config (see [`RunConfig`]). For every
//! transition frequency ω of the target, a dedicated spin star with gap
//! h = ω/2 is tuned: its coupling g is solved so the star's central qubit
//! sits at the common target inverse temperature β_eff. Refrigerant qubits
//! drawn from those stars drive the target toward the Gibbs state at β_eff;
//! an optional thermal environment at the lab temperature competes with
//! them. The trajectory goes to a CSV file, a summary (solved couplings,
//! final-state fit, fidelity to the target Gibbs state) to stdout as JSON.
//!
//! Runs are deterministic: the master equation is integrated directly, so
//! identical configs produce identical outputs bit for bit.

use crate::Failure;
use clap::Args;
use serde::{Deserialize, Serialize};
use spinstar::analytic::x_eff;
use spinstar::collision::dynamics::{evolve, fit_inverse_temperature, write_trajectory_csv};
use spinstar::collision::target::TargetIsingModel;
use spinstar::collision::{refrigerant_populations, thermal_bath_set, BathSpec, PoolMode};
use spinstar::collision::dynamics::Liouvillian;
use spinstar::oracle::dense::DensityMatrix;
use spinstar::params::{beta_from_temperature, temperature_from_beta, ReducedParams, UnitConvention};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Args)]
pub struct CollideArgs {
    /// TOML run description.
    #[arg(long)]
    config: PathBuf,

    /// Output CSV path for the trajectory.
    #[arg(long)]
    out: PathBuf,
}

/// A collision-model cooling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Gap of target qubit 0 (GHz).
    pub h1: f64,
    /// Gap of target qubit 1 (GHz).
    pub h2: f64,
    /// Longitudinal coupling between the target qubits (GHz).
    pub j: f64,
    /// Environment temperature (mK).
    pub t_mk: f64,
    /// Unit convention for mK ↔ β conversions: "angular" or "ordinary".
    #[serde(default = "default_convention")]
    pub convention: String,
    /// Ancilla count of every refrigerant spin star.
    pub n_ancillas: usize,
    /// Temperature the refrigerant streams are tuned to (mK).
    pub target_teff_mk: f64,
    /// Collision rate of the refrigerant streams (1/ns).
    pub refrigerant_rate: f64,
    /// Collision rate of the competing thermal environment (1/ns); 0
    /// disables it.
    #[serde(default)]
    pub environment_rate: f64,
    /// Integration horizon (ns).
    pub t_final_ns: f64,
    /// Integrator step (ns).
    pub dt_ns: f64,
    /// Record every `sample_stride`-th step.
    #[serde(default = "default_stride")]
    pub sample_stride: usize,
    /// Initial target state: "environment" (Gibbs at T), "target" (Gibbs
    /// at T_eff), or "mixed" (maximally mixed).
    #[serde(default = "default_initial")]
    pub initial_state: String,
    /// Must be true: integration is seed-free and deterministic, and no
    /// stochastic-unravelling mode exists.
    #[serde(default = "default_true")]
    pub deterministic: bool,
}

fn default_convention() -> String {
    "angular".into()
}

fn default_stride() -> usize {
    1
}

fn default_initial() -> String {
    "environment".into()
}

fn default_true() -> bool {
    true
}

/// One tuned refrigerant star in the JSON summary.
#[derive(Serialize)]
struct RefrigeratorSummary {
    qubit: usize,
    omega_ghz: f64,
    h_ghz: f64,
    g_ghz: f64,
    /// |x_eff − β_eff·h| / (β_eff·h) after the coupling solve.
    beta_residual_rel: f64,
}

#[derive(Serialize)]
struct EnvironmentSummary {
    t_mk: f64,
    beta_per_ghz: f64,
}

#[derive(Serialize)]
struct TargetSummary {
    teff_mk: f64,
    beta_eff_per_ghz: f64,
}

#[derive(Serialize)]
struct FinalStateSummary {
    /// Inverse temperature fitted to the final populations; absent when
    /// the fit is not a positive temperature.
    beta_fit_per_ghz: Option<f64>,
    teff_mk: Option<f64>,
    fidelity_to_target_gibbs: f64,
    trace_distance_to_target_gibbs: f64,
    max_trace_drift: f64,
}

#[derive(Serialize)]
struct RunSummary {
    convention: &'static str,
    environment: EnvironmentSummary,
    target: TargetSummary,
    refrigerators: Vec<RefrigeratorSummary>,
    samples_written: usize,
    final_state: FinalStateSummary,
    deterministic: bool,
}

impl RunConfig {
    fn validate(&self) -> Result<(), Failure> {
        let positive = |name: &str, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(Failure::validation(format!("{name} must be positive and finite, got {value}")))
            }
        };
        positive("h1", self.h1)?;
        positive("h2", self.h2)?;
        if !self.j.is_finite() {
            return Err(Failure::validation(format!("j must be finite, got {}", self.j)));
        }
        positive("t_mk", self.t_mk)?;
        positive("target_teff_mk", self.target_teff_mk)?;
        positive("refrigerant_rate", self.refrigerant_rate)?;
        if self.environment_rate < 0.0 || !self.environment_rate.is_finite() {
            return Err(Failure::validation(format!(
                "environment_rate must be non-negative and finite, got {}",
                self.environment_rate
            )));
        }
        positive("t_final_ns", self.t_final_ns)?;
        positive("dt_ns", self.dt_ns)?;
        if self.sample_stride == 0 {
            return Err(Failure::validation("sample_stride must be at least 1"));
        }
        if self.n_ancillas == 0 {
            return Err(Failure::validation("n_ancillas must be at least 1"));
        }
        match self.initial_state.as_str() {
            "environment" | "target" | "mixed" => {}
            other => {
                return Err(Failure::validation(format!(
                    "initial_state must be environment, target, or mixed, got '{other}'"
                )))
            }
        }
        if !self.deterministic {
            return Err(Failure::validation(
                "deterministic = false is not supported: integration is seed-free, \
                 deterministic master-equation evolution is the only mode",
            ));
        }
        Ok(())
    }
}

/// Solve the coupling ratio r < 0 placing the star's central qubit at the
/// effective field `x_target` > x. Monotonicity of x_eff in r makes plain
/// bisection safe once the root is bracketed by a doubling lower endpoint.
fn solve_coupling_ratio(x: f64, n_ancillas: usize, x_target: f64) -> Result<f64, Failure> {
    let field = |r: f64| -> Result<f64, Failure> {
        Ok(x_eff(&ReducedParams::new(x, r, n_ancillas)?))
    };
    let mut r_lo = -1.0;
    while field(r_lo)? < x_target {
        r_lo *= 2.0;
        if r_lo < -1e6 {
            return Err(Failure::validation(format!(
                "no coupling reaches x_eff = {x_target} from x = {x} (deep-coupling limit \
                 is (N+1)x = {})",
                (n_ancillas as f64 + 1.0) * x
            )));
        }
    }
    let mut r_hi = 0.0;
    let mut r = 0.5 * (r_lo + r_hi);
    for _ in 0..200 {
        r = 0.5 * (r_lo + r_hi);
        let f = field(r)? - x_target;
        if f.abs() <= 1e-12 * x_target {
            break;
        }
        if f > 0.0 {
            // Still colder than the target field: back the coupling off.
            r_lo = r;
        } else {
            r_hi = r;
        }
    }
    Ok(r)
}

pub fn run(args: &CollideArgs) -> Result<(), Failure> {
    let raw = std::fs::read_to_string(&args.config).map_err(|err| {
        Failure::validation(format!("cannot read {}: {err}", args.config.display()))
    })?;
    let config: RunConfig = toml::from_str(&raw)
        .map_err(|err| Failure::validation(format!("{}: {err}", args.config.display())))?;
    config.validate()?;

    let convention = UnitConvention::from_str(&config.convention)
        .map_err(|err| Failure::validation(err.to_string()))?;
    let beta_env = beta_from_temperature(config.t_mk, 1.0, convention)?;
    let beta_eff = beta_from_temperature(config.target_teff_mk, 1.0, convention)?;
    if beta_eff <= beta_env {
        return Err(Failure::validation(format!(
            "target_teff_mk = {} mK is not colder than the environment at {} mK",
            config.target_teff_mk, config.t_mk
        )));
    }
    let n = config.n_ancillas;
    let bound = (n as f64 + 1.0) * beta_env;
    if beta_eff >= bound {
        let coldest = config.t_mk / (n as f64 + 1.0);
        return Err(Failure::validation(format!(
            "target β_eff = {beta_eff:.6} GHz⁻¹ is outside the deep-coupling bound \
             β_eff < (N+1)·β = {bound:.6} GHz⁻¹: a star with N = {n} ancillas at \
             T = {} mK cannot cool below {coldest:.6} mK",
            config.t_mk
        )));
    }

    let model = TargetIsingModel::two_qubit(config.h1, config.h2, config.j)?;
    let transitions = model.transitions()?;
    let mut baths = Vec::new();
    let mut refrigerators = Vec::new();
    for transition in &transitions {
        let h_i = 0.5 * transition.omega;
        let x_i = beta_env * h_i;
        let x_target = beta_eff * h_i;
        let r = solve_coupling_ratio(x_i, n, x_target)?;
        let star = ReducedParams::new(x_i, r, n)?;
        let residual = (x_eff(&star) - x_target).abs() / x_target;
        let (p_ground, p_excited) = refrigerant_populations(&star, PoolMode::CentralOnly)?;
        baths.push(BathSpec::new(
            transition.qubit,
            transition.omega,
            p_ground,
            p_excited,
            config.refrigerant_rate,
        )?);
        refrigerators.push(RefrigeratorSummary {
            qubit: transition.qubit,
            omega_ghz: transition.omega,
            h_ghz: h_i,
            g_ghz: r * h_i,
            beta_residual_rel: residual,
        });
        eprintln!(
            "tuned star for qubit {} at omega = {:.6} GHz: g = {:.6} GHz (residual {:.3e})",
            transition.qubit,
            transition.omega,
            r * h_i,
            residual
        );
    }
    if config.environment_rate > 0.0 {
        baths.extend(thermal_bath_set(&model, beta_env, config.environment_rate)?);
    }

    let liouvillian = Liouvillian::build(&model, &baths)?;
    let initial = match config.initial_state.as_str() {
        "environment" => model.gibbs(beta_env)?,
        "target" => model.gibbs(beta_eff)?,
        _ => DensityMatrix::from_populations(&vec![1.0 / model.dim() as f64; model.dim()])?,
    };
    eprintln!(
        "integrating {} ns at dt = {} ns ({} baths)",
        config.t_final_ns,
        config.dt_ns,
        baths.len()
    );
    let trajectory = evolve(
        &initial,
        &liouvillian,
        config.t_final_ns,
        config.dt_ns,
        config.sample_stride,
    )?;

    let reference = model.gibbs(beta_eff)?;
    let file = std::io::BufWriter::new(std::fs::File::create(&args.out)?);
    write_trajectory_csv(file, &trajectory, &model, &reference, convention)?;
    eprintln!("wrote {} samples to {}", trajectory.len(), args.out.display());

    let final_state = trajectory.final_state();
    let energies = model.diagonal_energies();
    let beta_fit = fit_inverse_temperature(&final_state.populations(), &energies)
        .ok()
        .filter(|beta| beta.is_finite() && *beta > 0.0);
    let summary = RunSummary {
        convention: convention.label(),
        environment: EnvironmentSummary { t_mk: config.t_mk, beta_per_ghz: beta_env },
        target: TargetSummary {
            teff_mk: config.target_teff_mk,
            beta_eff_per_ghz: beta_eff,
        },
        refrigerators,
        samples_written: trajectory.len(),
        final_state: FinalStateSummary {
            beta_fit_per_ghz: beta_fit,
            teff_mk: beta_fit
                .and_then(|beta| temperature_from_beta(beta, convention).ok()),
            fidelity_to_target_gibbs: final_state.fidelity(&reference)?,
            trace_distance_to_target_gibbs: final_state.trace_distance(&reference)?,
            max_trace_drift: trajectory.max_trace_drift,
        },
        deterministic: config.deterministic,
    };
    let rendered = serde_json::to_string_pretty(&summary)
        .map_err(|err| Failure::validation(format!("summary serialization: {err}")))?;
    println!("{rendered}");
    Ok(())
}
