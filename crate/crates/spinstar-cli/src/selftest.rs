//! `spinstar selftest`: replay the library's oracle-equivalence and
//! invariant checks at pinned parameters.
//!
//! Six named checks run in sequence, each printing one `ok`/`FAILED` line;
//! any failure exits with code 3. The hidden `--inject` flag perturbs the
//! closed-form effective field before the equivalence check, confirming
//! that the harness actually detects disagreement rather than passing
//! vacuously.

use crate::Failure;
use clap::Args;
use spinstar::analytic::{log_partition_function, magnetizations, x_eff};
use spinstar::collision::dynamics::{evolve, steady_state, Liouvillian};
use spinstar::collision::target::TargetIsingModel;
use spinstar::collision::thermal_bath_set;
use spinstar::cycle::{cooperative_temperatures, stroke_energies};
use spinstar::oracle::dense::{build_hamiltonian, gibbs_state, DensityMatrix, InteractionKind};
use spinstar::oracle::enumeration::{enumerate_ising, enumerated_cycle_work};
use spinstar::params::{ReducedParams, SpinStarParams};
use std::time::Instant;

#[derive(Args)]
pub struct SelftestArgs {
    /// Scale the closed-form effective field by (1 + inject) inside the
    /// equivalence check, to confirm the check can trip.
    #[arg(long, hide = true, default_value_t = 0.0)]
    inject: f64,
}

const GRID_N: [usize; 6] = [1, 2, 3, 4, 6, 8];
const GRID_X: [f64; 3] = [0.1, 1.0, 5.0];
const GRID_R: [f64; 6] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0];

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if !a.is_finite() || !b.is_finite() {
        return f64::INFINITY;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

fn rp(x: f64, r: f64, n: usize) -> ReducedParams {
    ReducedParams::new(x, r, n).expect("pinned selftest parameters are valid")
}

/// Closed forms vs brute-force enumeration, seven quantities per point.
fn check_oracle_equivalence(inject: f64) -> Result<String, String> {
    let mut worst = 0.0f64;
    let mut points = 0usize;
    for &n in &GRID_N {
        for &x in &GRID_X {
            for &r in &GRID_R {
                let p = rp(x, r, n);
                let table = enumerate_ising(&p).map_err(|e| e.to_string())?;
                let report = stroke_energies(&p);
                let mags = magnetizations(&p);
                let work = enumerated_cycle_work(&p).map_err(|e| e.to_string())?;
                points += 1;
                for err in [
                    rel_err(log_partition_function(&p), table.log_z()),
                    rel_err(x_eff(&p) * (1.0 + inject), table.central_x_eff()),
                    rel_err(report.e2, table.mean_energy()),
                    rel_err(-report.w2, table.interaction_energy()),
                    rel_err(report.w_cycle, work),
                    rel_err(mags.s_total, table.total_magnetization()),
                    rel_err(mags.s_ancilla, table.ancilla_magnetization()),
                ] {
                    worst = worst.max(err);
                }
            }
        }
    }
    let detail =
        format!("{points} grid points × 7 quantities, max relative error {worst:.3e}");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// W_cycle + Q2 + Q4 must vanish to rounding at every grid point.
fn check_first_law() -> Result<String, String> {
    let mut worst = 0.0f64;
    for &n in &GRID_N {
        for &x in &GRID_X {
            for &r in &GRID_R {
                let report = stroke_energies(&rp(x, r, n));
                let scale = report.e0.abs().max(report.e2.abs()).max(1.0);
                let residual = (report.w_cycle + report.q2 + report.q4).abs() / scale;
                worst = worst.max(residual);
            }
        }
    }
    let detail = format!("max |W_cycle + Q2 + Q4| / scale = {worst:.3e}");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Pooling ancillas into the cold center dilutes it: the pool field must
/// fall strictly with every ancilla added, from x_eff down to the
/// whole-star field.
fn check_cooperative_ordering() -> Result<String, String> {
    for n in 2..=8usize {
        let p = rp(0.7, -1.0, n);
        let mut previous = f64::INFINITY;
        for pooled in 0..=n {
            let coop = cooperative_temperatures(&p, pooled).map_err(|e| e.to_string())?;
            if coop.x_eff_pool >= previous {
                return Err(format!(
                    "pool field not strictly decreasing at N = {n}, pooled = {pooled}: \
                     {} after {previous}",
                    coop.x_eff_pool
                ));
            }
            previous = coop.x_eff_pool;
            if pooled == 0 && rel_err(coop.x_eff_pool, x_eff(&p)) > 1e-12 {
                return Err(format!(
                    "pool of the bare center disagrees with x_eff at N = {n}"
                ));
            }
            if pooled == n && rel_err(coop.x_eff_pool, coop.x_eff_whole) > 1e-12 {
                return Err(format!(
                    "full pool disagrees with the whole-star field at N = {n}"
                ));
            }
        }
    }
    Ok("pool field strictly decreasing in pool size, endpoints match (N = 2..8)".into())
}

/// Deep coupling pins the central field at (N+1)x.
fn check_deep_coupling_asymptote() -> Result<String, String> {
    let mut worst = 0.0f64;
    for &n in &[1usize, 6, 20] {
        let p = rp(1.0, -100.0, n);
        let limit = (n as f64 + 1.0) * p.x;
        worst = worst.max(rel_err(x_eff(&p), limit));
    }
    let detail = format!("max relative deviation from (N+1)x: {worst:.3e}");
    if worst <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// The dense Gibbs state must be classical (no coherences) and symmetric
/// under ancilla exchange.
fn check_gibbs_structure() -> Result<String, String> {
    let params = SpinStarParams::new(1.0, -1.0, 6, 0.7).map_err(|e| e.to_string())?;
    let hamiltonian =
        build_hamiltonian(InteractionKind::Ising, &params).map_err(|e| e.to_string())?;
    let state = gibbs_state(&hamiltonian, params.beta).map_err(|e| e.to_string())?;
    let mut max_coherence = 0.0f64;
    let mut max_asymmetry = 0.0f64;
    let first = state.qubit_marginal(1).map_err(|e| e.to_string())?;
    for q in 0..=6 {
        let marginal = state.qubit_marginal(q).map_err(|e| e.to_string())?;
        max_coherence = max_coherence.max(marginal.coherence);
        if q >= 1 {
            max_asymmetry = max_asymmetry
                .max((marginal.p_up - first.p_up).abs())
                .max((marginal.p_down - first.p_down).abs());
        }
    }
    let detail = format!(
        "max coherence {max_coherence:.3e}, max ancilla asymmetry {max_asymmetry:.3e}"
    );
    if max_coherence <= 1e-13 && max_asymmetry <= 1e-13 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Detailed-balance baths must relax the two-qubit target to their own
/// Gibbs state, both in the kernel and along a trajectory.
fn check_collision_fixed_point() -> Result<String, String> {
    let beta_eff = x_eff(&rp(0.7, -1.0, 3));
    let model = TargetIsingModel::two_qubit(1.0, 1.5, 0.25).map_err(|e| e.to_string())?;
    let baths = thermal_bath_set(&model, beta_eff, 0.1).map_err(|e| e.to_string())?;
    let liouvillian = Liouvillian::build(&model, &baths).map_err(|e| e.to_string())?;
    let gibbs = model.gibbs(beta_eff).map_err(|e| e.to_string())?;

    let stationary = steady_state(&liouvillian).map_err(|e| e.to_string())?;
    let fidelity = stationary.fidelity(&gibbs).map_err(|e| e.to_string())?;
    if fidelity < 1.0 - 1e-8 {
        return Err(format!("steady-state fidelity to Gibbs only {fidelity:.12}"));
    }

    let initial = DensityMatrix::from_populations(&[0.25; 4]).map_err(|e| e.to_string())?;
    let trajectory =
        evolve(&initial, &liouvillian, 200.0, 0.1, 100).map_err(|e| e.to_string())?;
    let distance = trajectory
        .final_state()
        .trace_distance(&gibbs)
        .map_err(|e| e.to_string())?;
    if distance > 1e-6 {
        return Err(format!("endpoint trace distance to Gibbs {distance:.3e}"));
    }
    if trajectory.max_trace_drift > 1e-9 {
        return Err(format!("trace drift {:.3e}", trajectory.max_trace_drift));
    }
    Ok(format!(
        "steady-state fidelity {fidelity:.12}, endpoint distance {distance:.3e}, \
         trace drift {:.3e}",
        trajectory.max_trace_drift
    ))
}

type Check = Box<dyn Fn() -> Result<String, String>>;

pub fn run(args: &SelftestArgs) -> Result<(), Failure> {
    let started = Instant::now();
    let inject = args.inject;
    let checks: [(&str, Check); 6] = [
        (
            "oracle-equivalence",
            Box::new(move || check_oracle_equivalence(inject)),
        ),
        ("first-law", Box::new(check_first_law)),
        ("cooperative-ordering", Box::new(check_cooperative_ordering)),
        ("deep-coupling-asymptote", Box::new(check_deep_coupling_asymptote)),
        ("gibbs-structure", Box::new(check_gibbs_structure)),
        ("collision-fixed-point", Box::new(check_collision_fixed_point)),
    ];
    let total = checks.len();
    let mut failed = 0usize;
    for (name, check) in checks {
        match check() {
            Ok(detail) => println!("selftest {name}: ok — {detail}"),
            Err(detail) => {
                failed += 1;
                println!("selftest {name}: FAILED — {detail}");
            }
        }
    }
    println!(
        "selftest: {}/{total} checks passed in {:.2?}",
        total - failed,
        started.elapsed()
    );
    if failed > 0 {
        Err(Failure::check(format!("{failed} of {total} checks failed")))
    } else {
        Ok(())
    }
}
