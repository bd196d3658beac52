//! Acceptance suite: every headline property of the simulator, each checked
//! at its stated tolerance against an independent route — brute-force
//! enumeration, finite differences, or dense diagonalization.
//!
//! Each criterion prints a single `criterion NN [...]: PASS/FAIL — ...`
//! verdict line; run `cargo test --test acceptance -- --nocapture` to see
//! them all (the default harness swallows output of passing tests).

use std::time::{Duration, Instant};

use spinstar::analytic::{log_partition_function, magnetizations, x_eff, x_eff_derivative};
use spinstar::collision::{
    evolve, fit_inverse_temperature, steady_state, thermal_bath_set, Liouvillian, TargetIsingModel,
};
use spinstar::cycle::{cooperative_temperatures, efficiency, efficiency_whole, stroke_energies};
use spinstar::oracle::{
    build_hamiltonian, central_marginal, enumerate_ising, enumerated_cycle_work, gibbs_state,
    product_state_interaction_energy, DensityMatrix, InteractionKind,
};
use spinstar::params::{
    beta_from_temperature, temperature_from_beta, ReducedParams, SpinStarParams, UnitConvention,
};

const GRID_X: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
const GRID_R: [f64; 7] = [-2.0, -1.0, -0.5, -0.1, 0.0, 0.5, 1.0];
const GRID_N_MAX: usize = 12;
const ORACLE_TOLERANCE: f64 = 1e-12;

fn rp(x: f64, r: f64, n: usize) -> ReducedParams {
    ReducedParams::new(x, r, n).unwrap()
}

/// Print the one-line verdict for a criterion, then enforce it.
fn conclude(number: usize, name: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("criterion {number:02} [{name}]: {verdict} — {detail}");
    assert!(passed, "criterion {number:02} [{name}]: {detail}");
}

/// |a−b| / max(|a|,|b|); zero for exact equality, ∞ if only one side is finite.
fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if !a.is_finite() || !b.is_finite() {
        return f64::INFINITY;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

/// Running maximum error with the quantity and grid point that set it.
struct Worst {
    err: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            err: 0.0,
            at: String::from("all comparisons exact"),
        }
    }

    fn note(&mut self, err: f64, quantity: &str, x: f64, r: f64, n: usize) {
        if err > self.err {
            self.err = err;
            self.at = format!("{quantity} at (x={x}, r={r}, N={n})");
        }
    }
}

/// Pooled inverse temperature from enumeration data: −atanh of the mean
/// magnetization while the pool is weakly polarized (where the counts agree
/// to many digits and only the magnetization route keeps precision), the
/// marginal-count ratio once it saturates (where the minority count is a
/// clean sum of tiny positive terms).
fn oracle_pool_field(magnetization: f64, members: f64, n_up: f64, n_down: f64) -> f64 {
    let mean = magnetization / members;
    if mean.abs() <= 0.5 {
        -mean.atanh()
    } else {
        0.5 * (n_down.ln() - n_up.ln())
    }
}

#[test]
fn criterion_01_oracle_equivalence() {
    let started = Instant::now();
    let mut worst = Worst::new();
    let mut points = 0usize;
    for n in 1..=GRID_N_MAX {
        for &x in &GRID_X {
            let free = enumerate_ising(&rp(x, 0.0, n)).unwrap();
            let e0_oracle = free.mean_energy();
            for &r in &GRID_R {
                let p = rp(x, r, n);
                let table = enumerate_ising(&p).unwrap();
                let report = stroke_energies(&p);
                points += 1;

                worst.note(
                    rel_err(log_partition_function(&p), table.log_z()),
                    "log Z",
                    x,
                    r,
                    n,
                );
                worst.note(rel_err(x_eff(&p), table.central_x_eff()), "β_eff", x, r, n);
                worst.note(rel_err(report.e0, e0_oracle), "E0", x, r, n);
                let quench = product_state_interaction_energy(&p).unwrap();
                worst.note(rel_err(report.e1, e0_oracle + quench), "E1", x, r, n);
                worst.note(rel_err(report.e2, table.mean_energy()), "E2", x, r, n);
                let h_int = table.interaction_energy();
                worst.note(rel_err(-report.w2, h_int), "⟨H_int⟩", x, r, n);
                worst.note(
                    rel_err(report.e3, table.mean_energy() - h_int),
                    "E3",
                    x,
                    r,
                    n,
                );
                worst.note(
                    rel_err(report.w_cycle, enumerated_cycle_work(&p).unwrap()),
                    "W_cycle",
                    x,
                    r,
                    n,
                );

                let mags = magnetizations(&p);
                worst.note(
                    rel_err(mags.s_total, table.total_magnetization()),
                    "⟨S_z⟩",
                    x,
                    r,
                    n,
                );
                worst.note(
                    rel_err(mags.s_ancilla, table.ancilla_magnetization()),
                    "⟨S'_z⟩",
                    x,
                    r,
                    n,
                );

                let marginals: Vec<(f64, f64)> =
                    (0..=n).map(|q| table.qubit_marginal(q)).collect();
                let counts = |range: std::ops::RangeInclusive<usize>| {
                    range.fold((0.0, 0.0), |(up, down), q| {
                        (up + marginals[q].0, down + marginals[q].1)
                    })
                };
                for pooled in 0..=n {
                    let coop = cooperative_temperatures(&p, pooled).unwrap();
                    let (up, down) = counts(0..=pooled);
                    let pool_oracle = oracle_pool_field(
                        table.pooled_magnetization(pooled),
                        (pooled + 1) as f64,
                        up,
                        down,
                    );
                    worst.note(rel_err(coop.x_eff_pool, pool_oracle), "β_eff,n", x, r, n);
                    if pooled == n {
                        let whole_oracle = oracle_pool_field(
                            table.total_magnetization(),
                            (n + 1) as f64,
                            up,
                            down,
                        );
                        worst.note(
                            rel_err(coop.x_eff_whole, whole_oracle),
                            "β_eff,whole",
                            x,
                            r,
                            n,
                        );
                        let (up, down) = counts(1..=n);
                        let ancilla_oracle = oracle_pool_field(
                            table.ancilla_magnetization(),
                            n as f64,
                            up,
                            down,
                        );
                        worst.note(
                            rel_err(coop.x_eff_ancilla, ancilla_oracle),
                            "β_eff,ancilla",
                            x,
                            r,
                            n,
                        );
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    let passed = worst.err <= ORACLE_TOLERANCE && elapsed < Duration::from_secs(30);
    conclude(
        1,
        "oracle equivalence",
        passed,
        &format!(
            "{points} grid points, ten scalar quantities plus pooled fields for every pool \
             size, closed forms vs enumeration; worst relative error {:.3e} ({}); \
             tolerance 1e-12; {:.2?} (limit 30 s)",
            worst.err, worst.at, elapsed
        ),
    );
}

#[test]
fn criterion_02_deep_coupling_asymptote() {
    // At r = -100 the ancilla contribution to x_eff sits within
    // ~(N/2)·e^{-2x(|r|-1)} of its |r| → ∞ limit (N+1)x. The x = 0.1 column
    // is excluded from the asymptote set: its correction (N/2)·e^{-19.8} is
    // still above the 1e-10 band at N = 20 — the limit simply has not
    // converged at that shallow field — while every x ≥ 0.5 is already
    // dozens of decades inside it.
    let mut worst = 0.0f64;
    let mut worst_at = String::from("-");
    for &n in &[1usize, 6, 20] {
        for &x in &[0.5, 1.0, 2.0, 5.0] {
            let bound = (n as f64 + 1.0) * x;
            let gap = (x_eff(&rp(x, -100.0, n)) - bound).abs() / bound;
            if gap > worst {
                worst = gap;
                worst_at = format!("(x={x}, N={n})");
            }
        }
    }

    let mut ordered = true;
    let mut ordered_at = String::from(" holds");
    for n in 1..=GRID_N_MAX {
        for &x in &GRID_X {
            for &r in GRID_R.iter().filter(|&&r| r < 0.0) {
                let xe = x_eff(&rp(x, r, n));
                if !(x < xe && xe < (n as f64 + 1.0) * x) && ordered {
                    ordered = false;
                    ordered_at = format!(" first violated at (x={x}, r={r}, N={n})");
                }
            }
        }
    }

    let passed = worst <= 1e-10 && ordered;
    conclude(
        2,
        "deep-coupling asymptote",
        passed,
        &format!(
            "max |x_eff − (N+1)x|/(N+1)x = {worst:.3e} at {worst_at} for r = -100 \
             (bound 1e-10); strict x < x_eff < (N+1)x on every ferromagnetic grid \
             point{ordered_at}"
        ),
    );
}

#[test]
fn criterion_03_monotone_coupling_response() {
    // Central differences with δ = 5e-5: the O(δ²) truncation and the
    // ~1e-14 absolute rounding floor of x_eff near saturation both land
    // around 2e-7 relative at the stiffest corner (x = 5, r = -2), well
    // inside the 1e-6 band.
    let delta = 5e-5;
    let mut strict = true;
    let mut strict_at = String::new();
    let mut worst = Worst::new();
    for n in 1..=GRID_N_MAX {
        for &x in &GRID_X {
            let mut previous = f64::INFINITY;
            for k in 0..1000 {
                let r = -2.0 + 3.0 * k as f64 / 999.0;
                let value = x_eff(&rp(x, r, n));
                if value >= previous && strict {
                    strict = false;
                    strict_at = format!(" until (x={x}, r={r:.4}, N={n})");
                }
                previous = value;
                let analytic = x_eff_derivative(&rp(x, r, n));
                let difference =
                    (x_eff(&rp(x, r + delta, n)) - x_eff(&rp(x, r - delta, n))) / (2.0 * delta);
                worst.note(rel_err(analytic, difference), "∂x_eff/∂r", x, r, n);
            }
        }
    }
    let passed = strict && worst.err <= 1e-6;
    conclude(
        3,
        "monotone coupling response",
        passed,
        &format!(
            "60 (x, N) pairs × 1000-point r-grids on [-2, 1]: x_eff strictly \
             decreasing{strict_at}; derivative vs central differences worst {:.3e} ({}); \
             tolerance 1e-6",
            worst.err, worst.at
        ),
    );
}

#[test]
fn criterion_04_first_law() {
    let mut worst = 0.0f64;
    let mut at = String::from("every point closes exactly");
    for n in 1..=GRID_N_MAX {
        for &x in &GRID_X {
            for &r in &GRID_R {
                let report = stroke_energies(&rp(x, r, n));
                let residual = (report.w_cycle + report.q2 + report.q4).abs();
                if residual > worst {
                    worst = residual;
                    at = format!("(x={x}, r={r}, N={n})");
                }
            }
        }
    }
    let passed = worst <= 1e-12;
    conclude(
        4,
        "first law",
        passed,
        &format!("max |W_cycle + Q2 + Q4| = {worst:.3e} at {at}; bound 1e-12"),
    );
}

#[test]
fn criterion_05_cooperative_ordering() {
    let mut strict = true;
    let mut strict_at = String::new();
    let mut worst_end = 0.0f64;
    let mut end_at = String::from("-");
    for n in 2..=GRID_N_MAX {
        for &x in &GRID_X {
            for &r in GRID_R.iter().filter(|&&r| r < 0.0) {
                let p = rp(x, r, n);
                let xe = x_eff(&p);
                let lone = cooperative_temperatures(&p, 0).unwrap();
                let full = cooperative_temperatures(&p, n).unwrap();
                for (gap, label) in [
                    (rel_err(lone.x_eff_pool, xe), "n=0"),
                    (rel_err(full.x_eff_pool, full.x_eff_whole), "n=N"),
                ] {
                    if gap > worst_end {
                        worst_end = gap;
                        end_at = format!("{label} at (x={x}, r={r}, N={n})");
                    }
                }
                for pooled in 1..n {
                    let coop = cooperative_temperatures(&p, pooled).unwrap();
                    if !(xe > coop.x_eff_pool && coop.x_eff_pool > coop.x_eff_ancilla) && strict {
                        strict = false;
                        strict_at =
                            format!(" first violated at (x={x}, r={r}, N={n}, n={pooled})");
                    }
                }
            }
        }
    }
    let passed = strict && worst_end <= 1e-12;
    conclude(
        5,
        "cooperative ordering",
        passed,
        &format!(
            "β_eff > β_eff,n > β_eff,ancilla strict on every ferromagnetic grid point \
             with N ≥ 2{strict_at}; chain endpoints match β_eff and β_eff,whole to \
             {worst_end:.3e} (worst {end_at}); tolerance 1e-12"
        ),
    );
}

#[test]
fn criterion_06_whole_star_efficiency() {
    let mut dominates = true;
    let mut dominates_at = String::new();
    for n in 1..=GRID_N_MAX {
        for &x in &GRID_X {
            for &r in GRID_R.iter().filter(|&&r| r < 0.0) {
                let p = rp(x, r, n);
                let eps = efficiency(&p).unwrap();
                let whole = efficiency_whole(&p).unwrap();
                if whole <= eps && dominates {
                    dominates = false;
                    dominates_at = format!(" first violated at (x={x}, r={r}, N={n})");
                }
            }
        }
    }

    // Soft part: how large the whole-star advantage gets on the figure
    // presets (N = 6 coupling sweep and g = -h size sweep, T ∈ {10, 20, 50}
    // mK under the angular convention).
    let mut best_ratio = 0.0f64;
    let mut best_at = String::from("-");
    for &t_mk in &[10.0, 20.0, 50.0] {
        let beta = beta_from_temperature(t_mk, 1.0, UnitConvention::Angular).unwrap();
        for k in 0..60 {
            let g = -3.0 + 0.05 * k as f64;
            let p = rp(beta, g, 6);
            let ratio = efficiency_whole(&p).unwrap() / efficiency(&p).unwrap();
            if ratio > best_ratio {
                best_ratio = ratio;
                best_at = format!("(T = {t_mk} mK, g = {g:.2}h, N = 6)");
            }
        }
        for n in 1..=30 {
            let p = rp(beta, -1.0, n);
            let ratio = efficiency_whole(&p).unwrap() / efficiency(&p).unwrap();
            if ratio > best_ratio {
                best_ratio = ratio;
                best_at = format!("(T = {t_mk} mK, g = -h, N = {n})");
            }
        }
    }
    let soft = best_ratio >= 2.0;
    conclude(
        6,
        "whole-star efficiency",
        dominates,
        &format!(
            "ε_whole > ε on every ferromagnetic grid point{dominates_at}; soft check: \
             max ε_whole/ε = {best_ratio:.2} at {best_at} across the preset sweeps ({})",
            if soft {
                "≥ 2 as expected"
            } else {
                "below 2 — logged, not failed"
            }
        ),
    );
}

#[test]
fn criterion_07_collision_fixed_point() {
    let started = Instant::now();
    let model = TargetIsingModel::two_qubit(1.0, 1.5, 0.25).unwrap();
    // The refrigerant inverse temperature a concrete star delivers:
    // x = 0.7, g = -h, N = 3 → β_eff ≈ 1.849 per GHz.
    let beta_eff = x_eff(&rp(0.7, -1.0, 3));
    let baths = thermal_bath_set(&model, beta_eff, 0.1).unwrap();
    let liouvillian = Liouvillian::build(&model, &baths).unwrap();

    let stationary = steady_state(&liouvillian).unwrap();
    let gibbs = model.gibbs(beta_eff).unwrap();
    let fidelity = stationary.fidelity(&gibbs).unwrap();

    let maximally_mixed = DensityMatrix::from_populations(&[0.25; 4]).unwrap();
    let trajectory = evolve(&maximally_mixed, &liouvillian, 400.0, 0.1, 50).unwrap();
    let distance = trajectory.final_state().trace_distance(&gibbs).unwrap();
    let elapsed = started.elapsed();

    let passed = fidelity >= 1.0 - 1e-8
        && distance <= 1e-6
        && trajectory.max_trace_drift <= 1e-9
        && elapsed < Duration::from_secs(10);
    conclude(
        7,
        "collision KMS fixed point",
        passed,
        &format!(
            "{count} baths at β_eff = {beta_eff:.6}: steady-state fidelity to Gibbs = \
             {fidelity:.12} (need ≥ 1 - 1e-8); trajectory endpoint trace distance \
             {distance:.3e} (≤ 1e-6); trace drift {drift:.3e} (≤ 1e-9); {elapsed:.2?} \
             (limit 10 s)",
            count = baths.len(),
            drift = trajectory.max_trace_drift,
        ),
    );
}

#[test]
fn criterion_08_environment_competition() {
    let model = TargetIsingModel::two_qubit(1.0, 1.5, 0.25).unwrap();
    let beta_env = 0.7;
    let beta_eff = x_eff(&rp(0.7, -1.0, 3));
    let mut strict = true;
    let mut summary = Vec::new();
    for &ratio in &[0.1, 1.0, 10.0] {
        let mut baths = thermal_bath_set(&model, beta_env, 0.1).unwrap();
        baths.extend(thermal_bath_set(&model, beta_eff, 0.1 * ratio).unwrap());
        let liouvillian = Liouvillian::build(&model, &baths).unwrap();
        let stationary = steady_state(&liouvillian).unwrap();
        let fitted = fit_inverse_temperature(&stationary.populations(), &model.diagonal_energies())
            .unwrap();
        strict &= beta_env < fitted && fitted < beta_eff;
        summary.push(format!(
            "ratio {ratio}: β = {fitted:.4} ({:.2} mK)",
            temperature_from_beta(fitted, UnitConvention::Angular).unwrap()
        ));
    }
    conclude(
        8,
        "environment competition",
        strict,
        &format!(
            "refrigerant/environment rate ratios {{0.1, 1, 10}}: steady state strictly \
             between β = {beta_env} and β_eff = {beta_eff:.4} — {}",
            summary.join("; ")
        ),
    );
}

#[test]
fn criterion_09_heisenberg_comparison() {
    let started = Instant::now();
    let sizes = [2usize, 4, 6];
    let mut dominates = true;
    let mut dominates_at = String::new();
    let mut spread = 0.0f64;
    let mut spread_at = String::from("-");
    let mut spread_ratios = [0.0f64; 3];
    let mut pair_2_vs_4 = 0.0f64;
    for t in 1..=50 {
        let beta = beta_from_temperature(t as f64, 1.0, UnitConvention::Angular).unwrap();
        let ising_ratio = beta / x_eff(&rp(beta, -1.0, 6));
        let mut heisenberg = [0.0f64; 3];
        for (slot, &n) in sizes.iter().enumerate() {
            let params = SpinStarParams::new(1.0, -1.0, n, beta).unwrap();
            let hamiltonian = build_hamiltonian(InteractionKind::Heisenberg, &params).unwrap();
            let thermal = gibbs_state(&hamiltonian, beta).unwrap();
            heisenberg[slot] = beta / central_marginal(&thermal).unwrap().x_eff;
        }
        if heisenberg[2] <= ising_ratio && dominates {
            dominates = false;
            dominates_at = format!(" first violated at T = {t} mK");
        }
        let lo = heisenberg.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = heisenberg.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo > spread {
            spread = hi - lo;
            spread_at = format!("T = {t} mK");
            spread_ratios = heisenberg;
        }
        pair_2_vs_4 = pair_2_vs_4.max((heisenberg[0] - heisenberg[1]).abs());
    }
    let elapsed = started.elapsed();
    let passed = dominates && spread <= 0.05 && elapsed < Duration::from_secs(300);
    conclude(
        9,
        "Heisenberg comparison",
        passed,
        &format!(
            "T = 1..50 mK at g = -h: Heisenberg T_eff/T above Ising at N = 6{dominates_at}; \
             N ∈ {{2, 4, 6}} ratio spread {spread:.4} at {spread_at} \
             (ratios {r2:.3}/{r4:.3}/{r6:.3}, N = 2 vs 4 alone {pair_2_vs_4:.4}, bound 0.05); \
             {elapsed:.2?} (limit 5 min)",
            r2 = spread_ratios[0],
            r4 = spread_ratios[1],
            r6 = spread_ratios[2],
        ),
    );
}

#[test]
fn criterion_10_efficiency_window() {
    let mut lines = Vec::new();
    let mut hits = Vec::new();
    for convention in [UnitConvention::Angular, UnitConvention::Ordinary] {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut hit: Option<(i32, f64)> = None;
        for t in 10..=50 {
            let beta = beta_from_temperature(t as f64, 1.0, convention).unwrap();
            let eps = efficiency(&rp(beta, -0.5, 6)).unwrap();
            lo = lo.min(eps);
            hi = hi.max(eps);
            if hit.is_none() && (0.05..=0.20).contains(&eps) {
                hit = Some((t, eps));
            }
        }
        hits.push(hit.is_some());
        lines.push(match hit {
            Some((t, eps)) => format!(
                "{}: ε ∈ [{lo:.3}, {hi:.3}], window [0.05, 0.20] reached at T = {t} mK \
                 (ε = {eps:.3})",
                convention.label()
            ),
            None => format!(
                "{}: ε ∈ [{lo:.3}, {hi:.3}], window [0.05, 0.20] missed",
                convention.label()
            ),
        });
    }
    let passed = hits.iter().any(|&h| h);
    let flag = if hits[0] != hits[1] {
        " — CONVENTION DISCREPANCY: the efficiency window is reached under exactly one \
         unit convention"
    } else {
        ""
    };
    conclude(
        10,
        "efficiency window",
        passed,
        &format!("g = -h/2, N = 6, T swept 10..50 mK: {}{flag}", lines.join("; ")),
    );
}
