//! `spinstar sweep`: evaluate one quantity over a one-variable grid.
//!
//! A sweep is specified by a quantity, a grid `<var>=<lo>:<hi>:<count>`
//! over one of `t_mk`, `g_ghz`, `n`, and `--fix` values for the remaining
//! parameters (`h_ghz` defaults to 1). Output is CSV: `#` header lines
//! recording the run, one column for the sweep variable, the fixed
//! parameters, and the quantity value. Identical invocations produce
//! byte-identical files; grid points are computed on a worker pool
//! (`SPINSTAR_WORKERS` pins its size) and written in grid order.
//!
//! `--oracle` cross-checks every row of an Ising quantity with N ≤ 12
//! against brute-force enumeration at 1e-12 relative tolerance, as a
//! spot-check that the closed forms in use match first principles.

use crate::figures;
use crate::Failure;
use clap::{Args, ValueEnum};
use spinstar::analytic::x_eff;
use spinstar::cycle::{cooperative_temperatures, efficiency, efficiency_whole};
use spinstar::oracle::dense::{
    build_hamiltonian, central_marginal, dense_cycle, gibbs_state, InteractionKind,
};
use spinstar::oracle::enumeration::{enumerate_ising, enumerated_cycle_work, ConfigurationTable};
use spinstar::params::{beta_from_temperature, ReducedParams, SpinStarParams, UnitConvention};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

/// Largest star the `--oracle` cross-check enumerates.
const ORACLE_CEILING: usize = 12;
/// Relative tolerance of the `--oracle` cross-check.
const ORACLE_TOLERANCE: f64 = 1e-12;

#[derive(Args)]
pub struct SweepArgs {
    /// Quantity to evaluate at every grid point.
    #[arg(long, value_enum, required_unless_present = "figure", conflicts_with = "figure")]
    quantity: Option<Quantity>,

    /// Sweep grid, `<var>=<lo>:<hi>:<count>`; var is one of t_mk, g_ghz, n.
    #[arg(long, required_unless_present = "figure", conflicts_with = "figure")]
    grid: Option<String>,

    /// Fix a parameter, `<key>=<value>`; key is one of h_ghz, g_ghz, n,
    /// t_mk. Repeatable. h_ghz defaults to 1 when not given.
    #[arg(long = "fix", value_name = "KEY=VALUE", conflicts_with = "figure")]
    fixes: Vec<String>,

    /// Unit convention for mK ↔ β conversions: angular or ordinary.
    #[arg(long, default_value = "angular", value_parser = parse_convention)]
    convention: UnitConvention,

    /// Run a built-in preset (see `spinstar --list-figures`) instead of
    /// spelling out --quantity/--grid/--fix.
    #[arg(long)]
    figure: Option<String>,

    /// Cross-check Ising rows with N ≤ 12 against brute-force enumeration.
    #[arg(long)]
    oracle: bool,

    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

/// The sweepable quantities. Labels follow the dataset column names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// T_eff/T of the central qubit in the coupled Gibbs state.
    #[value(name = "teff_ratio")]
    TeffRatio,
    /// Cooling efficiency ε of the four-stroke cycle.
    #[value(name = "efficiency")]
    Efficiency,
    /// T_eff,whole/T of the whole star after switching the coupling off.
    #[value(name = "teff_whole")]
    TeffWhole,
    /// Whole-star efficiency ε_whole, crediting the ancillas' heat.
    #[value(name = "efficiency_whole")]
    EfficiencyWhole,
    /// T_eff,ancilla/T of the ancilla pool alone.
    #[value(name = "teff_ancilla")]
    TeffAncilla,
    /// T_eff/T of the central qubit of the isotropic Heisenberg star.
    #[value(name = "heisenberg_teff")]
    HeisenbergTeff,
    /// Cooling efficiency of the Heisenberg star's cycle.
    #[value(name = "heisenberg_eff")]
    HeisenbergEff,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::TeffRatio => "teff_ratio",
            Quantity::Efficiency => "efficiency",
            Quantity::TeffWhole => "teff_whole",
            Quantity::EfficiencyWhole => "efficiency_whole",
            Quantity::TeffAncilla => "teff_ancilla",
            Quantity::HeisenbergTeff => "heisenberg_teff",
            Quantity::HeisenbergEff => "heisenberg_eff",
        }
    }

    /// Closed-form Ising quantities have an enumeration oracle; the
    /// Heisenberg ones are themselves exact diagonalization.
    fn has_oracle(self) -> bool {
        !matches!(self, Quantity::HeisenbergTeff | Quantity::HeisenbergEff)
    }
}

fn parse_convention(raw: &str) -> Result<UnitConvention, String> {
    UnitConvention::from_str(raw).map_err(|err| err.to_string())
}

/// The grid variable of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepVar {
    TMk,
    GGhz,
    N,
}

impl SweepVar {
    fn key(self) -> &'static str {
        match self {
            SweepVar::TMk => "t_mk",
            SweepVar::GGhz => "g_ghz",
            SweepVar::N => "n",
        }
    }
}

/// `<var>=<lo>:<hi>:<count>` → variable and its grid values, in order.
fn parse_grid(raw: &str) -> Result<(SweepVar, Vec<f64>), Failure> {
    let (key, spec) = raw
        .split_once('=')
        .ok_or_else(|| Failure::validation(format!("grid '{raw}' is not <var>=<lo>:<hi>:<count>")))?;
    let var = match key {
        "t_mk" => SweepVar::TMk,
        "g_ghz" => SweepVar::GGhz,
        "n" => SweepVar::N,
        other => {
            return Err(Failure::validation(format!(
                "unknown sweep variable '{other}' (expected t_mk, g_ghz, or n)"
            )))
        }
    };
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::validation(format!(
            "grid range '{spec}' is not <lo>:<hi>:<count>"
        )));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Failure::validation(format!("grid bound '{}' is not a number", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Failure::validation(format!("grid bound '{}' is not a number", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| Failure::validation(format!("grid count '{}' is not an integer", parts[2])))?;
    if count == 0 {
        return Err(Failure::validation("grid count must be at least 1"));
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Failure::validation("grid bounds must be finite"));
    }
    if count == 1 && lo != hi {
        return Err(Failure::validation(
            "a single-point grid needs identical bounds (lo = hi)",
        ));
    }
    let values: Vec<f64> = if count == 1 {
        vec![lo]
    } else {
        let step = (hi - lo) / (count as f64 - 1.0);
        (0..count).map(|k| lo + k as f64 * step).collect()
    };
    if var == SweepVar::N {
        for v in &values {
            if v.fract() != 0.0 || *v < 0.0 {
                return Err(Failure::validation(format!(
                    "ancilla-count grid must hit non-negative integers, got {v}"
                )));
            }
        }
    }
    Ok((var, values))
}

/// The `--fix` assignments.
#[derive(Debug, Default, Clone)]
struct FixSet {
    h_ghz: Option<f64>,
    g_ghz: Option<f64>,
    n: Option<usize>,
    t_mk: Option<f64>,
}

impl FixSet {
    fn parse(entries: &[impl AsRef<str>]) -> Result<Self, Failure> {
        let mut fixes = FixSet::default();
        for entry in entries {
            let entry = entry.as_ref();
            let (key, value) = entry.split_once('=').ok_or_else(|| {
                Failure::validation(format!("fix '{entry}' is not <key>=<value>"))
            })?;
            let taken = match key {
                "h_ghz" => fixes.h_ghz.replace(parse_f64(key, value)?).is_some(),
                "g_ghz" => fixes.g_ghz.replace(parse_f64(key, value)?).is_some(),
                "t_mk" => fixes.t_mk.replace(parse_f64(key, value)?).is_some(),
                "n" => {
                    let n: usize = value.parse().map_err(|_| {
                        Failure::validation(format!(
                            "fix n = '{value}' is not a non-negative integer"
                        ))
                    })?;
                    fixes.n.replace(n).is_some()
                }
                other => {
                    return Err(Failure::validation(format!(
                        "unknown fix key '{other}' (expected h_ghz, g_ghz, n, or t_mk)"
                    )))
                }
            };
            if taken {
                return Err(Failure::validation(format!("fix key '{key}' given twice")));
            }
        }
        Ok(fixes)
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, Failure> {
    value
        .parse()
        .map_err(|_| Failure::validation(format!("fix {key} = '{value}' is not a number")))
}

/// One fully specified grid point.
#[derive(Debug, Clone, Copy)]
struct Point {
    h_ghz: f64,
    g_ghz: f64,
    n: usize,
    t_mk: f64,
}

/// The resolved sweep: everything needed to produce the dataset.
struct Plan {
    quantity: Quantity,
    var: SweepVar,
    values: Vec<f64>,
    fixes: FixSet,
    convention: UnitConvention,
    preset: Option<&'static figures::FigurePreset>,
}

impl Plan {
    fn from_args(args: &SweepArgs) -> Result<Self, Failure> {
        let (quantity, grid_raw, fix_raw, preset): (_, _, Vec<String>, _) =
            if let Some(id) = &args.figure {
                let preset = figures::find(id).ok_or_else(|| {
                    Failure::validation(format!(
                        "unknown figure preset '{id}' (run `spinstar --list-figures`)"
                    ))
                })?;
                let fixes = preset.fixes.iter().map(|s| s.to_string()).collect();
                (preset.quantity, preset.grid.to_string(), fixes, Some(preset))
            } else {
                // clap guarantees quantity and grid are present without --figure.
                (
                    args.quantity.expect("clap enforces --quantity"),
                    args.grid.clone().expect("clap enforces --grid"),
                    args.fixes.clone(),
                    None,
                )
            };

        let (var, values) = parse_grid(&grid_raw)?;
        let mut fixes = FixSet::parse(&fix_raw)?;
        if fixes.h_ghz.is_none() {
            fixes.h_ghz = Some(1.0);
        }

        let fixed_conflict = match var {
            SweepVar::TMk => fixes.t_mk.is_some(),
            SweepVar::GGhz => fixes.g_ghz.is_some(),
            SweepVar::N => fixes.n.is_some(),
        };
        if fixed_conflict {
            return Err(Failure::validation(format!(
                "'{}' is both the sweep variable and fixed",
                var.key()
            )));
        }
        let missing = |key: &str| {
            Failure::validation(format!("parameter '{key}' is neither swept nor fixed"))
        };
        match var {
            SweepVar::TMk => {
                fixes.g_ghz.ok_or_else(|| missing("g_ghz"))?;
                fixes.n.ok_or_else(|| missing("n"))?;
            }
            SweepVar::GGhz => {
                fixes.t_mk.ok_or_else(|| missing("t_mk"))?;
                fixes.n.ok_or_else(|| missing("n"))?;
            }
            SweepVar::N => {
                fixes.g_ghz.ok_or_else(|| missing("g_ghz"))?;
                fixes.t_mk.ok_or_else(|| missing("t_mk"))?;
            }
        }

        Ok(Plan {
            quantity,
            var,
            values,
            fixes,
            convention: args.convention,
            preset,
        })
    }

    fn point(&self, value: f64) -> Point {
        Point {
            h_ghz: self.fixes.h_ghz.unwrap_or(1.0),
            g_ghz: match self.var {
                SweepVar::GGhz => value,
                _ => self.fixes.g_ghz.unwrap_or(0.0),
            },
            n: match self.var {
                SweepVar::N => value as usize,
                _ => self.fixes.n.unwrap_or(0),
            },
            t_mk: match self.var {
                SweepVar::TMk => value,
                _ => self.fixes.t_mk.unwrap_or(0.0),
            },
        }
    }

    /// Columns after the sweep variable, in canonical order.
    fn fixed_columns(&self) -> Vec<(&'static str, f64)> {
        let mut columns = Vec::new();
        columns.push(("h_ghz", self.fixes.h_ghz.unwrap_or(1.0)));
        if self.var != SweepVar::GGhz {
            columns.push(("g_ghz", self.fixes.g_ghz.unwrap_or(0.0)));
        }
        if self.var != SweepVar::N {
            columns.push(("n", self.fixes.n.unwrap_or(0) as f64));
        }
        if self.var != SweepVar::TMk {
            columns.push(("t_mk", self.fixes.t_mk.unwrap_or(0.0)));
        }
        columns
    }
}

/// Closed-form (or dense, for Heisenberg) value of a quantity at one point.
fn evaluate(quantity: Quantity, point: Point, convention: UnitConvention) -> spinstar::Result<f64> {
    let beta = beta_from_temperature(point.t_mk, point.h_ghz, convention)?;
    let x = beta * point.h_ghz;
    match quantity {
        Quantity::TeffRatio => {
            let p = ReducedParams::new(x, point.g_ghz / point.h_ghz, point.n)?;
            Ok(x / x_eff(&p))
        }
        Quantity::Efficiency => {
            let p = ReducedParams::new(x, point.g_ghz / point.h_ghz, point.n)?;
            efficiency(&p)
        }
        Quantity::TeffWhole => {
            let p = ReducedParams::new(x, point.g_ghz / point.h_ghz, point.n)?;
            Ok(x / cooperative_temperatures(&p, 0)?.x_eff_whole)
        }
        Quantity::EfficiencyWhole => {
            let p = ReducedParams::new(x, point.g_ghz / point.h_ghz, point.n)?;
            efficiency_whole(&p)
        }
        Quantity::TeffAncilla => {
            let p = ReducedParams::new(x, point.g_ghz / point.h_ghz, point.n)?;
            Ok(x / cooperative_temperatures(&p, 0)?.x_eff_ancilla)
        }
        Quantity::HeisenbergTeff => {
            let params = SpinStarParams::new(point.h_ghz, point.g_ghz, point.n, beta)?;
            let hamiltonian = build_hamiltonian(InteractionKind::Heisenberg, &params)?;
            let thermal = gibbs_state(&hamiltonian, beta)?;
            Ok(x / central_marginal(&thermal)?.x_eff)
        }
        Quantity::HeisenbergEff => {
            let params = SpinStarParams::new(point.h_ghz, point.g_ghz, point.n, beta)?;
            dense_cycle(InteractionKind::Heisenberg, &params)?
                .epsilon
                .ok_or(spinstar::Error::DegenerateCycle)
        }
    }
}

/// Pooled effective field from an enumeration table, mirroring the
/// library's two-regime routing so the comparison is apples to apples.
fn oracle_pool_field(table: &ConfigurationTable, include_center: bool, n: usize) -> f64 {
    let (magnetization, members, first) = if include_center {
        (table.pooled_magnetization(n), (n + 1) as f64, 0)
    } else {
        (table.ancilla_magnetization(), n as f64, 1)
    };
    let mean = magnetization / members;
    if mean.abs() <= 0.5 {
        return -mean.atanh();
    }
    let mut n_up = 0.0;
    let mut n_down = 0.0;
    for q in first..=n {
        let (up, down) = table.qubit_marginal(q);
        n_up += up;
        n_down += down;
    }
    0.5 * (n_down.ln() - n_up.ln())
}

/// Brute-force value of an Ising quantity at one point.
fn oracle_value(
    quantity: Quantity,
    point: Point,
    convention: UnitConvention,
) -> spinstar::Result<f64> {
    let beta = beta_from_temperature(point.t_mk, point.h_ghz, convention)?;
    let x = beta * point.h_ghz;
    let p = ReducedParams::new(x, point.g_ghz / point.h_ghz, point.n)?;
    let table = enumerate_ising(&p)?;
    match quantity {
        Quantity::TeffRatio => Ok(x / table.central_x_eff()),
        Quantity::Efficiency => {
            let work = enumerated_cycle_work(&p)?;
            Ok((table.central_x_eff().tanh() - x.tanh()) / work)
        }
        Quantity::TeffWhole => Ok(x / oracle_pool_field(&table, true, point.n)),
        Quantity::TeffAncilla => Ok(x / oracle_pool_field(&table, false, point.n)),
        Quantity::EfficiencyWhole => {
            let free = enumerate_ising(&ReducedParams::new(x, 0.0, point.n)?)?;
            let e3 = table.mean_energy() - table.interaction_energy();
            let work = enumerated_cycle_work(&p)?;
            Ok((free.mean_energy() - e3) / work)
        }
        Quantity::HeisenbergTeff | Quantity::HeisenbergEff => Err(
            spinstar::Error::InvalidParameter("Heisenberg quantities have no enumeration".into()),
        ),
    }
}

/// Build the worker pool, honoring `SPINSTAR_WORKERS`.
fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("SPINSTAR_WORKERS") {
        let workers: usize = raw.parse().map_err(|_| {
            Failure::validation(format!(
                "SPINSTAR_WORKERS must be a positive integer, got '{raw}'"
            ))
        })?;
        if workers == 0 {
            return Err(Failure::validation("SPINSTAR_WORKERS must be at least 1"));
        }
        builder = builder.num_threads(workers);
    }
    builder
        .build()
        .map_err(|err| Failure::validation(format!("worker pool: {err}")))
}

pub fn run(args: &SweepArgs) -> Result<(), Failure> {
    use rayon::prelude::*;

    let plan = Plan::from_args(args)?;
    if args.oracle && !plan.quantity.has_oracle() {
        return Err(Failure::validation(format!(
            "--oracle cross-checks Ising quantities only, not {}",
            plan.quantity.label()
        )));
    }

    let pool = thread_pool()?;
    let computed: Vec<spinstar::Result<f64>> = pool.install(|| {
        plan.values
            .par_iter()
            .map(|&value| evaluate(plan.quantity, plan.point(value), plan.convention))
            .collect()
    });
    let mut rows = Vec::with_capacity(plan.values.len());
    for (value, outcome) in plan.values.iter().zip(computed) {
        match outcome {
            Ok(result) => rows.push((*value, result)),
            Err(err) => {
                let mut failure = Failure::from(err);
                failure.message = format!(
                    "at {} = {value}: {}",
                    plan.var.key(),
                    failure.message
                );
                return Err(failure);
            }
        }
    }

    let mut csv = String::new();
    let _ = writeln!(csv, "# spinstar sweep");
    let _ = writeln!(csv, "# quantity: {}", plan.quantity.label());
    let _ = writeln!(csv, "# convention: {}", plan.convention.label());
    let _ = writeln!(csv, "# grid: {} over {} points", plan.var.key(), plan.values.len());
    for (key, value) in plan.fixed_columns() {
        let _ = writeln!(csv, "# fixed: {key} = {value}");
    }
    if let Some(preset) = plan.preset {
        let _ = writeln!(csv, "# preset: {} — {}", preset.id, preset.note);
        if figures::sweeps_ancilla_count(preset) {
            let _ = writeln!(csv, "# note: {}", figures::n_range_note());
        }
    }
    let _ = write!(csv, "{}", plan.var.key());
    for (key, _) in plan.fixed_columns() {
        let _ = write!(csv, ",{key}");
    }
    let _ = writeln!(csv, ",{}", plan.quantity.label());
    for (value, result) in &rows {
        let _ = write!(csv, "{value}");
        for (_, fixed) in plan.fixed_columns() {
            let _ = write!(csv, ",{fixed}");
        }
        let _ = writeln!(csv, ",{result}");
    }

    let mut file = std::io::BufWriter::new(std::fs::File::create(&args.out)?);
    file.write_all(csv.as_bytes())?;
    file.flush()?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());

    if args.oracle {
        let checks: Vec<spinstar::Result<Option<f64>>> = pool.install(|| {
            plan.values
                .par_iter()
                .map(|&value| {
                    let point = plan.point(value);
                    if point.n > ORACLE_CEILING {
                        return Ok(None);
                    }
                    oracle_value(plan.quantity, point, plan.convention).map(Some)
                })
                .collect()
        });
        let mut checked = 0usize;
        let mut skipped = 0usize;
        let mut worst = 0.0f64;
        let mut worst_at = f64::NAN;
        for ((value, closed), outcome) in rows.iter().zip(checks) {
            match outcome? {
                None => skipped += 1,
                Some(oracle) => {
                    checked += 1;
                    let scale = closed.abs().max(oracle.abs());
                    let err = if scale == 0.0 { 0.0 } else { (closed - oracle).abs() / scale };
                    if err > worst {
                        worst = err;
                        worst_at = *value;
                    }
                }
            }
        }
        println!(
            "oracle cross-check: {checked} rows vs enumeration (N ≤ {ORACLE_CEILING}), \
             {skipped} skipped, max relative error {worst:.3e}"
        );
        if worst > ORACLE_TOLERANCE {
            return Err(Failure::check(format!(
                "oracle cross-check failed: relative error {worst:.3e} at {} = {worst_at} \
                 exceeds {ORACLE_TOLERANCE:.0e}",
                plan.var.key()
            )));
        }
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_accepts_the_three_variables() {
        let (var, values) = parse_grid("t_mk=1:50:50").unwrap();
        assert_eq!(var, SweepVar::TMk);
        assert_eq!(values.len(), 50);
        assert_eq!(values[0], 1.0);
        assert_eq!(values[49], 50.0);

        let (var, values) = parse_grid("g_ghz=-3:-0.05:60").unwrap();
        assert_eq!(var, SweepVar::GGhz);
        assert_eq!(values.len(), 60);
        assert_eq!(values[0], -3.0);
        assert!((values[59] + 0.05).abs() < 1e-12);

        let (var, values) = parse_grid("n=1:30:30").unwrap();
        assert_eq!(var, SweepVar::N);
        assert_eq!(values[5], 6.0);
    }

    #[test]
    fn grid_parsing_rejects_malformed_specs() {
        assert!(parse_grid("t_mk=1:50").is_err());
        assert!(parse_grid("beta=1:2:3").is_err());
        assert!(parse_grid("t_mk=1:50:0").is_err());
        assert!(parse_grid("t_mk=2:3:1").is_err());
        assert!(parse_grid("n=1:2:3").is_err()); // hits 1.5
    }

    #[test]
    fn fixes_reject_duplicates_and_unknown_keys() {
        assert!(FixSet::parse(&["g_ghz=-1", "g_ghz=-2"]).is_err());
        assert!(FixSet::parse(&["coupling=-1"]).is_err());
        let fixes = FixSet::parse(&["g_ghz=-1", "n=6"]).unwrap();
        assert_eq!(fixes.g_ghz, Some(-1.0));
        assert_eq!(fixes.n, Some(6));
    }

    #[test]
    fn every_preset_parses_and_evaluates() {
        for preset in figures::PRESETS {
            let (var, values) = parse_grid(preset.grid)
                .unwrap_or_else(|f| panic!("{}: {}", preset.id, f.message));
            let fixes = FixSet::parse(preset.fixes)
                .unwrap_or_else(|f| panic!("{}: {}", preset.id, f.message));
            assert!(!values.is_empty(), "{}", preset.id);
            // Evaluate the first grid point of each preset.
            let value = values[0];
            let point = Point {
                h_ghz: fixes.h_ghz.unwrap_or(1.0),
                g_ghz: if var == SweepVar::GGhz { value } else { fixes.g_ghz.unwrap() },
                n: if var == SweepVar::N { value as usize } else { fixes.n.unwrap() },
                t_mk: if var == SweepVar::TMk { value } else { fixes.t_mk.unwrap() },
            };
            let out = evaluate(preset.quantity, point, UnitConvention::Angular)
                .unwrap_or_else(|e| panic!("{}: {}", preset.id, e));
            assert!(out.is_finite(), "{}: {out}", preset.id);
        }
    }

    #[test]
    fn oracle_agrees_with_closed_forms_on_a_spot_grid() {
        for quantity in [
            Quantity::TeffRatio,
            Quantity::Efficiency,
            Quantity::TeffWhole,
            Quantity::EfficiencyWhole,
            Quantity::TeffAncilla,
        ] {
            for (g, n, t) in [(-1.0, 3, 10.0), (-0.5, 6, 20.0), (-2.0, 2, 50.0)] {
                let point = Point { h_ghz: 1.0, g_ghz: g, n, t_mk: t };
                let closed = evaluate(quantity, point, UnitConvention::Angular).unwrap();
                let oracle = oracle_value(quantity, point, UnitConvention::Angular).unwrap();
                let scale = closed.abs().max(oracle.abs());
                assert!(
                    (closed - oracle).abs() <= 1e-12 * scale,
                    "{} at g={g}, N={n}, T={t}: {closed} vs {oracle}",
                    quantity.label()
                );
            }
        }
    }
}
