//! Built-in sweep presets.
//!
//! Each preset is one complete sweep specification — quantity, grid, fixed
//! parameters — reproducing one curve of a standard dataset family. Panels
//! that show a family of curves (three couplings, or three environment
//! temperatures) are split into one preset per curve so that every preset
//! maps to exactly one sweep and each output file is a single column of
//! values over a single grid.
//!
//! Common choices across the catalog: gap h = 1 GHz; coupling families
//! g ∈ {-h/2, -h, -2h}; temperature families T ∈ {10, 20, 50} mK; coupling
//! sweeps span g = -3..-0.05 GHz; temperature sweeps span T = 1..50 mK; and
//! ancilla-count sweeps span N = 1..30 (the N range is a preset assumption,
//! recorded in the output header).

use crate::sweep::Quantity;

/// One runnable preset: a named, fully pinned sweep.
pub struct FigurePreset {
    /// Identifier accepted by `sweep --figure`.
    pub id: &'static str,
    pub quantity: Quantity,
    /// Grid in the same `<var>=<lo>:<hi>:<count>` syntax as `--grid`.
    pub grid: &'static str,
    /// Fixed parameters in the same `<key>=<value>` syntax as `--fix`.
    pub fixes: &'static [&'static str],
    /// One-line description, copied into the output header.
    pub note: &'static str,
}

/// N-range caveat shared by every ancilla-count preset.
const N_RANGE_NOTE: &str = "N axis spans 1..30 (preset assumption)";

macro_rules! presets {
    ($($id:literal, $quantity:ident, $grid:literal, [$($fix:literal),*], $note:literal;)*) => {
        &[$(FigurePreset {
            id: $id,
            quantity: Quantity::$quantity,
            grid: $grid,
            fixes: &[$($fix),*],
            note: $note,
        }),*]
    };
}

/// The full catalog, in display order.
pub const PRESETS: &[FigurePreset] = presets![
    "fig2a-g05", TeffRatio, "t_mk=1:50:50", ["n=6", "g_ghz=-0.5"],
        "central-qubit T_eff/T vs temperature, g = -h/2 curve";
    "fig2a-g10", TeffRatio, "t_mk=1:50:50", ["n=6", "g_ghz=-1"],
        "central-qubit T_eff/T vs temperature, g = -h curve";
    "fig2a-g20", TeffRatio, "t_mk=1:50:50", ["n=6", "g_ghz=-2"],
        "central-qubit T_eff/T vs temperature, g = -2h curve";
    "fig2b-t10", TeffRatio, "n=1:30:30", ["g_ghz=-1", "t_mk=10"],
        "central-qubit T_eff/T vs ancilla count, T = 10 mK curve";
    "fig2b-t20", TeffRatio, "n=1:30:30", ["g_ghz=-1", "t_mk=20"],
        "central-qubit T_eff/T vs ancilla count, T = 20 mK curve";
    "fig2b-t50", TeffRatio, "n=1:30:30", ["g_ghz=-1", "t_mk=50"],
        "central-qubit T_eff/T vs ancilla count, T = 50 mK curve";
    "fig3a-t10", Efficiency, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=10"],
        "cycle efficiency vs coupling, T = 10 mK curve";
    "fig3a-t20", Efficiency, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=20"],
        "cycle efficiency vs coupling, T = 20 mK curve";
    "fig3a-t50", Efficiency, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=50"],
        "cycle efficiency vs coupling, T = 50 mK curve";
    "fig3b-t10", Efficiency, "n=1:30:30", ["g_ghz=-1", "t_mk=10"],
        "cycle efficiency vs ancilla count, T = 10 mK curve";
    "fig3b-t20", Efficiency, "n=1:30:30", ["g_ghz=-1", "t_mk=20"],
        "cycle efficiency vs ancilla count, T = 20 mK curve";
    "fig3b-t50", Efficiency, "n=1:30:30", ["g_ghz=-1", "t_mk=50"],
        "cycle efficiency vs ancilla count, T = 50 mK curve";
    "fig5a-t10", TeffWhole, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=10"],
        "whole-star T_eff/T vs coupling, T = 10 mK curve";
    "fig5a-t20", TeffWhole, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=20"],
        "whole-star T_eff/T vs coupling, T = 20 mK curve";
    "fig5a-t50", TeffWhole, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=50"],
        "whole-star T_eff/T vs coupling, T = 50 mK curve";
    "fig5b-t10", TeffWhole, "n=1:30:30", ["g_ghz=-1", "t_mk=10"],
        "whole-star T_eff/T vs ancilla count, T = 10 mK curve";
    "fig5b-t20", TeffWhole, "n=1:30:30", ["g_ghz=-1", "t_mk=20"],
        "whole-star T_eff/T vs ancilla count, T = 20 mK curve";
    "fig5b-t50", TeffWhole, "n=1:30:30", ["g_ghz=-1", "t_mk=50"],
        "whole-star T_eff/T vs ancilla count, T = 50 mK curve";
    "fig6a-t10", EfficiencyWhole, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=10"],
        "whole-star efficiency vs coupling, T = 10 mK curve";
    "fig6a-t20", EfficiencyWhole, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=20"],
        "whole-star efficiency vs coupling, T = 20 mK curve";
    "fig6a-t50", EfficiencyWhole, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=50"],
        "whole-star efficiency vs coupling, T = 50 mK curve";
    "fig6b-t10", EfficiencyWhole, "n=1:30:30", ["g_ghz=-1", "t_mk=10"],
        "whole-star efficiency vs ancilla count, T = 10 mK curve";
    "fig6b-t20", EfficiencyWhole, "n=1:30:30", ["g_ghz=-1", "t_mk=20"],
        "whole-star efficiency vs ancilla count, T = 20 mK curve";
    "fig6b-t50", EfficiencyWhole, "n=1:30:30", ["g_ghz=-1", "t_mk=50"],
        "whole-star efficiency vs ancilla count, T = 50 mK curve";
    "fig7a-t10", TeffAncilla, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=10"],
        "ancilla-pool T_eff/T vs coupling, T = 10 mK curve";
    "fig7a-t20", TeffAncilla, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=20"],
        "ancilla-pool T_eff/T vs coupling, T = 20 mK curve";
    "fig7a-t50", TeffAncilla, "g_ghz=-3:-0.05:60", ["n=6", "t_mk=50"],
        "ancilla-pool T_eff/T vs coupling, T = 50 mK curve";
    "fig7b-t10", TeffAncilla, "n=1:30:30", ["g_ghz=-1", "t_mk=10"],
        "ancilla-pool T_eff/T vs ancilla count, T = 10 mK curve";
    "fig7b-t20", TeffAncilla, "n=1:30:30", ["g_ghz=-1", "t_mk=20"],
        "ancilla-pool T_eff/T vs ancilla count, T = 20 mK curve";
    "fig7b-t50", TeffAncilla, "n=1:30:30", ["g_ghz=-1", "t_mk=50"],
        "ancilla-pool T_eff/T vs ancilla count, T = 50 mK curve";
    "fig8-g05", HeisenbergTeff, "t_mk=1:50:50", ["n=6", "g_ghz=-0.5"],
        "Heisenberg central-qubit T_eff/T vs temperature, g = -h/2 curve";
    "fig8-g10", HeisenbergTeff, "t_mk=1:50:50", ["n=6", "g_ghz=-1"],
        "Heisenberg central-qubit T_eff/T vs temperature, g = -h curve";
    "fig8-g20", HeisenbergTeff, "t_mk=1:50:50", ["n=6", "g_ghz=-2"],
        "Heisenberg central-qubit T_eff/T vs temperature, g = -2h curve";
    "fig9-g05", HeisenbergEff, "t_mk=1:50:50", ["n=6", "g_ghz=-0.5"],
        "Heisenberg cycle efficiency vs temperature, g = -h/2 curve";
    "fig9-g10", HeisenbergEff, "t_mk=1:50:50", ["n=6", "g_ghz=-1"],
        "Heisenberg cycle efficiency vs temperature, g = -h curve";
    "fig9-g20", HeisenbergEff, "t_mk=1:50:50", ["n=6", "g_ghz=-2"],
        "Heisenberg cycle efficiency vs temperature, g = -2h curve";
];

pub fn find(id: &str) -> Option<&'static FigurePreset> {
    PRESETS.iter().find(|preset| preset.id == id)
}

/// Does the preset sweep the ancilla count? Those carry the N-range caveat.
pub fn sweeps_ancilla_count(preset: &FigurePreset) -> bool {
    preset.grid.starts_with("n=")
}

pub fn print_catalog() {
    println!("built-in figure presets (run with `spinstar sweep --figure <id> --out <path>`):");
    println!();
    for preset in PRESETS {
        let mut fixed = String::new();
        for fix in preset.fixes {
            fixed.push_str(fix);
            fixed.push(' ');
        }
        println!(
            "  {id:<10}  {quantity:<17}  {grid:<20}  {fixed:<22} {note}",
            id = preset.id,
            quantity = preset.quantity.label(),
            grid = preset.grid,
            fixed = fixed.trim_end(),
            note = preset.note,
        );
    }
    println!();
    println!("common to all presets: h_ghz = 1; convention defaults to angular (--convention");
    println!("overrides it and is recorded in the CSV header). {N_RANGE_NOTE}.");
}

/// Header caveat for ancilla-count presets.
pub fn n_range_note() -> &'static str {
    N_RANGE_NOTE
}
