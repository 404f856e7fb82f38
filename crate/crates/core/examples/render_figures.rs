//! Writes every figure type as SVG.
//!
//! Usage: `cargo run --example render_figures [out-dir]` (default `figures/`)

use std::path::PathBuf;

use orbitscope::orbit::{build_orbits, tally_changes, SubjectSeries};
use orbitscope::render::{
    render_density_graph, render_occupancy, render_state_space, render_time_expanded,
    AxisLabelMode, FigureConfig,
};
use orbitscope::simulate::{simulate_population, SimulationConfig};
use orbitscope::space::AnswerString;
use orbitscope::stats::{accumulate_transitions, occupancy_timeseries, StateSubset};

fn main() -> anyhow::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&out)?;

    let rows = ["111", "110", "011", "010", "011", "010", "111", "010"]
        .iter()
        .map(|r| r.parse::<AnswerString>())
        .collect::<Result<Vec<_>, _>>()?;
    let single = SubjectSeries::complete("k", &rows)?;
    let pop = tally_changes([&single])?.rates();
    let worked = build_orbits(std::slice::from_ref(&single), &pop)?;

    let pairs = FigureConfig {
        axis_labels: AxisLabelMode::Pairs,
        ..FigureConfig::default()
    };
    std::fs::write(
        out.join("worked_state_space.svg"),
        render_state_space(&worked, &pairs)?,
    )?;
    std::fs::write(
        out.join("worked_time_expanded.svg"),
        render_time_expanded(&worked, &FigureConfig::default())?,
    )?;

    let data = simulate_population(&SimulationConfig::new(200, 3, 10, vec![0.05, 0.2, 0.5], 7))?;
    let pop = tally_changes(&data.subjects)?.rates();
    let orbits = build_orbits(&data.subjects, &pop)?;
    let config = FigureConfig::default();
    std::fs::write(
        out.join("population_state_space.svg"),
        render_state_space(&orbits, &config)?,
    )?;

    let counts = accumulate_transitions(&orbits, "all")?;
    let h = StateSubset::named("H", 3)?;
    std::fs::write(
        out.join("density_h.svg"),
        render_density_graph(&counts, &h, &config)?,
    )?;

    let occupancy = occupancy_timeseries(&orbits).restricted(&StateSubset::named("L", 3)?);
    std::fs::write(
        out.join("occupancy_l.svg"),
        render_occupancy(&occupancy, &config)?,
    )?;

    println!("wrote figures to {}", out.display());
    Ok(())
}
