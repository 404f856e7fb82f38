//! Synthetic populations: stable variables drift left and orbits cluster.
//!
//! Usage: `cargo run --release --example simulated_clustering [seed]`

use std::collections::BTreeMap;

use orbitscope::orbit::{build_orbits, tally_changes};
use orbitscope::simulate::{fig5_order, simulate_population, SimulationConfig};
use orbitscope::stats::{accumulate_transitions, project_orbits, restrict, StateSubset};

fn main() -> anyhow::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(42);

    let config = SimulationConfig::fig3(seed);
    let data = simulate_population(&config)?;
    let pop = tally_changes(&data.subjects)?.rates();
    println!("flip probabilities: {:.3?}", config.flip_probabilities);
    println!("empirical rates:    {:.3?}", pop.rates());

    let orbits = build_orbits(&data.subjects, &pop)?;
    let mut leftmost: BTreeMap<usize, usize> = BTreeMap::new();
    for o in &orbits {
        *leftmost.entry(o.initial_order().as_slice()[0]).or_default() += 1;
    }
    println!("leftmost variable of the initial order: {leftmost:?}");

    let counts = accumulate_transitions(&orbits, "fig3")?;
    let mut visits: Vec<(u64, u64)> = counts
        .counts
        .iter()
        .filter(|((a, b), _)| a == b)
        .map(|(&(a, _), &c)| (c, a))
        .collect();
    visits.sort_unstable_by(|a, b| b.cmp(a));
    println!(
        "most frequent idle states (count, id): {:?}",
        &visits[..5.min(visits.len())]
    );

    let stable = StateSubset::from_pattern("variable 0 leads", 4, &[], &[0])?;
    let kept = restrict(&counts, &stable);
    println!(
        "share of transitions with variable 0 leftmost: {:.1}%",
        100.0 * kept.retained_share.unwrap_or(0.0)
    );

    let big = simulate_population(&SimulationConfig::fig4(seed))?;
    let big_pop = tally_changes(&big.subjects)?.rates();
    let big_orbits = build_orbits(&big.subjects, &big_pop)?;
    let projected = project_orbits(&big_orbits, &fig5_order())?;
    let dense = accumulate_transitions(&big_orbits, "fig4")?;
    let flat = accumulate_transitions(&projected, "fig4 fixed order")?;
    println!(
        "13 variables: {} distinct transitions, {} after projecting onto order {}",
        dense.counts.len(),
        flat.counts.len(),
        fig5_order()
    );
    Ok(())
}
