//! One subject, three variables, eight time steps: prints every state of the orbit.

use orbitscope::orbit::{build_orbit, change_frequencies, PopulationFrequencies, SubjectSeries};
use orbitscope::space::AnswerString;

fn main() -> anyhow::Result<()> {
    let rows = ["111", "110", "011", "010", "011", "010", "111", "010"]
        .iter()
        .map(|r| r.parse::<AnswerString>())
        .collect::<Result<Vec<_>, _>>()?;
    let series = SubjectSeries::complete("k", &rows)?;

    // Population rates only break ties; here every variable is as common as any other.
    let pop = PopulationFrequencies::uniform(3);
    let orbit = build_orbit(&series, &pop)?;

    println!(
        "change frequencies: {:?}",
        change_frequencies(&series).counts
    );
    println!("initial order: {}", orbit.initial_order());
    println!("t  raw  x    y    id");
    for ((t, raw), state) in orbit.times.iter().zip(&rows).zip(&orbit.states) {
        println!(
            "{t}  {raw}  {}  {}  {}",
            state.answers(),
            state.order(),
            state.id()
        );
    }
    Ok(())
}
