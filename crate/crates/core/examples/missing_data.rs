//! Panels with gaps: last observation carried forward, imputed steps and baseline policies.

use orbitscope::ingest::{parse_panel_csv, BaselinePolicy, PanelOptions};
use orbitscope::orbit::{build_orbits, change_frequencies, tally_changes};
use orbitscope::stats::{accumulate_transitions_with, ImputedSteps};

const PANEL: &str = "\
subject_id,t,q0,q1,q2
a,2001,1,1,1
a,2002,NA,1,
a,2003,0,1,0
a,2004,0,0,0
b,2001,,1,0
b,2002,1,1,0
b,2003,1,0,0
";

fn main() -> anyhow::Result<()> {
    let strict = parse_panel_csv(PANEL.as_bytes(), None, &PanelOptions::new("inline"));
    match strict {
        Err(e) => println!("reject policy:\n{e}\n"),
        Ok(_) => unreachable!("subject b has no complete baseline"),
    }

    let options = PanelOptions {
        baseline: BaselinePolicy::StartAtFirstComplete,
        ..PanelOptions::new("inline")
    };
    let data = parse_panel_csv(PANEL.as_bytes(), None, &options)?;
    let tally = tally_changes(&data.subjects)?;
    println!("changes per variable: {:?}", tally.changes);
    println!("observed pairs per variable: {:?}", tally.pairs);

    let orbits = build_orbits(&data.subjects, &tally.rates())?;
    for (series, orbit) in data.subjects.iter().zip(&orbits) {
        println!(
            "subject {} (changes {:?}):",
            orbit.subject_id,
            change_frequencies(series).counts
        );
        for ((t, state), imputed) in orbit.times.iter().zip(&orbit.states).zip(&orbit.imputed) {
            let mark = if *imputed { "  imputed" } else { "" };
            println!(
                "  {t}: {state} id {}  row {}{mark}",
                state.id(),
                state.decode()
            );
        }
    }

    for mode in [ImputedSteps::Include, ImputedSteps::Exclude] {
        let counts = accumulate_transitions_with(&orbits, "all", mode)?;
        println!("{mode:?}: {} transitions", counts.total());
    }
    Ok(())
}
