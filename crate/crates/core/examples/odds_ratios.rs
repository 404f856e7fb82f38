//! Comparing two sub-populations: transition shares and odds ratios.

use orbitscope::stats::{odds_ratio, transition_shares, StateSubset, TransitionCounts};

fn main() -> anyhow::Result<()> {
    let non_defaulting = TransitionCounts::from_entries(
        "non-defaulting",
        3,
        [
            ((24, 24), 2080),
            ((24, 23), 1568),
            ((23, 23), 1260),
            ((23, 24), 1367),
        ],
    )?;
    let defaulting = TransitionCounts::from_entries(
        "defaulting",
        3,
        [
            ((24, 24), 2256),
            ((24, 23), 2082),
            ((23, 23), 1904),
            ((23, 24), 1796),
        ],
    )?;
    let scope = StateSubset::named("L", 3)?;

    println!("from  to   non-def  default  share%          OR");
    for (i, j) in [(24, 24), (24, 23), (23, 23), (23, 24)] {
        let r = odds_ratio(&non_defaulting, &defaulting, i, j, &scope)?;
        let (p, q) = transition_shares(&non_defaulting, &defaulting, i, j).unwrap_or((0.0, 0.0));
        println!(
            "{i:>4} {j:>3} {:>9} {:>8}  {p:5.2}/{q:5.2}  {:>6.3}",
            r.a,
            r.c,
            r.value.unwrap_or(f64::NAN)
        );
    }

    let swapped = odds_ratio(&defaulting, &non_defaulting, 24, 24, &scope)?;
    println!(
        "swapping the groups inverts the ratio: {:.3}",
        swapped.value.unwrap_or(f64::NAN)
    );
    Ok(())
}
