//! Classifying children and households by educational default.

use orbitscope::education::{
    classify_child, classify_household, default_distribution, ChildRecord, Household, F_RANGE,
    HOUSEHOLD_THRESHOLD,
};

fn main() -> anyhow::Result<()> {
    let f = HOUSEHOLD_THRESHOLD;
    for (age, years) in [(10, 0), (16, 9), (16, 8), (11, 2)] {
        let child = ChildRecord::new(format!("{age}y"), age, years)?;
        println!(
            "age {age:>2}, {years} years completed: {}",
            classify_child(&child, f)?.label()
        );
    }

    let households = vec![
        Household {
            household_id: "h1".into(),
            children: vec![ChildRecord::new("a", 9, 2)?, ChildRecord::new("b", 13, 6)?],
        },
        Household {
            household_id: "h2".into(),
            children: vec![ChildRecord::new("c", 14, 4)?, ChildRecord::new("d", 8, 1)?],
        },
        Household {
            household_id: "h3".into(),
            children: vec![ChildRecord::new("e", 16, 7)?],
        },
    ];
    for h in &households {
        let c = classify_household(h, f)?;
        println!(
            "household {}: {}",
            c.household_id,
            if c.is_defaulting {
                "defaulting"
            } else {
                "non-defaulting"
            }
        );
    }

    println!("fraction defaulting by f:");
    for (f, frac) in default_distribution(&households, F_RANGE)? {
        println!("  f = {f}: {frac:.3}");
    }
    Ok(())
}
