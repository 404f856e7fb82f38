//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitscope::education::{
    classify_child, default_distribution, ChildRecord, Classification, Household, F_RANGE,
};
use orbitscope::orbit::{
    build_orbit, build_orbits, change_frequencies, tally_changes, PopulationFrequencies,
    SubjectSeries,
};
use orbitscope::simulate::{simulate_population, SimulationConfig};
use orbitscope::space::{perm_rank, perm_unrank, AnswerString, State, StateSpace};
use orbitscope::stats::{
    accumulate_transitions, odds_ratio, project_fixed_order, transition_shares, StateSubset,
    TransitionCounts,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:.2?}, limit {limit:.2?}"),
    )
}

fn rows(text: &[&str]) -> Vec<AnswerString> {
    text.iter().map(|r| r.parse().unwrap()).collect()
}

fn state(x: &str, y: &str) -> State {
    State::new(x.parse().unwrap(), y.parse().unwrap()).unwrap()
}

fn worked_example() -> Check {
    let series = SubjectSeries::complete(
        "k",
        &rows(&["111", "110", "011", "010", "011", "010", "111", "010"]),
    )
    .map_err(|e| e.to_string())?;
    let pop = PopulationFrequencies::uniform(3);
    let start = Instant::now();
    let orbit = build_orbit(&series, &pop).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let want = [
        ("111", "102"),
        ("110", "102"),
        ("110", "120"),
        ("100", "102"),
        ("101", "102"),
        ("100", "102"),
        ("111", "120"),
        ("100", "102"),
    ];
    for (k, (x, y)) in want.iter().enumerate() {
        ensure(
            orbit.states[k] == state(x, y),
            format!("t={k}: got {}, want ({x}, {y})", orbit.states[k]),
        )?;
    }
    ensure(orbit.initial_order().to_string() == "102", "initial order")?;
    ensure(orbit.frequencies.counts == [3, 0, 7], "frequencies")?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!(
        "8 states match, order 102, frequencies (3, 0, 7) in {elapsed:.2?}"
    ))
}

fn id_anchors() -> Check {
    ensure(state("110", "120").id() == 23, "(110,120) != 23")?;
    ensure(state("111", "120").id() == 24, "(111,120) != 24")?;
    let space = StateSpace::new(3).unwrap();
    let fixed = "120".parse().unwrap();
    for (from, to) in [(29, 21), (31, 22), (30, 23), (32, 24)] {
        let s = State::from_id(space, from).unwrap();
        let p = project_fixed_order(&s, &fixed).map_err(|e| e.to_string())?;
        ensure(
            p.id() == to,
            format!("{from} projects to {}, want {to}", p.id()),
        )?;
    }
    Ok("23, 24 and 29->21, 31->22, 30->23, 32->24".into())
}

fn group_counts() -> (TransitionCounts, TransitionCounts) {
    let non_defaulting = TransitionCounts::from_entries(
        "non-defaulting",
        3,
        [
            ((24, 24), 2080),
            ((24, 23), 1568),
            ((23, 23), 1260),
            ((23, 24), 1367),
        ],
    )
    .unwrap();
    let defaulting = TransitionCounts::from_entries(
        "defaulting",
        3,
        [
            ((24, 24), 2256),
            ((24, 23), 2082),
            ((23, 23), 1904),
            ((23, 24), 1796),
        ],
    )
    .unwrap();
    (non_defaulting, defaulting)
}

const L_PAIRS: [(u64, u64); 4] = [(24, 24), (24, 23), (23, 23), (23, 24)];

fn group_shares() -> Check {
    let (p, q) = group_counts();
    let printed = [
        (47.97, 52.03),
        (42.96, 57.04),
        (39.83, 60.17),
        (43.22, 56.78),
    ];
    let mut got = Vec::new();
    for (&(i, j), &(a, c)) in L_PAIRS.iter().zip(&printed) {
        let (x, y) = transition_shares(&p, &q, i, j).ok_or("no transitions")?;
        ensure(
            (x - a).abs() <= 0.02 + 1e-9 && (y - c).abs() <= 0.02 + 1e-9,
            format!("{i}->{j}: {x:.3}/{y:.3} vs {a}/{c}"),
        )?;
        got.push(format!("{x:.2}/{y:.2}"));
    }
    Ok(got.join(", "))
}

fn group_odds_ratios() -> Check {
    let (p, q) = group_counts();
    let scope = StateSubset::named("L", 3).unwrap();
    let printed = [1.26, 1.00, 0.79, 1.05];
    let mut got = Vec::new();
    for (&(i, j), &want) in L_PAIRS.iter().zip(&printed) {
        let r = odds_ratio(&p, &q, i, j, &scope)
            .map_err(|e| e.to_string())?
            .value
            .ok_or("undefined ratio")?;
        ensure(
            (r - want).abs() <= 0.10,
            format!("{i}->{j}: {r:.3} vs {want}"),
        )?;
        got.push(format!("{r:.2}"));
    }
    Ok(format!(
        "{} (printed 1.26, 1.00, 0.79, 1.05; tolerance 0.10)",
        got.join(", ")
    ))
}

fn random_series(rng: &mut ChaCha8Rng, id: usize) -> SubjectSeries {
    let n = rng.gen_range(1..=6);
    let t = rng.gen_range(1..=20);
    let missing = rng.gen_range(0.0..=0.3);
    let cells = (0..t)
        .map(|k| {
            (0..n)
                .map(|_| {
                    let b = rng.gen_bool(0.5);
                    (k == 0 || !rng.gen_bool(missing)).then_some(b)
                })
                .collect()
        })
        .collect();
    SubjectSeries::new(format!("r{id}"), (0..t as i64).collect(), cells).unwrap()
}

fn round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let start = Instant::now();
    let mut failures = 0usize;
    for id in 0..10_000 {
        let s = random_series(&mut rng, id);
        let pop = tally_changes([&s]).map_err(|e| e.to_string())?.rates();
        let orbit = build_orbit(&s, &pop).map_err(|e| e.to_string())?;
        let completed = s.locf_rows();
        failures += orbit
            .states
            .iter()
            .zip(&completed)
            .filter(|(st, row)| st.decode() != **row)
            .count();
        failures += usize::from(orbit.states.len() != completed.len());
    }
    let elapsed = start.elapsed();
    ensure(failures == 0, format!("{failures} mismatched states"))?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("10000 series, 0 failures in {elapsed:.2?}"))
}

/// Orbit construction written out directly from the definitions, sharing no
/// code with the library beyond the input rows.
mod naive {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn extend(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for v in 0..n {
                if !prefix.contains(&v) {
                    prefix.push(v);
                    extend(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut all = Vec::new();
        extend(&mut Vec::new(), n, &mut all);
        // descending lexicographic order gives rank 0 to (n-1, ..., 0)
        all.reverse();
        all
    }

    fn id(row: &[bool], order: &[usize]) -> u64 {
        let n = row.len();
        let rank = permutations(n).iter().position(|p| p == order).unwrap() as u64;
        let value = order.iter().fold(0u64, |acc, &v| acc * 2 + row[v] as u64);
        rank * (1 << n) + value + 1
    }

    pub fn orbit(rows: &[Vec<bool>], rates: &[f64]) -> Vec<u64> {
        let n = rows[0].len();
        let changes: Vec<usize> = (0..n)
            .map(|v| rows.windows(2).filter(|w| w[0][v] != w[1][v]).count())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            changes[a]
                .cmp(&changes[b])
                .then(rates[a].partial_cmp(&rates[b]).unwrap())
                .then(a.cmp(&b))
        });
        let mut ids = vec![id(&rows[0], &order)];
        for w in rows.windows(2) {
            let mut moved: Vec<usize> = (0..n)
                .filter(|&pos| w[0][order[pos]] != w[1][order[pos]])
                .collect();
            moved.reverse();
            for pos in moved {
                let v = order.remove(pos);
                order.push(v);
            }
            ids.push(id(&w[1], &order));
        }
        ids
    }
}

fn brute_force_oracle() -> Check {
    let rates = [0.7, 0.2];
    let pop = PopulationFrequencies::from_rates(rates.to_vec()).unwrap();
    let start = Instant::now();
    for panel in 0u32..256 {
        let raw: Vec<Vec<bool>> = (0..4)
            .map(|t| (0..2).map(|v| panel >> (2 * t + v) & 1 == 1).collect())
            .collect();
        let answers: Vec<AnswerString> = raw.iter().cloned().map(AnswerString::new).collect();
        let s = SubjectSeries::complete("b", &answers).map_err(|e| e.to_string())?;
        let got = build_orbit(&s, &pop).map_err(|e| e.to_string())?.ids();
        let want = naive::orbit(&raw, &rates);
        ensure(
            got == want,
            format!("panel {panel:08b}: {got:?} vs {want:?}"),
        )?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("256 panels agree state-for-state in {elapsed:.2?}"))
}

fn bijections() -> Check {
    let mut checked = 0u64;
    for n in 1..=8 {
        let count = StateSpace::new(n).unwrap().order_count();
        for rank in 0..count {
            let order = perm_unrank(n, rank).map_err(|e| e.to_string())?;
            ensure(perm_rank(&order) == rank, format!("n={n} rank {rank}"))?;
            checked += 1;
        }
    }
    for n in 1..=4 {
        let space = StateSpace::new(n).unwrap();
        for id in 1..=space.size() {
            let s = State::from_id(space, id).map_err(|e| e.to_string())?;
            let again = State::new(s.answers().clone(), s.order().clone()).unwrap();
            ensure(again.id() == id, format!("n={n} id {id}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} ranks and ids invert exactly"))
}

fn clustering() -> Check {
    let start = Instant::now();
    let config = SimulationConfig::new(1000, 2, 10, vec![0.01, 0.5], 2024);
    let data = simulate_population(&config).map_err(|e| e.to_string())?;
    let pop = tally_changes(&data.subjects)
        .map_err(|e| e.to_string())?
        .rates();
    let orbits = build_orbits(&data.subjects, &pop).map_err(|e| e.to_string())?;
    let leftmost = orbits
        .iter()
        .filter(|o| o.initial_order().as_slice()[0] == 0)
        .count();
    let share = leftmost as f64 / orbits.len() as f64;
    ensure(
        share >= 0.95,
        format!("variable 0 leftmost in {:.1}%", 100.0 * share),
    )?;
    for (o, s) in orbits.iter().zip(&data.subjects) {
        if change_frequencies(s).counts[0] == 0 {
            let first = o.states[0].order().position_of(0);
            ensure(
                o.states.iter().all(|st| st.order().position_of(0) == first),
                format!("stable variable relocated in {}", o.subject_id),
            )?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "variable 0 leftmost in {:.1}% of orbits, never relocated when stable ({elapsed:.2?})",
        100.0 * share
    ))
}

fn classifier() -> Check {
    use Classification::*;
    for (age, years, want) in [
        (10, 0, NonDefaulting),
        (16, 9, NonDefaulting),
        (16, 8, Defaulting),
        (11, 2, Defaulting),
    ] {
        let c = ChildRecord::new("c", age, years).unwrap();
        let got = classify_child(&c, 4).map_err(|e| e.to_string())?;
        ensure(got == want, format!("age {age}, {years} years: {got:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for cohort in 0..1000 {
        let households: Vec<Household> = (0..rng.gen_range(1..=30))
            .map(|h| Household {
                household_id: format!("h{h}"),
                children: (0..rng.gen_range(1..=6))
                    .map(|c| {
                        let age = rng.gen_range(7..=16);
                        let years = rng.gen_range(0..=age - 6);
                        ChildRecord::new(format!("c{c}"), age, years).unwrap()
                    })
                    .collect(),
            })
            .collect();
        let dist: BTreeMap<u32, f64> =
            default_distribution(&households, F_RANGE).map_err(|e| e.to_string())?;
        let values: Vec<f64> = dist.values().copied().collect();
        ensure(
            values.windows(2).all(|w| w[1] <= w[0]),
            format!("cohort {cohort}: {values:?} increases"),
        )?;
    }
    Ok("four child examples hold; 1000 cohorts non-increasing in f".into())
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_orbitscope"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)),
    )
}

fn pipeline(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let d = dir.to_str().unwrap();
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    std::fs::write(
        dir.join("edu.csv"),
        "household_id,child_id,age,years_completed\nh1,a,10,0\nh1,b,16,9\nh2,c,16,8\nh3,d,12,3\n",
    )
    .map_err(|e| e.to_string())?;
    let mut groups = String::from("subject_id,label\n");
    for i in 0..200 {
        groups.push_str(&format!(
            "s{i:03},{}\n",
            if i % 3 == 0 {
                "defaulting"
            } else {
                "non-defaulting"
            }
        ));
    }
    std::fs::write(dir.join("groups.csv"), groups).map_err(|e| e.to_string())?;

    run_cli(&[
        "simulate",
        "--variables",
        "3",
        "--subjects",
        "200",
        "--seed",
        "11",
        "--out",
        d,
    ])?;
    run_cli(&["orbits", "--panel", &p("panel.csv"), "--out", d])?;
    run_cli(&[
        "stats",
        "--orbits",
        &p("orbits.csv"),
        "--groups",
        &p("groups.csv"),
        "--out",
        d,
    ])?;
    run_cli(&["classify", "--education", &p("edu.csv"), "--out", d])?;
    for kind in ["state-space", "time-expanded", "occupancy"] {
        run_cli(&[
            "render",
            "--input",
            &p("orbits.csv"),
            "--kind",
            kind,
            "--out",
            d,
        ])?;
    }
    run_cli(&[
        "render",
        "--input",
        &p("density.csv"),
        "--kind",
        "density",
        "--subset",
        "H",
        "--out",
        d,
    ])?;

    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if name != "manifest.json" {
            files.insert(name, std::fs::read(&path).map_err(|e| e.to_string())?);
        }
    }
    Ok(files)
}

fn determinism() -> Check {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = pipeline(a.path())?;
    let second = pipeline(b.path())?;
    ensure(first.keys().eq(second.keys()), "different output file sets")?;
    for (name, bytes) in &first {
        ensure(
            &second[name] == bytes,
            format!("{name} differs between runs"),
        )?;
    }
    let svgs = first.keys().filter(|k| k.ends_with(".svg")).count();
    Ok(format!(
        "{} outputs ({svgs} SVGs) byte-identical across runs",
        first.len()
    ))
}

fn scale() -> Check {
    let start = Instant::now();
    let data = simulate_population(&SimulationConfig::fig4(1)).map_err(|e| e.to_string())?;
    let pop = tally_changes(&data.subjects)
        .map_err(|e| e.to_string())?
        .rates();
    let orbits = build_orbits(&data.subjects, &pop).map_err(|e| e.to_string())?;
    let counts = accumulate_transitions(&orbits, "fig4").map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let max_id = counts.states().into_iter().max().unwrap_or(0);
    ensure(counts.total() == 3000 * 9, "transition total")?;
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "3000 orbits, {} distinct transitions, largest id {max_id}, in {elapsed:.2?}",
        counts.counts.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("worked example", worked_example),
        ("state-id anchors", id_anchors),
        ("transition shares", group_shares),
        ("odds ratios", group_odds_ratios),
        ("round trip", round_trip),
        ("brute-force oracle", brute_force_oracle),
        ("bijections", bijections),
        ("clustering", clustering),
        ("classifier", classifier),
        ("determinism", determinism),
        ("scale", scale),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
