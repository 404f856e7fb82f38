use std::collections::BTreeSet;

use orbitscope::orbit::{
    build_orbit, build_orbit_from_order, Orbit, PopulationFrequencies, SubjectSeries,
};
use orbitscope::render::{
    render_density_graph, render_occupancy, render_state_space, render_time_expanded,
    AxisLabelMode, FigureConfig,
};
use orbitscope::space::{AnswerString, State};
use orbitscope::stats::{accumulate_transitions, occupancy_timeseries, StateSubset};

fn series(id: &str, rows: &[&str]) -> SubjectSeries {
    let rows: Vec<AnswerString> = rows.iter().map(|r| r.parse().unwrap()).collect();
    SubjectSeries::complete(id, &rows).unwrap()
}

fn worked_orbit() -> Orbit {
    let s = series(
        "k",
        &["111", "110", "011", "010", "011", "010", "111", "010"],
    );
    build_orbit(&s, &PopulationFrequencies::uniform(3)).unwrap()
}

/// Orbit that sits in `ids` in turn; all ids share the order of the first state.
fn orbit_through(id: &str, ids: &[u64]) -> Orbit {
    let space = orbitscope::space::StateSpace::new(3).unwrap();
    let states: Vec<State> = ids
        .iter()
        .map(|&i| State::from_id(space, i).unwrap())
        .collect();
    let rows: Vec<String> = states.iter().map(|s| s.decode().to_string()).collect();
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let orbit = build_orbit_from_order(&series(id, &rows), states[0].order()).unwrap();
    assert_eq!(orbit.ids(), ids, "fixture must follow the requested ids");
    orbit
}

fn attr_values(svg: &str, class: &str, attr: &str) -> Vec<String> {
    svg.lines()
        .filter(|l| l.contains(&format!("class=\"{class}\"")))
        .filter_map(|l| {
            let key = format!("{attr}=\"");
            let start = l.find(&key)? + key.len();
            Some(l[start..start + l[start..].find('"')?].to_string())
        })
        .collect()
}

#[test]
fn worked_orbit_draws_six_states_and_seven_transitions() {
    let svg = render_state_space(&[worked_orbit()], &FigureConfig::default()).unwrap();
    let dots: BTreeSet<String> = attr_values(&svg, "state", "data-id").into_iter().collect();
    let want: BTreeSet<String> = [23, 24, 29, 30, 31, 32]
        .iter()
        .map(u64::to_string)
        .collect();
    assert_eq!(dots, want);
    assert_eq!(attr_values(&svg, "transition", "data-from").len(), 7);
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn disjoint_orbits_draw_the_union_of_their_states() {
    let a = orbit_through("a", &[23, 24, 23]);
    let b = orbit_through("b", &[1, 2, 2]);
    let svg = render_state_space(&[a, b], &FigureConfig::default()).unwrap();
    let dots: BTreeSet<String> = attr_values(&svg, "state", "data-id").into_iter().collect();
    assert_eq!(dots, ["1", "2", "23", "24"].map(String::from).into());
}

#[test]
fn pair_labels_are_optional() {
    let cfg = FigureConfig {
        axis_labels: AxisLabelMode::Pairs,
        ..FigureConfig::default()
    };
    let svg = render_state_space(&[worked_orbit()], &cfg).unwrap();
    assert!(svg.contains("120"));
}

#[test]
fn one_polyline_per_orbit() {
    let orbits: Vec<Orbit> = (0..5)
        .map(|k| orbit_through(&format!("o{k}"), &[23, 24, 23]))
        .collect();
    let svg = render_time_expanded(&orbits, &FigureConfig::default()).unwrap();
    assert_eq!(attr_values(&svg, "orbit", "data-subject").len(), 5);
}

#[test]
fn density_graph_on_h() {
    let counts = accumulate_transitions(&[worked_orbit()], "all").unwrap();
    let h = StateSubset::named("H", 3).unwrap();
    let svg = render_density_graph(&counts, &h, &FigureConfig::default()).unwrap();
    assert_eq!(svg.matches("class=\"node\"").count(), 6);
    assert_eq!(svg.matches("class=\"density-edge").count(), 7);

    let idle = accumulate_transitions(&[orbit_through("i", &[24, 24, 24])], "all").unwrap();
    let svg = render_density_graph(&idle, &h, &FigureConfig::default()).unwrap();
    assert!(svg.contains("class=\"density-edge self-loop\""));
    assert!(svg.contains(">id 2<"));
}

#[test]
fn occupancy_lines() {
    let occ = occupancy_timeseries(&[worked_orbit()]);
    assert_eq!(occ.series(29).unwrap(), &[0, 0, 0, 1, 0, 1, 0, 1]);

    let a = orbit_through("a", &[23, 24, 23, 24]);
    let b = orbit_through("b", &[24, 23, 24, 23]);
    let c = orbit_through("c", &[23, 24, 23, 24]);
    let occ = occupancy_timeseries(&[a, b, c]);
    let (s23, s24) = (occ.series(23).unwrap(), occ.series(24).unwrap());
    assert_eq!(s23, &[2, 1, 2, 1]);
    assert!(s23.iter().zip(s24).all(|(x, y)| x + y == 3));
    let svg = render_occupancy(&occ, &FigureConfig::default()).unwrap();
    assert_eq!(attr_values(&svg, "occupancy", "data-id"), ["23", "24"]);
}

#[test]
fn rendering_is_deterministic() {
    let orbits = vec![worked_orbit(), orbit_through("b", &[23, 24, 23])];
    let cfg = FigureConfig::default();
    assert_eq!(
        render_state_space(&orbits, &cfg).unwrap(),
        render_state_space(&orbits, &cfg).unwrap()
    );
    assert_eq!(
        render_time_expanded(&orbits, &cfg).unwrap(),
        render_time_expanded(&orbits, &cfg).unwrap()
    );
}

#[test]
fn large_spaces_need_a_subset() {
    let s = series("w", &["111111", "011111"]);
    let orbit = build_orbit(&s, &PopulationFrequencies::uniform(6)).unwrap();
    assert!(render_state_space(std::slice::from_ref(&orbit), &FigureConfig::default()).is_err());
    let ids = orbit.ids();
    let cfg = FigureConfig {
        subset: Some(StateSubset::new("seen", 6, ids).unwrap()),
        ..FigureConfig::default()
    };
    assert!(render_state_space(&[orbit], &cfg).is_ok());
}
