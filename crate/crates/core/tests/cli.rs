use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const WORKED_PANEL: &str = "\
subject_id,t,q0,q1,q2
k,1,1,1,1
k,2,1,1,0
k,3,0,1,1
k,4,0,1,0
k,5,0,1,1
k,6,0,1,0
k,7,1,1,1
k,8,0,1,0
";

fn orbitscope(args: &[&str]) -> Output {
    orbitscope_env(args, &[])
}

fn orbitscope_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitscope"));
    cmd.args(args).env("SOURCE_DATE_EPOCH", "1700000000");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn orbits_command_writes_orbits_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let panel = write(dir.path(), "panel.csv", WORKED_PANEL);
    let out = dir.path().join("out");
    let o = orbitscope(&["orbits", "--panel", s(&panel), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let csv = fs::read_to_string(out.join("orbits.csv")).unwrap();
    let ids: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap())
        .collect();
    assert_eq!(ids, ["32", "31", "23", "29", "30", "29", "24", "29"]);

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["timestamp"], 1700000000);
    assert_eq!(manifest["outputs"][0], "orbits.csv");
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("subjects: 1"));
}

#[test]
fn orbits_command_rejects_bad_panels() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.csv", "subject_id,t,q0,q1\n");
    let o = orbitscope(&["orbits", "--panel", s(&empty), "--out", s(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no subjects"), "{}", stderr(&o));

    let gap = write(
        dir.path(),
        "gap.csv",
        "subject_id,t,q0,q1\na,1,NA,1\na,2,1,1\n",
    );
    let o = orbitscope(&["orbits", "--panel", s(&gap), "--out", s(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("gap.csv:2:"), "{}", stderr(&o));
    let o = orbitscope(&[
        "orbits",
        "--panel",
        s(&gap),
        "--baseline",
        "first-complete",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = orbitscope(&["orbits", "--panel", s(&dir.path().join("absent.csv"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stats_command_compares_groups() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let sim = orbitscope(&[
        "simulate",
        "--variables",
        "3",
        "--subjects",
        "60",
        "--seed",
        "5",
        "--out",
        s(&out),
    ]);
    assert_eq!(sim.status.code(), Some(0), "{}", stderr(&sim));
    let o = orbitscope(&[
        "orbits",
        "--panel",
        s(&out.join("panel.csv")),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let mut groups = String::from("subject_id,label\n");
    for i in 0..60 {
        let label = if i % 2 == 0 {
            "defaulting"
        } else {
            "non-defaulting"
        };
        groups.push_str(&format!("s{i:02},{label}\n"));
    }
    let groups = write(dir.path(), "groups.csv", &groups);
    let o = orbitscope(&[
        "stats",
        "--orbits",
        s(&out.join("orbits.csv")),
        "--groups",
        s(&groups),
        "--subset",
        "all",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let density = fs::read_to_string(out.join("density.csv")).unwrap();
    assert!(density.starts_with("from_id,to_id,count,label\n"));
    for label in ["defaulting", "non-defaulting", "all"] {
        assert!(density.contains(&format!(",{label}\n")));
    }
    let ors = fs::read_to_string(out.join("odds_ratios.csv")).unwrap();
    assert!(ors.lines().count() > 1);
    assert!(ors
        .lines()
        .nth(1)
        .unwrap()
        .contains(",non-defaulting,defaulting,"));
    let occ = fs::read_to_string(out.join("occupancy.csv")).unwrap();
    assert!(occ.starts_with("state_id,t,count\n"));

    // the L subset keeps only ids 23 and 24
    let o = orbitscope(&[
        "stats",
        "--orbits",
        s(&out.join("orbits.csv")),
        "--subset",
        "L",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let density = fs::read_to_string(out.join("density.csv")).unwrap();
    for line in density.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert!(
            ["23", "24"].contains(&f[0]) && ["23", "24"].contains(&f[1]),
            "{line}"
        );
    }
    assert!(String::from_utf8_lossy(&o.stdout).contains("exactly two groups"));
    assert_eq!(
        fs::read_to_string(out.join("odds_ratios.csv"))
            .unwrap()
            .lines()
            .count(),
        1
    );

    let stray = write(dir.path(), "stray.csv", "subject_id,label\nnobody,x\n");
    let o = orbitscope(&[
        "stats",
        "--orbits",
        s(&out.join("orbits.csv")),
        "--groups",
        s(&stray),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nobody"));
}

#[test]
fn classify_command() {
    let dir = tempfile::tempdir().unwrap();
    let edu = write(
        dir.path(),
        "edu.csv",
        "household_id,child_id,age,years_completed\nh1,a,10,0\nh1,b,16,9\nh2,c,16,8\n",
    );
    let o = orbitscope(&["classify", "--education", s(&edu), "--out", s(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let h = fs::read_to_string(dir.path().join("households.csv")).unwrap();
    assert_eq!(h, "household_id,children,defaulting\nh1,2,0\nh2,1,1\n");
    let d = fs::read_to_string(dir.path().join("distribution.csv")).unwrap();
    assert_eq!(d.lines().count(), 9);

    let o = orbitscope(&[
        "classify",
        "--education",
        s(&edu),
        "--f-threshold",
        "1",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(1));

    let empty = write(
        dir.path(),
        "none.csv",
        "household_id,child_id,age,years_completed\n",
    );
    let o = orbitscope(&["classify", "--education", s(&empty), "--out", s(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_command() {
    let dir = tempfile::tempdir().unwrap();
    let panel = write(dir.path(), "panel.csv", WORKED_PANEL);
    let out = dir.path().join("out");
    orbitscope(&["orbits", "--panel", s(&panel), "--out", s(&out)]);
    let orbits = out.join("orbits.csv");
    for (kind, file) in [
        ("state-space", "state-space.svg"),
        ("time-expanded", "time-expanded.svg"),
        ("occupancy", "occupancy.svg"),
    ] {
        let o = orbitscope(&[
            "render",
            "--input",
            s(&orbits),
            "--kind",
            kind,
            "--out",
            s(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        assert!(fs::read_to_string(out.join(file))
            .unwrap()
            .contains("</svg>"));
    }
    orbitscope(&["stats", "--orbits", s(&orbits), "--out", s(&out)]);
    let o = orbitscope(&[
        "render",
        "--input",
        s(&out.join("density.csv")),
        "--kind",
        "density",
        "--subset",
        "H",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = orbitscope(&["render", "--input", s(&orbits), "--kind", "pie"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Usage"), "{}", stderr(&o));
}

#[test]
fn simulate_is_seeded_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = orbitscope_env(
            &[
                "simulate",
                "--preset",
                "fig3",
                "--subjects",
                "300",
                "--seed",
                seed,
                "--out",
                s(&out),
            ],
            &[("ORBITSCOPE_THREADS", threads)],
        );
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        fs::read(out.join("panel.csv")).unwrap()
    };
    let a = run("a", "9", "1");
    assert_eq!(a, run("b", "9", "4"));
    assert_ne!(a, run("c", "10", "4"));

    let o = orbitscope_env(
        &["simulate", "--preset", "fig3"],
        &[("ORBITSCOPE_THREADS", "zero")],
    );
    assert_eq!(o.status.code(), Some(1));
    let o = orbitscope(&["simulate", "--preset", "fig7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(orbitscope(&["--help"]).status.code(), Some(0));
    assert_eq!(orbitscope(&["--version"]).status.code(), Some(0));
    assert_eq!(orbitscope(&[]).status.code(), Some(1));
}
