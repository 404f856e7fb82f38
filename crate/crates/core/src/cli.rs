//! The `orbitscope` command line.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 I/O failure. Every
//! command writes a `manifest.json` next to its outputs.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::education::{classify_household, default_distribution, F_RANGE, HOUSEHOLD_THRESHOLD};
use crate::error::{Error, Result};
use crate::ingest::{self, BaselinePolicy, PanelOptions};
use crate::orbit::{build_orbits, build_orbits_from_order, tally_changes, Orbit};
use crate::render::{self, AxisLabelMode, FigureConfig};
use crate::simulate::{geometric_flips, simulate_population, SimulationConfig};
use crate::space::{QuestionOrder, QuestionSpec};
use crate::stats::{
    accumulate_transitions_with, occupancy_timeseries, odds_ratio, restrict, transition_shares,
    ImputedSteps, StateSubset, TransitionCounts,
};

pub const THREADS_ENV: &str = "ORBITSCOPE_THREADS";
const ALL_LABEL: &str = "all";

#[derive(Debug, Parser)]
#[command(
    name = "orbitscope",
    version,
    about = "Orbits of binary longitudinal panels"
)]
pub struct Cli {
    /// Output directory
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,

    /// Random seed (used by `simulate`; recorded in every manifest)
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    Reject,
    FirstComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureKind {
    StateSpace,
    TimeExpanded,
    Density,
    Occupancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Labels {
    Ids,
    Pairs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build orbits from a coded panel CSV
    Orbits {
        #[arg(long)]
        panel: PathBuf,
        /// Specs file, or `household` for the BM/HH/AD preset. Defaults to
        /// one yes-favourable question per panel column.
        #[arg(long)]
        specs: Option<String>,
        #[arg(long, value_enum, default_value = "reject")]
        baseline: Baseline,
        /// Start every orbit from this order instead of the per-subject one
        #[arg(long)]
        fixed_order: Option<String>,
    },
    /// Transition densities, odds ratios and occupancy from an orbit CSV
    Stats {
        #[arg(long)]
        orbits: PathBuf,
        /// `subject_id,label` file splitting the population
        #[arg(long)]
        groups: Option<PathBuf>,
        /// H, H8, L, all, or a comma-separated id list
        #[arg(long)]
        subset: Option<String>,
        /// Pairs like `24-24,23-24`; defaults to every observed pair in scope
        #[arg(long)]
        or_pairs: Option<String>,
        /// Group whose counts form a and b (default: non-defaulting if present)
        #[arg(long)]
        reference: Option<String>,
        #[arg(long)]
        exclude_imputed: bool,
    },
    /// Classify households as defaulting or non-defaulting
    Classify {
        #[arg(long)]
        education: PathBuf,
        #[arg(long, default_value_t = HOUSEHOLD_THRESHOLD)]
        f_threshold: u32,
    },
    /// Generate a seeded synthetic panel
    Simulate {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        subjects: Option<usize>,
        /// Variable count; without `--flip` the flip probabilities are spaced
        /// geometrically from 0.02 to 0.5
        #[arg(long)]
        variables: Option<usize>,
        #[arg(long)]
        timesteps: Option<usize>,
        /// Comma-separated flip probability per variable
        #[arg(long)]
        flip: Option<String>,
        #[arg(long)]
        initial_probability: Option<f64>,
    },
    /// Draw an SVG figure
    Render {
        /// Orbit CSV, or density CSV for `--kind density`
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: FigureKind,
        #[arg(long)]
        subset: Option<String>,
        /// Density label to draw
        #[arg(long, default_value = ALL_LABEL)]
        label: String,
        /// Variable count of a density CSV
        #[arg(long, default_value_t = 3)]
        variables: usize,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
        #[arg(long, default_value_t = 4.0)]
        dot_radius: f64,
        #[arg(long, default_value_t = 1)]
        min_edge_count: u64,
        #[arg(long, value_enum, default_value = "ids")]
        axis_labels: Labels,
    },
}

#[derive(Debug, Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    tool: String,
    version: String,
    command: Vec<String>,
    seed: u64,
    inputs: Vec<InputDigest>,
    outputs: Vec<String>,
    timestamp: u64,
}

struct Run {
    args: Vec<String>,
    out: PathBuf,
    seed: u64,
    inputs: Vec<InputDigest>,
    outputs: Vec<String>,
}

impl Run {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = fs::read(path).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", path.display()),
            ))
        })?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        Ok(bytes)
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        fs::create_dir_all(&self.out)?;
        fs::write(self.out.join(name), bytes)?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn finish(self) -> Result<()> {
        let manifest = RunManifest {
            tool: "orbitscope".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: self.args,
            seed: self.seed,
            inputs: self.inputs,
            outputs: self.outputs,
            timestamp: timestamp(),
        };
        let mut text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| Error::validation(format!("manifest: {e}")))?;
        text.push('\n');
        fs::create_dir_all(&self.out)?;
        fs::write(self.out.join("manifest.json"), text)?;
        Ok(())
    }
}

fn timestamp() -> u64 {
    if let Some(epoch) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        return epoch;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn source_name(path: &Path) -> String {
    path.display().to_string()
}

fn text_of(bytes: Vec<u8>, path: &Path) -> Result<String> {
    String::from_utf8(bytes)
        .map_err(|_| Error::validation(format!("{}: not valid UTF-8", path.display())))
}

fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
            Error::validation(format!("{THREADS_ENV}={raw:?} is not a positive integer"))
        })?;
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => {
                    if !e.to_string().contains("Usage:") {
                        eprintln!("\n{}", Cli::command().render_usage());
                    }
                    1
                }
            };
        }
    };
    let recorded = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match configure_threads().and_then(|_| execute(cli, recorded)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: Cli, args: Vec<String>) -> Result<()> {
    let mut run = Run {
        args,
        out: cli.out,
        seed: cli.seed,
        inputs: Vec::new(),
        outputs: Vec::new(),
    };
    match cli.command {
        Command::Orbits {
            panel,
            specs,
            baseline,
            fixed_order,
        } => cmd_orbits(
            &mut run,
            &panel,
            specs.as_deref(),
            baseline,
            fixed_order.as_deref(),
        )?,
        Command::Stats {
            orbits,
            groups,
            subset,
            or_pairs,
            reference,
            exclude_imputed,
        } => cmd_stats(
            &mut run,
            &orbits,
            groups.as_deref(),
            subset.as_deref(),
            or_pairs.as_deref(),
            reference.as_deref(),
            exclude_imputed,
        )?,
        Command::Classify {
            education,
            f_threshold,
        } => cmd_classify(&mut run, &education, f_threshold)?,
        Command::Simulate {
            preset,
            subjects,
            variables,
            timesteps,
            flip,
            initial_probability,
        } => cmd_simulate(
            &mut run,
            preset.as_deref(),
            subjects,
            variables,
            timesteps,
            flip.as_deref(),
            initial_probability,
        )?,
        Command::Render {
            input,
            kind,
            subset,
            label,
            variables,
            width,
            height,
            dot_radius,
            min_edge_count,
            axis_labels,
        } => {
            let config = FigureConfig {
                width,
                height,
                dot_radius,
                axis_labels: match axis_labels {
                    Labels::Ids => AxisLabelMode::Ids,
                    Labels::Pairs => AxisLabelMode::Pairs,
                },
                min_edge_count,
                ..FigureConfig::default()
            };
            cmd_render(
                &mut run,
                &input,
                kind,
                subset.as_deref(),
                &label,
                variables,
                config,
            )?
        }
    }
    run.finish()
}

fn load_specs(run: &mut Run, spec: &str) -> Result<Vec<QuestionSpec>> {
    if spec == "household" {
        return Ok(QuestionSpec::household_preset());
    }
    let path = Path::new(spec);
    let text = text_of(run.read(path)?, path)?;
    ingest::parse_specs(&text, &source_name(path))
}

fn cmd_orbits(
    run: &mut Run,
    panel: &Path,
    specs: Option<&str>,
    baseline: Baseline,
    fixed_order: Option<&str>,
) -> Result<()> {
    let specs = specs.map(|s| load_specs(run, s)).transpose()?;
    let bytes = run.read(panel)?;
    let options = PanelOptions {
        source: source_name(panel),
        baseline: match baseline {
            Baseline::Reject => BaselinePolicy::Reject,
            Baseline::FirstComplete => BaselinePolicy::StartAtFirstComplete,
        },
    };
    let dataset = ingest::parse_panel_csv(bytes.as_slice(), specs.as_deref(), &options)?;
    if dataset.subjects.is_empty() {
        return Err(Error::validation("no subjects"));
    }
    let tally = tally_changes(&dataset.subjects)?;
    let pop = tally.rates();
    let orbits = match fixed_order {
        Some(order) => {
            let order: QuestionOrder = order.parse()?;
            if order.len() != dataset.n() {
                return Err(Error::validation(format!(
                    "fixed order has {} variables, panel has {}",
                    order.len(),
                    dataset.n()
                )));
            }
            build_orbits_from_order(&dataset.subjects, &order)?
        }
        None => build_orbits(&dataset.subjects, &pop)?,
    };
    let mut csv = Vec::new();
    ingest::write_orbit_csv(&orbits, &mut csv)?;
    run.write("orbits.csv", &csv)?;

    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "subjects: {}", dataset.subjects.len())?;
    writeln!(stdout, "variable\tlabel\tchanges\tpairs\trate\tevent_share")?;
    let shares = tally.event_shares();
    for (i, spec) in dataset.specs.iter().enumerate() {
        writeln!(
            stdout,
            "{i}\t{}\t{}\t{}\t{:.4}\t{:.4}",
            spec.label,
            tally.changes[i],
            tally.pairs[i],
            pop.rates()[i],
            shares[i]
        )?;
    }
    writeln!(stdout, "population order: {}", pop.ascending_order())?;
    Ok(())
}

fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>> {
    text.split(',')
        .map(|p| {
            let (a, b) = p
                .trim()
                .split_once(['-', ':'])
                .ok_or_else(|| Error::validation(format!("pair {p:?} is not of the form i-j")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::validation(format!("pair {p:?} is not of the form i-j")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn cmd_stats(
    run: &mut Run,
    orbits_path: &Path,
    groups_path: Option<&Path>,
    subset: Option<&str>,
    or_pairs: Option<&str>,
    reference: Option<&str>,
    exclude_imputed: bool,
) -> Result<()> {
    let bytes = run.read(orbits_path)?;
    let orbits = ingest::read_orbit_csv(bytes.as_slice(), &source_name(orbits_path))?;
    if orbits.is_empty() {
        return Err(Error::validation("no orbits"));
    }
    let n = orbits[0].n();
    let subset = subset.map(|s| StateSubset::named(s, n)).transpose()?;
    let imputed = if exclude_imputed {
        ImputedSteps::Exclude
    } else {
        ImputedSteps::Include
    };

    let mut grouped: BTreeMap<String, Vec<Orbit>> = BTreeMap::new();
    if let Some(path) = groups_path {
        let bytes = run.read(path)?;
        let groups = ingest::parse_groups_csv(bytes.as_slice(), &source_name(path))?;
        let known: BTreeSet<&str> = orbits.iter().map(|o| o.subject_id.as_str()).collect();
        let unknown: Vec<&str> = groups
            .keys()
            .map(String::as_str)
            .filter(|s| !known.contains(s))
            .collect();
        if !unknown.is_empty() {
            return Err(Error::validation(format!(
                "groups file lists subjects without orbits: {}",
                unknown.join(", ")
            )));
        }
        if groups.values().any(|l| l == ALL_LABEL) {
            return Err(Error::validation(format!(
                "group label {ALL_LABEL:?} is reserved for the whole population"
            )));
        }
        for orbit in &orbits {
            if let Some(label) = groups.get(&orbit.subject_id) {
                grouped
                    .entry(label.clone())
                    .or_default()
                    .push(orbit.clone());
            }
        }
    }

    let mut tables: Vec<TransitionCounts> = grouped
        .iter()
        .map(|(label, members)| accumulate_transitions_with(members, label, imputed))
        .collect::<Result<_>>()?;
    let all = accumulate_transitions_with(&orbits, ALL_LABEL, imputed)?;
    tables.push(all.clone());

    let density: Vec<TransitionCounts> = match &subset {
        Some(s) => tables.iter().map(|t| restrict(t, s).counts).collect(),
        None => tables.clone(),
    };
    let mut csv = Vec::new();
    ingest::write_density_csv(&density, &mut csv)?;
    run.write("density.csv", &csv)?;

    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "orbits: {}", orbits.len())?;
    for t in &tables {
        writeln!(
            stdout,
            "group {}: {} subjects, {} transitions",
            t.label,
            t.subjects,
            t.total()
        )?;
    }
    if let Some(s) = &subset {
        if let Some(share) = restrict(&all, s).retained_share {
            writeln!(
                stdout,
                "share of transitions in {}: {:.2}%",
                s.name,
                100.0 * share
            )?;
        }
    }

    let mut or_csv = String::from(
        "from_id,to_id,reference,comparison,a,b,c,d,odds_ratio,reference_share,comparison_share\n",
    );
    if grouped.len() == 2 {
        let labels: Vec<&String> = grouped.keys().collect();
        let reference = match reference {
            Some(r) => labels
                .iter()
                .position(|l| l.as_str() == r)
                .ok_or_else(|| Error::validation(format!("reference group {r:?} not found")))?,
            None => labels
                .iter()
                .position(|l| l.as_str() == "non-defaulting")
                .unwrap_or(0),
        };
        let (ref_table, cmp_table) = (&tables[reference], &tables[1 - reference]);
        let scope = match &subset {
            Some(s) => s.clone(),
            None if n == 3 => StateSubset::named("L", 3)?,
            None => StateSubset::new(
                "observed",
                n,
                ref_table.states().union(&cmp_table.states()).copied(),
            )?,
        };
        let pairs: Vec<(u64, u64)> = match or_pairs {
            Some(text) => parse_pairs(text)?,
            None => ref_table
                .counts
                .keys()
                .chain(cmp_table.counts.keys())
                .filter(|(a, b)| scope.contains(*a) && scope.contains(*b))
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        writeln!(
            stdout,
            "odds ratios ({} vs {}, scope {}):",
            ref_table.label, cmp_table.label, scope.name
        )?;
        for (from, to) in pairs {
            let r = odds_ratio(ref_table, cmp_table, from, to, &scope)?;
            let shares = transition_shares(ref_table, cmp_table, from, to);
            let fmt_opt = |v: Option<f64>, digits: usize| {
                v.map(|x| format!("{x:.digits$}"))
                    .unwrap_or_else(|| "NA".into())
            };
            or_csv.push_str(&format!(
                "{from},{to},{},{},{},{},{},{},{},{},{}\n",
                ref_table.label,
                cmp_table.label,
                r.a,
                r.b,
                r.c,
                r.d,
                fmt_opt(r.value, 6),
                fmt_opt(shares.map(|s| s.0), 4),
                fmt_opt(shares.map(|s| s.1), 4),
            ));
            writeln!(stdout, "  {from}->{to}: OR = {}", fmt_opt(r.value, 2))?;
        }
    } else {
        writeln!(
            stdout,
            "note: odds ratios need exactly two groups, found {}",
            grouped.len()
        )?;
    }
    run.write("odds_ratios.csv", or_csv.as_bytes())?;

    let mut occupancy = occupancy_timeseries(&orbits);
    if let Some(s) = &subset {
        occupancy = occupancy.restricted(s);
    }
    let mut csv = Vec::new();
    ingest::write_occupancy_csv(&occupancy, &mut csv)?;
    run.write("occupancy.csv", &csv)?;
    Ok(())
}

fn cmd_classify(run: &mut Run, education: &Path, f: u32) -> Result<()> {
    let bytes = run.read(education)?;
    let households = ingest::parse_education_csv(bytes.as_slice(), &source_name(education))?;
    if households.is_empty() {
        return Err(Error::validation("no households"));
    }
    let mut csv = String::from("household_id,children,defaulting\n");
    let mut defaulting = 0usize;
    for h in &households {
        for child in &h.children {
            for w in child.warnings(f) {
                eprintln!("warning: household {}: {w}", h.household_id);
            }
        }
        let c = classify_household(h, f)?;
        defaulting += c.is_defaulting as usize;
        csv.push_str(&format!(
            "{},{},{}\n",
            c.household_id,
            c.children.len(),
            c.is_defaulting as u8
        ));
    }
    run.write("households.csv", csv.as_bytes())?;

    let dist = default_distribution(&households, F_RANGE)?;
    let mut table = String::from("f,households,fraction_defaulting\n");
    for (f, frac) in &dist {
        table.push_str(&format!("{f},{},{frac:.6}\n", households.len()));
    }
    run.write("distribution.csv", table.as_bytes())?;

    let mut stdout = std::io::stdout().lock();
    writeln!(
        stdout,
        "households: {}, defaulting at f={f}: {defaulting}",
        households.len()
    )?;
    write!(stdout, "{table}")?;
    Ok(())
}

fn cmd_simulate(
    run: &mut Run,
    preset: Option<&str>,
    subjects: Option<usize>,
    variables: Option<usize>,
    timesteps: Option<usize>,
    flip: Option<&str>,
    initial_probability: Option<f64>,
) -> Result<()> {
    if preset.is_some() && (flip.is_some() || variables.is_some()) {
        return Err(Error::validation(
            "--preset fixes the variables; drop --flip/--variables",
        ));
    }
    let mut config = match (preset, flip) {
        (Some(name), _) => SimulationConfig::preset(name, run.seed)?,
        (None, Some(flips)) => {
            let probs = flips
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::validation(format!("bad flip probability {p:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let n = variables.unwrap_or(probs.len());
            SimulationConfig::new(1000, n, 10, probs, run.seed)
        }
        (None, None) => {
            let n = variables.ok_or_else(|| {
                Error::validation("simulate needs --preset, --variables or --flip")
            })?;
            if n == 0 {
                return Err(Error::validation("variable count must be at least 1"));
            }
            SimulationConfig::new(1000, n, 10, geometric_flips(n, 0.02, 0.5), run.seed)
        }
    };
    if let Some(k) = subjects {
        config.subjects = k;
    }
    if let Some(t) = timesteps {
        config.timesteps = t;
    }
    if let Some(p) = initial_probability {
        config.initial_probability = p;
    }
    let dataset = simulate_population(&config)?;
    let mut csv = Vec::new();
    ingest::write_panel_csv(&dataset, &mut csv)?;
    run.write("panel.csv", &csv)?;
    println!(
        "simulated {} subjects x {} time steps x {} variables (seed {})",
        config.subjects, config.timesteps, config.variables, config.seed
    );
    Ok(())
}

fn cmd_render(
    run: &mut Run,
    input: &Path,
    kind: FigureKind,
    subset: Option<&str>,
    label: &str,
    variables: usize,
    mut config: FigureConfig,
) -> Result<()> {
    let bytes = run.read(input)?;
    let source = source_name(input);
    let (svg, name) = match kind {
        FigureKind::Density => {
            let tables = ingest::read_density_csv(bytes.as_slice(), &source, variables)?;
            let table = tables
                .into_iter()
                .find(|t| t.label == label)
                .ok_or_else(|| Error::validation(format!("no density rows labelled {label:?}")))?;
            let subset = match subset {
                Some(s) => StateSubset::named(s, variables)?,
                None => StateSubset::new("observed", variables, table.states())?,
            };
            (
                render::render_density_graph(&table, &subset, &config)?,
                "density.svg",
            )
        }
        other => {
            let orbits = ingest::read_orbit_csv(bytes.as_slice(), &source)?;
            if orbits.is_empty() {
                return Err(Error::validation(format!("{source}: no orbits")));
            }
            config.subset = subset
                .map(|s| StateSubset::named(s, orbits[0].n()))
                .transpose()?;
            match other {
                FigureKind::StateSpace => (
                    render::render_state_space(&orbits, &config)?,
                    "state-space.svg",
                ),
                FigureKind::TimeExpanded => (
                    render::render_time_expanded(&orbits, &config)?,
                    "time-expanded.svg",
                ),
                _ => (
                    render::render_occupancy(&occupancy_timeseries(&orbits), &config)?,
                    "occupancy.svg",
                ),
            }
        }
    };
    run.write(name, svg.as_bytes())?;
    println!("wrote {}", run.out.join(name).display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_lists() {
        assert_eq!(
            parse_pairs("24-24, 23:24").unwrap(),
            vec![(24, 24), (23, 24)]
        );
        assert!(parse_pairs("24").is_err());
        assert!(parse_pairs("a-b").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(
            run(["orbitscope", "render", "--input", "x", "--kind", "pie"]),
            1
        );
        assert_eq!(run(["orbitscope", "frobnicate"]), 1);
        assert_eq!(run(["orbitscope", "--help"]), 0);
    }
}
