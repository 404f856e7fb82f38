//! File formats.
//!
//! All files are UTF-8 CSV with a header row, comma delimited, LF or CRLF
//! line endings on input and LF on output. Every parse error carries the
//! file name, line and column it came from.
//!
//! | file        | header                                          |
//! |-------------|-------------------------------------------------|
//! | panel       | `subject_id,t,q0,…,q{n-1}` (cells `0`, `1`, empty or `NA`) |
//! | orbits      | `subject_id,t,x,y,state_id,imputed`             |
//! | education   | `household_id,child_id,age,years_completed`     |
//! | groups      | `subject_id,label`                              |
//! | density     | `from_id,to_id,count,label`                     |
//! | occupancy   | `state_id,t,count`                              |

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{Read, Write};

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};

use crate::education::{ChildRecord, Household};
use crate::error::{Diagnostic, Error, Result};
use crate::orbit::{Orbit, SubjectSeries};
use crate::space::{
    validate_question_set, AnswerString, Polarity, QuestionOrder, QuestionSpec, State,
    MAX_VARIABLES,
};
use crate::stats::{Occupancy, TransitionCounts};

/// What to do with a subject whose first row has missing cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaselinePolicy {
    #[default]
    Reject,
    /// Drop leading rows up to the first fully observed one.
    StartAtFirstComplete,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelDataset {
    pub specs: Vec<QuestionSpec>,
    /// Sorted by subject id.
    pub subjects: Vec<SubjectSeries>,
    /// Sorted union of every subject's time labels.
    pub time_labels: Vec<i64>,
}

impl PanelDataset {
    pub fn new(specs: Vec<QuestionSpec>, mut subjects: Vec<SubjectSeries>) -> Result<Self> {
        let specs = validate_question_set(&specs)?;
        subjects.sort_by(|a, b| a.subject_id().cmp(b.subject_id()));
        if let Some(w) = subjects
            .windows(2)
            .find(|w| w[0].subject_id() == w[1].subject_id())
        {
            return Err(Error::validation(format!(
                "duplicate subject id {}",
                w[0].subject_id()
            )));
        }
        if let Some(s) = subjects.iter().find(|s| s.n() != specs.len()) {
            return Err(Error::validation(format!(
                "subject {} has {} variables, the question set has {}",
                s.subject_id(),
                s.n(),
                specs.len()
            )));
        }
        let time_labels = subjects
            .iter()
            .flat_map(|s| s.times().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(PanelDataset {
            specs,
            subjects,
            time_labels,
        })
    }

    pub fn n(&self) -> usize {
        self.specs.len()
    }
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader)
}

fn csv_writer<W: Write>(writer: W) -> csv::Writer<W> {
    WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer)
}

fn from_csv_error(err: csv::Error, source: &str) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    match err.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        csv::ErrorKind::Utf8 { err, .. } => Error::Parse(Diagnostic::new(
            source,
            line,
            err.field() as u64 + 1,
            "invalid UTF-8",
        )),
        other => Error::Parse(Diagnostic::new(source, line, 1, format!("{other:?}"))),
    }
}

fn write_err(err: csv::Error) -> Error {
    match err.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        other => Error::validation(format!("CSV write failed: {other:?}")),
    }
}

fn line_of(record: &StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

/// Reads and checks the header; returns its fields.
fn read_header<R: Read>(
    rdr: &mut csv::Reader<R>,
    source: &str,
    expected_prefix: &[&str],
) -> Result<Vec<String>> {
    let header = rdr
        .headers()
        .map_err(|e| from_csv_error(e, source))?
        .clone();
    let fields: Vec<String> = header.iter().map(str::to_string).collect();
    if fields.iter().all(String::is_empty) {
        return Err(Error::Parse(Diagnostic::new(
            source,
            1,
            1,
            "missing header row",
        )));
    }
    for (i, want) in expected_prefix.iter().enumerate() {
        match fields.get(i) {
            Some(got) if got.eq_ignore_ascii_case(want) => {}
            Some(got) => {
                return Err(Error::Parse(Diagnostic::new(
                    source,
                    1,
                    i as u64 + 1,
                    format!("expected column {want:?}, found {got:?}"),
                )))
            }
            None => {
                return Err(Error::Parse(Diagnostic::new(
                    source,
                    1,
                    i as u64 + 1,
                    format!("missing column {want:?}"),
                )))
            }
        }
    }
    Ok(fields)
}

fn check_width(record: &StringRecord, width: usize, source: &str) -> Result<()> {
    if record.len() != width {
        return Err(Error::Parse(Diagnostic::new(
            source,
            line_of(record),
            record.len().min(width) as u64 + 1,
            format!("expected {width} fields, found {}", record.len()),
        )));
    }
    Ok(())
}

fn parse_field<T: std::str::FromStr>(
    record: &StringRecord,
    col: usize,
    source: &str,
    what: &str,
) -> Result<T> {
    let raw = &record[col];
    raw.parse::<T>().map_err(|_| {
        Error::Parse(Diagnostic::new(
            source,
            line_of(record),
            col as u64 + 1,
            format!("invalid {what} {raw:?}"),
        ))
    })
}

fn require_nonempty(record: &StringRecord, col: usize, source: &str, what: &str) -> Result<String> {
    let v = &record[col];
    if v.is_empty() {
        return Err(Error::Parse(Diagnostic::new(
            source,
            line_of(record),
            col as u64 + 1,
            format!("empty {what}"),
        )));
    }
    Ok(v.to_string())
}

/// Parses a question specs file.
///
/// ```text
/// # label and polarity per question
/// q0 = BM yes_is_favourable
/// q1 = HH yes_is_unfavourable
/// q2 = AD yes_is_unfavourable
/// ```
pub fn parse_specs(text: &str, source: &str) -> Result<Vec<QuestionSpec>> {
    let mut specs = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let diag = |col: usize, msg: String| {
            Error::Parse(Diagnostic::new(source, line_no, col as u64, msg))
        };
        let (key, value) = line.split_once('=').ok_or_else(|| {
            diag(
                1,
                format!("expected `q<i> = <label> <polarity>`, got {line:?}"),
            )
        })?;
        let key = key.trim();
        let index: usize = key
            .strip_prefix('q')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| diag(1, format!("key {key:?} is not of the form q<i>")))?;
        let mut parts = value.split_whitespace();
        let value_col = raw_line.find('=').map(|p| p + 2).unwrap_or(1);
        let label = parts
            .next()
            .ok_or_else(|| diag(value_col, "missing label".to_string()))?;
        let polarity = match parts.next() {
            Some(p) => p
                .parse::<Polarity>()
                .map_err(|e| diag(value_col, e.to_string()))?,
            None => Polarity::YesIsFavourable,
        };
        if parts.next().is_some() {
            return Err(diag(value_col, "trailing text after polarity".to_string()));
        }
        specs.push(QuestionSpec::new(index, label, polarity));
    }
    validate_question_set(&specs).map_err(|e| match e {
        Error::Validation(msg) => Error::Parse(Diagnostic::new(source, 1, 1, msg)),
        other => other,
    })
}

pub fn write_specs(specs: &[QuestionSpec]) -> String {
    specs
        .iter()
        .map(|s| format!("q{} = {} {}\n", s.index, s.label, s.polarity.as_str()))
        .collect()
}

#[derive(Debug, Clone)]
pub struct PanelOptions {
    pub source: String,
    pub baseline: BaselinePolicy,
}

impl PanelOptions {
    pub fn new(source: impl Into<String>) -> Self {
        PanelOptions {
            source: source.into(),
            baseline: BaselinePolicy::Reject,
        }
    }
}

struct PendingRow {
    line: u64,
    t: i64,
    cells: Vec<Option<bool>>,
}

/// Parses a coded panel.
///
/// When `specs` is `None`, one question per column after `t` is assumed,
/// labelled by its header and coded with yes favourable.
pub fn parse_panel_csv<R: Read>(
    reader: R,
    specs: Option<&[QuestionSpec]>,
    options: &PanelOptions,
) -> Result<PanelDataset> {
    let source = options.source.as_str();
    let mut rdr = csv_reader(reader);
    let header = read_header(&mut rdr, source, &["subject_id", "t"])?;
    let n = header.len() - 2;
    if n == 0 || n > MAX_VARIABLES {
        return Err(Error::Parse(Diagnostic::new(
            source,
            1,
            3,
            format!("panel has {n} question columns; expected 1..={MAX_VARIABLES}"),
        )));
    }
    let specs = match specs {
        Some(specs) => {
            let specs = validate_question_set(specs)?;
            if specs.len() != n {
                return Err(Error::Parse(Diagnostic::new(
                    source,
                    1,
                    3,
                    format!(
                        "panel has {n} question columns, specs define {}",
                        specs.len()
                    ),
                )));
            }
            for (i, spec) in specs.iter().enumerate() {
                let col = &header[i + 2];
                if !col.eq_ignore_ascii_case(&format!("q{i}"))
                    && !col.eq_ignore_ascii_case(&spec.label)
                {
                    return Err(Error::Parse(Diagnostic::new(
                        source,
                        1,
                        i as u64 + 3,
                        format!(
                            "column {col:?} matches neither q{i} nor label {:?}",
                            spec.label
                        ),
                    )));
                }
            }
            specs
        }
        None => header[2..]
            .iter()
            .enumerate()
            .map(|(i, label)| QuestionSpec::new(i, label.clone(), Polarity::YesIsFavourable))
            .collect(),
    };

    let mut grouped: BTreeMap<String, Vec<PendingRow>> = BTreeMap::new();
    let mut seen: HashMap<(String, i64), u64> = HashMap::new();
    for result in rdr.records() {
        let record = result.map_err(|e| from_csv_error(e, source))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        check_width(&record, n + 2, source)?;
        let line = line_of(&record);
        let subject = require_nonempty(&record, 0, source, "subject_id")?;
        let t: i64 = parse_field(&record, 1, source, "time label")?;
        let mut cells = Vec::with_capacity(n);
        for col in 2..n + 2 {
            cells.push(match &record[col] {
                "1" => Some(true),
                "0" => Some(false),
                "" | "NA" => None,
                other => {
                    return Err(Error::Parse(Diagnostic::new(
                        source,
                        line,
                        col as u64 + 1,
                        format!("cell {other:?} is not 0, 1, empty or NA"),
                    )))
                }
            });
        }
        if let Some(first) = seen.insert((subject.clone(), t), line) {
            return Err(Error::Parse(Diagnostic::new(
                source,
                line,
                2,
                format!("duplicate row for subject {subject} at t={t} (first on line {first})"),
            )));
        }
        grouped
            .entry(subject)
            .or_default()
            .push(PendingRow { line, t, cells });
    }

    let mut subjects = Vec::with_capacity(grouped.len());
    let mut rejected = Vec::new();
    for (subject, mut rows) in grouped {
        rows.sort_by_key(|r| r.t);
        let first_line = rows[0].line;
        let first_gap = rows[0].cells.iter().position(Option::is_none);
        let times: Vec<i64> = rows.iter().map(|r| r.t).collect();
        let cells: Vec<Vec<Option<bool>>> = rows.into_iter().map(|r| r.cells).collect();
        let series = match (first_gap, options.baseline) {
            (None, _) => Some(SubjectSeries::new(subject.clone(), times, cells)?),
            (Some(_), BaselinePolicy::Reject) => None,
            (Some(_), BaselinePolicy::StartAtFirstComplete) => {
                SubjectSeries::starting_at_first_complete(subject.clone(), times, cells)
                    .transpose()?
            }
        };
        match series {
            Some(s) => subjects.push(s),
            None => rejected.push(Diagnostic::new(
                source,
                first_line,
                first_gap.unwrap_or(0) as u64 + 3,
                format!("subject {subject}: first observation has missing cells"),
            )),
        }
    }
    if !rejected.is_empty() {
        return Err(Error::MissingBaseline(rejected));
    }
    PanelDataset::new(specs, subjects)
}

pub fn write_panel_csv<W: Write>(dataset: &PanelDataset, writer: W) -> Result<()> {
    let mut w = csv_writer(writer);
    let mut header = vec!["subject_id".to_string(), "t".to_string()];
    header.extend(dataset.specs.iter().map(|s| s.label.clone()));
    w.write_record(&header).map_err(write_err)?;
    for s in &dataset.subjects {
        for (t, row) in s.times().iter().zip(s.cells()) {
            let mut rec = vec![s.subject_id().to_string(), t.to_string()];
            rec.extend(row.iter().map(|c| match c {
                Some(true) => "1".to_string(),
                Some(false) => "0".to_string(),
                None => String::new(),
            }));
            w.write_record(&rec).map_err(write_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_orbit_csv<W: Write>(orbits: &[Orbit], writer: W) -> Result<()> {
    let mut w = csv_writer(writer);
    w.write_record(["subject_id", "t", "x", "y", "state_id", "imputed"])
        .map_err(write_err)?;
    for orbit in orbits {
        for ((t, state), imputed) in orbit.times.iter().zip(&orbit.states).zip(&orbit.imputed) {
            w.write_record([
                orbit.subject_id.clone(),
                t.to_string(),
                state.answers().to_string(),
                state.order().to_string(),
                state.id().to_string(),
                (*imputed as u8).to_string(),
            ])
            .map_err(write_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads orbits back; subjects keep their order of first appearance.
pub fn read_orbit_csv<R: Read>(reader: R, source: &str) -> Result<Vec<Orbit>> {
    let mut rdr = csv_reader(reader);
    read_header(
        &mut rdr,
        source,
        &["subject_id", "t", "x", "y", "state_id", "imputed"],
    )?;
    struct Pending {
        times: Vec<i64>,
        states: Vec<State>,
        imputed: Vec<bool>,
        line: u64,
    }
    let mut order: Vec<String> = Vec::new();
    let mut pending: HashMap<String, Pending> = HashMap::new();
    let mut n: Option<usize> = None;
    for result in rdr.records() {
        let record = result.map_err(|e| from_csv_error(e, source))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        check_width(&record, 6, source)?;
        let line = line_of(&record);
        let diag = |col: u64, msg: String| Error::Parse(Diagnostic::new(source, line, col, msg));
        let subject = require_nonempty(&record, 0, source, "subject_id")?;
        let t: i64 = parse_field(&record, 1, source, "time label")?;
        let x: AnswerString = record[2]
            .parse()
            .map_err(|e: Error| diag(3, e.to_string()))?;
        let y: QuestionOrder = record[3]
            .parse()
            .map_err(|e: Error| diag(4, e.to_string()))?;
        let id: u64 = parse_field(&record, 4, source, "state id")?;
        let imputed = match &record[5] {
            "0" | "false" => false,
            "1" | "true" => true,
            other => return Err(diag(6, format!("imputed flag {other:?} is not 0 or 1"))),
        };
        let state = State::new(x, y).map_err(|e| diag(3, e.to_string()))?;
        if state.id() != id {
            return Err(diag(
                5,
                format!(
                    "state id {id} does not match {state}, which is {}",
                    state.id()
                ),
            ));
        }
        match n {
            None => n = Some(state.n()),
            Some(n) if n != state.n() => {
                return Err(diag(
                    3,
                    format!("state has {} variables, file has {n}", state.n()),
                ))
            }
            _ => {}
        }
        let entry = pending.entry(subject.clone()).or_insert_with(|| {
            order.push(subject.clone());
            Pending {
                times: Vec::new(),
                states: Vec::new(),
                imputed: Vec::new(),
                line,
            }
        });
        if entry.times.last().is_some_and(|&last| last >= t) {
            return Err(diag(
                2,
                format!("time labels for subject {subject} must be strictly increasing"),
            ));
        }
        entry.times.push(t);
        entry.states.push(state);
        entry.imputed.push(imputed);
    }
    order
        .into_iter()
        .map(|subject| {
            let p = pending.remove(&subject).expect("subject recorded");
            Orbit::from_states(subject, p.times, p.states, p.imputed)
                .map_err(|e| Error::Parse(Diagnostic::new(source, p.line, 1, e.to_string())))
        })
        .collect()
}

/// Reads per-child education rows, grouped into households in order of
/// first appearance.
pub fn parse_education_csv<R: Read>(reader: R, source: &str) -> Result<Vec<Household>> {
    let mut rdr = csv_reader(reader);
    read_header(
        &mut rdr,
        source,
        &["household_id", "child_id", "age", "years_completed"],
    )?;
    let mut households: Vec<Household> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut children_seen: HashMap<(String, String), u64> = HashMap::new();
    for result in rdr.records() {
        let record = result.map_err(|e| from_csv_error(e, source))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        check_width(&record, 4, source)?;
        let line = line_of(&record);
        let household = require_nonempty(&record, 0, source, "household_id")?;
        let child = require_nonempty(&record, 1, source, "child_id")?;
        let age = parse_whole_years(&record, 2, source, "age")?;
        let years = parse_whole_years(&record, 3, source, "years_completed")?;
        let rec = ChildRecord::new(child.clone(), age, years)
            .map_err(|e| Error::Parse(Diagnostic::new(source, line, 4, e.to_string())))?;
        if let Some(first) = children_seen.insert((household.clone(), child.clone()), line) {
            return Err(Error::Parse(Diagnostic::new(
                source,
                line,
                2,
                format!("child {child} of household {household} already listed on line {first}"),
            )));
        }
        let slot = *index.entry(household.clone()).or_insert_with(|| {
            households.push(Household {
                household_id: household.clone(),
                children: Vec::new(),
            });
            households.len() - 1
        });
        households[slot].children.push(rec);
    }
    Ok(households)
}

fn parse_whole_years(record: &StringRecord, col: usize, source: &str, what: &str) -> Result<u32> {
    let raw = &record[col];
    raw.parse::<u32>().map_err(|_| {
        let msg = if raw.parse::<f64>().is_ok() {
            format!("{what} {raw:?} is not a whole number of years")
        } else {
            format!("invalid {what} {raw:?}")
        };
        Error::Parse(Diagnostic::new(
            source,
            line_of(record),
            col as u64 + 1,
            msg,
        ))
    })
}

/// Reads `subject_id,label` rows.
pub fn parse_groups_csv<R: Read>(reader: R, source: &str) -> Result<BTreeMap<String, String>> {
    let mut rdr = csv_reader(reader);
    read_header(&mut rdr, source, &["subject_id", "label"])?;
    let mut out = BTreeMap::new();
    for result in rdr.records() {
        let record = result.map_err(|e| from_csv_error(e, source))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        check_width(&record, 2, source)?;
        let subject = require_nonempty(&record, 0, source, "subject_id")?;
        let label = require_nonempty(&record, 1, source, "label")?;
        if out.insert(subject.clone(), label).is_some() {
            return Err(Error::Parse(Diagnostic::new(
                source,
                line_of(&record),
                1,
                format!("subject {subject} listed twice"),
            )));
        }
    }
    Ok(out)
}

pub fn write_groups_csv<W: Write>(groups: &BTreeMap<String, String>, writer: W) -> Result<()> {
    let mut w = csv_writer(writer);
    w.write_record(["subject_id", "label"]).map_err(write_err)?;
    for (s, l) in groups {
        w.write_record([s, l]).map_err(write_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_education_csv<W: Write>(households: &[Household], writer: W) -> Result<()> {
    let mut w = csv_writer(writer);
    w.write_record(["household_id", "child_id", "age", "years_completed"])
        .map_err(write_err)?;
    for h in households {
        for c in &h.children {
            w.write_record([
                h.household_id.clone(),
                c.child_id.clone(),
                c.age.to_string(),
                c.years_completed.to_string(),
            ])
            .map_err(write_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_density_csv<W: Write>(tables: &[TransitionCounts], writer: W) -> Result<()> {
    let mut w = csv_writer(writer);
    w.write_record(["from_id", "to_id", "count", "label"])
        .map_err(write_err)?;
    for table in tables {
        for (&(from, to), &count) in &table.counts {
            w.write_record([
                from.to_string(),
                to.to_string(),
                count.to_string(),
                table.label.clone(),
            ])
            .map_err(write_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

type TransitionEntry = ((u64, u64), u64);

/// Reads density rows into one table per label (labels sorted).
pub fn read_density_csv<R: Read>(
    reader: R,
    source: &str,
    n: usize,
) -> Result<Vec<TransitionCounts>> {
    let mut rdr = csv_reader(reader);
    read_header(&mut rdr, source, &["from_id", "to_id", "count", "label"])?;
    let mut by_label: BTreeMap<String, Vec<TransitionEntry>> = BTreeMap::new();
    for result in rdr.records() {
        let record = result.map_err(|e| from_csv_error(e, source))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        check_width(&record, 4, source)?;
        let from: u64 = parse_field(&record, 0, source, "from_id")?;
        let to: u64 = parse_field(&record, 1, source, "to_id")?;
        let count: u64 = parse_field(&record, 2, source, "count")?;
        let label = require_nonempty(&record, 3, source, "label")?;
        by_label.entry(label).or_default().push(((from, to), count));
    }
    by_label
        .into_iter()
        .map(|(label, entries)| {
            TransitionCounts::from_entries(label, n, entries)
                .map_err(|e| Error::Parse(Diagnostic::new(source, 0, 1, e.to_string())))
        })
        .collect()
}

pub fn write_occupancy_csv<W: Write>(occupancy: &Occupancy, writer: W) -> Result<()> {
    let mut w = csv_writer(writer);
    w.write_record(["state_id", "t", "count"])
        .map_err(write_err)?;
    for (id, series) in &occupancy.counts {
        for (t, c) in occupancy.times.iter().zip(series) {
            w.write_record([id.to_string(), t.to_string(), c.to_string()])
                .map_err(write_err)?;
        }
    }
    w.flush()?;
    Ok(())
}
