//! Orbit construction.
//!
//! Each subject's panel is turned into a sequence of states. The initial
//! order sorts variables from least to most frequently changing; at every
//! later time the variables whose answers changed are moved, together with
//! their new answers, to the right end of the order. Stable variables
//! therefore accumulate on the left and orbits cluster by their values.
//!
//! Missing cells are bridged: a variable counts as changed across a gap
//! only if the observations on either side differ, and states inside the
//! gap repeat the last observed one.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::space::{AnswerString, QuestionOrder, QuestionSpec, State, MAX_VARIABLES};

/// One uncoded survey answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawAnswer {
    Yes,
    No,
    Missing,
}

/// A subject's coded binary panel. `None` marks a missing cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectSeries {
    subject_id: String,
    times: Vec<i64>,
    cells: Vec<Vec<Option<bool>>>,
}

impl SubjectSeries {
    pub fn new(
        subject_id: impl Into<String>,
        times: Vec<i64>,
        cells: Vec<Vec<Option<bool>>>,
    ) -> Result<Self> {
        let subject_id = subject_id.into();
        if cells.is_empty() {
            return Err(Error::validation(format!("subject {subject_id}: no rows")));
        }
        if times.len() != cells.len() {
            return Err(Error::validation(format!(
                "subject {subject_id}: {} time labels for {} rows",
                times.len(),
                cells.len()
            )));
        }
        let n = cells[0].len();
        if n == 0 || n > MAX_VARIABLES {
            return Err(Error::validation(format!(
                "subject {subject_id}: variable count {n} outside 1..={MAX_VARIABLES}"
            )));
        }
        if let Some(t) = cells.iter().position(|row| row.len() != n) {
            return Err(Error::validation(format!(
                "subject {subject_id}: row {t} has {} cells, expected {n}",
                cells[t].len()
            )));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation(format!(
                "subject {subject_id}: time labels must be strictly increasing"
            )));
        }
        if cells[0].iter().any(Option::is_none) {
            return Err(Error::validation(format!(
                "subject {subject_id}: first row has missing cells"
            )));
        }
        Ok(SubjectSeries {
            subject_id,
            times,
            cells,
        })
    }

    /// Builds a complete series (no missing cells) with times `0..T`.
    pub fn complete(subject_id: impl Into<String>, rows: &[AnswerString]) -> Result<Self> {
        let cells = rows
            .iter()
            .map(|r| r.bits().iter().map(|&b| Some(b)).collect())
            .collect();
        SubjectSeries::new(subject_id, (0..rows.len() as i64).collect(), cells)
    }

    /// Drops leading rows until the first fully observed one. `None` if no
    /// row is complete.
    pub fn starting_at_first_complete(
        subject_id: impl Into<String>,
        times: Vec<i64>,
        cells: Vec<Vec<Option<bool>>>,
    ) -> Option<Result<Self>> {
        let start = cells.iter().position(|r| r.iter().all(Option::is_some))?;
        Some(SubjectSeries::new(
            subject_id,
            times[start..].to_vec(),
            cells[start..].to_vec(),
        ))
    }

    pub fn subject_id(&self) -> &str {
        &self.subject_id
    }

    pub fn times(&self) -> &[i64] {
        &self.times
    }

    pub fn cells(&self) -> &[Vec<Option<bool>>] {
        &self.cells
    }

    /// Number of rows, `T`.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of variables, `n`.
    pub fn n(&self) -> usize {
        self.cells[0].len()
    }

    pub fn row_has_missing(&self, t: usize) -> bool {
        self.cells[t].iter().any(Option::is_none)
    }

    /// Rows with missing cells filled by the last observation.
    pub fn locf_rows(&self) -> Vec<AnswerString> {
        let mut last: Vec<bool> = self.cells[0].iter().map(|c| c.unwrap_or(false)).collect();
        self.cells
            .iter()
            .map(|row| {
                for (slot, cell) in last.iter_mut().zip(row) {
                    if let Some(v) = cell {
                        *slot = *v;
                    }
                }
                AnswerString::new(last.clone())
            })
            .collect()
    }

    /// (changes, observed consecutive pairs) for variable `i`.
    fn variable_changes(&self, i: usize) -> (u64, u64) {
        let mut observed = self.cells.iter().filter_map(|row| row[i]);
        let Some(mut prev) = observed.next() else {
            return (0, 0);
        };
        let (mut changes, mut pairs) = (0, 0);
        for v in observed {
            pairs += 1;
            if v != prev {
                changes += 1;
            }
            prev = v;
        }
        (changes, pairs)
    }
}

/// Codes a yes/no matrix according to each question's polarity.
pub fn code_answers(
    subject_id: impl Into<String>,
    times: Vec<i64>,
    raw: &[Vec<RawAnswer>],
    specs: &[QuestionSpec],
) -> Result<SubjectSeries> {
    let subject_id = subject_id.into();
    let specs = crate::space::validate_question_set(specs)?;
    let cells = raw
        .iter()
        .enumerate()
        .map(|(t, row)| {
            if row.len() != specs.len() {
                return Err(Error::validation(format!(
                    "subject {subject_id}: row {t} has {} answers for {} questions",
                    row.len(),
                    specs.len()
                )));
            }
            Ok(row
                .iter()
                .zip(&specs)
                .map(|(answer, spec)| match answer {
                    RawAnswer::Yes => Some(spec.polarity.code(true)),
                    RawAnswer::No => Some(spec.polarity.code(false)),
                    RawAnswer::Missing => None,
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    SubjectSeries::new(subject_id, times, cells)
}

/// How often each variable changed value over a subject's observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeFrequencies {
    pub counts: Vec<u64>,
}

pub fn change_frequencies(series: &SubjectSeries) -> ChangeFrequencies {
    ChangeFrequencies {
        counts: (0..series.n())
            .map(|i| series.variable_changes(i).0)
            .collect(),
    }
}

/// Per-variable population change rates.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationFrequencies {
    rates: Vec<f64>,
}

impl PopulationFrequencies {
    pub fn from_rates(rates: Vec<f64>) -> Result<Self> {
        if let Some(r) = rates.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return Err(Error::validation(format!(
                "population frequency {r} outside [0, 1]"
            )));
        }
        Ok(PopulationFrequencies { rates })
    }

    /// All rates equal; ties then fall back to the trivial order.
    pub fn uniform(n: usize) -> Self {
        PopulationFrequencies {
            rates: vec![0.0; n],
        }
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn n(&self) -> usize {
        self.rates.len()
    }

    /// Variables sorted by ascending rate, ties by index.
    pub fn ascending_order(&self) -> QuestionOrder {
        let mut vars: Vec<usize> = (0..self.rates.len()).collect();
        vars.sort_by(|&a, &b| self.rates[a].total_cmp(&self.rates[b]).then(a.cmp(&b)));
        QuestionOrder::new(vars).expect("sorted indices form a permutation")
    }
}

/// Pooled change counts over a population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeTally {
    pub changes: Vec<u64>,
    pub pairs: Vec<u64>,
}

impl ChangeTally {
    /// Changes per observed consecutive pair.
    pub fn rates(&self) -> PopulationFrequencies {
        PopulationFrequencies {
            rates: self
                .changes
                .iter()
                .zip(&self.pairs)
                .map(|(&c, &p)| if p == 0 { 0.0 } else { c as f64 / p as f64 })
                .collect(),
        }
    }

    /// Each variable's share of all change events; sums to 1 unless nothing changed.
    pub fn event_shares(&self) -> Vec<f64> {
        let total: u64 = self.changes.iter().sum();
        self.changes
            .iter()
            .map(|&c| {
                if total == 0 {
                    0.0
                } else {
                    c as f64 / total as f64
                }
            })
            .collect()
    }
}

pub fn tally_changes<'a, I>(population: I) -> Result<ChangeTally>
where
    I: IntoIterator<Item = &'a SubjectSeries>,
{
    let mut tally: Option<ChangeTally> = None;
    for series in population {
        let n = series.n();
        let acc = tally.get_or_insert_with(|| ChangeTally {
            changes: vec![0; n],
            pairs: vec![0; n],
        });
        if acc.changes.len() != n {
            return Err(Error::validation(format!(
                "subject {} has {n} variables, population has {}",
                series.subject_id(),
                acc.changes.len()
            )));
        }
        for i in 0..n {
            let (c, p) = series.variable_changes(i);
            acc.changes[i] += c;
            acc.pairs[i] += p;
        }
    }
    tally.ok_or_else(|| Error::validation("no subjects"))
}

pub fn population_frequencies<'a, I>(population: I) -> Result<PopulationFrequencies>
where
    I: IntoIterator<Item = &'a SubjectSeries>,
{
    Ok(tally_changes(population)?.rates())
}

/// Variables by ascending subject frequency, then ascending population
/// rate, then index.
pub fn initial_order(
    freqs: &ChangeFrequencies,
    pop: &PopulationFrequencies,
) -> Result<QuestionOrder> {
    let n = freqs.counts.len();
    if pop.n() != n {
        return Err(Error::validation(format!(
            "subject has {n} variables, population frequencies have {}",
            pop.n()
        )));
    }
    let mut vars: Vec<usize> = (0..n).collect();
    vars.sort_by(|&a, &b| {
        freqs.counts[a]
            .cmp(&freqs.counts[b])
            .then(pop.rates[a].total_cmp(&pop.rates[b]))
            .then(a.cmp(&b))
    });
    QuestionOrder::new(vars)
}

pub fn initial_state(series: &SubjectSeries, order: &QuestionOrder) -> Result<State> {
    let first = series.locf_rows().swap_remove(0);
    State::encode(&first, order)
}

/// Advances `state` to the raw row `new_row` (indexed by variable).
///
/// Changed variables are handled from the rightmost position at entry to
/// the leftmost; each is removed and re-appended at the right end with its
/// new answer.
pub fn step(state: &State, new_row: &AnswerString) -> Result<State> {
    let n = state.n();
    if new_row.len() != n {
        return Err(Error::validation(format!(
            "row has {} answers, state has {n} variables",
            new_row.len()
        )));
    }
    let current = state.decode();
    let order = state.order().as_slice();
    // positions (at entry) of variables whose answer changed, rightmost first
    let changed: Vec<usize> = (0..n)
        .rev()
        .filter(|&pos| current.get(order[pos]) != new_row.get(order[pos]))
        .collect();
    if changed.is_empty() {
        return Ok(state.clone());
    }
    let mut vars = order.to_vec();
    let mut bits = state.answers().bits().to_vec();
    for entry_pos in changed {
        let var = order[entry_pos];
        let pos = vars
            .iter()
            .position(|&v| v == var)
            .expect("variable present in order");
        vars.remove(pos);
        bits.remove(pos);
        vars.push(var);
        bits.push(new_row.get(var));
    }
    Ok(State::from_parts_unchecked(bits, vars))
}

/// A subject's state sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub subject_id: String,
    pub times: Vec<i64>,
    pub states: Vec<State>,
    pub frequencies: ChangeFrequencies,
    /// `imputed[t]` is true when row `t` had a missing cell filled by LOCF.
    pub imputed: Vec<bool>,
}

impl Orbit {
    /// Assembles an orbit from stored states, recomputing change frequencies
    /// from the decoded rows.
    pub fn from_states(
        subject_id: impl Into<String>,
        times: Vec<i64>,
        states: Vec<State>,
        imputed: Vec<bool>,
    ) -> Result<Self> {
        let subject_id = subject_id.into();
        if states.is_empty() || states.len() != times.len() || states.len() != imputed.len() {
            return Err(Error::validation(format!(
                "orbit {subject_id}: {} states, {} times, {} imputed flags",
                states.len(),
                times.len(),
                imputed.len()
            )));
        }
        let n = states[0].n();
        if states.iter().any(|s| s.n() != n) {
            return Err(Error::validation(format!(
                "orbit {subject_id}: states of differing variable counts"
            )));
        }
        let rows: Vec<AnswerString> = states.iter().map(State::decode).collect();
        let counts = (0..n)
            .map(|i| {
                rows.windows(2)
                    .filter(|w| w[0].get(i) != w[1].get(i))
                    .count() as u64
            })
            .collect();
        Ok(Orbit {
            subject_id,
            times,
            states,
            frequencies: ChangeFrequencies { counts },
            imputed,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn n(&self) -> usize {
        self.states[0].n()
    }

    pub fn ids(&self) -> Vec<u64> {
        self.states.iter().map(State::id).collect()
    }

    pub fn initial_order(&self) -> &QuestionOrder {
        self.states[0].order()
    }
}

/// Builds an orbit whose initial order comes from the subject's change
/// frequencies and the population rates.
pub fn build_orbit(series: &SubjectSeries, pop: &PopulationFrequencies) -> Result<Orbit> {
    let frequencies = change_frequencies(series);
    let order = initial_order(&frequencies, pop)?;
    build_with(series, &order, frequencies)
}

/// Builds an orbit starting from a caller-supplied initial order.
pub fn build_orbit_from_order(series: &SubjectSeries, order: &QuestionOrder) -> Result<Orbit> {
    build_with(series, order, change_frequencies(series))
}

fn build_with(
    series: &SubjectSeries,
    order: &QuestionOrder,
    frequencies: ChangeFrequencies,
) -> Result<Orbit> {
    let rows = series.locf_rows();
    let mut states = Vec::with_capacity(rows.len());
    let mut state = State::encode(&rows[0], order)?;
    states.push(state.clone());
    for row in &rows[1..] {
        state = step(&state, row)?;
        states.push(state.clone());
    }
    Ok(Orbit {
        subject_id: series.subject_id().to_string(),
        times: series.times().to_vec(),
        states,
        frequencies,
        imputed: (0..series.len())
            .map(|t| series.row_has_missing(t))
            .collect(),
    })
}

/// Builds every orbit of a population in parallel; output order follows input order.
pub fn build_orbits(
    population: &[SubjectSeries],
    pop: &PopulationFrequencies,
) -> Result<Vec<Orbit>> {
    population.par_iter().map(|s| build_orbit(s, pop)).collect()
}

pub fn build_orbits_from_order(
    population: &[SubjectSeries],
    order: &QuestionOrder,
) -> Result<Vec<Orbit>> {
    population
        .par_iter()
        .map(|s| build_orbit_from_order(s, order))
        .collect()
}
