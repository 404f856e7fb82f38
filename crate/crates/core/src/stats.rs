//! Transition densities and the quantities derived from them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::orbit::Orbit;
use crate::space::{QuestionOrder, State, StateSpace};

/// Whether LOCF-imputed steps contribute to densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImputedSteps {
    #[default]
    Include,
    Exclude,
}

/// Accumulated transition counts `d_ij` for a labelled population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionCounts {
    pub label: String,
    pub n: usize,
    pub counts: BTreeMap<(u64, u64), u64>,
    pub subjects: usize,
}

impl TransitionCounts {
    pub fn empty(label: impl Into<String>, n: usize) -> Self {
        TransitionCounts {
            label: label.into(),
            n,
            counts: BTreeMap::new(),
            subjects: 0,
        }
    }

    /// Counts given directly as `((from, to), count)` entries.
    pub fn from_entries<I>(label: impl Into<String>, n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u64, u64), u64)>,
    {
        let space = StateSpace::new(n)?;
        let mut out = TransitionCounts::empty(label, n);
        for ((from, to), c) in entries {
            if !space.contains(from) || !space.contains(to) {
                return Err(Error::validation(format!(
                    "transition {from}->{to} outside the state space for {n} variables"
                )));
            }
            *out.counts.entry((from, to)).or_insert(0) += c;
        }
        out.counts.retain(|_, c| *c > 0);
        Ok(out)
    }

    pub fn get(&self, from: u64, to: u64) -> u64 {
        self.counts.get(&(from, to)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Entrywise sum; `d^P = d^def + d^nondef`.
    pub fn merged(&self, other: &TransitionCounts, label: impl Into<String>) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::validation(format!(
                "cannot merge counts over {} and {} variables",
                self.n, other.n
            )));
        }
        let mut out = self.clone();
        out.label = label.into();
        out.subjects += other.subjects;
        for (&k, &c) in &other.counts {
            *out.counts.entry(k).or_insert(0) += c;
        }
        Ok(out)
    }

    /// Every state id appearing as a source or target.
    pub fn states(&self) -> BTreeSet<u64> {
        self.counts.keys().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// Counts every consecutive state pair, self-transitions included.
pub fn accumulate_transitions(orbits: &[Orbit], label: &str) -> Result<TransitionCounts> {
    accumulate_transitions_with(orbits, label, ImputedSteps::Include)
}

pub fn accumulate_transitions_with(
    orbits: &[Orbit],
    label: &str,
    imputed: ImputedSteps,
) -> Result<TransitionCounts> {
    let n = orbits.first().map(Orbit::n).unwrap_or(1);
    let mut out = TransitionCounts::empty(label, n);
    for orbit in orbits {
        if orbit.n() != n {
            return Err(Error::validation(format!(
                "orbit {} has {} variables, expected {n}",
                orbit.subject_id,
                orbit.n()
            )));
        }
        out.subjects += 1;
        for t in 1..orbit.states.len() {
            if imputed == ImputedSteps::Exclude && orbit.imputed[t] {
                continue;
            }
            let key = (orbit.states[t - 1].id(), orbit.states[t].id());
            *out.counts.entry(key).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// A named set of state ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSubset {
    pub name: String,
    pub n: usize,
    pub ids: BTreeSet<u64>,
}

/// Six states with a stable adult head, as listed for the household questions.
pub const H_LISTED: [u64; 6] = [23, 24, 29, 30, 31, 32];
/// Every state with `x = 1**` and `y = 1**` for three variables.
pub const H_PATTERN: [u64; 8] = [21, 22, 23, 24, 29, 30, 31, 32];
/// Adult head and no adult death, in order `120`.
pub const L_STATES: [u64; 2] = [23, 24];

impl StateSubset {
    pub fn new<I>(name: impl Into<String>, n: usize, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let space = StateSpace::new(n)?;
        let ids: BTreeSet<u64> = ids.into_iter().collect();
        if let Some(bad) = ids.iter().find(|&&id| !space.contains(id)) {
            return Err(Error::validation(format!(
                "state id {bad} outside 1..={}",
                space.size()
            )));
        }
        Ok(StateSubset {
            name: name.into(),
            n,
            ids,
        })
    }

    /// The whole state space. Only sensible for small `n`.
    pub fn all(n: usize) -> Result<Self> {
        let space = StateSpace::new(n)?;
        if n > 6 {
            return Err(Error::validation(format!(
                "refusing to enumerate {} states",
                space.size()
            )));
        }
        StateSubset::new("all", n, 1..=space.size())
    }

    /// States whose answer string starts with `answer_prefix` and whose
    /// order starts with `order_prefix` (both read left to right).
    pub fn from_pattern(
        name: impl Into<String>,
        n: usize,
        answer_prefix: &[bool],
        order_prefix: &[usize],
    ) -> Result<Self> {
        let space = StateSpace::new(n)?;
        if n > 6 {
            return Err(Error::validation(
                "pattern subsets are enumerated and limited to n <= 6",
            ));
        }
        let mut ids = BTreeSet::new();
        for id in 1..=space.size() {
            let s = State::from_id(space, id)?;
            if s.answers().bits().starts_with(answer_prefix)
                && s.order().as_slice().starts_with(order_prefix)
            {
                ids.insert(id);
            }
        }
        Ok(StateSubset {
            name: name.into(),
            n,
            ids,
        })
    }

    /// Named presets: `H` (the six listed ids), `H8` (the pattern
    /// `x = 1**, y = 1**`), `L` and `all`; anything else is parsed as a
    /// comma-separated id list.
    pub fn named(spec: &str, n: usize) -> Result<Self> {
        let needs_three = |name: &str| {
            if n == 3 {
                Ok(())
            } else {
                Err(Error::validation(format!(
                    "subset {name} is defined for 3 variables, data has {n}"
                )))
            }
        };
        match spec.trim() {
            "H" => {
                needs_three("H")?;
                StateSubset::new("H", n, H_LISTED)
            }
            "H8" => {
                needs_three("H8")?;
                StateSubset::new("H8", n, H_PATTERN)
            }
            "L" => {
                needs_three("L")?;
                StateSubset::new("L", n, L_STATES)
            }
            "all" => StateSubset::all(n),
            list => {
                let ids = list
                    .split(',')
                    .map(|p| {
                        p.trim().parse::<u64>().map_err(|_| {
                            Error::validation(format!(
                                "unknown subset {list:?}: expected H, H8, L, all or an id list"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                StateSubset::new(list.trim(), n, ids)
            }
        }
    }

    pub fn contains(&self, id: u64) -> bool {
        self.ids.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Counts kept by [`restrict`] and their share of the input total.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    pub counts: TransitionCounts,
    /// `None` when the input had no transitions.
    pub retained_share: Option<f64>,
}

/// Keeps transitions with both endpoints in `subset`.
pub fn restrict(counts: &TransitionCounts, subset: &StateSubset) -> Restriction {
    let mut kept = counts.clone();
    kept.counts
        .retain(|&(a, b), _| subset.contains(a) && subset.contains(b));
    let total = counts.total();
    let retained_share = (total > 0).then(|| kept.total() as f64 / total as f64);
    Restriction {
        counts: kept,
        retained_share,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OddsRatioResult {
    pub from_id: u64,
    pub to_id: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    /// `ad / cb`; `None` when `cb = 0`.
    pub value: Option<f64>,
}

pub fn odds_ratio_from_counts(a: u64, b: u64, c: u64, d: u64) -> Option<f64> {
    let denom = c as f64 * b as f64;
    (denom > 0.0).then(|| a as f64 * d as f64 / denom)
}

/// Odds ratio of the transition `from -> to` between a reference population
/// (`a`, `b`) and a comparison population (`c`, `d`). `b` and `d` sum every
/// other transition with both endpoints in `scope`.
pub fn odds_ratio(
    reference: &TransitionCounts,
    comparison: &TransitionCounts,
    from_id: u64,
    to_id: u64,
    scope: &StateSubset,
) -> Result<OddsRatioResult> {
    if reference.n != comparison.n {
        return Err(Error::validation(
            "odds ratio needs both tables over the same state space",
        ));
    }
    if !scope.contains(from_id) || !scope.contains(to_id) {
        return Err(Error::validation(format!(
            "transition {from_id}->{to_id} is outside scope {}",
            scope.name
        )));
    }
    let others = |t: &TransitionCounts| -> u64 {
        t.counts
            .iter()
            .filter(|(&(i, j), _)| {
                (i, j) != (from_id, to_id) && scope.contains(i) && scope.contains(j)
            })
            .map(|(_, &c)| c)
            .sum()
    };
    let a = reference.get(from_id, to_id);
    let c = comparison.get(from_id, to_id);
    let b = others(reference);
    let d = others(comparison);
    Ok(OddsRatioResult {
        from_id,
        to_id,
        a,
        b,
        c,
        d,
        value: odds_ratio_from_counts(a, b, c, d),
    })
}

/// Percentages `100·a/(a+c)` and `100·c/(a+c)`; `None` when both are zero.
pub fn shares_from_counts(a: u64, c: u64) -> Option<(f64, f64)> {
    let total = a + c;
    (total > 0).then(|| {
        (
            100.0 * a as f64 / total as f64,
            100.0 * c as f64 / total as f64,
        )
    })
}

pub fn transition_shares(
    reference: &TransitionCounts,
    comparison: &TransitionCounts,
    from_id: u64,
    to_id: u64,
) -> Option<(f64, f64)> {
    shares_from_counts(
        reference.get(from_id, to_id),
        comparison.get(from_id, to_id),
    )
}

/// Number of orbits in each state at each time label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occupancy {
    pub times: Vec<i64>,
    /// `counts[id][k]` is the number of orbits in state `id` at `times[k]`.
    pub counts: BTreeMap<u64, Vec<u64>>,
    /// Orbits defined at each time.
    pub defined: Vec<u64>,
}

impl Occupancy {
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn series(&self, id: u64) -> Option<&[u64]> {
        self.counts.get(&id).map(Vec::as_slice)
    }

    /// Keeps only the given states.
    pub fn restricted(&self, subset: &StateSubset) -> Occupancy {
        Occupancy {
            times: self.times.clone(),
            counts: self
                .counts
                .iter()
                .filter(|(id, _)| subset.contains(**id))
                .map(|(&id, v)| (id, v.clone()))
                .collect(),
            defined: self.defined.clone(),
        }
    }
}

pub fn occupancy_timeseries(orbits: &[Orbit]) -> Occupancy {
    let times: Vec<i64> = orbits
        .iter()
        .flat_map(|o| o.times.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<i64, usize> = times.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let mut counts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut defined = vec![0u64; times.len()];
    for orbit in orbits {
        for (t, state) in orbit.times.iter().zip(&orbit.states) {
            let k = index[t];
            counts
                .entry(state.id())
                .or_insert_with(|| vec![0; times.len()])[k] += 1;
            defined[k] += 1;
        }
    }
    Occupancy {
        times,
        counts,
        defined,
    }
}

/// Re-encodes `state` under a fixed variable order.
pub fn project_fixed_order(state: &State, fixed: &QuestionOrder) -> Result<State> {
    if state.n() != fixed.len() {
        return Err(Error::validation(format!(
            "state has {} variables, fixed order has {}",
            state.n(),
            fixed.len()
        )));
    }
    State::encode(&state.decode(), fixed)
}

/// Collapses full-space counts onto a fixed variable order.
pub fn project_counts(
    counts: &TransitionCounts,
    fixed: &QuestionOrder,
) -> Result<TransitionCounts> {
    let space = StateSpace::new(counts.n)?;
    let mut cache: BTreeMap<u64, u64> = BTreeMap::new();
    let mut project = |id: u64| -> Result<u64> {
        if let Some(&p) = cache.get(&id) {
            return Ok(p);
        }
        let p = project_fixed_order(&State::from_id(space, id)?, fixed)?.id();
        cache.insert(id, p);
        Ok(p)
    };
    let mut out = TransitionCounts::empty(counts.label.clone(), counts.n);
    out.subjects = counts.subjects;
    for (&(a, b), &c) in &counts.counts {
        *out.counts.entry((project(a)?, project(b)?)).or_insert(0) += c;
    }
    Ok(out)
}

/// Applies [`project_fixed_order`] to every state of every orbit.
pub fn project_orbits(orbits: &[Orbit], fixed: &QuestionOrder) -> Result<Vec<Orbit>> {
    orbits
        .iter()
        .map(|o| {
            let states = o
                .states
                .iter()
                .map(|s| project_fixed_order(s, fixed))
                .collect::<Result<Vec<_>>>()?;
            Ok(Orbit {
                states,
                ..o.clone()
            })
        })
        .collect()
}
