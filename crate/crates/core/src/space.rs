//! The state space `X_n × Y_n`: answer strings paired with variable orders.
//!
//! A state is identified by a 1-based integer id. Orders are ranked in
//! descending lexicographic order (`210` is rank 0 for three variables,
//! `012` is rank 5), and the id is `rank · 2^n + value(answers) + 1`, where
//! the answer string is read as a big-endian binary number. With this
//! numbering `(110, 120)` is state 23 and `(111, 120)` is state 24.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported variable count; `2^13 · 13!` still fits comfortably in a `u64`.
pub const MAX_VARIABLES: usize = 13;

const FACTORIALS: [u64; MAX_VARIABLES + 1] = {
    let mut table = [1u64; MAX_VARIABLES + 1];
    let mut i = 1;
    while i <= MAX_VARIABLES {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

pub(crate) fn factorial(n: usize) -> u64 {
    FACTORIALS[n]
}

/// How a "yes" answer is coded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    YesIsFavourable,
    YesIsUnfavourable,
}

impl Polarity {
    /// Coded bit for a yes/no answer (`true` = favourable).
    pub fn code(self, yes: bool) -> bool {
        match self {
            Polarity::YesIsFavourable => yes,
            Polarity::YesIsUnfavourable => !yes,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::YesIsFavourable => "yes_is_favourable",
            Polarity::YesIsUnfavourable => "yes_is_unfavourable",
        }
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "yes_is_favourable" | "favourable" | "+" => Ok(Polarity::YesIsFavourable),
            "yes_is_unfavourable" | "unfavourable" | "-" => Ok(Polarity::YesIsUnfavourable),
            other => Err(Error::validation(format!("unknown polarity {other:?}"))),
        }
    }
}

/// One binary question of the panel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionSpec {
    pub index: usize,
    pub label: String,
    pub polarity: Polarity,
}

impl QuestionSpec {
    pub fn new(index: usize, label: impl Into<String>, polarity: Polarity) -> Self {
        Self {
            index,
            label: label.into(),
            polarity,
        }
    }

    /// The household questions: mother resident (BM), minor household head (HH)
    /// and adult death (AD).
    pub fn household_preset() -> Vec<QuestionSpec> {
        vec![
            QuestionSpec::new(0, "BM", Polarity::YesIsFavourable),
            QuestionSpec::new(1, "HH", Polarity::YesIsUnfavourable),
            QuestionSpec::new(2, "AD", Polarity::YesIsUnfavourable),
        ]
    }

    /// `n` questions labelled `q0..q{n-1}`, all with yes favourable.
    pub fn generic(n: usize) -> Vec<QuestionSpec> {
        (0..n)
            .map(|i| QuestionSpec::new(i, format!("q{i}"), Polarity::YesIsFavourable))
            .collect()
    }
}

/// Checks that the indices of `specs` are exactly `0..n` and returns the
/// specs sorted by index.
pub fn validate_question_set(specs: &[QuestionSpec]) -> Result<Vec<QuestionSpec>> {
    if specs.is_empty() {
        return Err(Error::validation("question set is empty"));
    }
    if specs.len() > MAX_VARIABLES {
        return Err(Error::validation(format!(
            "{} questions exceed the supported maximum of {MAX_VARIABLES}",
            specs.len()
        )));
    }
    let mut sorted = specs.to_vec();
    sorted.sort_by_key(|s| s.index);
    for (expected, spec) in sorted.iter().enumerate() {
        if spec.index != expected {
            return Err(Error::validation(format!(
                "question indices must be exactly 0..{}; found index {} where {expected} was expected",
                specs.len(),
                spec.index
            )));
        }
    }
    Ok(sorted)
}

/// A string of `n` coded answers (`true` = favourable).
///
/// Depending on context the positions follow either the trivial variable
/// order (raw rows) or a state's [`QuestionOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnswerString(Vec<bool>);

impl AnswerString {
    pub fn new(bits: Vec<bool>) -> Self {
        AnswerString(bits)
    }

    /// Decodes the low `n` bits of `value`, most significant first.
    pub fn from_value(n: usize, value: u64) -> Self {
        AnswerString((0..n).rev().map(|k| (value >> k) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, position: usize) -> bool {
        self.0[position]
    }

    /// Big-endian binary value: `110` is 6.
    pub fn value(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }
}

impl fmt::Display for AnswerString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for AnswerString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::validation("empty answer string"));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::validation(format!(
                    "answer string {s:?} contains {other:?}; only 0 and 1 are allowed"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(AnswerString)
    }
}

/// A permutation of the variable indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuestionOrder(Vec<usize>);

impl QuestionOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::validation("variable order is empty"));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::validation(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(QuestionOrder(order))
    }

    /// `0 1 2 … n-1`.
    pub fn trivial(n: usize) -> Self {
        QuestionOrder((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Position of `variable` inside the order.
    pub fn position_of(&self, variable: usize) -> Option<usize> {
        self.0.iter().position(|&v| v == variable)
    }
}

impl fmt::Display for QuestionOrder {
    /// Digit string (`120`) for up to ten variables, colon separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 10 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(":"))
        }
    }
}

impl FromStr for QuestionOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed: Option<Vec<usize>> = if s.contains(':') {
            s.split(':')
                .map(|p| p.trim().parse::<usize>().ok())
                .collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let order = parsed
            .ok_or_else(|| Error::validation(format!("cannot parse variable order {s:?}")))?;
        QuestionOrder::new(order)
    }
}

/// 0-based rank of `order` among all permutations of `0..n` listed in
/// descending lexicographic order.
pub fn perm_rank(order: &QuestionOrder) -> u64 {
    let perm = order.as_slice();
    let n = perm.len();
    let mut used = vec![false; n];
    let mut rank = 0u64;
    for (i, &v) in perm.iter().enumerate() {
        let larger_unused = (v + 1..n).filter(|&u| !used[u]).count() as u64;
        rank += larger_unused * factorial(n - 1 - i);
        used[v] = true;
    }
    rank
}

/// Inverse of [`perm_rank`].
pub fn perm_unrank(n: usize, rank: u64) -> Result<QuestionOrder> {
    if n == 0 || n > MAX_VARIABLES {
        return Err(Error::validation(format!(
            "variable count {n} outside 1..={MAX_VARIABLES}"
        )));
    }
    if rank >= factorial(n) {
        return Err(Error::validation(format!(
            "rank {rank} out of range for {n} variables"
        )));
    }
    // Remaining candidates, largest first.
    let mut remaining: Vec<usize> = (0..n).rev().collect();
    let mut rest = rank;
    let mut order = Vec::with_capacity(n);
    for i in 0..n {
        let block = factorial(n - 1 - i);
        let digit = (rest / block) as usize;
        rest %= block;
        order.push(remaining.remove(digit));
    }
    Ok(QuestionOrder(order))
}

/// `S_n` for a fixed number of binary variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateSpace {
    n: usize,
}

impl StateSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VARIABLES {
            return Err(Error::validation(format!(
                "variable count {n} outside 1..={MAX_VARIABLES}"
            )));
        }
        Ok(StateSpace { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of states, `2^n · n!`.
    pub fn size(&self) -> u64 {
        (1u64 << self.n) * factorial(self.n)
    }

    pub fn answer_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn order_count(&self) -> u64 {
        factorial(self.n)
    }

    pub fn contains(&self, id: u64) -> bool {
        (1..=self.size()).contains(&id)
    }
}

/// A pair (answer string, variable order) with its id.
///
/// `answers[j]` is the answer to variable `order[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    answers: AnswerString,
    order: QuestionOrder,
    id: u64,
}

impl State {
    pub fn new(answers: AnswerString, order: QuestionOrder) -> Result<Self> {
        let id = state_id(&answers, &order)?;
        Ok(State { answers, order, id })
    }

    /// Reconstructs the state with the given id.
    pub fn from_id(space: StateSpace, id: u64) -> Result<Self> {
        if !space.contains(id) {
            return Err(Error::validation(format!(
                "state id {id} outside 1..={} for {} variables",
                space.size(),
                space.n()
            )));
        }
        let zero_based = id - 1;
        let per_order = space.answer_count();
        let order = perm_unrank(space.n(), zero_based / per_order)?;
        let answers = AnswerString::from_value(space.n(), zero_based % per_order);
        Ok(State { answers, order, id })
    }

    /// Places the raw row (indexed by variable) into `order`.
    pub fn encode(raw: &AnswerString, order: &QuestionOrder) -> Result<Self> {
        if raw.len() != order.len() {
            return Err(Error::validation(format!(
                "row has {} answers but order has {} variables",
                raw.len(),
                order.len()
            )));
        }
        let answers = AnswerString(order.as_slice().iter().map(|&v| raw.get(v)).collect());
        State::new(answers, order.clone())
    }

    pub fn answers(&self) -> &AnswerString {
        &self.answers
    }

    pub fn order(&self) -> &QuestionOrder {
        &self.order
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn space(&self) -> StateSpace {
        StateSpace { n: self.n() }
    }

    /// The answers re-sorted by variable index.
    pub fn decode(&self) -> AnswerString {
        let mut raw = vec![false; self.n()];
        for (&v, &b) in self.order.as_slice().iter().zip(self.answers.bits()) {
            raw[v] = b;
        }
        AnswerString(raw)
    }

    pub(crate) fn from_parts_unchecked(answers: Vec<bool>, order: Vec<usize>) -> Self {
        let answers = AnswerString(answers);
        let order = QuestionOrder(order);
        let id = perm_rank(&order) * (1u64 << order.len()) + answers.value() + 1;
        State { answers, order, id }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.answers, self.order)
    }
}

/// `perm_rank(order) · 2^n + value(answers) + 1`.
pub fn state_id(answers: &AnswerString, order: &QuestionOrder) -> Result<u64> {
    if answers.len() != order.len() {
        return Err(Error::validation(format!(
            "answer string has length {} but order has {} variables",
            answers.len(),
            order.len()
        )));
    }
    StateSpace::new(order.len())?;
    Ok(perm_rank(order) * (1u64 << order.len()) + answers.value() + 1)
}

/// Raw answers of `state` in the trivial variable order.
pub fn decode_state(state: &State) -> AnswerString {
    state.decode()
}
