//! Child and household educational default.
//!
//! With `f` failed years and school entry at 7, a child of age `a >= 7 + f`
//! is defaulting when `y(a) <= (f - 1) + r` for `r = a - 7 - f`, i.e. when
//! `y(a) <= a - 8`. Younger children are never defaulting, so `f` only
//! acts through the age gate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Threshold used to label households: more than three failed years.
pub const HOUSEHOLD_THRESHOLD: u32 = 4;
/// Range of `f` covered by [`default_distribution`] for ages 7 to 16.
pub const F_RANGE: std::ops::RangeInclusive<u32> = 2..=9;

const SCHOOL_ENTRY_AGE: u32 = 7;
const OLDEST_SURVEYED_AGE: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildRecord {
    pub child_id: String,
    pub age: u32,
    pub years_completed: u32,
}

impl ChildRecord {
    pub fn new(child_id: impl Into<String>, age: u32, years_completed: u32) -> Result<Self> {
        let child_id = child_id.into();
        if years_completed > age {
            return Err(Error::validation(format!(
                "child {child_id}: {years_completed} completed years exceed age {age}"
            )));
        }
        Ok(ChildRecord {
            child_id,
            age,
            years_completed,
        })
    }

    /// Notes on records outside the surveyed range. They do not affect classification.
    pub fn warnings(&self, f: u32) -> Vec<String> {
        let mut out = Vec::new();
        if self.age > OLDEST_SURVEYED_AGE {
            out.push(format!(
                "child {}: age {} above the surveyed range 7-16",
                self.child_id, self.age
            ));
        }
        if self.age >= SCHOOL_ENTRY_AGE + f {
            let r = self.age - SCHOOL_ENTRY_AGE - f;
            if r + 2 < f || r > 7 {
                out.push(format!(
                    "child {}: r = {r} outside f - 2 <= r <= 7 for f = {f}",
                    self.child_id
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Defaulting,
    NonDefaulting,
}

impl Classification {
    pub fn is_defaulting(self) -> bool {
        self == Classification::Defaulting
    }

    pub fn label(self) -> &'static str {
        match self {
            Classification::Defaulting => "defaulting",
            Classification::NonDefaulting => "non-defaulting",
        }
    }
}

fn check_threshold(f: u32) -> Result<()> {
    if f < 2 {
        return Err(Error::validation(format!(
            "failure threshold f = {f}; f must be at least 2"
        )));
    }
    Ok(())
}

pub fn classify_child(record: &ChildRecord, f: u32) -> Result<Classification> {
    check_threshold(f)?;
    if record.age < SCHOOL_ENTRY_AGE + f {
        return Ok(Classification::NonDefaulting);
    }
    let r = record.age - SCHOOL_ENTRY_AGE - f;
    if record.years_completed > (f - 1) + r {
        Ok(Classification::NonDefaulting)
    } else {
        Ok(Classification::Defaulting)
    }
}

/// A household and its school-age children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Household {
    pub household_id: String,
    pub children: Vec<ChildRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HouseholdEducation {
    pub household_id: String,
    pub children: Vec<ChildRecord>,
    pub threshold: u32,
    pub is_defaulting: bool,
}

/// Defaulting when at least one child defaults at threshold `f`.
pub fn classify_household(household: &Household, f: u32) -> Result<HouseholdEducation> {
    check_threshold(f)?;
    if household.children.is_empty() {
        return Err(Error::validation(format!(
            "household {} has no children",
            household.household_id
        )));
    }
    let mut is_defaulting = false;
    for child in &household.children {
        is_defaulting |= classify_child(child, f)?.is_defaulting();
    }
    Ok(HouseholdEducation {
        household_id: household.household_id.clone(),
        children: household.children.clone(),
        threshold: f,
        is_defaulting,
    })
}

/// Fraction of defaulting households for each `f` in `f_range`.
pub fn default_distribution(
    households: &[Household],
    f_range: std::ops::RangeInclusive<u32>,
) -> Result<BTreeMap<u32, f64>> {
    if f_range.start() < F_RANGE.start() || f_range.end() > F_RANGE.end() {
        return Err(Error::validation(format!(
            "f range {}..={} outside {}..={}",
            f_range.start(),
            f_range.end(),
            F_RANGE.start(),
            F_RANGE.end()
        )));
    }
    f_range
        .map(|f| {
            let mut defaulting = 0usize;
            for h in households {
                if classify_household(h, f)?.is_defaulting {
                    defaulting += 1;
                }
            }
            let fraction = if households.is_empty() {
                0.0
            } else {
                defaulting as f64 / households.len() as f64
            };
            Ok((f, fraction))
        })
        .collect()
}
