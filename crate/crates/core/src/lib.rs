//! Orbit analysis of binary multivariate longitudinal panels.
//!
//! Each subject's rows of binary answers become an *orbit*: a sequence of
//! states pairing the answer string with a dynamically rearranged variable
//! order, where variables that just changed move to the right end. States
//! live in a space of `2^n · n!` ids, which supports transition densities,
//! odds ratios between sub-populations, occupancy time series and SVG
//! figures.
//!
//! ```
//! use orbitscope::orbit::{build_orbit, PopulationFrequencies, SubjectSeries};
//! use orbitscope::space::AnswerString;
//!
//! let rows: Vec<AnswerString> = ["111", "110", "011"].iter().map(|r| r.parse().unwrap()).collect();
//! let series = SubjectSeries::complete("k", &rows).unwrap();
//! let orbit = build_orbit(&series, &PopulationFrequencies::uniform(3)).unwrap();
//! assert_eq!(orbit.states[2].to_string(), "(110, 120)");
//! assert_eq!(orbit.states[2].id(), 23);
//! ```

pub mod cli;
pub mod education;
pub mod error;
pub mod ingest;
pub mod orbit;
pub mod render;
pub mod simulate;
pub mod space;
pub mod stats;

pub use error::{Diagnostic, Error, Result};
