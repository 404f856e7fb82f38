//! Seeded synthetic panels.
//!
//! Every variable follows an independent two-state flip chain: row 0 is
//! favourable with `initial_probability`, and each later cell flips the
//! previous value with that variable's flip probability. Subject `k` draws
//! from its own ChaCha stream `(seed, k)`, so generation order and thread
//! count do not affect the output.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::PanelDataset;
use crate::orbit::SubjectSeries;
use crate::space::{QuestionOrder, QuestionSpec, MAX_VARIABLES};

/// Shared initial order used for the 13-variable fixed-order rendering.
pub const FIG5_INITIAL_ORDER: [usize; 13] = [2, 1, 0, 3, 6, 9, 7, 8, 5, 4, 10, 12, 11];

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub subjects: usize,
    pub variables: usize,
    pub timesteps: usize,
    pub flip_probabilities: Vec<f64>,
    pub initial_probability: f64,
    pub seed: u64,
}

/// `n` flip probabilities spaced geometrically from `low` to `high`.
pub fn geometric_flips(n: usize, low: f64, high: f64) -> Vec<f64> {
    if n == 1 {
        return vec![low];
    }
    let ratio = (high / low).powf(1.0 / (n - 1) as f64);
    (0..n).map(|i| low * ratio.powi(i as i32)).collect()
}

impl SimulationConfig {
    pub fn new(
        subjects: usize,
        variables: usize,
        timesteps: usize,
        flip_probabilities: Vec<f64>,
        seed: u64,
    ) -> Self {
        SimulationConfig {
            subjects,
            variables,
            timesteps,
            flip_probabilities,
            initial_probability: 0.5,
            seed,
        }
    }

    /// 3000 subjects, 4 variables, 10 time steps.
    pub fn fig3(seed: u64) -> Self {
        SimulationConfig::new(3000, 4, 10, geometric_flips(4, 0.02, 0.5), seed)
    }

    /// 3000 subjects, 13 variables, 10 time steps.
    pub fn fig4(seed: u64) -> Self {
        SimulationConfig::new(3000, 13, 10, geometric_flips(13, 0.02, 0.5), seed)
    }

    pub fn preset(name: &str, seed: u64) -> Result<Self> {
        match name {
            "fig3" => Ok(SimulationConfig::fig3(seed)),
            "fig4" => Ok(SimulationConfig::fig4(seed)),
            other => Err(Error::validation(format!(
                "unknown preset {other:?}; available: fig3, fig4"
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.subjects == 0 || self.timesteps == 0 {
            return Err(Error::validation(
                "simulation needs at least one subject and one time step",
            ));
        }
        if self.variables == 0 || self.variables > MAX_VARIABLES {
            return Err(Error::validation(format!(
                "variable count {} outside 1..={MAX_VARIABLES}",
                self.variables
            )));
        }
        if self.flip_probabilities.len() != self.variables {
            return Err(Error::validation(format!(
                "{} flip probabilities for {} variables",
                self.flip_probabilities.len(),
                self.variables
            )));
        }
        let probs = self
            .flip_probabilities
            .iter()
            .chain(std::iter::once(&self.initial_probability));
        for &p in probs {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::validation(format!("probability {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

fn subject_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn simulate_subject(
    config: &SimulationConfig,
    index: usize,
    width: usize,
) -> Result<SubjectSeries> {
    let mut rng = subject_rng(config.seed, index);
    let n = config.variables;
    let mut row: Vec<bool> = (0..n)
        .map(|_| rng.gen_bool(config.initial_probability))
        .collect();
    let mut cells = Vec::with_capacity(config.timesteps);
    cells.push(row.iter().map(|&b| Some(b)).collect::<Vec<_>>());
    for _ in 1..config.timesteps {
        for (bit, &p) in row.iter_mut().zip(&config.flip_probabilities) {
            if rng.gen_bool(p) {
                *bit = !*bit;
            }
        }
        cells.push(row.iter().map(|&b| Some(b)).collect());
    }
    SubjectSeries::new(
        format!("s{index:0width$}"),
        (0..config.timesteps as i64).collect(),
        cells,
    )
}

pub fn simulate_population(config: &SimulationConfig) -> Result<PanelDataset> {
    config.validate()?;
    let width = config.subjects.saturating_sub(1).to_string().len();
    let subjects = (0..config.subjects)
        .into_par_iter()
        .map(|k| simulate_subject(config, k, width))
        .collect::<Result<Vec<_>>>()?;
    PanelDataset::new(QuestionSpec::generic(config.variables), subjects)
}

pub fn fig5_order() -> QuestionOrder {
    QuestionOrder::new(FIG5_INITIAL_ORDER.to_vec()).expect("fixed order is a permutation")
}
