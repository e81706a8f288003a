//! The two-archive optimizer.
//!
//! A convergence archive (CA) is maintained with epsilon-indicator fitness
//! and a diversity archive (DA) with shift-based density fitness. Each
//! generation creates one offspring per archive slot from adaptively
//! chosen parents, then both archives are refilled from their union with
//! the offspring. The answer is the non-dominated part of the final CA.

mod offspring;
mod selection;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use log::warn;
use serde::{Deserialize, Serialize};

pub use offspring::{generate_offspring, ArchiveSource, ParentSelection};
pub use selection::{select_best, update_ca, update_ca_normalized, update_da, RemovalStats};

use crate::error::{Error, Result};
use crate::indicators::EpsParams;
use crate::pareto::{nondominated_indices_unchecked, Archive, Individual, ObjectiveVector};
use crate::problems::ProblemSpec;
use crate::rng::RandomSource;
use crate::variation::VariationParams;

/// Which indicators operate on min-max scaled objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationVariant {
    None,
    #[serde(rename = "eps")]
    EpsOnly,
    #[serde(rename = "sde")]
    SdeOnly,
    Both,
}

impl NormalizationVariant {
    pub const ALL: [NormalizationVariant; 4] = [
        NormalizationVariant::None,
        NormalizationVariant::EpsOnly,
        NormalizationVariant::SdeOnly,
        NormalizationVariant::Both,
    ];

    pub fn normalizes_eps(self) -> bool {
        matches!(self, NormalizationVariant::EpsOnly | NormalizationVariant::Both)
    }

    pub fn normalizes_sde(self) -> bool {
        matches!(self, NormalizationVariant::SdeOnly | NormalizationVariant::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NormalizationVariant::None => "none",
            NormalizationVariant::EpsOnly => "eps",
            NormalizationVariant::SdeOnly => "sde",
            NormalizationVariant::Both => "both",
        }
    }
}

impl fmt::Display for NormalizationVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormalizationVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Self::None),
            "eps" | "epsonly" => Ok(Self::EpsOnly),
            "sde" | "sdeonly" => Ok(Self::SdeOnly),
            "both" => Ok(Self::Both),
            other => Err(Error::config(format!(
                "unknown normalization variant {other:?} (expected none, eps, sde or both)"
            ))),
        }
    }
}

/// Default evaluation budget per run.
pub const DEFAULT_MAX_EVALUATIONS: usize = 90_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sra3Config {
    /// Size `N` of each archive and of each offspring batch.
    pub archive_capacity: usize,
    /// Problem evaluations allowed, including the `2N` initial ones.
    pub max_evaluations: usize,
    pub eps: EpsParams,
    /// `None` means crossover 1.0, mutation `1/n`, both indices 20.
    pub variation: Option<VariationParams>,
    pub variant: NormalizationVariant,
    pub seed: u64,
}

impl Sra3Config {
    pub fn new(archive_capacity: usize, variant: NormalizationVariant, seed: u64) -> Self {
        Self {
            archive_capacity,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            eps: EpsParams::default(),
            variation: None,
            variant,
            seed,
        }
    }

    pub fn with_max_evaluations(mut self, max_evaluations: usize) -> Self {
        self.max_evaluations = max_evaluations;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.archive_capacity < 2 {
            return Err(Error::config("archive capacity must be at least 2"));
        }
        if self.max_evaluations < 2 * self.archive_capacity {
            return Err(Error::usage(format!(
                "budget of {} evaluations cannot cover the {} initial evaluations",
                self.max_evaluations,
                2 * self.archive_capacity
            )));
        }
        EpsParams::new(self.eps.k)?;
        if let Some(v) = &self.variation {
            v.validate()?;
        }
        Ok(())
    }
}

/// Wall-clock time spent per phase of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub offspring: Duration,
    pub evaluation: Duration,
    pub update_ca: Duration,
    pub update_da: Duration,
}

/// State reported to an observer after initialization (generation 0) and
/// after every completed generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationReport {
    pub generation: usize,
    pub evaluations: usize,
    pub ca_len: usize,
    pub da_len: usize,
    /// Removals performed by the normalized CA update this generation.
    pub ca_removals: usize,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Non-dominated members of the final convergence archive.
    pub front: Vec<Individual>,
    pub convergence_archive: Archive,
    pub diversity_archive: Archive,
    pub evaluations: usize,
    pub generations: usize,
    /// Epsilon fitness terms that overflowed and were floored.
    pub clamped_terms: usize,
    pub timings: PhaseTimings,
}

impl RunOutcome {
    pub fn front_objectives(&self) -> Vec<ObjectiveVector> {
        self.front.iter().map(|i| i.objectives.clone()).collect()
    }
}

pub fn run(problem: &ProblemSpec, config: &Sra3Config) -> Result<RunOutcome> {
    run_with_observer(problem, config, |_| {})
}

/// Runs the optimizer, calling `observer` after initialization and after
/// each generation. Generations continue while a full batch of `N`
/// offspring fits into the remaining budget.
pub fn run_with_observer(
    problem: &ProblemSpec,
    config: &Sra3Config,
    mut observer: impl FnMut(&GenerationReport),
) -> Result<RunOutcome> {
    config.validate()?;
    let n = config.archive_capacity;
    let variation = config
        .variation
        .unwrap_or_else(|| VariationParams::for_variables(problem.n));
    let mut rng = RandomSource::new(config.seed);
    let mut timings = PhaseTimings::default();
    let mut evaluations = 0;

    let evaluate = |decision: Vec<f64>, evaluations: &mut usize| -> Result<Individual> {
        let objectives = problem.evaluate(&decision)?;
        *evaluations += 1;
        Ok(Individual::new(decision, objectives))
    };

    let mut ca = Vec::with_capacity(2 * n);
    for _ in 0..n {
        ca.push(evaluate(problem.bounds.sample(&mut rng), &mut evaluations)?);
    }
    let mut da = Vec::with_capacity(2 * n);
    for _ in 0..n {
        da.push(evaluate(problem.bounds.sample(&mut rng), &mut evaluations)?);
    }
    observer(&GenerationReport {
        generation: 0,
        evaluations,
        ca_len: ca.len(),
        da_len: da.len(),
        ca_removals: 0,
    });

    let mut generations = 0;
    let mut clamped_terms = 0;
    while evaluations + n <= config.max_evaluations {
        let t = Instant::now();
        let decisions = {
            let ca_objs: Vec<&[f64]> = ca.iter().map(|i: &Individual| i.as_ref()).collect();
            let da_objs: Vec<&[f64]> = da.iter().map(|i: &Individual| i.as_ref()).collect();
            let ca_dec: Vec<&[f64]> = ca.iter().map(|i| i.decision.as_slice()).collect();
            let da_dec: Vec<&[f64]> = da.iter().map(|i| i.decision.as_slice()).collect();
            generate_offspring(
                &ca_objs,
                &ca_dec,
                &da_objs,
                &da_dec,
                n,
                &variation,
                &problem.bounds,
                &mut rng,
            )?
        };
        timings.offspring += t.elapsed();

        let t = Instant::now();
        let offspring = decisions
            .into_iter()
            .map(|d| evaluate(d, &mut evaluations))
            .collect::<Result<Vec<_>>>()?;
        timings.evaluation += t.elapsed();

        let t = Instant::now();
        ca.extend(offspring.iter().cloned());
        let (keep, fitness, removals) = if config.variant.normalizes_eps() {
            let (keep, fitness, stats) =
                selection::update_ca_normalized_with_fitness(&ca, n, &config.eps)?;
            (keep, fitness, stats.removals)
        } else {
            let (keep, fitness, clamped) = selection::update_ca_with_fitness(&ca, n, &config.eps)?;
            clamped_terms += clamped;
            (keep, fitness, 0)
        };
        ca = retain(ca, &keep, &fitness);
        timings.update_ca += t.elapsed();

        let t = Instant::now();
        da.extend(offspring);
        let (keep, fitness) =
            selection::update_da_with_fitness(&da, n, config.variant.normalizes_sde())?;
        da = retain(da, &keep, &fitness);
        timings.update_da += t.elapsed();

        generations += 1;
        observer(&GenerationReport {
            generation: generations,
            evaluations,
            ca_len: ca.len(),
            da_len: da.len(),
            ca_removals: removals,
        });
    }

    if clamped_terms > 0 {
        warn!(
            "seed {}: {clamped_terms} epsilon fitness terms overflowed and were floored",
            config.seed
        );
    }

    let front = nondominated_indices_unchecked(&ca)
        .into_iter()
        .map(|i| ca[i].clone())
        .collect();
    Ok(RunOutcome {
        front,
        convergence_archive: Archive::new(ca, n)?,
        diversity_archive: Archive::new(da, n)?,
        evaluations,
        generations,
        clamped_terms,
        timings,
    })
}

fn retain(pop: Vec<Individual>, keep: &[usize], fitness: &[f64]) -> Vec<Individual> {
    let mut wanted = keep.iter().peekable();
    pop.into_iter()
        .enumerate()
        .filter_map(|(i, mut ind)| {
            if wanted.peek() == Some(&&i) {
                wanted.next();
                ind.fitness = Some(fitness[i]);
                Some(ind)
            } else {
                None
            }
        })
        .collect()
}
