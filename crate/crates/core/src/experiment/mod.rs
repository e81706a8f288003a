//! Experiment runner: run matrices over problems and variants, persisted
//! results, summaries with rank-sum verdicts, and bias-profile studies.
//!
//! Output layout under the output directory, one folder per cell:
//!
//! ```text
//! <PROBLEM>_m<m>_<variant>/run_<ii>.json         run record
//! <PROBLEM>_m<m>_<variant>/run_<ii>.csv          final objective vectors
//! <PROBLEM>_m<m>_<variant>/run_<ii>.timing.json  wall-clock per phase
//! ```
//!
//! Run records contain no timing, so reruns with the same configuration
//! reproduce them byte for byte.

mod io;
mod summary;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use io::{read_json, to_json_string, write_atomic, write_json_atomic, SignificantDigits};
pub use summary::{
    render_summary_table, summarize, write_summary_csv, CellSummary, PairwiseComparison, Summary,
};

use crate::analysis::{
    grid_similar_front, mean_eps_profile, sample_similar_front, write_profile_csv, FrontShape,
    ProfileRow,
};
use crate::error::{Error, Result};
use crate::metrics::{igd, normalized_hv, reference_set, MetricConfig};
use crate::pareto::ObjectiveVector;
use crate::problems::{write_front_csv, ProblemName, ProblemSpec};
use crate::rng::RandomSource;
use crate::sra3::{self, NormalizationVariant, Sra3Config, DEFAULT_MAX_EVALUATIONS};

/// Default independent runs per cell.
pub const DEFAULT_RUNS: usize = 20;

/// Archive size per objective count used when none is given explicitly.
pub fn default_archive_sizes() -> BTreeMap<usize, usize> {
    BTreeMap::from([(5, 210), (10, 275), (15, 135), (20, 135), (25, 135)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProblemCell {
    pub problem: ProblemName,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problems: Vec<ProblemCell>,
    pub variants: Vec<NormalizationVariant>,
    /// Archive size keyed by objective count.
    pub archive_sizes: BTreeMap<usize, usize>,
    pub max_evaluations: usize,
    pub runs: usize,
    /// Run `i` of every cell uses seed `base_seed + i`.
    pub base_seed: u64,
    pub metrics: MetricConfig,
    pub output_dir: PathBuf,
    /// Upper bound on concurrent runs; `None` uses every core.
    #[serde(default)]
    pub jobs: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(
        problems: Vec<ProblemCell>,
        variants: Vec<NormalizationVariant>,
        output_dir: impl Into<PathBuf>,
    ) -> Self {
        Self {
            problems,
            variants,
            archive_sizes: default_archive_sizes(),
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            runs: DEFAULT_RUNS,
            base_seed: 1,
            metrics: MetricConfig::default(),
            output_dir: output_dir.into(),
            jobs: None,
        }
    }

    pub fn archive_size(&self, m: usize) -> Result<usize> {
        self.archive_sizes
            .get(&m)
            .copied()
            .ok_or_else(|| Error::config(format!("no archive size configured for m={m}")))
    }

    /// Checks every cell before anything runs.
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::config("runs must be at least 1"));
        }
        if self.problems.is_empty() || self.variants.is_empty() {
            return Err(Error::config("at least one problem and one variant are required"));
        }
        if self.jobs == Some(0) {
            return Err(Error::config("jobs must be at least 1"));
        }
        self.metrics.validate()?;
        for cell in &self.problems {
            ProblemSpec::new(cell.problem, cell.m)?;
            let n = self.archive_size(cell.m)?;
            Sra3Config::new(n, NormalizationVariant::None, 0)
                .with_max_evaluations(self.max_evaluations)
                .validate()
                .map_err(|e| match e {
                    Error::Usage(msg) => Error::Config(msg),
                    other => other,
                })?;
        }
        if self.base_seed.checked_add(self.runs as u64).is_none() {
            return Err(Error::config("base seed too large for the number of runs"));
        }
        Ok(())
    }

    pub fn cell_dir(&self, cell: ProblemCell, variant: NormalizationVariant) -> PathBuf {
        self.output_dir.join(cell_dir_name(cell, variant))
    }
}

pub fn cell_dir_name(cell: ProblemCell, variant: NormalizationVariant) -> String {
    format!("{}_m{}_{}", cell.problem, cell.m, variant)
}

/// Persisted outcome of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub problem: ProblemName,
    pub m: usize,
    pub variant: NormalizationVariant,
    pub run_index: usize,
    pub seed: u64,
    pub archive_size: usize,
    pub max_evaluations: usize,
    pub evaluations: usize,
    pub generations: usize,
    pub metrics: MetricConfig,
    /// Normalized hypervolume in `[0, 1]`.
    pub hv: f64,
    pub igd: f64,
    /// Objective vectors of the final non-dominated set.
    pub front: Vec<Vec<f64>>,
}

impl RunResult {
    pub fn cell(&self) -> ProblemCell {
        ProblemCell {
            problem: self.problem,
            m: self.m,
        }
    }
}

/// Wall-clock seconds per phase of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RunTiming {
    pub offspring: f64,
    pub evaluation: f64,
    pub update_ca: f64,
    pub update_da: f64,
    pub metrics: f64,
}

pub fn run_file_stem(run_index: usize) -> String {
    format!("run_{run_index:02}")
}

/// Runs one `(cell, variant, run)` and computes its metrics.
pub fn execute_run(
    cell: ProblemCell,
    variant: NormalizationVariant,
    run_index: usize,
    config: &ExperimentConfig,
    reference: &[ObjectiveVector],
) -> Result<(RunResult, RunTiming)> {
    let problem = ProblemSpec::new(cell.problem, cell.m)?;
    let archive_size = config.archive_size(cell.m)?;
    let seed = config.base_seed + run_index as u64;
    let sra3_config =
        Sra3Config::new(archive_size, variant, seed).with_max_evaluations(config.max_evaluations);
    let outcome = sra3::run(&problem, &sra3_config)?;
    let front = outcome.front_objectives();

    let started = Instant::now();
    let hv = normalized_hv(&front, &problem, &config.metrics)?;
    let igd = igd(&front, reference)?;
    let metrics_time = started.elapsed();

    let t = outcome.timings;
    let timing = RunTiming {
        offspring: t.offspring.as_secs_f64(),
        evaluation: t.evaluation.as_secs_f64(),
        update_ca: t.update_ca.as_secs_f64(),
        update_da: t.update_da.as_secs_f64(),
        metrics: metrics_time.as_secs_f64(),
    };
    let result = RunResult {
        problem: cell.problem,
        m: cell.m,
        variant,
        run_index,
        seed,
        archive_size,
        max_evaluations: config.max_evaluations,
        evaluations: outcome.evaluations,
        generations: outcome.generations,
        metrics: config.metrics.clone(),
        hv,
        igd,
        front: front.into_iter().map(ObjectiveVector::into_inner).collect(),
    };
    Ok((result, timing))
}

/// Writes the record, front CSV and timing sidecar of one run into `dir`.
pub fn write_run(dir: &Path, result: &RunResult, timing: &RunTiming) -> Result<()> {
    let stem = run_file_stem(result.run_index);
    write_json_atomic(&dir.join(format!("{stem}.json")), result)?;
    write_json_atomic(&dir.join(format!("{stem}.timing.json")), timing)?;
    let points = result
        .front
        .iter()
        .map(|p| ObjectiveVector::new(p.clone()))
        .collect::<Result<Vec<_>>>()?;
    write_atomic(&dir.join(format!("{stem}.csv")), |w| {
        write_front_csv(w, &points, None)
    })
}

/// Executes every run of the matrix, persisting each as it completes.
/// Results come back ordered by problem, variant and run index.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunResult>> {
    config.validate()?;
    let mut references = BTreeMap::new();
    for &cell in &config.problems {
        if let Entry::Vacant(slot) = references.entry(cell) {
            let problem = ProblemSpec::new(cell.problem, cell.m)?;
            slot.insert(reference_set(&problem, &config.metrics)?);
        }
    }
    let tasks: Vec<(ProblemCell, NormalizationVariant, usize)> = config
        .problems
        .iter()
        .flat_map(|&c| {
            config
                .variants
                .iter()
                .flat_map(move |&v| (0..config.runs).map(move |r| (c, v, r)))
        })
        .collect();

    let work = || {
        tasks
            .par_iter()
            .map(|&(cell, variant, run_index)| {
                let (result, timing) =
                    execute_run(cell, variant, run_index, config, &references[&cell])?;
                write_run(&config.cell_dir(cell, variant), &result, &timing)?;
                info!(
                    "{} run {run_index}: hv={:.4} igd={:.4}",
                    cell_dir_name(cell, variant),
                    result.hv,
                    result.igd
                );
                Ok(result)
            })
            .collect::<Result<Vec<_>>>()
    };
    match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::config(format!("cannot start {jobs} workers: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Loads every run record below `dir` (one level of cell folders),
/// ordered by problem, objective count, variant and run index.
pub fn load_results(dir: &Path) -> Result<Vec<RunResult>> {
    let mut results = Vec::new();
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if !path.is_dir() {
            continue;
        }
        for file in fs::read_dir(&path).map_err(|e| Error::io(&path, e))? {
            let file = file.map_err(|e| Error::io(&path, e))?.path();
            let name = file.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if name.starts_with("run_") && name.ends_with(".json") && !name.ends_with(".timing.json")
            {
                results.push(read_json::<RunResult>(&file)?);
            }
        }
    }
    results.sort_by(|a, b| {
        (a.problem, a.m, a.variant, a.run_index).cmp(&(b.problem, b.m, b.variant, b.run_index))
    });
    Ok(results)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum FrontSampling {
    /// Evenly spaced front parameters.
    Grid,
    /// Uniformly drawn front parameters.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasStudy {
    pub shape: FrontShape,
    pub points: usize,
    pub normalized: bool,
    pub sampling: FrontSampling,
}

/// Computes the mean epsilon profile of the study and writes it as CSV.
pub fn bias_study(study: &BiasStudy, out: &Path) -> Result<Vec<ProfileRow>> {
    let samples = match study.sampling {
        FrontSampling::Grid => grid_similar_front(&study.shape, study.points)?,
        FrontSampling::Random { seed } => {
            sample_similar_front(&study.shape, study.points, &mut RandomSource::new(seed))?
        }
    };
    let rows = mean_eps_profile(&samples, study.normalized)?;
    write_atomic(out, |w| write_profile_csv(w, &rows))?;
    Ok(rows)
}
