//! Python bindings for the `sra3` crate.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use sra3::analysis::{self, FrontShape, ShapeKind};
use sra3::indicators::{self, EpsParams};
use sra3::metrics::{self, MetricConfig};
use sra3::pareto;
use sra3::sra3::{update_ca, update_ca_normalized, update_da, Sra3Config};
use sra3::{Error, NormalizationVariant, ProblemName, ProblemSpec, RandomSource};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Usage(_) | Error::Config(_) => PyValueError::new_err(e.to_string()),
        _ => PyIOError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(to_py)
}

/// A benchmark problem (`DTLZ1`-`DTLZ4`, `WFG1`-`WFG9`) with `m` objectives.
#[pyclass(name = "Problem", module = "sra3_py", frozen)]
struct PyProblem {
    spec: ProblemSpec,
}

#[pymethods]
impl PyProblem {
    #[new]
    fn new(name: &str, m: usize) -> PyResult<Self> {
        let spec = ProblemSpec::new(parse::<ProblemName>(name)?, m).map_err(to_py)?;
        Ok(Self { spec })
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.name.to_string()
    }

    #[getter]
    fn m(&self) -> usize {
        self.spec.m
    }

    #[getter]
    fn n(&self) -> usize {
        self.spec.n
    }

    #[getter]
    fn lower(&self) -> Vec<f64> {
        self.spec.bounds.lower.clone()
    }

    #[getter]
    fn upper(&self) -> Vec<f64> {
        self.spec.bounds.upper.clone()
    }

    fn evaluate(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(self.spec.evaluate(&x).map_err(to_py)?.into_inner())
    }

    fn nadir(&self) -> Vec<f64> {
        self.spec.analytic_nadir().into_inner()
    }

    fn optimal_decision(&self, position: Vec<f64>) -> PyResult<Vec<f64>> {
        self.spec.optimal_decision(&position).map_err(to_py)
    }

    #[pyo3(signature = (count, seed = 1))]
    fn sample_front(&self, count: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
        let pts = self
            .spec
            .sample_reference_front(count, &mut RandomSource::new(seed))
            .map_err(to_py)?;
        Ok(pts.into_iter().map(|p| p.into_inner()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Problem({:?}, m={})", self.spec.name.as_str(), self.spec.m)
    }
}

/// Result of one optimizer run.
#[pyclass(name = "RunOutcome", module = "sra3_py", frozen, get_all)]
struct PyRunOutcome {
    /// Objective vectors of the final non-dominated set.
    front: Vec<Vec<f64>>,
    /// Decision vectors matching `front`.
    decisions: Vec<Vec<f64>>,
    evaluations: usize,
    generations: usize,
}

/// Runs the optimizer on `problem`.
#[pyfunction]
#[pyo3(signature = (problem, archive_size, variant = "none", max_evaluations = 90_000, seed = 1))]
fn run(
    py: Python<'_>,
    problem: &PyProblem,
    archive_size: usize,
    variant: &str,
    max_evaluations: usize,
    seed: u64,
) -> PyResult<PyRunOutcome> {
    let variant = parse::<NormalizationVariant>(variant)?;
    let config = Sra3Config::new(archive_size, variant, seed).with_max_evaluations(max_evaluations);
    let spec = problem.spec.clone();
    let outcome = py
        .detach(|| sra3::run(&spec, &config))
        .map_err(to_py)?;
    Ok(PyRunOutcome {
        front: outcome
            .front
            .iter()
            .map(|i| i.objectives.as_slice().to_vec())
            .collect(),
        decisions: outcome.front.iter().map(|i| i.decision.clone()).collect(),
        evaluations: outcome.evaluations,
        generations: outcome.generations,
    })
}

#[pyfunction]
fn dominates(a: Vec<f64>, b: Vec<f64>) -> PyResult<bool> {
    pareto::dominates(&a, &b).map_err(to_py)
}

#[pyfunction]
fn nondominated_indices(points: Vec<Vec<f64>>) -> PyResult<Vec<usize>> {
    pareto::nondominated_indices(&points).map_err(to_py)
}

#[pyfunction]
fn eps_indicator(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    indicators::eps_indicator(&x, &y).map_err(to_py)
}

#[pyfunction]
fn sde_distance(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    indicators::sde_distance(&x, &y).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (points, k = 0.025))]
fn fitness_i1(points: Vec<Vec<f64>>, k: f64) -> PyResult<Vec<f64>> {
    let params = EpsParams::new(k).map_err(to_py)?;
    indicators::fitness_i1(&points, &params).map_err(to_py)
}

#[pyfunction]
fn fitness_i2(points: Vec<Vec<f64>>, archive_size: usize) -> PyResult<Vec<f64>> {
    indicators::fitness_i2(&points, archive_size).map_err(to_py)
}

/// Indices kept by the convergence-archive update.
#[pyfunction]
#[pyo3(signature = (points, capacity, normalized = false, k = 0.025))]
fn select_convergence(
    points: Vec<Vec<f64>>,
    capacity: usize,
    normalized: bool,
    k: f64,
) -> PyResult<Vec<usize>> {
    let params = EpsParams::new(k).map_err(to_py)?;
    if normalized {
        Ok(update_ca_normalized(&points, capacity, &params)
            .map_err(to_py)?
            .0)
    } else {
        update_ca(&points, capacity, &params).map_err(to_py)
    }
}

/// Indices kept by the diversity-archive update.
#[pyfunction]
#[pyo3(signature = (points, capacity, normalized = false))]
fn select_diversity(points: Vec<Vec<f64>>, capacity: usize, normalized: bool) -> PyResult<Vec<usize>> {
    update_da(&points, capacity, normalized).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (points, reference, samples = 1_000_000, seed = 1))]
fn hypervolume(
    py: Python<'_>,
    points: Vec<Vec<f64>>,
    reference: Vec<f64>,
    samples: usize,
    seed: u64,
) -> PyResult<f64> {
    let cfg = MetricConfig {
        hv_mc_samples: samples,
        hv_mc_seed: seed,
        ..MetricConfig::default()
    };
    py.detach(|| metrics::hypervolume(&points, &reference, &cfg))
        .map_err(to_py)
}

/// Hypervolume after scaling by 1.1 times the problem's nadir point.
#[pyfunction]
fn normalized_hv(py: Python<'_>, points: Vec<Vec<f64>>, problem: &PyProblem) -> PyResult<f64> {
    let spec = problem.spec.clone();
    py.detach(|| metrics::normalized_hv(&points, &spec, &MetricConfig::default()))
        .map_err(to_py)
}

#[pyfunction]
fn igd(points: Vec<Vec<f64>>, reference: Vec<Vec<f64>>) -> PyResult<f64> {
    metrics::igd(&points, &reference).map_err(to_py)
}

/// Two-sided rank-sum test; returns `(U, p, outcome)` with outcome one of
/// `"win"`, `"tie"`, `"loss"` from the first sample's side.
#[pyfunction]
#[pyo3(signature = (a, b, alpha = 0.05))]
fn wilcoxon_rank_sum(a: Vec<f64>, b: Vec<f64>, alpha: f64) -> PyResult<(f64, f64, String)> {
    let v = analysis::wilcoxon_rank_sum(&a, &b, alpha).map_err(to_py)?;
    let outcome = match v.outcome {
        analysis::Outcome::Win => "win",
        analysis::Outcome::Tie => "tie",
        analysis::Outcome::Loss => "loss",
    };
    Ok((v.statistic, v.p_value, outcome.to_string()))
}

/// Mean epsilon profile of `points` evenly spaced points on a
/// two-objective front; rows are `(t, f1, f2, mean_eps)`.
#[pyfunction]
#[pyo3(signature = (shape, points, normalized, scales = (1.0, 1.0)))]
fn mean_eps_profile(
    shape: &str,
    points: usize,
    normalized: bool,
    scales: (f64, f64),
) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let shape = FrontShape::new(parse::<ShapeKind>(shape)?, [scales.0, scales.1]).map_err(to_py)?;
    let samples = analysis::grid_similar_front(&shape, points).map_err(to_py)?;
    let rows = analysis::mean_eps_profile(&samples, normalized).map_err(to_py)?;
    Ok(rows.iter().map(|r| (r.t, r.f1, r.f2, r.mean_eps)).collect())
}

#[pymodule]
pub fn sra3_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProblem>()?;
    m.add_class::<PyRunOutcome>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(nondominated_indices, m)?)?;
    m.add_function(wrap_pyfunction!(eps_indicator, m)?)?;
    m.add_function(wrap_pyfunction!(sde_distance, m)?)?;
    m.add_function(wrap_pyfunction!(fitness_i1, m)?)?;
    m.add_function(wrap_pyfunction!(fitness_i2, m)?)?;
    m.add_function(wrap_pyfunction!(select_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(select_diversity, m)?)?;
    m.add_function(wrap_pyfunction!(hypervolume, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_hv, m)?)?;
    m.add_function(wrap_pyfunction!(igd, m)?)?;
    m.add_function(wrap_pyfunction!(wilcoxon_rank_sum, m)?)?;
    m.add_function(wrap_pyfunction!(mean_eps_profile, m)?)?;
    Ok(())
}
