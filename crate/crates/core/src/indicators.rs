//! Additive epsilon and shift-based density indicators, the fitness values
//! built on them, and min-max objective scaling.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{check_same_len, Error, Result};

/// Lower clamp for a single `-exp(.)` fitness term. Keeps fitness finite
/// when unnormalized objectives produce exponents beyond `f64` range.
pub const FITNESS_TERM_FLOOR: f64 = -1e300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsParams {
    /// Scaling factor of the exponential fitness, strictly positive.
    pub k: f64,
}

impl Default for EpsParams {
    fn default() -> Self {
        Self { k: 0.025 }
    }
}

impl EpsParams {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::config(format!("epsilon scaling k must be > 0, got {k}")));
        }
        Ok(Self { k })
    }
}

/// Smallest `eps` with `x_i - eps <= y_i` for every objective, i.e. the
/// translation `x` needs to weakly dominate `y`.
pub fn eps_indicator(x: &[f64], y: &[f64]) -> Result<f64> {
    check_same_len(x, y)?;
    Ok(eps_unchecked(x, y))
}

#[inline]
pub(crate) fn eps_unchecked(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Euclidean norm of the per-objective amounts by which `y` is worse
/// than `x`; objectives where `y` is not worse contribute zero.
pub fn sde_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    check_same_len(x, y)?;
    Ok(sde_unchecked(x, y))
}

#[inline]
pub(crate) fn sde_unchecked(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = if a < b { b - a } else { 0.0 };
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Dense row-major `n x n` table of a pairwise indicator; entry `(i, j)`
/// holds `I(x_i, x_j)`. The diagonal is zero and never read.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorMatrix {
    n: usize,
    values: Vec<f64>,
}

impl IndicatorMatrix {
    fn build<T: AsRef<[f64]>>(pop: &[T], f: impl Fn(&[f64], &[f64]) -> f64) -> Self {
        let n = pop.len();
        let mut values = vec![0.0; n * n];
        for (i, row) in values.chunks_exact_mut(n.max(1)).enumerate().take(n) {
            let xi = pop[i].as_ref();
            for (j, cell) in row.iter_mut().enumerate() {
                if i != j {
                    *cell = f(xi, pop[j].as_ref());
                }
            }
        }
        Self { n, values }
    }

    pub fn epsilon<T: AsRef<[f64]>>(pop: &[T]) -> Result<Self> {
        check_population(pop)?;
        Ok(Self::build(pop, eps_unchecked))
    }

    pub fn sde<T: AsRef<[f64]>>(pop: &[T]) -> Result<Self> {
        check_population(pop)?;
        Ok(Self::build(pop, sde_unchecked))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Largest `|I(x_i, x_j)|` over ordered pairs with `i != j`.
    pub fn max_abs_off_diagonal(&self) -> f64 {
        let mut c = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    c = c.max(self.get(i, j).abs());
                }
            }
        }
        c
    }
}

fn check_population<T: AsRef<[f64]>>(pop: &[T]) -> Result<()> {
    if let Some(first) = pop.first() {
        let m = first.as_ref().len();
        if pop.iter().any(|p| p.as_ref().len() != m) {
            return Err(Error::usage("population mixes objective counts"));
        }
    }
    Ok(())
}

/// `-exp(exponent)`, floored at [`FITNESS_TERM_FLOOR`]. The flag reports
/// whether the floor was hit.
#[inline]
pub(crate) fn fitness_term(exponent: f64) -> (f64, bool) {
    let e = exponent.exp();
    if e > -FITNESS_TERM_FLOOR {
        (FITNESS_TERM_FLOOR, true)
    } else {
        (-e, false)
    }
}

/// Epsilon fitness from a precomputed matrix:
/// `I1(x_j) = sum_{i != j} -exp(-I(x_i, x_j) / scale)`.
/// Returns the fitness values and the number of floored terms.
pub(crate) fn i1_from_matrix(matrix: &IndicatorMatrix, scale: f64) -> (Vec<f64>, usize) {
    let n = matrix.len();
    let mut fitness = vec![0.0; n];
    let mut clamped = 0;
    for i in 0..n {
        for (j, fit) in fitness.iter_mut().enumerate() {
            if i == j {
                continue;
            }
            let (term, hit) = fitness_term(-matrix.get(i, j) / scale);
            *fit += term;
            clamped += hit as usize;
        }
    }
    (fitness, clamped)
}

/// Epsilon-indicator fitness of every member; larger is better.
///
/// Terms whose exponential overflows are floored at
/// [`FITNESS_TERM_FLOOR`] and a warning is logged. The floor is monotone,
/// so ranking by fitness is preserved.
pub fn fitness_i1<T: AsRef<[f64]>>(pop: &[T], params: &EpsParams) -> Result<Vec<f64>> {
    if pop.is_empty() {
        return Err(Error::usage("fitness of an empty population"));
    }
    let matrix = IndicatorMatrix::epsilon(pop)?;
    let (fitness, clamped) = i1_from_matrix(&matrix, params.k);
    if clamped > 0 {
        warn!("{clamped} epsilon fitness terms overflowed and were floored at {FITNESS_TERM_FLOOR:e}");
    }
    Ok(fitness)
}

/// Summed shift-based distance to every other member divided by
/// `2N - 1`; larger is better. The divisor uses the archive capacity `N`
/// whatever the population size.
pub fn fitness_i2<T: AsRef<[f64]>>(pop: &[T], archive_capacity: usize) -> Result<Vec<f64>> {
    if archive_capacity == 0 {
        return Err(Error::usage("archive capacity must be positive"));
    }
    if pop.is_empty() {
        return Err(Error::usage("fitness of an empty population"));
    }
    let matrix = IndicatorMatrix::sde(pop)?;
    Ok(i2_from_matrix(&matrix, archive_capacity))
}

pub(crate) fn i2_from_matrix(matrix: &IndicatorMatrix, archive_capacity: usize) -> Vec<f64> {
    let denom = (2 * archive_capacity - 1) as f64;
    (0..matrix.len())
        .map(|i| {
            (0..matrix.len())
                .filter(|&j| j != i)
                .map(|j| matrix.get(i, j))
                .sum::<f64>()
                / denom
        })
        .collect()
}

/// Objectives rescaled to `[0, 1]` and the bounds used.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledObjectives {
    pub values: Vec<Vec<f64>>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// Min-max scaling per objective over the population. An objective that
/// is constant across the population maps to 0.
pub fn normalize_objectives<T: AsRef<[f64]>>(pop: &[T]) -> Result<ScaledObjectives> {
    if pop.is_empty() {
        return Err(Error::usage("cannot normalize an empty population"));
    }
    check_population(pop)?;
    let m = pop[0].as_ref().len();
    let mut lower = vec![f64::INFINITY; m];
    let mut upper = vec![f64::NEG_INFINITY; m];
    for p in pop {
        for (i, v) in p.as_ref().iter().enumerate() {
            lower[i] = lower[i].min(*v);
            upper[i] = upper[i].max(*v);
        }
    }
    let values = pop
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let range = upper[i] - lower[i];
                    if range > 0.0 {
                        ((v - lower[i]) / range).clamp(0.0, 1.0)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    Ok(ScaledObjectives {
        values,
        lower,
        upper,
    })
}

/// Largest absolute epsilon value over ordered pairs of distinct members.
pub fn max_abs_eps<T: AsRef<[f64]>>(pop: &[T]) -> Result<f64> {
    if pop.len() < 2 {
        return Err(Error::usage("max_abs_eps needs at least two members"));
    }
    Ok(IndicatorMatrix::epsilon(pop)?.max_abs_off_diagonal())
}
