//! Environmental selection for the convergence archive (epsilon fitness)
//! and the diversity archive (shift-based density fitness).
//!
//! Every function takes the merged population (archive plus offspring)
//! and returns the indices of the survivors in ascending order.

use log::warn;

use crate::error::{Error, Result};
use crate::indicators::{
    fitness_term, i1_from_matrix, i2_from_matrix, normalize_objectives, EpsParams,
    IndicatorMatrix, FITNESS_TERM_FLOOR,
};

/// Bookkeeping from one normalized convergence-archive update.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RemovalStats {
    /// Individuals removed one by one.
    pub removals: usize,
    /// Fitness values repaired after removals, summed over all removals.
    pub fitness_updates: usize,
}

fn check_merged(len: usize, capacity: usize) -> Result<()> {
    if capacity == 0 {
        return Err(Error::usage("archive capacity must be positive"));
    }
    if len < capacity {
        return Err(Error::usage(format!(
            "cannot select {capacity} survivors from {len} individuals"
        )));
    }
    Ok(())
}

/// Indices of the `n` largest fitness values, ties going to the lower
/// index; result sorted ascending. A single sort, `O(len log len)`.
pub fn select_best(fitness: &[f64], n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fitness.len()).collect();
    order.sort_by(|&a, &b| fitness[b].total_cmp(&fitness[a]).then(a.cmp(&b)));
    order.truncate(n);
    order.sort_unstable();
    order
}

/// Convergence-archive update on raw objectives: rank by epsilon fitness
/// once and keep the best `capacity`.
pub fn update_ca<T: AsRef<[f64]>>(
    merged: &[T],
    capacity: usize,
    params: &EpsParams,
) -> Result<Vec<usize>> {
    Ok(update_ca_with_fitness(merged, capacity, params)?.0)
}

pub(crate) fn update_ca_with_fitness<T: AsRef<[f64]>>(
    merged: &[T],
    capacity: usize,
    params: &EpsParams,
) -> Result<(Vec<usize>, Vec<f64>, usize)> {
    check_merged(merged.len(), capacity)?;
    let matrix = IndicatorMatrix::epsilon(merged)?;
    let (fitness, clamped) = i1_from_matrix(&matrix, params.k);
    Ok((select_best(&fitness, capacity), fitness, clamped))
}

/// Convergence-archive update on min-max scaled objectives.
///
/// Objectives are scaled to `[0, 1]` over `merged`, epsilon values are
/// divided by their largest magnitude `c`, and the worst individual is
/// removed repeatedly, adding its fitness contribution back to every
/// survivor, until `capacity` remain. When `c` is zero every exponent is
/// zero. Ties on the worst fitness remove the highest index.
pub fn update_ca_normalized<T: AsRef<[f64]>>(
    merged: &[T],
    capacity: usize,
    params: &EpsParams,
) -> Result<(Vec<usize>, RemovalStats)> {
    let (survivors, _, stats) = update_ca_normalized_with_fitness(merged, capacity, params)?;
    Ok((survivors, stats))
}

pub(crate) fn update_ca_normalized_with_fitness<T: AsRef<[f64]>>(
    merged: &[T],
    capacity: usize,
    params: &EpsParams,
) -> Result<(Vec<usize>, Vec<f64>, RemovalStats)> {
    check_merged(merged.len(), capacity)?;
    let scaled = normalize_objectives(merged)?;
    let matrix = IndicatorMatrix::epsilon(&scaled.values)?;
    let c = matrix.max_abs_off_diagonal();
    let exponent = |i: usize, j: usize| {
        if c > 0.0 {
            -matrix.get(i, j) / (c * params.k)
        } else {
            0.0
        }
    };

    let n = merged.len();
    let (mut fitness, clamped) = if c > 0.0 {
        i1_from_matrix(&matrix, c * params.k)
    } else {
        (vec![-((n - 1) as f64); n], 0)
    };
    if clamped > 0 {
        warn!("{clamped} normalized epsilon terms floored at {FITNESS_TERM_FLOOR:e}");
    }

    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut stats = RemovalStats::default();
    while remaining > capacity {
        let mut worst = usize::MAX;
        for i in 0..n {
            if alive[i] && (worst == usize::MAX || fitness[i] <= fitness[worst]) {
                worst = i;
            }
        }
        alive[worst] = false;
        remaining -= 1;
        stats.removals += 1;
        for j in 0..n {
            if alive[j] {
                let (term, _) = fitness_term(exponent(worst, j));
                fitness[j] -= term;
                stats.fitness_updates += 1;
            }
        }
    }
    let survivors = (0..n).filter(|&i| alive[i]).collect();
    Ok((survivors, fitness, stats))
}

/// Diversity-archive update: rank by shift-based density fitness with
/// divisor `2 * capacity - 1` and keep the best `capacity`. With
/// `normalize`, objectives are first min-max scaled over `merged`.
pub fn update_da<T: AsRef<[f64]>>(
    merged: &[T],
    capacity: usize,
    normalize: bool,
) -> Result<Vec<usize>> {
    Ok(update_da_with_fitness(merged, capacity, normalize)?.0)
}

pub(crate) fn update_da_with_fitness<T: AsRef<[f64]>>(
    merged: &[T],
    capacity: usize,
    normalize: bool,
) -> Result<(Vec<usize>, Vec<f64>)> {
    check_merged(merged.len(), capacity)?;
    let matrix = if normalize {
        IndicatorMatrix::sde(&normalize_objectives(merged)?.values)?
    } else {
        IndicatorMatrix::sde(merged)?
    };
    let fitness = i2_from_matrix(&matrix, capacity);
    Ok((select_best(&fitness, capacity), fitness))
}
