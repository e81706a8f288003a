//! Independent reference implementations used to check the library.
//!
//! Each oracle is written from the defining formula, in the most direct
//! form available, without sharing code with the crate.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha20Rng, count: usize, m: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..m).map(|_| rng.random_range(lo..hi)).collect())
        .collect()
}

/// `a` Pareto-dominates `b` (minimization), by definition.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for i in 0..a.len() {
        if a[i] > b[i] {
            return false;
        }
        if a[i] < b[i] {
            strictly = true;
        }
    }
    strictly
}

pub fn nondominated(pop: &[Vec<f64>]) -> Vec<usize> {
    (0..pop.len())
        .filter(|&i| !(0..pop.len()).any(|j| j != i && dominates(&pop[j], &pop[i])))
        .collect()
}

/// Smallest shift `e` such that `x - e` weakly dominates `y`, found by
/// bisection on the predicate rather than by the closed form.
pub fn eps_bisection(x: &[f64], y: &[f64]) -> f64 {
    let weakly = |e: f64| x.iter().zip(y).all(|(a, b)| a - e <= *b);
    let (mut lo, mut hi) = (-1e3, 1e3);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if weakly(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn eps(x: &[f64], y: &[f64]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..x.len() {
        if x[i] - y[i] > best {
            best = x[i] - y[i];
        }
    }
    best
}

fn sde(x: &[f64], y: &[f64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..x.len() {
        if y[i] > x[i] {
            sum += (y[i] - x[i]) * (y[i] - x[i]);
        }
    }
    sum.sqrt()
}

/// `sum over y != x of -exp(-I(y, x) / scale)`.
pub fn i1_brute(pop: &[Vec<f64>], scale: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for j in 0..pop.len() {
        let mut f = 0.0;
        for i in 0..pop.len() {
            if i != j {
                f -= (-eps(&pop[i], &pop[j]) / scale).exp();
            }
        }
        out.push(f);
    }
    out
}

pub fn i2_brute(pop: &[Vec<f64>], capacity: usize) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..pop.len() {
        let mut f = 0.0;
        for j in 0..pop.len() {
            if i != j {
                f += sde(&pop[i], &pop[j]);
            }
        }
        out.push(f / (2 * capacity - 1) as f64);
    }
    out
}

/// Min-max scaling over the population; constant objectives become 0.
pub fn minmax(pop: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = pop[0].len();
    let mut out = pop.to_vec();
    for i in 0..m {
        let lo = pop.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
        let hi = pop.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
        for (o, p) in out.iter_mut().zip(pop) {
            o[i] = if hi > lo { (p[i] - lo) / (hi - lo) } else { 0.0 };
        }
    }
    out
}

/// Indices of the `n` largest values, ties to the lower index, ascending.
pub fn top_n(fitness: &[f64], n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..fitness.len()).collect();
    // stable sort keeps lower indices first among equal values
    idx.sort_by(|&a, &b| fitness[b].partial_cmp(&fitness[a]).unwrap());
    let mut keep = idx[..n].to_vec();
    keep.sort();
    keep
}

pub fn update_ca_oracle(pop: &[Vec<f64>], n: usize, k: f64) -> Vec<usize> {
    top_n(&i1_brute(pop, k), n)
}

pub fn update_da_oracle(pop: &[Vec<f64>], n: usize, normalize: bool) -> Vec<usize> {
    let p = if normalize { minmax(pop) } else { pop.to_vec() };
    top_n(&i2_brute(&p, n), n)
}

/// Normalized convergence update, recomputing every fitness value from
/// scratch after each removal. Returns survivors and the removal count.
pub fn update_ca_normalized_oracle(pop: &[Vec<f64>], n: usize, k: f64) -> (Vec<usize>, usize) {
    let scaled = minmax(pop);
    let mut c: f64 = 0.0;
    for i in 0..pop.len() {
        for j in 0..pop.len() {
            if i != j {
                c = c.max(eps(&scaled[i], &scaled[j]).abs());
            }
        }
    }
    let mut alive: Vec<usize> = (0..pop.len()).collect();
    let mut removals = 0;
    while alive.len() > n {
        let fitness: Vec<f64> = alive
            .iter()
            .map(|&j| {
                alive
                    .iter()
                    .filter(|&&i| i != j)
                    .map(|&i| {
                        let e = if c > 0.0 { -eps(&scaled[i], &scaled[j]) / (c * k) } else { 0.0 };
                        -e.exp()
                    })
                    .sum::<f64>()
            })
            .collect();
        let worst_value = fitness.iter().cloned().fold(f64::INFINITY, f64::min);
        // highest index among the worst
        let pos = (0..alive.len()).rev().find(|&p| fitness[p] == worst_value).unwrap();
        alive.remove(pos);
        removals += 1;
    }
    (alive, removals)
}

/// Hypervolume by inclusion-exclusion over all subsets (small inputs).
pub fn hv_inclusion_exclusion(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let n = points.len();
    assert!(n <= 16);
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut corner = vec![f64::NEG_INFINITY; reference.len()];
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for d in 0..reference.len() {
                    corner[d] = corner[d].max(p[d]);
                }
            }
        }
        let vol: f64 = corner
            .iter()
            .zip(reference)
            .map(|(c, r)| (r - c).max(0.0))
            .product();
        if mask.count_ones() % 2 == 1 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    total
}

/// IGD with both sets scaled by the reference set's bounds.
pub fn igd_brute(points: &[Vec<f64>], reference: &[Vec<f64>]) -> f64 {
    let m = reference[0].len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for r in reference {
        for i in 0..m {
            lo[i] = lo[i].min(r[i]);
            hi[i] = hi[i].max(r[i]);
        }
    }
    let scale = |p: &Vec<f64>| -> Vec<f64> {
        (0..m)
            .map(|i| if hi[i] > lo[i] { (p[i] - lo[i]) / (hi[i] - lo[i]) } else { 0.0 })
            .collect()
    };
    let ps: Vec<Vec<f64>> = points.iter().map(scale).collect();
    let mut total = 0.0;
    for r in reference {
        let r = scale(r);
        let mut best = f64::INFINITY;
        for p in &ps {
            let mut d2 = 0.0;
            for i in 0..m {
                d2 += (p[i] - r[i]) * (p[i] - r[i]);
            }
            best = best.min(d2);
        }
        total += best.sqrt();
    }
    total / reference.len() as f64
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    cov / var
}
