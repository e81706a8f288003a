//! Hypervolume and inverted generational distance.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pareto::ObjectiveVector;
use crate::problems::ProblemSpec;
use crate::rng::RandomSource;

/// Objective counts up to this value use the exact hypervolume.
pub const EXACT_HV_MAX_OBJECTIVES: usize = 3;

const MC_CHUNK: usize = 1 << 15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricConfig {
    /// Nadir multiplier used to normalize before the hypervolume.
    pub hv_nadir_scale: f64,
    /// Monte Carlo samples for hypervolumes above three objectives.
    pub hv_mc_samples: usize,
    /// Seed of the Monte Carlo sampler, independent of optimizer seeds.
    pub hv_mc_seed: u64,
    /// Size of the sampled true-front reference set for IGD.
    pub igd_reference_size: usize,
    /// Seed used to sample the reference set.
    pub igd_reference_seed: u64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            hv_nadir_scale: 1.1,
            hv_mc_samples: 1_000_000,
            hv_mc_seed: 0x5e_ed0f_4e17,
            igd_reference_size: 10_000,
            igd_reference_seed: 0x1_6d,
        }
    }
}

impl MetricConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hv_mc_samples == 0 {
            return Err(Error::config("hv_mc_samples must be at least 1"));
        }
        if !(self.hv_nadir_scale > 1.0) {
            return Err(Error::config("hv_nadir_scale must exceed 1"));
        }
        if self.igd_reference_size == 0 {
            return Err(Error::config("igd_reference_size must be at least 1"));
        }
        Ok(())
    }
}

fn check_dims<T: AsRef<[f64]>>(points: &[T], m: usize) -> Result<()> {
    if points.iter().any(|p| p.as_ref().len() != m) {
        return Err(Error::usage("points and reference differ in objective count"));
    }
    Ok(())
}

/// Points strictly better than `reference` in every objective; the rest
/// enclose no volume.
fn contributing<T: AsRef<[f64]>>(points: &[T], reference: &[f64]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| p.as_ref())
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a < r))
        .map(|p| p.to_vec())
        .collect()
}

/// Volume dominated by `points` and bounded by `reference`. Exact for up
/// to three objectives, Monte Carlo (seeded by `cfg.hv_mc_seed`) above.
pub fn hypervolume<T: AsRef<[f64]>>(
    points: &[T],
    reference: &[f64],
    cfg: &MetricConfig,
) -> Result<f64> {
    if reference.len() <= EXACT_HV_MAX_OBJECTIVES {
        exact_hypervolume(points, reference)
    } else {
        monte_carlo_hypervolume(points, reference, cfg.hv_mc_samples, cfg.hv_mc_seed)
    }
}

/// Exact hypervolume by recursive slicing along the last objective.
/// Exponential in the objective count; intended for low dimensions.
pub fn exact_hypervolume<T: AsRef<[f64]>>(points: &[T], reference: &[f64]) -> Result<f64> {
    check_dims(points, reference.len())?;
    let pts = contributing(points, reference);
    if pts.is_empty() {
        return Ok(0.0);
    }
    Ok(slice_volume(pts, reference))
}

fn slice_volume(mut pts: Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    let d = reference.len();
    if d == 1 {
        return pts
            .iter()
            .map(|p| reference[0] - p[0])
            .fold(0.0, f64::max);
    }
    if d == 2 {
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        let mut volume = 0.0;
        let mut best_y = reference[1];
        for p in &pts {
            if p[1] < best_y {
                volume += (reference[0] - p[0]) * (best_y - p[1]);
                best_y = p[1];
            }
        }
        return volume;
    }
    pts.sort_by(|a, b| a[d - 1].total_cmp(&b[d - 1]));
    let mut volume = 0.0;
    for i in 0..pts.len() {
        let lower = pts[i][d - 1];
        let upper = pts.get(i + 1).map_or(reference[d - 1], |p| p[d - 1]);
        if upper <= lower {
            continue;
        }
        let slab: Vec<Vec<f64>> = pts[..=i].iter().map(|p| p[..d - 1].to_vec()).collect();
        volume += slice_volume(slab, &reference[..d - 1]) * (upper - lower);
    }
    volume
}

/// Monte Carlo hypervolume: uniform samples in the box spanned by the
/// component-wise minimum of the contributing points and `reference`,
/// scaled by the box volume. Chunks use independent substreams, so the
/// estimate does not depend on thread scheduling.
pub fn monte_carlo_hypervolume<T: AsRef<[f64]>>(
    points: &[T],
    reference: &[f64],
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::usage("Monte Carlo hypervolume needs samples"));
    }
    let m = reference.len();
    check_dims(points, m)?;
    let mut pts = contributing(points, reference);
    if pts.is_empty() {
        return Ok(0.0);
    }
    // points closer to the ideal corner tend to cover more samples
    pts.sort_by(|a, b| a.iter().sum::<f64>().total_cmp(&b.iter().sum::<f64>()));
    let low: Vec<f64> = (0..m)
        .map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_volume: f64 = low.iter().zip(reference).map(|(l, r)| r - l).product();
    let flat: Vec<f64> = pts.concat();

    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RandomSource::substream(seed, c as u64);
            let n = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut s = vec![0.0; m];
            let mut hits = 0;
            for _ in 0..n {
                for i in 0..m {
                    s[i] = rng.uniform_in(low[i], reference[i]);
                }
                if flat
                    .chunks_exact(m)
                    .any(|p| p.iter().zip(&s).all(|(a, b)| a <= b))
                {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(box_volume * hits as f64 / samples as f64)
}

/// Hypervolume after dividing each objective by `hv_nadir_scale` times the
/// problem's analytic nadir, against the all-ones reference point.
pub fn normalized_hv<T: AsRef<[f64]>>(
    points: &[T],
    problem: &ProblemSpec,
    cfg: &MetricConfig,
) -> Result<f64> {
    let nadir = problem.analytic_nadir();
    check_dims(points, nadir.len())?;
    let scaled: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .zip(nadir.iter())
                .map(|(v, z)| v / (cfg.hv_nadir_scale * z))
                .collect()
        })
        .collect();
    let reference = vec![1.0; nadir.len()];
    hypervolume(&scaled, &reference, cfg)
}

/// Mean distance from each reference point to its nearest member of
/// `points`, after min-max scaling both sets by the reference set's
/// per-objective bounds (a constant objective maps to 0).
pub fn igd<P: AsRef<[f64]>, R: AsRef<[f64]> + Sync>(points: &[P], reference: &[R]) -> Result<f64> {
    if points.is_empty() || reference.is_empty() {
        return Err(Error::usage("IGD needs non-empty point and reference sets"));
    }
    let m = reference[0].as_ref().len();
    check_dims(reference, m)?;
    check_dims(points, m)?;
    let lower: Vec<f64> = (0..m)
        .map(|i| reference.iter().map(|r| r.as_ref()[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let upper: Vec<f64> = (0..m)
        .map(|i| reference.iter().map(|r| r.as_ref()[i]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let scale = |p: &[f64]| -> Vec<f64> {
        p.iter()
            .enumerate()
            .map(|(i, v)| {
                let range = upper[i] - lower[i];
                if range > 0.0 {
                    (v - lower[i]) / range
                } else {
                    0.0
                }
            })
            .collect()
    };
    let ps: Vec<f64> = points.iter().flat_map(|p| scale(p.as_ref())).collect();
    // collected in order and summed sequentially so the result does not
    // depend on thread scheduling
    let nearest: Vec<f64> = reference
        .par_iter()
        .map(|r| {
            let r = scale(r.as_ref());
            ps.chunks_exact(m)
                .map(|p| p.iter().zip(&r).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .collect();
    Ok(nearest.iter().sum::<f64>() / reference.len() as f64)
}

/// Samples and caches the IGD reference set of `problem`.
pub fn reference_set(problem: &ProblemSpec, cfg: &MetricConfig) -> Result<Vec<ObjectiveVector>> {
    let mut rng = RandomSource::new(cfg.igd_reference_seed);
    problem.sample_reference_front(cfg.igd_reference_size, &mut rng)
}
