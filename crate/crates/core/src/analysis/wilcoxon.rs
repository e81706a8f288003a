//! Two-sided Wilcoxon rank-sum (Mann-Whitney) test.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Samples no larger than this (both sides, no ties) use the exact null
/// distribution; anything else the normal approximation.
pub const EXACT_MAX_SAMPLE: usize = 10;

/// Significance level used throughout the comparisons.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// Outcome from the perspective of the first sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// First sample significantly larger.
    Win,
    Tie,
    /// First sample significantly smaller.
    Loss,
}

impl Outcome {
    pub fn flipped(self) -> Self {
        match self {
            Outcome::Win => Outcome::Loss,
            Outcome::Tie => Outcome::Tie,
            Outcome::Loss => Outcome::Win,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    /// Mann-Whitney `U` of the first sample.
    pub statistic: f64,
    pub p_value: f64,
    pub outcome: Outcome,
}

/// Midranks (1-based) of `values`; ties share the mean of their ranks.
/// Also returns the tie-group sizes.
pub fn midranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j + 2) as f64 / 2.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        ties.push(j - i + 1);
        i = j + 1;
    }
    (ranks, ties)
}

/// Number of arrangements giving each `U` value under the null, for
/// sample sizes `n1`, `n2`. Index is `U`.
fn u_distribution(n1: usize, n2: usize) -> Vec<f64> {
    // counts[a][b] over u, built up one sample size at a time
    let max_u = n1 * n2;
    let mut table = vec![vec![Vec::<f64>::new(); n2 + 1]; n1 + 1];
    for a in 0..=n1 {
        for b in 0..=n2 {
            let mut counts = vec![0.0; a * b + 1];
            if a == 0 || b == 0 {
                counts[0] = 1.0;
            } else {
                // the largest value belongs to sample 1 (adds b to U) or
                // to sample 2 (adds nothing)
                for (u, c) in table[a - 1][b].iter().enumerate() {
                    counts[u + b] += c;
                }
                for (u, c) in table[a][b - 1].iter().enumerate() {
                    counts[u] += c;
                }
            }
            table[a][b] = counts;
        }
    }
    let out = std::mem::take(&mut table[n1][n2]);
    debug_assert_eq!(out.len(), max_u + 1);
    out
}

/// Two-sided rank-sum test of `a` against `b` at level `alpha`.
///
/// The outcome is a win (loss) when `p < alpha` and `a` ranks higher
/// (lower) on average.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<ComparisonVerdict> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::usage("rank-sum test needs at least 2 values per sample"));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::usage("rank-sum test on non-finite values"));
    }
    let (n1, n2) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let r1: f64 = ranks[..n1].iter().sum();
    let u1 = r1 - (n1 * (n1 + 1)) as f64 / 2.0;
    let mean_u = (n1 * n2) as f64 / 2.0;
    let has_ties = ties.iter().any(|&t| t > 1);

    let p_value = if n1 <= EXACT_MAX_SAMPLE && n2 <= EXACT_MAX_SAMPLE && !has_ties {
        let dist = u_distribution(n1, n2);
        let total: f64 = dist.iter().sum();
        let u = u1.round() as usize;
        let lower: f64 = dist[..=u].iter().sum::<f64>() / total;
        let upper: f64 = dist[u..].iter().sum::<f64>() / total;
        (2.0 * lower.min(upper)).min(1.0)
    } else {
        let n = (n1 + n2) as f64;
        let tie_term: f64 = ties
            .iter()
            .map(|&t| {
                let t = t as f64;
                t * t * t - t
            })
            .sum::<f64>()
            / (n * (n - 1.0));
        let var = (n1 * n2) as f64 / 12.0 * ((n + 1.0) - tie_term);
        if var <= 0.0 {
            1.0
        } else {
            let z = ((u1 - mean_u).abs() - 0.5).max(0.0) / var.sqrt();
            let normal = Normal::standard();
            (2.0 * (1.0 - normal.cdf(z))).min(1.0)
        }
    };

    let outcome = if p_value < alpha {
        if u1 > mean_u {
            Outcome::Win
        } else if u1 < mean_u {
            Outcome::Loss
        } else {
            Outcome::Tie
        }
    } else {
        Outcome::Tie
    };
    Ok(ComparisonVerdict {
        statistic: u1,
        p_value,
        outcome,
    })
}
