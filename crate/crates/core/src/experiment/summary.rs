//! Per-cell means and pairwise rank-sum verdicts between variants.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::io::write_atomic;
use super::{ProblemCell, RunResult};
use crate::analysis::{wilcoxon_rank_sum, Outcome};
use crate::error::{Error, Result};
use crate::sra3::NormalizationVariant;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: ProblemCell,
    pub variant: NormalizationVariant,
    pub runs: usize,
    pub hv_mean: f64,
    pub hv_std: f64,
    pub igd_mean: f64,
    pub igd_std: f64,
    /// Highest mean HV among the variants of this problem.
    pub best_hv: bool,
    /// Lowest mean IGD among the variants of this problem.
    pub best_igd: bool,
}

/// Verdicts of `a` against `b`; `Win` means `a` is significantly better
/// (higher HV, lower IGD).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub cell: ProblemCell,
    pub a: NormalizationVariant,
    pub b: NormalizationVariant,
    pub hv_p: f64,
    pub hv: Outcome,
    pub igd_p: f64,
    pub igd: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub cells: Vec<CellSummary>,
    pub comparisons: Vec<PairwiseComparison>,
}

/// Table symbol of an outcome.
pub fn symbol(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Win => "+",
        Outcome::Tie => "=",
        Outcome::Loss => "-",
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups runs by cell and variant, then compares every pair of variants
/// within a cell at level `alpha`.
/// HV and IGD samples of one cell and variant.
type HvIgd = (Vec<f64>, Vec<f64>);

pub fn summarize(results: &[RunResult], alpha: f64) -> Result<Summary> {
    if results.is_empty() {
        return Err(Error::usage("no run results to summarize"));
    }
    let mut groups: BTreeMap<ProblemCell, BTreeMap<NormalizationVariant, HvIgd>> =
        BTreeMap::new();
    for r in results {
        let entry = groups
            .entry(r.cell())
            .or_default()
            .entry(r.variant)
            .or_default();
        entry.0.push(r.hv);
        entry.1.push(r.igd);
    }

    let mut cells = Vec::new();
    let mut comparisons = Vec::new();
    for (cell, variants) in &groups {
        let start = cells.len();
        for (&variant, (hv, igd)) in variants {
            let (hv_mean, hv_std) = mean_std(hv);
            let (igd_mean, igd_std) = mean_std(igd);
            cells.push(CellSummary {
                cell: *cell,
                variant,
                runs: hv.len(),
                hv_mean,
                hv_std,
                igd_mean,
                igd_std,
                best_hv: false,
                best_igd: false,
            });
        }
        let block = &mut cells[start..];
        let best_hv = block.iter().map(|c| c.hv_mean).fold(f64::NEG_INFINITY, f64::max);
        let best_igd = block.iter().map(|c| c.igd_mean).fold(f64::INFINITY, f64::min);
        for c in block.iter_mut() {
            c.best_hv = c.hv_mean == best_hv;
            c.best_igd = c.igd_mean == best_igd;
        }

        let list: Vec<_> = variants.iter().collect();
        for (i, (&a, (hv_a, igd_a))) in list.iter().enumerate() {
            for (&b, (hv_b, igd_b)) in &list[i + 1..] {
                if hv_a.len() < 2 || hv_b.len() < 2 {
                    return Err(Error::usage(format!(
                        "comparing {a} and {b} on {}_m{} needs at least 2 runs each",
                        cell.problem, cell.m
                    )));
                }
                let hv = wilcoxon_rank_sum(hv_a, hv_b, alpha)?;
                let igd = wilcoxon_rank_sum(igd_a, igd_b, alpha)?;
                comparisons.push(PairwiseComparison {
                    cell: *cell,
                    a,
                    b,
                    hv_p: hv.p_value,
                    hv: hv.outcome,
                    igd_p: igd.p_value,
                    igd: igd.outcome.flipped(),
                });
            }
        }
    }
    Ok(Summary { cells, comparisons })
}

/// Writes `summary.csv` (per-cell means) and `comparisons.csv` (verdicts)
/// into `dir`.
pub fn write_summary_csv(summary: &Summary, dir: &Path) -> Result<()> {
    write_atomic(&dir.join("summary.csv"), |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "problem", "m", "variant", "runs", "hv_mean", "hv_std", "igd_mean", "igd_std",
            "best_hv", "best_igd",
        ])?;
        for c in &summary.cells {
            out.write_record([
                c.cell.problem.to_string(),
                c.cell.m.to_string(),
                c.variant.to_string(),
                c.runs.to_string(),
                c.hv_mean.to_string(),
                c.hv_std.to_string(),
                c.igd_mean.to_string(),
                c.igd_std.to_string(),
                c.best_hv.to_string(),
                c.best_igd.to_string(),
            ])?;
        }
        out.flush().map_err(|e| Error::io("summary.csv", e))
    })?;
    write_atomic(&dir.join("comparisons.csv"), |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["problem", "m", "a", "b", "hv_p", "hv", "igd_p", "igd"])?;
        for c in &summary.comparisons {
            out.write_record([
                c.cell.problem.to_string(),
                c.cell.m.to_string(),
                c.a.to_string(),
                c.b.to_string(),
                c.hv_p.to_string(),
                symbol(c.hv).to_string(),
                c.igd_p.to_string(),
                symbol(c.igd).to_string(),
            ])?;
        }
        out.flush().map_err(|e| Error::io("comparisons.csv", e))
    })
}

/// Fixed-width text rendering; `*` marks the best mean per problem.
pub fn render_summary_table(summary: &Summary) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<8} {:>3} {:<5} {:>4}  {:>22}  {:>22}",
        "problem", "m", "var", "runs", "HV mean (std)", "IGD mean (std)"
    );
    for c in &summary.cells {
        let mark = |b: bool| if b { '*' } else { ' ' };
        let _ = writeln!(
            s,
            "{:<8} {:>3} {:<5} {:>4}  {:.4e} ({:.2e}){}  {:.4e} ({:.2e}){}",
            c.cell.problem.to_string(),
            c.cell.m,
            c.variant.to_string(),
            c.runs,
            c.hv_mean,
            c.hv_std,
            mark(c.best_hv),
            c.igd_mean,
            c.igd_std,
            mark(c.best_igd),
        );
    }
    if !summary.comparisons.is_empty() {
        let _ = writeln!(s, "\n{:<8} {:>3} {:<11} {:>3} {:>4}", "problem", "m", "a vs b", "HV", "IGD");
        for c in &summary.comparisons {
            let _ = writeln!(
                s,
                "{:<8} {:>3} {:<11} {:>3} {:>4}",
                c.cell.problem.to_string(),
                c.cell.m,
                format!("{} vs {}", c.a, c.b),
                symbol(c.hv),
                symbol(c.igd),
            );
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::MetricConfig;
    use crate::problems::ProblemName;

    fn record(variant: NormalizationVariant, run_index: usize, hv: f64, igd: f64) -> RunResult {
        RunResult {
            problem: ProblemName::Dtlz2,
            m: 5,
            variant,
            run_index,
            seed: run_index as u64,
            archive_size: 210,
            max_evaluations: 1000,
            evaluations: 1000,
            generations: 3,
            metrics: MetricConfig::default(),
            hv,
            igd,
            front: vec![],
        }
    }

    #[test]
    fn empty_results_are_usage_error() {
        assert!(matches!(summarize(&[], 0.05), Err(Error::Usage(_))));
    }

    #[test]
    fn identical_sets_tie() {
        let mut rs = Vec::new();
        for (i, v) in [0.3, 0.5, 0.1, 0.9].into_iter().enumerate() {
            rs.push(record(NormalizationVariant::None, i, v, v));
            rs.push(record(NormalizationVariant::Both, i, v, v));
        }
        let s = summarize(&rs, 0.05).unwrap();
        assert_eq!(s.comparisons.len(), 1);
        assert_eq!(s.comparisons[0].hv, Outcome::Tie);
        assert_eq!(s.comparisons[0].igd, Outcome::Tie);
    }

    #[test]
    fn means_are_exact() {
        let rs = vec![
            record(NormalizationVariant::EpsOnly, 0, 0.25, 1.0),
            record(NormalizationVariant::EpsOnly, 1, 0.75, 3.0),
        ];
        let s = summarize(&rs, 0.05).unwrap();
        assert_eq!(s.cells[0].hv_mean, 0.5);
        assert_eq!(s.cells[0].igd_mean, 2.0);
        assert!(s.cells[0].best_hv && s.cells[0].best_igd);
    }

    #[test]
    fn separated_samples_win_on_both_metrics() {
        let mut rs = Vec::new();
        for i in 0..20 {
            let x = i as f64 * 0.001;
            // variant none: higher HV and lower IGD
            rs.push(record(NormalizationVariant::None, i, 0.8 + x, 0.1 + x));
            rs.push(record(NormalizationVariant::Both, i, 0.5 + x, 0.4 + x));
        }
        let s = summarize(&rs, 0.05).unwrap();
        let c = &s.comparisons[0];
        assert_eq!((c.a, c.b), (NormalizationVariant::None, NormalizationVariant::Both));
        assert_eq!(symbol(c.hv), "+");
        assert_eq!(symbol(c.igd), "+");
        let table = render_summary_table(&s);
        assert!(table.contains("none vs both"));
    }

    #[test]
    fn single_run_cells_cannot_be_compared() {
        let rs = vec![
            record(NormalizationVariant::None, 0, 0.5, 0.5),
            record(NormalizationVariant::Both, 0, 0.5, 0.5),
        ];
        assert!(matches!(summarize(&rs, 0.05), Err(Error::Usage(_))));
    }
}
