//! DTLZ1-4 and WFG1-9 benchmark problems: evaluators, bounds, nadir
//! points and reference-front sampling.

mod dtlz;
mod wfg;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pareto::{nondominated_indices_unchecked, ObjectiveVector};
use crate::rng::RandomSource;

pub use wfg::concave_front_residual;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ProblemName {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Wfg1,
    Wfg2,
    Wfg3,
    Wfg4,
    Wfg5,
    Wfg6,
    Wfg7,
    Wfg8,
    Wfg9,
}

impl ProblemName {
    pub const ALL: [ProblemName; 13] = [
        ProblemName::Dtlz1,
        ProblemName::Dtlz2,
        ProblemName::Dtlz3,
        ProblemName::Dtlz4,
        ProblemName::Wfg1,
        ProblemName::Wfg2,
        ProblemName::Wfg3,
        ProblemName::Wfg4,
        ProblemName::Wfg5,
        ProblemName::Wfg6,
        ProblemName::Wfg7,
        ProblemName::Wfg8,
        ProblemName::Wfg9,
    ];

    pub fn is_dtlz(self) -> bool {
        matches!(
            self,
            ProblemName::Dtlz1 | ProblemName::Dtlz2 | ProblemName::Dtlz3 | ProblemName::Dtlz4
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemName::Dtlz1 => "DTLZ1",
            ProblemName::Dtlz2 => "DTLZ2",
            ProblemName::Dtlz3 => "DTLZ3",
            ProblemName::Dtlz4 => "DTLZ4",
            ProblemName::Wfg1 => "WFG1",
            ProblemName::Wfg2 => "WFG2",
            ProblemName::Wfg3 => "WFG3",
            ProblemName::Wfg4 => "WFG4",
            ProblemName::Wfg5 => "WFG5",
            ProblemName::Wfg6 => "WFG6",
            ProblemName::Wfg7 => "WFG7",
            ProblemName::Wfg8 => "WFG8",
            ProblemName::Wfg9 => "WFG9",
        }
    }
}

impl fmt::Display for ProblemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        ProblemName::ALL
            .into_iter()
            .find(|p| p.as_str() == upper)
            .ok_or_else(|| Error::config(format!("unknown problem {s:?}")))
    }
}

/// Geometry of the true Pareto front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrontKind {
    /// `sum f_i = 0.5` (DTLZ1).
    Simplex,
    /// `sum f_i^2 = 1` (DTLZ2-4).
    Hypersphere,
    /// Scaled WFG shape; points come from the optimal-distance construction.
    WfgShape,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontDescriptor {
    pub kind: FrontKind,
    pub nadir: ObjectiveVector,
}

/// Per-variable box constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::usage("bound vectors differ in length"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u)) {
            return Err(Error::usage("lower bound exceeds upper bound"));
        }
        Ok(Self { lower, upper })
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.len()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *l <= *v && *v <= *u)
    }

    pub fn sample(&self, rng: &mut RandomSource) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| rng.uniform_in(*l, *u))
            .collect()
    }
}

/// A benchmark instance under the standard configuration:
/// DTLZ uses `n = m + k - 1` with `k = 5` (DTLZ1) or `k = 10` (DTLZ2-4);
/// WFG uses `k = m - 1`, `l = 10`, `n = k + l` and bounds `[0, 2i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub name: ProblemName,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub bounds: Bounds,
}

/// Distance-related WFG parameter count.
pub const WFG_DISTANCE_PARAMS: usize = 10;

impl ProblemSpec {
    pub fn new(name: ProblemName, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::config(format!(
                "{name} needs at least 2 objectives, got {m}"
            )));
        }
        let (n, k, l, lower, upper) = if name.is_dtlz() {
            let k = if name == ProblemName::Dtlz1 { 5 } else { 10 };
            let n = m + k - 1;
            (n, k, 0, vec![0.0; n], vec![1.0; n])
        } else {
            let k = m - 1;
            let l = WFG_DISTANCE_PARAMS;
            let n = k + l;
            let upper = (1..=n).map(|i| 2.0 * i as f64).collect();
            (n, k, l, vec![0.0; n], upper)
        };
        Ok(Self {
            name,
            m,
            n,
            k,
            l,
            bounds: Bounds { lower, upper },
        })
    }

    /// Objective values of `decision`. The decision must have length `n`
    /// and lie within the bounds.
    pub fn evaluate(&self, decision: &[f64]) -> Result<ObjectiveVector> {
        if decision.len() != self.n {
            return Err(Error::usage(format!(
                "{} expects {} decision variables, got {}",
                self.name,
                self.n,
                decision.len()
            )));
        }
        if !self.bounds.contains(decision) {
            return Err(Error::usage(format!(
                "decision vector outside the bounds of {}",
                self.name
            )));
        }
        ObjectiveVector::new(self.evaluate_raw(decision))
    }

    pub(crate) fn evaluate_raw(&self, decision: &[f64]) -> Vec<f64> {
        if self.name.is_dtlz() {
            dtlz::evaluate(self.name, decision, self.m)
        } else {
            wfg::evaluate(self.name, decision, self.m, self.k)
        }
    }

    /// A Pareto-optimal decision vector with the given position
    /// parameters (`m - 1` values for DTLZ, `k` for WFG, each within its
    /// bounds).
    pub fn optimal_decision(&self, position: &[f64]) -> Result<Vec<f64>> {
        let k = if self.name.is_dtlz() { self.m - 1 } else { self.k };
        if position.len() != k {
            return Err(Error::usage(format!(
                "{} expects {k} position parameters, got {}",
                self.name,
                position.len()
            )));
        }
        if !self.bounds_contain_prefix(position) {
            return Err(Error::usage("position parameters outside the bounds"));
        }
        let mut z = self.bounds.lower.clone();
        z[..k].copy_from_slice(position);
        if self.name.is_dtlz() {
            z[k..].fill(0.5);
        } else {
            wfg::place_on_front(self.name, &mut z, k);
        }
        Ok(z)
    }

    fn bounds_contain_prefix(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.bounds.lower.iter().zip(&self.bounds.upper))
            .all(|(v, (lo, hi))| (lo..=hi).contains(&v))
    }

    /// Worst value of each objective over the true front:
    /// 0.5 for DTLZ1, 1 for DTLZ2-4 and `2i` for WFG.
    pub fn analytic_nadir(&self) -> ObjectiveVector {
        let values = match self.name {
            ProblemName::Dtlz1 => vec![0.5; self.m],
            n if n.is_dtlz() => vec![1.0; self.m],
            _ => (1..=self.m).map(|i| 2.0 * i as f64).collect(),
        };
        ObjectiveVector::new(values).expect("nadir is finite and m >= 2")
    }

    pub fn front(&self) -> FrontDescriptor {
        let kind = match self.name {
            ProblemName::Dtlz1 => FrontKind::Simplex,
            n if n.is_dtlz() => FrontKind::Hypersphere,
            _ => FrontKind::WfgShape,
        };
        FrontDescriptor {
            kind,
            nadir: self.analytic_nadir(),
        }
    }

    /// `count` points on the true Pareto front.
    ///
    /// DTLZ1 samples the simplex uniformly, DTLZ2-4 sample directions in
    /// the positive orthant uniformly. WFG problems sample the position
    /// parameters uniformly, fix the distance parameters at their optimum
    /// and evaluate. WFG2's disconnected front additionally discards
    /// sampled points dominated by other samples.
    pub fn sample_reference_front(
        &self,
        count: usize,
        rng: &mut RandomSource,
    ) -> Result<Vec<ObjectiveVector>> {
        if count == 0 {
            return Err(Error::usage("reference front needs at least one point"));
        }
        let m = self.m;
        let points: Vec<Vec<f64>> = match self.front().kind {
            FrontKind::Simplex => (0..count)
                .map(|_| {
                    let e: Vec<f64> = (0..m).map(|_| Exp1.sample(rng)).collect();
                    let sum: f64 = e.iter().sum();
                    e.iter().map(|v| 0.5 * v / sum).collect()
                })
                .collect(),
            FrontKind::Hypersphere => (0..count)
                .map(|_| loop {
                    let g: Vec<f64> = (0..m)
                        .map(|_| {
                            let v: f64 = StandardNormal.sample(rng);
                            v.abs()
                        })
                        .collect();
                    let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        break g.iter().map(|v| v / norm).collect();
                    }
                })
                .collect(),
            FrontKind::WfgShape => self.sample_wfg_front(count, rng),
        };
        points.into_iter().map(ObjectiveVector::new).collect()
    }

    fn wfg_front_point(&self, rng: &mut RandomSource) -> Vec<f64> {
        let mut z = vec![0.0; self.n];
        for (i, v) in z.iter_mut().enumerate().take(self.k) {
            *v = rng.uniform_in(0.0, self.bounds.upper[i]);
        }
        wfg::front_point(self.name, &z, self.m, self.k)
    }

    fn sample_wfg_front(&self, count: usize, rng: &mut RandomSource) -> Vec<Vec<f64>> {
        if self.name != ProblemName::Wfg2 {
            return (0..count).map(|_| self.wfg_front_point(rng)).collect();
        }
        let mut pool: Vec<Vec<f64>> = Vec::with_capacity(2 * count);
        loop {
            let need = (2 * count).saturating_sub(pool.len()).max(count / 4 + 1);
            pool.extend((0..need).map(|_| self.wfg_front_point(rng)));
            let keep = nondominated_indices_unchecked(&pool);
            pool = keep.into_iter().map(|i| pool[i].clone()).collect();
            if pool.len() >= count {
                pool.truncate(count);
                return pool;
            }
        }
    }
}

/// Writes points as CSV: an optional `# problem,m,count` comment line,
/// a header row `f1,...,fm`, then one point per row.
pub fn write_front_csv<W: Write>(
    out: W,
    points: &[ObjectiveVector],
    comment: Option<(&ProblemSpec, usize)>,
) -> Result<()> {
    let mut out = out;
    if let Some((spec, count)) = comment {
        writeln!(out, "# {},{},{}", spec.name, spec.m, count)
            .map_err(|e| Error::io("<front csv>", e))?;
    }
    let m = points.first().map_or(0, |p| p.len());
    let mut w = csv::WriterBuilder::new().from_writer(out);
    w.write_record((1..=m).map(|i| format!("f{i}")))?;
    for p in points {
        w.write_record(p.iter().map(|v| v.to_string()))?;
    }
    w.flush().map_err(|e| Error::io("<front csv>", e))?;
    Ok(())
}

/// Reads a CSV written by [`write_front_csv`]. Lines starting with `#`
/// are skipped.
pub fn read_front_csv<R: std::io::Read>(input: R) -> Result<Vec<ObjectiveVector>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .from_reader(input);
    let mut points = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let values = rec
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::usage(format!("bad number {f:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        points.push(ObjectiveVector::new(values)?);
    }
    Ok(points)
}
