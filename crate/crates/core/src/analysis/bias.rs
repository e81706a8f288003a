//! Average epsilon-indicator profiles over two-objective point sets lying
//! on a common front, used to expose how the indicator favours parts of
//! the front with and without normalization.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicators::{eps_unchecked, normalize_objectives};
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    /// Quarter circle bulging away from the origin: `f1^2 + f2^2 = 1`.
    Concave,
    /// Quarter circle bulging towards the origin: `(1-f1)^2 + (1-f2)^2 = 1`.
    Convex,
    /// `f2 = 1 - f1`.
    Linear,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 3] = [ShapeKind::Concave, ShapeKind::Convex, ShapeKind::Linear];
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeKind::Concave => "concave",
            ShapeKind::Convex => "convex",
            ShapeKind::Linear => "linear",
        })
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "concave" => Ok(ShapeKind::Concave),
            "convex" => Ok(ShapeKind::Convex),
            "linear" => Ok(ShapeKind::Linear),
            other => Err(Error::config(format!("unknown front shape {other:?}"))),
        }
    }
}

/// A two-objective front: a unit shape stretched by `scales`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontShape {
    pub kind: ShapeKind,
    pub scales: [f64; 2],
}

impl FrontShape {
    pub fn new(kind: ShapeKind, scales: [f64; 2]) -> Result<Self> {
        if scales.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
            return Err(Error::config("front scales must be positive"));
        }
        Ok(Self { kind, scales })
    }

    pub fn unit(kind: ShapeKind) -> Self {
        Self {
            kind,
            scales: [1.0, 1.0],
        }
    }

    /// Point at parameter `t` in `[0, 1]`; `t = 0` gives `(0, s2)` and
    /// `t = 1` gives `(s1, 0)`.
    pub fn point(&self, t: f64) -> [f64; 2] {
        let a = t * FRAC_PI_2;
        let (f1, f2) = match self.kind {
            ShapeKind::Linear => (t, 1.0 - t),
            ShapeKind::Concave => (a.sin(), a.cos()),
            ShapeKind::Convex => (1.0 - a.cos(), 1.0 - a.sin()),
        };
        [self.scales[0] * f1, self.scales[1] * f2]
    }
}

/// One point of a sampled front together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontSample {
    pub t: f64,
    pub point: [f64; 2],
}

/// `n` points on `shape` at uniformly drawn parameters, sorted by `t`.
pub fn sample_similar_front(
    shape: &FrontShape,
    n: usize,
    rng: &mut RandomSource,
) -> Result<Vec<FrontSample>> {
    if n < 2 {
        return Err(Error::usage("a front sample needs at least 2 points"));
    }
    let mut ts: Vec<f64> = (0..n).map(|_| rng.uniform()).collect();
    ts.sort_by(f64::total_cmp);
    Ok(ts
        .into_iter()
        .map(|t| FrontSample {
            t,
            point: shape.point(t),
        })
        .collect())
}

/// `n` points on `shape` at evenly spaced parameters `0, 1/(n-1), ..., 1`.
pub fn grid_similar_front(shape: &FrontShape, n: usize) -> Result<Vec<FrontSample>> {
    if n < 2 {
        return Err(Error::usage("a front sample needs at least 2 points"));
    }
    Ok((0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            FrontSample {
                t,
                point: shape.point(t),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub t: f64,
    pub f1: f64,
    pub f2: f64,
    pub mean_eps: f64,
}

/// For each point `x`, the mean over the other points `y` of
/// `I_eps(y, x)`: how far the others must move to weakly dominate `x`.
/// This is the quantity the epsilon fitness rewards, so higher means the
/// indicator prefers `x`. With `normalized`, objectives are min-max scaled
/// over the set first. Rows are ordered by `t`; `f1`, `f2` are the
/// unscaled coordinates.
pub fn mean_eps_profile(samples: &[FrontSample], normalized: bool) -> Result<Vec<ProfileRow>> {
    if samples.len() < 2 {
        return Err(Error::usage("a profile needs at least 2 points"));
    }
    let mut ordered = samples.to_vec();
    ordered.sort_by(|a, b| a.t.total_cmp(&b.t));
    let raw: Vec<Vec<f64>> = ordered.iter().map(|s| s.point.to_vec()).collect();
    let pts = if normalized {
        normalize_objectives(&raw)?.values
    } else {
        raw
    };
    let n = pts.len();
    Ok(ordered
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let total: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| eps_unchecked(&pts[j], &pts[i]))
                .sum();
            ProfileRow {
                t: s.t,
                f1: s.point[0],
                f2: s.point[1],
                mean_eps: total / (n - 1) as f64,
            }
        })
        .collect())
}

/// Index of the row with the largest mean (first on ties).
pub fn profile_argmax(rows: &[ProfileRow]) -> Option<usize> {
    rows.iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, r)| match best {
            Some((_, v)) if v >= r.mean_eps => best,
            _ => Some((i, r.mean_eps)),
        })
        .map(|(i, _)| i)
}

/// Writes `t,f1,f2,mean_eps` rows with a header.
pub fn write_profile_csv<W: Write>(out: W, rows: &[ProfileRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "f1", "f2", "mean_eps"])?;
    for r in rows {
        w.write_record([
            r.t.to_string(),
            r.f1.to_string(),
            r.f2.to_string(),
            r.mean_eps.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<profile csv>", e))?;
    Ok(())
}
