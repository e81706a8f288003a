//! Adaptive parent selection and offspring creation.

use crate::error::{Error, Result};
use crate::pareto::nondominated_indices_unchecked;
use crate::problems::Bounds;
use crate::rng::RandomSource;
use crate::variation::{polynomial_mutation, sbx_crossover, VariationParams};

/// Which archive a parent is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchiveSource {
    Convergence,
    Diversity,
}

/// Non-dominated proportions that drive parent selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParentSelection {
    /// Share of the convergence archive that is non-dominated within it.
    pub p_c: f64,
    /// Share of the diversity archive that is non-dominated within it.
    pub p_d: f64,
    /// Share of the non-dominated members of the merged multiset
    /// contributed by the convergence archive.
    pub rho_c: f64,
    /// Same for the diversity archive; `rho_c + rho_d = 1`.
    pub rho_d: f64,
}

impl ParentSelection {
    pub fn from_archives<T: AsRef<[f64]>>(ca: &[T], da: &[T]) -> Result<Self> {
        if ca.is_empty() || da.is_empty() {
            return Err(Error::usage("parent selection needs non-empty archives"));
        }
        let p_c = nondominated_indices_unchecked(ca).len() as f64 / ca.len() as f64;
        let p_d = nondominated_indices_unchecked(da).len() as f64 / da.len() as f64;

        let merged: Vec<&[f64]> = ca.iter().chain(da).map(|x| x.as_ref()).collect();
        let nd = nondominated_indices_unchecked(&merged);
        let from_ca = nd.iter().filter(|&&i| i < ca.len()).count();
        let (rho_c, rho_d) = if nd.is_empty() {
            (0.0, 0.0)
        } else {
            let total = nd.len() as f64;
            (from_ca as f64 / total, (nd.len() - from_ca) as f64 / total)
        };
        Ok(Self {
            p_c,
            p_d,
            rho_c,
            rho_d,
        })
    }

    /// Archive of the first parent: the convergence archive only when its
    /// non-dominated share is strictly larger.
    pub fn first_source(&self) -> ArchiveSource {
        if self.p_c > self.p_d {
            ArchiveSource::Convergence
        } else {
            ArchiveSource::Diversity
        }
    }

    /// Probability that the second parent comes from the convergence
    /// archive; 0.5 if neither archive contributes a non-dominated member.
    pub fn second_from_ca_probability(&self) -> f64 {
        let total = self.rho_c + self.rho_d;
        if total > 0.0 {
            self.rho_c / total
        } else {
            0.5
        }
    }

    /// Draws the two parents as `(source, index)` pairs.
    pub fn pick(
        &self,
        ca_len: usize,
        da_len: usize,
        rng: &mut RandomSource,
    ) -> ((ArchiveSource, usize), (ArchiveSource, usize)) {
        let draw = |src: ArchiveSource, rng: &mut RandomSource| {
            let len = match src {
                ArchiveSource::Convergence => ca_len,
                ArchiveSource::Diversity => da_len,
            };
            (src, rng.index(len))
        };
        let first = draw(self.first_source(), rng);
        let second_src = if rng.uniform() < self.second_from_ca_probability() {
            ArchiveSource::Convergence
        } else {
            ArchiveSource::Diversity
        };
        let second = draw(second_src, rng);
        (first, second)
    }
}

/// `count` offspring decision vectors. Each is the first SBX child of two
/// adaptively chosen parents followed by polynomial mutation.
///
/// `ca_objs` / `da_objs` are the objective vectors and `ca_dec` / `da_dec`
/// the decision vectors of the two archives, index-aligned.
#[allow(clippy::too_many_arguments)]
pub fn generate_offspring<O: AsRef<[f64]>, D: AsRef<[f64]>>(
    ca_objs: &[O],
    ca_dec: &[D],
    da_objs: &[O],
    da_dec: &[D],
    count: usize,
    variation: &VariationParams,
    bounds: &Bounds,
    rng: &mut RandomSource,
) -> Result<Vec<Vec<f64>>> {
    if ca_objs.len() != ca_dec.len() || da_objs.len() != da_dec.len() {
        return Err(Error::usage("archive objectives and decisions are misaligned"));
    }
    let selection = ParentSelection::from_archives(ca_objs, da_objs)?;
    let decision = |(src, i): (ArchiveSource, usize)| match src {
        ArchiveSource::Convergence => ca_dec[i].as_ref(),
        ArchiveSource::Diversity => da_dec[i].as_ref(),
    };
    (0..count)
        .map(|_| {
            let (a, b) = selection.pick(ca_dec.len(), da_dec.len(), rng);
            let (child, _) = sbx_crossover(decision(a), decision(b), variation, bounds, rng)?;
            polynomial_mutation(&child, variation, bounds, rng)
        })
        .collect()
}
