//! Objective vectors, individuals, archives and Pareto dominance.
//!
//! Every objective is minimized.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{check_same_len, Error, Result};

/// A point in objective space. Entries are finite and there are at least
/// two of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::usage(format!(
                "objective vector needs at least 2 entries, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::usage(format!("non-finite objective value {bad}")));
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ObjectiveVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<ObjectiveVector> for Vec<f64> {
    fn from(v: ObjectiveVector) -> Self {
        v.0
    }
}

/// A decision vector together with its evaluated objectives and the most
/// recently assigned selection fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub decision: Vec<f64>,
    pub objectives: ObjectiveVector,
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn new(decision: Vec<f64>, objectives: ObjectiveVector) -> Self {
        Self {
            decision,
            objectives,
            fitness: None,
        }
    }
}

impl AsRef<[f64]> for Individual {
    fn as_ref(&self) -> &[f64] {
        &self.objectives
    }
}

/// Fixed-capacity population (the convergence or diversity archive).
///
/// The member count always equals the capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    members: Vec<Individual>,
    capacity: usize,
}

impl Archive {
    pub fn new(members: Vec<Individual>, capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::usage("archive capacity must be positive"));
        }
        if members.len() != capacity {
            return Err(Error::usage(format!(
                "archive of capacity {capacity} built from {} members",
                members.len()
            )));
        }
        Ok(Self { members, capacity })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Individual> {
        self.members.iter()
    }
}

/// Strict Pareto dominance for minimization: `a` is no worse than `b`
/// everywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_same_len(a, b)?;
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Indices of the members not dominated by any other member, in input
/// order. Duplicated vectors do not dominate each other and all survive.
pub fn nondominated_indices<T: AsRef<[f64]>>(pop: &[T]) -> Result<Vec<usize>> {
    if let Some(first) = pop.first() {
        let m = first.as_ref().len();
        if let Some(bad) = pop.iter().find(|p| p.as_ref().len() != m) {
            return Err(Error::usage(format!(
                "population mixes objective counts {m} and {}",
                bad.as_ref().len()
            )));
        }
    }
    Ok(nondominated_indices_unchecked(pop))
}

pub(crate) fn nondominated_indices_unchecked<T: AsRef<[f64]>>(pop: &[T]) -> Vec<usize> {
    (0..pop.len())
        .filter(|&i| {
            let candidate = pop[i].as_ref();
            !pop.iter()
                .enumerate()
                .any(|(j, other)| j != i && dominates_unchecked(other.as_ref(), candidate))
        })
        .collect()
}

/// Members not dominated by any other member, input order preserved.
pub fn nondominated_subset<T: AsRef<[f64]> + Clone>(pop: &[T]) -> Result<Vec<T>> {
    Ok(nondominated_indices(pop)?
        .into_iter()
        .map(|i| pop[i].clone())
        .collect())
}
