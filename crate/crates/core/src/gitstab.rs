//! Numerical stability classification of weighted point configurations on
//! the projective line. The proper linear subspaces of the line are single
//! points, so the test reduces to comparing twice the weight of each
//! coincidence class against the total weight.

use crate::projpoly::ProjPoint;
use std::fmt;

/// A tuple of points with positive integer weights.
#[derive(Clone, Debug)]
pub struct WeightedConfig {
    points: Vec<ProjPoint>,
    weights: Vec<u64>,
}

impl WeightedConfig {
    pub fn new(points: Vec<ProjPoint>, weights: Vec<u64>) -> Result<Self, ConfigError> {
        if points.is_empty() {
            return Err(ConfigError::Empty);
        }
        if points.len() != weights.len() {
            return Err(ConfigError::LengthMismatch(points.len(), weights.len()));
        }
        if weights.contains(&0) {
            return Err(ConfigError::ZeroWeight);
        }
        let f = points[0].field();
        if points.iter().any(|p| p.field() != f) {
            return Err(ConfigError::MixedFields);
        }
        Ok(WeightedConfig { points, weights })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Hilbert-Mumford classification: stable when every coincidence class
    /// carries strictly less than half the total weight, unstable when some
    /// class carries strictly more, strictly semistable in between.
    /// Witnesses list every class at or over the bound.
    pub fn classify(&self) -> StabilityVerdict {
        let total = self.total_weight();
        let mut seen: Vec<usize> = Vec::new();
        let mut witnesses: Vec<CoincidenceWitness> = Vec::new();
        let mut any_equal = false;
        let mut any_over = false;
        for i in 0..self.points.len() {
            if seen.contains(&i) {
                continue;
            }
            let mut class_weight = 0u64;
            for j in 0..self.points.len() {
                if self.points[j] == self.points[i] {
                    class_weight += self.weights[j];
                    seen.push(j);
                }
            }
            match (2 * class_weight).cmp(&total) {
                std::cmp::Ordering::Greater => {
                    any_over = true;
                    witnesses.push(CoincidenceWitness {
                        point: self.points[i].clone(),
                        weight: class_weight,
                    });
                }
                std::cmp::Ordering::Equal => {
                    any_equal = true;
                    witnesses.push(CoincidenceWitness {
                        point: self.points[i].clone(),
                        weight: class_weight,
                    });
                }
                std::cmp::Ordering::Less => {}
            }
        }
        let classification = if any_over {
            Stability::Unstable
        } else if any_equal {
            Stability::StrictlySemistable
        } else {
            Stability::Stable
        };
        StabilityVerdict { classification, witnesses }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("a configuration needs at least one point")]
    Empty,
    #[error("{0} points but {1} weights")]
    LengthMismatch(usize, usize),
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("points over different fields")]
    MixedFields,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Stable => write!(f, "stable"),
            Stability::StrictlySemistable => write!(f, "strictly-semistable"),
            Stability::Unstable => write!(f, "unstable"),
        }
    }
}

/// A coincidence class whose doubled weight reaches the total weight.
#[derive(Clone, Debug)]
pub struct CoincidenceWitness {
    pub point: ProjPoint,
    pub weight: u64,
}

#[derive(Clone, Debug)]
pub struct StabilityVerdict {
    pub classification: Stability,
    pub witnesses: Vec<CoincidenceWitness>,
}

/// Whether the semistable (resp. stable) locus of configurations with these
/// weights is nonempty: `2 v_i <= sum v` (resp. strict) for every i.
pub fn semistable_nonempty(weights: &[u64]) -> (bool, bool) {
    assert!(!weights.is_empty());
    let total: u64 = weights.iter().sum();
    let semi = weights.iter().all(|&v| 2 * v <= total);
    let stable = weights.iter().all(|&v| 2 * v < total);
    (semi, stable)
}

/// Whether no configuration can sit exactly on the semistability boundary,
/// i.e. no subset of the weights sums to half the total.
pub fn stable_equals_semistable(weights: &[u64]) -> bool {
    assert!(!weights.is_empty());
    let total: u64 = weights.iter().sum();
    if total % 2 == 1 {
        return true;
    }
    let half = (total / 2) as usize;
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for &w in weights {
        let w = w as usize;
        for s in (0..=half).rev() {
            if s >= w && reachable[s - w] {
                reachable[s] = true;
            }
        }
    }
    !reachable[half]
}
