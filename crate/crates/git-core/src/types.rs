//! Problem instances for torus actions on projectivized representations.

use exact_geometry::rational::{rat_mat, rat_vec};
use exact_geometry::{InnerProduct, Rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::GitError;

/// Desk-scale ceiling on the weight count; classification loops over all
/// 2^m - 1 supports.
pub const MAX_WEIGHTS: usize = 12;

/// A torus rank, rational weights, a linearization shift and a metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    rank: usize,
    weights: Vec<Vec<Rat>>,
    theta: Vec<Rat>,
    metric: InnerProduct,
}

impl WeightSystem {
    pub fn new(
        rank: usize,
        weights: Vec<Vec<Rat>>,
        theta: Vec<Rat>,
        metric: Option<InnerProduct>,
    ) -> Result<Self, GitError> {
        if rank < 1 {
            return Err(GitError::BadInstance("rank must be at least 1".into()));
        }
        if weights.is_empty() {
            return Err(GitError::BadInstance("at least one weight required".into()));
        }
        for w in &weights {
            if w.len() != rank {
                return Err(GitError::BadInstance(format!(
                    "weight has {} entries, rank is {}",
                    w.len(),
                    rank
                )));
            }
        }
        if theta.len() != rank {
            return Err(GitError::BadInstance(format!(
                "theta has {} entries, rank is {}",
                theta.len(),
                rank
            )));
        }
        let metric = metric.unwrap_or_else(|| InnerProduct::identity(rank));
        if metric.dim() != rank {
            return Err(GitError::BadInstance(format!(
                "metric is {}x{}, rank is {}",
                metric.dim(),
                metric.dim(),
                rank
            )));
        }
        Ok(WeightSystem {
            rank,
            weights,
            theta,
            metric,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_weights(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<Rat>] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &[Rat] {
        &self.weights[i - 1]
    }

    pub fn theta(&self) -> &[Rat] {
        &self.theta
    }

    pub fn metric(&self) -> &InnerProduct {
        &self.metric
    }

    /// Weights selected by a support, in index order.
    pub fn support_weights(&self, s: &Support) -> Vec<Vec<Rat>> {
        s.iter().map(|i| self.weights[i - 1].clone()).collect()
    }

    /// All nonempty supports, smallest bitmask first.
    pub fn all_supports(&self) -> Result<Vec<Support>, GitError> {
        let m = self.num_weights();
        if m > MAX_WEIGHTS {
            return Err(GitError::TooManyWeights(m));
        }
        let mut out = Vec::with_capacity((1usize << m) - 1);
        for mask in 1u32..(1u32 << m) {
            let idx: BTreeSet<usize> =
                (0..m).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            out.push(Support { indices: idx });
        }
        Ok(out)
    }
}

/// The coordinates where a point is nonzero; 1-based, never empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support {
    indices: BTreeSet<usize>,
}

impl Support {
    pub fn new(indices: impl IntoIterator<Item = usize>, num_weights: usize) -> Result<Self, GitError> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(GitError::BadInstance("support must be nonempty".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i < 1 || i > num_weights) {
            return Err(GitError::BadInstance(format!(
                "support index {} out of range 1..={}",
                bad, num_weights
            )));
        }
        Ok(Support { indices })
    }

    pub fn full(num_weights: usize) -> Self {
        Support {
            indices: (1..=num_weights).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }
}

/// An integer coweight z -> z^lambda.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneParameterSubgroup {
    pub lambda: Vec<i64>,
}

impl OneParameterSubgroup {
    pub fn new(lambda: Vec<i64>) -> Self {
        OneParameterSubgroup { lambda }
    }

    pub fn as_rats(&self) -> Vec<Rat> {
        self.lambda.iter().map(|&x| exact_geometry::rat_i(x)).collect()
    }
}

/// semistable >= polystable >= stable, as hull membership, relative-interior
/// membership, and full affine dimension of the support hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityClass {
    pub semistable: bool,
    pub polystable: bool,
    pub stable: bool,
}

/// On-disk instance: a weight system plus an optional distinguished support.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub rank: usize,
    #[serde(with = "rat_mat")]
    pub weights: Vec<Vec<Rat>>,
    #[serde(with = "rat_vec")]
    pub theta: Vec<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<InnerProduct>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<usize>>,
}

impl InstanceFile {
    pub fn into_parts(self) -> Result<(WeightSystem, Option<Support>), GitError> {
        let ws = WeightSystem::new(self.rank, self.weights, self.theta, self.metric)?;
        let support = match self.support {
            None => None,
            Some(v) => Some(Support::new(v, ws.num_weights())?),
        };
        Ok((ws, support))
    }

    pub fn from_weight_system(ws: &WeightSystem, support: Option<&Support>) -> Self {
        InstanceFile {
            rank: ws.rank(),
            weights: ws.weights().to_vec(),
            theta: ws.theta().to_vec(),
            metric: if ws.metric().is_identity() {
                None
            } else {
                Some(ws.metric().clone())
            },
            support: support.map(|s| s.to_vec()),
        }
    }
}
