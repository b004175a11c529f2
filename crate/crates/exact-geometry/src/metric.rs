//! Symmetric positive definite pairings on Q^r.

use crate::rational::{rat_mat, Rat};
use crate::{vecops, GeomError};
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize};

/// Exact inner product. Positive definiteness is established once at
/// construction by checking every leading principal minor is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InnerProduct {
    #[serde(with = "rat_mat")]
    matrix: Vec<Vec<Rat>>,
}

// deserialization must not bypass the definiteness check
impl<'de> Deserialize<'de> for InnerProduct {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let m = rat_mat::deserialize(de)?;
        InnerProduct::new(m).map_err(serde::de::Error::custom)
    }
}

impl InnerProduct {
    pub fn new(matrix: Vec<Vec<Rat>>) -> Result<Self, GeomError> {
        let r = matrix.len();
        for row in &matrix {
            if row.len() != r {
                return Err(GeomError::DimensionMismatch {
                    expected: r,
                    got: row.len(),
                });
            }
        }
        for i in 0..r {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(GeomError::NotSymmetric);
                }
            }
        }
        for k in 1..=r {
            let minor: Vec<Vec<Rat>> = matrix[..k].iter().map(|row| row[..k].to_vec()).collect();
            if !vecops::determinant(&minor).is_positive() {
                return Err(GeomError::NotPositiveDefinite);
            }
        }
        Ok(InnerProduct { matrix })
    }

    pub fn identity(r: usize) -> Self {
        let matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        InnerProduct { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        let r = self.dim();
        (0..r).all(|i| {
            (0..r).all(|j| {
                if i == j {
                    self.matrix[i][j].is_one()
                } else {
                    self.matrix[i][j].is_zero()
                }
            })
        })
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    /// (x, y) = x^T M y.
    pub fn pairing(&self, x: &[Rat], y: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            acc += xi * vecops::dot(&self.matrix[i], y);
        }
        acc
    }

    /// Squared norm (x, x).
    pub fn norm_sq(&self, x: &[Rat]) -> Rat {
        self.pairing(x, x)
    }

    /// Metric image M v (a vector's dual covector in coordinates).
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim());
        self.matrix.iter().map(|row| vecops::dot(row, v)).collect()
    }

    /// The dual pairing M^-1, an inner product on covectors.
    pub fn inverse(&self) -> InnerProduct {
        let r = self.dim();
        let mut cols = Vec::with_capacity(r);
        for j in 0..r {
            let e: Vec<Rat> = (0..r)
                .map(|i| if i == j { Rat::one() } else { Rat::zero() })
                .collect();
            cols.push(
                vecops::solve_square(&self.matrix, &e)
                    .expect("positive definite matrices are invertible"),
            );
        }
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| cols[j][i].clone()).collect())
            .collect();
        InnerProduct { matrix }
    }

    /// Solves M x = c, sending a covector back to its vector.
    pub fn unapply(&self, c: &[Rat]) -> Vec<Rat> {
        assert_eq!(c.len(), self.dim());
        vecops::solve_square(&self.matrix, c)
            .expect("positive definite matrices are invertible")
    }
}
