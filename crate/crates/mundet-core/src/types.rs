//! Discrete invariants of a torus-gauged map and related records.

use exact_geometry::rational::{rat_mat, rat_vec};
use exact_geometry::{rat_i, InnerProduct, Rat};
use git_core::{Support, WeightSystem};
use num::Signed;
use serde::{Deserialize, Serialize};

use crate::MundetError;

/// A weight system with bundle degree d(P), section degree d(u) and the
/// nonvanishing support of the section tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugedMapDatum {
    ws: WeightSystem,
    dp: Vec<i64>,
    du: i64,
    support: Support,
}

impl GaugedMapDatum {
    pub fn new(ws: WeightSystem, dp: Vec<i64>, du: i64, support: Support) -> Result<Self, MundetError> {
        if dp.len() != ws.rank() {
            return Err(MundetError::BadInstance(format!(
                "dP has {} entries, rank is {}",
                dp.len(),
                ws.rank()
            )));
        }
        Ok(GaugedMapDatum { ws, dp, du, support })
    }

    pub fn ws(&self) -> &WeightSystem {
        &self.ws
    }

    pub fn dp(&self) -> &[i64] {
        &self.dp
    }

    pub fn dp_rats(&self) -> Vec<Rat> {
        self.dp.iter().map(|&x| rat_i(x)).collect()
    }

    /// d(P)^vee: the metric image of d(P), a covector.
    pub fn dp_vee(&self) -> Vec<Rat> {
        self.ws.metric().apply(&self.dp_rats())
    }

    pub fn du(&self) -> i64 {
        self.du
    }

    pub fn support(&self) -> &Support {
        &self.support
    }
}

/// Exact wall values in the polarization power k, ascending, plus supports
/// whose hull degenerates along the ray (an interval phenomenon, not a wall).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSet {
    pub walls: Vec<Rat>,
    pub degenerate_supports: Vec<Support>,
}

/// Nonnegative energy cap for bounded enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyBudget {
    e: Rat,
}

impl EnergyBudget {
    /// The cap must be nonnegative; zero selects exactly the trivial maps.
    pub fn new(e: Rat) -> Result<Self, MundetError> {
        if e.is_negative() {
            return Err(MundetError::BadInstance("energy budget must be >= 0".into()));
        }
        Ok(EnergyBudget { e })
    }

    pub fn cap(&self) -> &Rat {
        &self.e
    }
}

/// On-disk datum: the weight-system instance extended by dP, du, support.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub rank: usize,
    #[serde(with = "rat_mat")]
    pub weights: Vec<Vec<Rat>>,
    #[serde(with = "rat_vec")]
    pub theta: Vec<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<InnerProduct>,
    #[serde(rename = "dP")]
    pub dp: Vec<i64>,
    pub du: i64,
    pub support: Vec<usize>,
}

impl DatumFile {
    pub fn into_datum(self) -> Result<GaugedMapDatum, MundetError> {
        let ws = WeightSystem::new(self.rank, self.weights, self.theta, self.metric)
            .map_err(MundetError::from)?;
        let support = Support::new(self.support, ws.num_weights()).map_err(MundetError::from)?;
        GaugedMapDatum::new(ws, self.dp, self.du, support)
    }

    pub fn from_datum(d: &GaugedMapDatum) -> Self {
        DatumFile {
            rank: d.ws().rank(),
            weights: d.ws().weights().to_vec(),
            theta: d.ws().theta().to_vec(),
            metric: if d.ws().metric().is_identity() {
                None
            } else {
                Some(d.ws().metric().clone())
            },
            dp: d.dp().to_vec(),
            du: d.du(),
            support: d.support().to_vec(),
        }
    }
}
