use std::collections::BTreeMap;

use exact_geometry::Rat;
use num::Signed;

use crate::ScaledError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Projective,
    Affine,
}

/// Scaling behaviour of the limit one-form on a single component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingClass {
    Zero,
    Transition,
    Infinite,
}

/// Per-vertex class label. Non-root vertices carry a ScalingClass; the
/// projective root instead records whether its scaling is a free modulus
/// (possible only when every bubble scales to zero) or forced to infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeClass {
    Zero,
    Transition,
    Infinite,
    FreeDelta,
    ForcedInfinite,
}

impl NodeClass {
    pub fn as_scaling(self) -> Option<ScalingClass> {
        match self {
            NodeClass::Zero => Some(ScalingClass::Zero),
            NodeClass::Transition => Some(ScalingClass::Transition),
            NodeClass::Infinite => Some(ScalingClass::Infinite),
            _ => None,
        }
    }
}

/// A rooted tree on vertices 0..n given by the parent relation; exactly one
/// vertex has no parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
}

impl RootedTree {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self, ScaledError> {
        let n = parent.len();
        if n == 0 {
            return Err(ScaledError::BadType("tree has no vertices".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let [root] = roots[..] else {
            return Err(ScaledError::BadType(format!(
                "expected exactly one root, found {}",
                roots.len()
            )));
        };
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(ScaledError::BadType(format!(
                        "vertex {v} has out-of-range parent {p}"
                    )));
                }
            }
        }
        // every vertex must reach the root without revisiting; a cycle would
        // walk more than n steps
        for mut v in 0..n {
            let mut steps = 0;
            while let Some(p) = parent[v] {
                v = p;
                steps += 1;
                if steps > n {
                    return Err(ScaledError::BadType("parent relation has a cycle".into()));
                }
            }
        }
        Ok(RootedTree { parent, root })
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&c| self.parent[c] == Some(v))
            .collect()
    }

    /// Vertices from the root down to v, inclusive.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// The discrete stratum datum of a stable scaled curve: a rooted tree of
/// components with scaling classes and labelled markings. In affine mode the
/// root is the component carrying z0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    mode: Mode,
    tree: RootedTree,
    class: Vec<NodeClass>,
    markings: BTreeMap<usize, usize>,
}

impl CombinatorialType {
    /// Structural construction only: tree shape, array lengths, marking
    /// labels 1..n and targets are checked here; the scaled-curve invariants
    /// are the business of validate_type, which reports violations as data.
    pub fn new(
        mode: Mode,
        parent: Vec<Option<usize>>,
        class: Vec<NodeClass>,
        markings: BTreeMap<usize, usize>,
    ) -> Result<Self, ScaledError> {
        let tree = RootedTree::new(parent)?;
        if class.len() != tree.num_vertices() {
            return Err(ScaledError::BadType(format!(
                "{} vertices but {} class labels",
                tree.num_vertices(),
                class.len()
            )));
        }
        for (label, &v) in &markings {
            if v >= tree.num_vertices() {
                return Err(ScaledError::BadType(format!(
                    "marking {label} attached to missing vertex {v}"
                )));
            }
        }
        let n = markings.len();
        if !(1..=n).all(|l| markings.contains_key(&l)) {
            return Err(ScaledError::BadType(
                "marking labels must be exactly 1..n".into(),
            ));
        }
        Ok(CombinatorialType {
            mode,
            tree,
            class,
            markings,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn num_vertices(&self) -> usize {
        self.tree.num_vertices()
    }

    pub fn root(&self) -> usize {
        self.tree.root()
    }

    pub fn class(&self, v: usize) -> NodeClass {
        self.class[v]
    }

    pub fn markings(&self) -> &BTreeMap<usize, usize> {
        &self.markings
    }

    pub fn num_markings(&self) -> usize {
        self.markings.len()
    }

    pub fn markings_at(&self, v: usize) -> Vec<usize> {
        self.markings
            .iter()
            .filter(|(_, &t)| t == v)
            .map(|(&l, _)| l)
            .collect()
    }

    /// Special points of v: markings, incident edges, and z0 on the affine
    /// root. The projective root's count excludes nothing; callers decide
    /// whether it is subject to a stability bound.
    pub fn special_points(&self, v: usize) -> usize {
        let edges = self.tree.children(v).len() + usize::from(self.tree.parent(v).is_some());
        let z0 = usize::from(self.mode == Mode::Affine && v == self.root());
        self.markings_at(v).len() + edges + z0
    }
}

/// Valuations of the deformation parameters of a one-parameter smoothing:
/// one positive valuation per node (keyed by the child vertex of the edge)
/// and the valuation of the scaling delta (negative when delta blows up).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationAssignment {
    edge_valuations: BTreeMap<usize, Rat>,
    delta_valuation: Rat,
}

impl ValuationAssignment {
    pub fn new(
        edge_valuations: BTreeMap<usize, Rat>,
        delta_valuation: Rat,
    ) -> Result<Self, ScaledError> {
        for (v, val) in &edge_valuations {
            if !val.is_positive() {
                return Err(ScaledError::BadValuation(format!(
                    "edge into vertex {v} has nonpositive valuation {}",
                    exact_geometry::format_rat(val)
                )));
            }
        }
        Ok(ValuationAssignment {
            edge_valuations,
            delta_valuation,
        })
    }

    pub fn edge(&self, child: usize) -> Option<&Rat> {
        self.edge_valuations.get(&child)
    }

    pub fn delta(&self) -> &Rat {
        &self.delta_valuation
    }
}

/// Dimension bookkeeping for one stratum.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StratumReport {
    pub dimension: i64,
    pub codimension: i64,
    pub balanced_rank: usize,
    /// Special-point count per vertex, indexed by vertex id.
    pub vertex_special_points: Vec<usize>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
struct VertexFile {
    id: usize,
    class: NodeClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    parent: Option<usize>,
}

/// JSON shape for a combinatorial type.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeFile {
    mode: Mode,
    vertices: Vec<VertexFile>,
    markings: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z0: Option<usize>,
}

impl TypeFile {
    pub fn into_type(self) -> Result<CombinatorialType, ScaledError> {
        let n = self.vertices.len();
        let mut parent = vec![None; n];
        let mut class = vec![NodeClass::Zero; n];
        let mut seen = vec![false; n];
        for v in &self.vertices {
            if v.id >= n || seen[v.id] {
                return Err(ScaledError::BadType(format!(
                    "vertex ids must be 0..{} without repeats",
                    n
                )));
            }
            seen[v.id] = true;
            parent[v.id] = v.parent;
            class[v.id] = v.class;
        }
        let mut markings = BTreeMap::new();
        for (label, &target) in &self.markings {
            let l: usize = label
                .parse()
                .map_err(|_| ScaledError::BadType(format!("bad marking label {label:?}")))?;
            markings.insert(l, target);
        }
        let ty = CombinatorialType::new(self.mode, parent, class, markings)?;
        if let Some(z0) = self.z0 {
            if self.mode == Mode::Projective {
                return Err(ScaledError::BadType("z0 is an affine-mode field".into()));
            }
            if z0 != ty.root() {
                return Err(ScaledError::BadType(format!(
                    "z0 must sit on the root vertex {}, got {z0}",
                    ty.root()
                )));
            }
        } else if self.mode == Mode::Affine {
            return Err(ScaledError::BadType("affine mode requires z0".into()));
        }
        Ok(ty)
    }

    pub fn from_type(ty: &CombinatorialType) -> Self {
        let vertices = (0..ty.num_vertices())
            .map(|id| VertexFile {
                id,
                class: ty.class(id),
                parent: ty.tree().parent(id),
            })
            .collect();
        let markings = ty
            .markings()
            .iter()
            .map(|(l, &v)| (l.to_string(), v))
            .collect();
        TypeFile {
            mode: ty.mode(),
            vertices,
            markings,
            z0: (ty.mode() == Mode::Affine).then(|| ty.root()),
        }
    }
}

/// JSON shape for a valuation assignment: edges keyed by child vertex id.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationFile {
    edges: BTreeMap<String, exact_geometry::rational::RatLit>,
    delta: exact_geometry::rational::RatLit,
}

impl ValuationFile {
    pub fn into_valuations(self) -> Result<ValuationAssignment, ScaledError> {
        let mut edges = BTreeMap::new();
        for (child, val) in self.edges {
            let c: usize = child
                .parse()
                .map_err(|_| ScaledError::BadValuation(format!("bad edge key {child:?}")))?;
            edges.insert(c, val.0);
        }
        ValuationAssignment::new(edges, self.delta.0)
    }
}
