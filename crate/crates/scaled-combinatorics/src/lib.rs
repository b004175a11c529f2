//! Combinatorics of stable scaled marked curves over a fixed smooth curve:
//! stratum types for the projective and affine moduli, their validation and
//! stability, exhaustive enumeration, stratum dimension and codimension,
//! the rank of the balanced relations among node smoothing parameters, and
//! tropical limits of a scaling under a one-parameter degeneration.
//!
//! A type is a rooted tree of components. The root is the component mapping
//! isomorphically to the base curve (projective mode) or the component
//! carrying the distinguished marking z0 (affine mode). Each other vertex
//! records how the scaling one-form degenerates on it: Zero, Transition
//! (finite and nonzero) or Infinite. Along any root-to-leaf path classes
//! are non-increasing with at most one Transition; markings sit only where
//! the scaling is finite.

mod enumerate;
mod types;

use exact_geometry::Rat;
use num::Signed;

pub use enumerate::enumerate_types;
pub use types::{
    CombinatorialType, Mode, NodeClass, RootedTree, ScalingClass, StratumReport, TypeFile,
    ValuationAssignment, ValuationFile,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScaledError {
    #[error("invalid type: {0}")]
    BadType(String),
    #[error("invalid valuations: {0}")]
    BadValuation(String),
}

/// One broken invariant, with the vertex it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub vertex: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.vertex {
            Some(v) => write!(f, "vertex {}: {}", v, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

fn violation(vertex: usize, message: impl Into<String>) -> Violation {
    Violation {
        vertex: Some(vertex),
        message: message.into(),
    }
}

/// Checks every scaled-curve invariant and reports all violations; an empty
/// list means the type is valid. Violations are data, not errors.
pub fn validate_type(ty: &CombinatorialType) -> Vec<Violation> {
    let mut out = Vec::new();
    let root = ty.root();
    // class domains
    for v in 0..ty.num_vertices() {
        let c = ty.class(v);
        if v == root {
            let ok = match ty.mode() {
                Mode::Projective => matches!(c, NodeClass::FreeDelta | NodeClass::ForcedInfinite),
                Mode::Affine => matches!(c, NodeClass::Transition | NodeClass::Infinite),
            };
            if !ok {
                out.push(violation(v, format!("root class {c:?} not allowed in this mode")));
            }
        } else if c.as_scaling().is_none() {
            out.push(violation(v, format!("non-root vertex has root class {c:?}")));
        }
    }
    if !out.is_empty() {
        // the remaining checks need well-typed classes
        return out;
    }
    // monotonicity along every root-to-leaf path, with at most one
    // Transition; the projective root acts as Infinite when forced and as
    // the bottom class when its scaling is a free modulus
    let effective = |v: usize| -> ScalingClass {
        match ty.class(v) {
            NodeClass::FreeDelta => ScalingClass::Zero,
            NodeClass::ForcedInfinite => ScalingClass::Infinite,
            c => c.as_scaling().expect("class domains checked"),
        }
    };
    for v in 0..ty.num_vertices() {
        if let Some(p) = ty.tree().parent(v) {
            if effective(v) > effective(p) {
                out.push(violation(
                    v,
                    format!("class {:?} exceeds parent class {:?}", effective(v), effective(p)),
                ));
            }
        }
        if ty.tree().children(v).is_empty() {
            let transitions = ty
                .tree()
                .root_path(v)
                .into_iter()
                .filter(|&u| effective(u) == ScalingClass::Transition)
                .count();
            if transitions > 1 {
                out.push(violation(v, "two transitions on the path to this leaf"));
            }
        }
    }
    // the projective root's scaling is a free modulus exactly when every
    // bubble scales to zero
    if ty.mode() == Mode::Projective {
        let all_zero = (0..ty.num_vertices())
            .filter(|&v| v != root)
            .all(|v| ty.class(v) == NodeClass::Zero);
        match ty.class(root) {
            NodeClass::FreeDelta if !all_zero => out.push(violation(
                root,
                "free root scaling requires every bubble to have class zero",
            )),
            NodeClass::ForcedInfinite if all_zero => out.push(violation(
                root,
                "root scaling is only forced infinite by a non-zero bubble",
            )),
            _ => {}
        }
    }
    // markings sit where the scaling is finite
    for (&label, &v) in ty.markings() {
        if matches!(ty.class(v), NodeClass::Infinite | NodeClass::ForcedInfinite) {
            out.push(violation(
                v,
                format!("marking {label} on an infinite-scaling component"),
            ));
        }
    }
    out
}

/// Stability verdict with the special-point count of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TypeStability {
    pub stable: bool,
    pub special_points: Vec<usize>,
}

/// A component with scaling zero or infinite needs three special points, a
/// transition component two; the projective root is exempt because it maps
/// isomorphically to the base curve. z0 counts on the affine root.
pub fn is_stable_type(ty: &CombinatorialType) -> TypeStability {
    let special_points: Vec<usize> = (0..ty.num_vertices()).map(|v| ty.special_points(v)).collect();
    let stable = (0..ty.num_vertices()).all(|v| {
        if ty.mode() == Mode::Projective && v == ty.root() {
            return true;
        }
        let need = match ty.class(v) {
            NodeClass::Transition => 2,
            _ => 3,
        };
        special_points[v] >= need
    });
    TypeStability {
        stable,
        special_points,
    }
}

/// Moduli dimension of the stratum: the root contributes its special-point
/// count plus one free scaling modulus when present; every other component
/// contributes its point-configuration dimension modulo automorphisms,
/// s(v) - 2 for transitions (translations only) and s(v) - 3 otherwise.
pub fn stratum_dimension(ty: &CombinatorialType) -> i64 {
    debug_assert!(validate_type(ty).is_empty(), "type must be valid");
    let stability = is_stable_type(ty);
    assert!(stability.stable, "type must be stable");
    let root = ty.root();
    let mut dim: i64 = 0;
    for v in 0..ty.num_vertices() {
        let s = stability.special_points[v] as i64;
        if ty.mode() == Mode::Projective && v == root {
            dim += s + i64::from(ty.class(root) == NodeClass::FreeDelta);
        } else {
            dim += match ty.class(v) {
                NodeClass::Transition => s - 2,
                _ => s - 3,
            };
        }
    }
    dim
}

/// Rank of the lattice of relations forced on node smoothing parameters by
/// normalizing the scaling on every transition component: one independent
/// relation per extra transition.
pub fn balanced_rank(ty: &CombinatorialType) -> usize {
    let transitions = (0..ty.num_vertices())
        .filter(|&v| ty.class(v) == NodeClass::Transition)
        .count();
    transitions.saturating_sub(1)
}

/// Codimension of the stratum: each node is one boundary condition, each
/// transition frees one parameter back, and one more condition ties the
/// root scaling down whenever it is not a free modulus.
pub fn stratum_codimension(ty: &CombinatorialType) -> i64 {
    debug_assert!(validate_type(ty).is_empty(), "type must be valid");
    let edges = (ty.num_vertices() - 1) as i64;
    let transitions = (0..ty.num_vertices())
        .filter(|&v| ty.class(v) == NodeClass::Transition)
        .count() as i64;
    let indicator = match ty.mode() {
        Mode::Affine => 1,
        Mode::Projective => i64::from(ty.class(ty.root()) == NodeClass::ForcedInfinite),
    };
    edges - transitions + indicator
}

/// Dimension, codimension, balanced rank and per-vertex counts in one view.
pub fn stratum_report(ty: &CombinatorialType) -> StratumReport {
    StratumReport {
        dimension: stratum_dimension(ty),
        codimension: stratum_codimension(ty),
        balanced_rank: balanced_rank(ty),
        vertex_special_points: is_stable_type(ty).special_points,
    }
}

/// Scaling class of every vertex in the limit of a one-parameter family:
/// on the component of v the scaling picks up the smoothing parameter of
/// every node between v and the root, so its valuation is delta plus the
/// edge valuations along that path. Negative means the scaling blows up.
pub fn tropical_limit(
    tree: &RootedTree,
    val: &ValuationAssignment,
) -> Result<Vec<ScalingClass>, ScaledError> {
    let mut classes = Vec::with_capacity(tree.num_vertices());
    for v in 0..tree.num_vertices() {
        let mut w: Rat = val.delta().clone();
        for u in tree.root_path(v) {
            if tree.parent(u).is_some() {
                let e = val.edge(u).ok_or_else(|| {
                    ScaledError::BadValuation(format!("missing valuation for edge into {u}"))
                })?;
                w += e;
            }
        }
        classes.push(if w.is_negative() {
            ScalingClass::Infinite
        } else if w.is_positive() {
            ScalingClass::Zero
        } else {
            ScalingClass::Transition
        });
    }
    Ok(classes)
}

/// Canonical encoding: equal strings exactly for isomorphic types. Since
/// markings are labelled, isomorphisms can only permute sibling subtrees,
/// so sorting child encodings at every vertex is a complete normal form.
pub fn canonical_form(ty: &CombinatorialType) -> String {
    let mode = match ty.mode() {
        Mode::Projective => "P",
        Mode::Affine => "A",
    };
    format!("{}:{}", mode, encode_vertex(ty, ty.root()))
}

fn encode_vertex(ty: &CombinatorialType, v: usize) -> String {
    let class = match ty.class(v) {
        NodeClass::Zero => "0",
        NodeClass::Transition => "T",
        NodeClass::Infinite => "I",
        NodeClass::FreeDelta => "F",
        NodeClass::ForcedInfinite => "X",
    };
    let marks = ty
        .markings_at(v)
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut kids: Vec<String> = ty
        .tree()
        .children(v)
        .into_iter()
        .map(|c| encode_vertex(ty, c))
        .collect();
    kids.sort();
    format!("{class}{{{marks}}}({})", kids.join(""))
}
