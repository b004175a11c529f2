//! Exhaustive re-generation of stable scaled-curve types, diffed against
//! the enumerator. Every rooted tree up to the vertex cap is produced from
//! parent vectors, every class and marking assignment is tried, and the
//! validity and stability rules are re-stated here rather than imported,
//! so the comparison exercises two independent readings of the rules.

use std::collections::BTreeSet;

use scaled_combinatorics::{enumerate_types, CombinatorialType, Mode, NodeClass};

use crate::OracleError;

/// Set difference between the oracle generation and the enumerator, as
/// canonical encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCheckReport {
    pub oracle_count: usize,
    pub enumerated_count: usize,
    /// Types the oracle found that the enumerator missed.
    pub missing: Vec<String>,
    /// Types the enumerator produced that the oracle rejects.
    pub extra: Vec<String>,
}

impl TreeCheckReport {
    pub fn agrees(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

// Scaling classes with the two mode-specific root refinements kept as
// separate flags; ordering is by how singular the scaling is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Cls {
    Zero,
    Trans,
    Inf,
}

/// Regenerates every valid stable type with markings 1..n on trees of up
/// to cap vertices and diffs the canonical encodings against
/// enumerate_types. Errors when some stable type needs every allowed
/// vertex, since larger types could then exist beyond the cap.
pub fn exhaustive_tree_check(
    n: usize,
    mode: Mode,
    cap: usize,
) -> Result<TreeCheckReport, OracleError> {
    assert!(n <= 4, "marking count beyond oracle scale");
    assert!(cap >= 1);
    let mut oracle: BTreeSet<String> = BTreeSet::new();
    let mut cap_hit = false;
    for v_count in 1..=cap {
        let mut parents = vec![0usize; v_count];
        generate_shapes(v_count, 1, &mut parents, &mut |parents| {
            let children = children_of(parents);
            let mut classes = vec![Cls::Zero; v_count];
            // free_delta distinguishes the projective root refinement
            for (root_cls, free_delta) in root_options(mode) {
                classes[0] = root_cls;
                assign_classes(mode, free_delta, parents, &children, &mut classes, 1, &mut |classes| {
                    try_markings(
                        n,
                        mode,
                        free_delta,
                        &children,
                        classes,
                        &mut |encoding| {
                            if v_count == cap {
                                cap_hit = true;
                            }
                            oracle.insert(encoding);
                        },
                    );
                });
            }
        });
    }
    if cap_hit {
        return Err(OracleError::CapTooSmall(cap));
    }
    let enumerated: BTreeSet<String> = enumerate_types(n, mode)
        .iter()
        .map(encode_enumerated)
        .collect();
    Ok(TreeCheckReport {
        oracle_count: oracle.len(),
        enumerated_count: enumerated.len(),
        missing: oracle.difference(&enumerated).cloned().collect(),
        extra: enumerated.difference(&oracle).cloned().collect(),
    })
}

// Every rooted tree on vertices 0..n appears for some parent vector with
// parent[v] < v, by ordering each tree topologically.
fn generate_shapes(n: usize, v: usize, parents: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if v == n {
        emit(parents);
        return;
    }
    for p in 0..v {
        parents[v] = p;
        generate_shapes(n, v + 1, parents, emit);
    }
}

fn children_of(parents: &[usize]) -> Vec<Vec<usize>> {
    let mut children = vec![Vec::new(); parents.len()];
    for v in 1..parents.len() {
        children[parents[v]].push(v);
    }
    children
}

fn root_options(mode: Mode) -> Vec<(Cls, bool)> {
    match mode {
        // a free root scaling acts like class zero, a forced one like
        // infinite
        Mode::Projective => vec![(Cls::Zero, true), (Cls::Inf, false)],
        Mode::Affine => vec![(Cls::Trans, false), (Cls::Inf, false)],
    }
}

fn has_transition_above(classes: &[Cls], parents: &[usize], mut v: usize) -> bool {
    loop {
        if classes[v] == Cls::Trans {
            return true;
        }
        if v == 0 {
            return false;
        }
        v = parents[v];
    }
}

fn assign_classes(
    mode: Mode,
    free_delta: bool,
    parents: &[usize],
    children: &[Vec<usize>],
    classes: &mut Vec<Cls>,
    v: usize,
    emit: &mut impl FnMut(&[Cls]),
) {
    if v == classes.len() {
        // projective coherence: the root scaling is a free modulus exactly
        // when every bubble has class zero
        if mode == Mode::Projective {
            let all_zero = classes[1..].iter().all(|&c| c == Cls::Zero);
            if all_zero != free_delta {
                return;
            }
        }
        emit(classes);
        return;
    }
    for c in [Cls::Zero, Cls::Trans, Cls::Inf] {
        if c > classes[parents[v]] {
            continue; // classes never increase away from the root
        }
        if c == Cls::Trans && has_transition_above(classes, parents, parents[v]) {
            continue; // at most one transition per path
        }
        // an infinite component carries no markings, so it needs three
        // incident edges already
        if c == Cls::Inf && children[v].len() + 1 < 3 {
            continue;
        }
        classes[v] = c;
        assign_classes(mode, free_delta, parents, children, classes, v + 1, emit);
    }
}

// Vertices that may carry markings, plus per-vertex stability thresholds.
fn marking_slots(
    mode: Mode,
    free_delta: bool,
    children: &[Vec<usize>],
    classes: &[Cls],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n_v = classes.len();
    let mut slots = Vec::new();
    let mut deficit = vec![0usize; n_v];
    for v in 0..n_v {
        let finite = match classes[v] {
            Cls::Inf => false,
            _ => true,
        } && !(v == 0 && mode == Mode::Projective && !free_delta);
        if finite {
            slots.push(v);
        }
        if v == 0 && mode == Mode::Projective {
            continue; // the projective root is never unstable
        }
        // z0 counts on the affine root; every other special point is an
        // edge or a marking
        let base = children[v].len() + 1;
        let need = match classes[v] {
            Cls::Trans => 2,
            _ => 3,
        };
        if base < need {
            if !finite {
                return None; // infinite vertices were filtered earlier
            }
            deficit[v] = need - base;
        }
    }
    Some((slots, deficit))
}

fn try_markings(
    n: usize,
    mode: Mode,
    free_delta: bool,
    children: &[Vec<usize>],
    classes: &[Cls],
    emit: &mut impl FnMut(String),
) {
    let Some((slots, deficit)) = marking_slots(mode, free_delta, children, classes) else {
        return;
    };
    if deficit.iter().sum::<usize>() > n {
        return;
    }
    if n == 0 {
        if deficit.iter().all(|&d| d == 0) {
            emit(encode(children, classes, mode, free_delta, &[]));
        }
        return;
    }
    if slots.is_empty() {
        return;
    }
    // assignment[label - 1] = vertex carrying that label
    let mut assignment = vec![0usize; n];
    let mut counts = vec![0usize; classes.len()];
    place_label(
        0,
        n,
        &slots,
        &deficit,
        &mut assignment,
        &mut counts,
        &mut |assignment| {
            emit(encode(children, classes, mode, free_delta, assignment));
        },
    );
}

fn place_label(
    label: usize,
    n: usize,
    slots: &[usize],
    deficit: &[usize],
    assignment: &mut Vec<usize>,
    counts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if label == n {
        if deficit.iter().enumerate().all(|(v, &d)| counts[v] >= d) {
            emit(assignment);
        }
        return;
    }
    for &v in slots {
        assignment[label] = v;
        counts[v] += 1;
        place_label(label + 1, n, slots, deficit, assignment, counts, emit);
        counts[v] -= 1;
    }
}

fn encode(
    children: &[Vec<usize>],
    classes: &[Cls],
    mode: Mode,
    free_delta: bool,
    assignment: &[usize],
) -> String {
    let chars: Vec<char> = (0..classes.len())
        .map(|v| {
            if v == 0 && mode == Mode::Projective {
                if free_delta {
                    'f'
                } else {
                    'x'
                }
            } else {
                match classes[v] {
                    Cls::Zero => 'z',
                    Cls::Trans => 't',
                    Cls::Inf => 'i',
                }
            }
        })
        .collect();
    let mut marks = vec![Vec::new(); classes.len()];
    for (label0, &v) in assignment.iter().enumerate() {
        marks[v].push(label0 + 1);
    }
    encode_vertex(0, children, &chars, &marks)
}

fn encode_vertex(v: usize, children: &[Vec<usize>], chars: &[char], marks: &[Vec<usize>]) -> String {
    let m = marks[v].iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let mut kids: Vec<String> = children[v]
        .iter()
        .map(|&c| encode_vertex(c, children, chars, marks))
        .collect();
    kids.sort();
    format!("{}[{}]({})", chars[v], m, kids.join(""))
}

fn encode_enumerated(ty: &CombinatorialType) -> String {
    let n_v = ty.num_vertices();
    let mut children = vec![Vec::new(); n_v];
    for v in 0..n_v {
        if let Some(p) = ty.tree().parent(v) {
            children[p].push(v);
        }
    }
    let chars: Vec<char> = (0..n_v)
        .map(|v| match ty.class(v) {
            NodeClass::Zero => 'z',
            NodeClass::Transition => 't',
            NodeClass::Infinite => 'i',
            NodeClass::FreeDelta => 'f',
            NodeClass::ForcedInfinite => 'x',
        })
        .collect();
    let mut marks = vec![Vec::new(); n_v];
    for (&label, &v) in ty.markings() {
        marks[v].push(label);
    }
    for m in &mut marks {
        m.sort_unstable();
    }
    encode_vertex(ty.root(), &children, &chars, &marks)
}
