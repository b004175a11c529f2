//! Exhaustive enumeration of stable types with n labelled markings.
//!
//! The search is finite because every non-root subtree must contain a
//! marking: an infinite-scaling leaf can never reach three special points,
//! a zero leaf needs two markings, a transition leaf one. Unary unmarked
//! chains die for the same reason except for a single transition vertex,
//! which forces zero classes below it, so depth is bounded as well. Each
//! vertex is generated with its stability bound checked before recursing.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::{canonical_form, is_stable_type, validate_type, CombinatorialType, Mode, NodeClass};

struct SubTree {
    class: NodeClass,
    marks: Vec<usize>,
    children: Vec<SubTree>,
}

impl SubTree {
    fn all_zero(&self) -> bool {
        self.class == NodeClass::Zero && self.children.iter().all(SubTree::all_zero)
    }
}

/// All isomorphism classes of valid stable types with markings 1..n, in
/// canonical order.
pub fn enumerate_types(n: usize, mode: Mode) -> Vec<CombinatorialType> {
    assert!(n <= 8, "marking count beyond desk scale");
    let all: Vec<usize> = (1..=n).collect();
    let mut found: BTreeMap<String, CombinatorialType> = BTreeMap::new();
    let mut emit = |ty: CombinatorialType| {
        debug_assert!(validate_type(&ty).is_empty());
        debug_assert!(is_stable_type(&ty).stable);
        found.insert(canonical_form(&ty), ty);
    };
    match mode {
        Mode::Projective => {
            for root_marks in subsets(&all) {
                let rest = complement(&all, &root_marks);
                for partition in partitions(&rest) {
                    if partition.is_empty() {
                        emit(flatten(mode, NodeClass::FreeDelta, &root_marks, &[]));
                        continue;
                    }
                    let options: Vec<Vec<SubTree>> = partition
                        .iter()
                        .map(|block| gen_subtrees(block, NodeClass::Infinite, true))
                        .collect();
                    if options.iter().any(Vec::is_empty) {
                        continue;
                    }
                    for combo in options.iter().map(|o| o.iter()).multi_cartesian_product() {
                        let all_zero = combo.iter().all(|t| t.all_zero());
                        let root_class = if all_zero {
                            NodeClass::FreeDelta
                        } else if root_marks.is_empty() {
                            NodeClass::ForcedInfinite
                        } else {
                            continue; // infinite root cannot carry markings
                        };
                        emit(flatten_refs(mode, root_class, &root_marks, &combo));
                    }
                }
            }
        }
        Mode::Affine => {
            for class in [NodeClass::Transition, NodeClass::Infinite] {
                let own_options = match class {
                    NodeClass::Transition => subsets(&all),
                    _ => vec![Vec::new()],
                };
                for own in own_options {
                    let rest = complement(&all, &own);
                    for partition in partitions(&rest) {
                        // z0 plus markings plus one edge per child
                        let s = 1 + own.len() + partition.len();
                        let need = if class == NodeClass::Transition { 2 } else { 3 };
                        if s < need {
                            continue;
                        }
                        let (child_max, t_allowed) = match class {
                            NodeClass::Transition => (NodeClass::Zero, false),
                            _ => (NodeClass::Infinite, true),
                        };
                        let options: Vec<Vec<SubTree>> = partition
                            .iter()
                            .map(|block| gen_subtrees(block, child_max, t_allowed))
                            .collect();
                        if options.iter().any(Vec::is_empty) {
                            continue;
                        }
                        for combo in options.iter().map(|o| o.iter()).multi_cartesian_product() {
                            emit(flatten_refs(mode, class, &own, &combo));
                        }
                    }
                }
            }
        }
    }
    found.into_values().collect()
}

// All stable subtrees over a nonempty marking set whose top vertex hangs
// below an edge, has class at most max, and may be a transition only when
// the path above has none.
fn gen_subtrees(marks: &[usize], max: NodeClass, t_allowed: bool) -> Vec<SubTree> {
    debug_assert!(!marks.is_empty());
    let mut out = Vec::new();
    for class in [NodeClass::Zero, NodeClass::Transition, NodeClass::Infinite] {
        if class > max || (class == NodeClass::Transition && !t_allowed) {
            continue;
        }
        let own_options = match class {
            NodeClass::Infinite => vec![Vec::new()],
            _ => subsets(marks),
        };
        let (child_max, child_t) = match class {
            NodeClass::Infinite => (NodeClass::Infinite, t_allowed),
            _ => (NodeClass::Zero, false),
        };
        for own in own_options {
            let rest = complement(marks, &own);
            for partition in partitions(&rest) {
                let s = 1 + own.len() + partition.len();
                let need = if class == NodeClass::Transition { 2 } else { 3 };
                if s < need {
                    continue;
                }
                let options: Vec<Vec<SubTree>> = partition
                    .iter()
                    .map(|block| gen_subtrees(block, child_max, child_t))
                    .collect();
                if options.iter().any(Vec::is_empty) {
                    continue;
                }
                for combo in options.iter().map(|o| o.iter()).multi_cartesian_product() {
                    out.push(SubTree {
                        class,
                        marks: own.clone(),
                        children: combo.into_iter().map(clone_subtree).collect(),
                    });
                }
            }
        }
    }
    out
}

fn clone_subtree(t: &SubTree) -> SubTree {
    SubTree {
        class: t.class,
        marks: t.marks.clone(),
        children: t.children.iter().map(clone_subtree).collect(),
    }
}

fn flatten(mode: Mode, root_class: NodeClass, root_marks: &[usize], kids: &[SubTree]) -> CombinatorialType {
    flatten_refs(mode, root_class, root_marks, &kids.iter().collect::<Vec<_>>())
}

fn flatten_refs(
    mode: Mode,
    root_class: NodeClass,
    root_marks: &[usize],
    kids: &[&SubTree],
) -> CombinatorialType {
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut class = vec![root_class];
    let mut markings: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in root_marks {
        markings.insert(l, 0);
    }
    for kid in kids {
        attach(kid, 0, &mut parent, &mut class, &mut markings);
    }
    CombinatorialType::new(mode, parent, class, markings).expect("generated shape is well formed")
}

fn attach(
    t: &SubTree,
    p: usize,
    parent: &mut Vec<Option<usize>>,
    class: &mut Vec<NodeClass>,
    markings: &mut BTreeMap<usize, usize>,
) {
    let id = parent.len();
    parent.push(Some(p));
    class.push(t.class);
    for &l in &t.marks {
        markings.insert(l, id);
    }
    for kid in &t.children {
        attach(kid, id, parent, class, markings);
    }
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0u32..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &x)| x)
                .collect(),
        );
    }
    out
}

fn complement(items: &[usize], taken: &[usize]) -> Vec<usize> {
    items.iter().copied().filter(|x| !taken.contains(x)).collect()
}

// Partitions into unordered nonempty blocks; the empty set has exactly the
// empty partition.
fn partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &x in items {
        let mut next = Vec::new();
        for p in &out {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}
