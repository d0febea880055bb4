//! Edge orders of k-uniform hypergraphs: per-edge classification, minimal paths, the
//! named sub-structures, bicycle detection and the good-suffix decomposition.

mod bicycle;
mod decompose;
mod oracle;
mod structures;

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, Vertex};

pub use bicycle::{detect_bicycle, detect_bicycle_bounded, DEFAULT_DETECT_BUDGET};
pub use decompose::{decompose_component, decompose_component_bounded, verify_decomposition, Decomposition, DecompositionCase, Outcome};
pub use oracle::{bad_valid_order_in, has_bad_valid_order, DEFAULT_ORACLE_CAP};
pub use structures::{recognize, recognize_structure, StructureKind, StructureParams, StructureWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Initial,
    /// Exactly one old vertex.
    Good,
    /// Between two and `k - 1` old vertices.
    Bad,
    /// All `k` vertices old.
    KBad,
    /// No old vertex.
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    pub order: Vec<EdgeId>,
    pub classes: Vec<EdgeClass>,
    pub new_vertices: Vec<Vec<Vertex>>,
}

impl EdgeOrder {
    /// No edge after the first is disjoint from its predecessors.
    pub fn is_allowed(&self) -> bool {
        !self.classes.contains(&EdgeClass::Disconnected)
    }

    /// Every edge after the first is good or bad.
    pub fn is_valid(&self) -> bool {
        self.classes.iter().skip(1).all(|c| matches!(c, EdgeClass::Good | EdgeClass::Bad))
    }

    /// Every edge after the first is good.
    pub fn is_simple(&self) -> bool {
        self.classes.iter().skip(1).all(|&c| c == EdgeClass::Good)
    }

    pub fn count(&self, class: EdgeClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }
}

/// Classes of a sequence of sorted vertex lists, in order.
pub fn classify_sequence(k: usize, edges: &[&[Vertex]]) -> Vec<EdgeClass> {
    let mut seen: HashSet<Vertex> = HashSet::new();
    edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let old = e.iter().filter(|v| seen.contains(v)).count();
            seen.extend(e.iter().copied());
            match (i, old) {
                (0, _) => EdgeClass::Initial,
                (_, 0) => EdgeClass::Disconnected,
                (_, 1) => EdgeClass::Good,
                (_, o) if o >= k => EdgeClass::KBad,
                _ => EdgeClass::Bad,
            }
        })
        .collect()
}

pub fn classify_order(h: &Hypergraph, order: &[EdgeId]) -> Result<EdgeOrder> {
    let mut distinct = HashSet::new();
    for &id in order {
        if id >= h.num_edges() {
            return Err(Error::InvalidInput(format!("edge id {id} out of range")));
        }
        if !distinct.insert(id) {
            return Err(Error::InvalidInput(format!("edge id {id} repeated in order")));
        }
    }
    let edges: Vec<&[Vertex]> = order.iter().map(|&id| h.edge(id)).collect();
    let classes = classify_sequence(h.uniformity(), &edges);
    let mut seen: HashSet<Vertex> = HashSet::new();
    let new_vertices = edges
        .iter()
        .map(|e| e.iter().copied().filter(|&v| seen.insert(v)).collect())
        .collect();
    Ok(EdgeOrder { order: order.to_vec(), classes, new_vertices })
}

/// Shortest minimal path from `x1` to `x2` using `candidates`; ties go to the
/// lexicographically least id sequence.
pub fn find_minimal_path(h: &Hypergraph, candidates: &[EdgeId], x1: &[Vertex], x2: &[Vertex]) -> Option<Vec<EdgeId>> {
    if x1.iter().any(|v| x2.contains(v)) {
        return None;
    }
    let mut cands: Vec<EdgeId> = candidates.to_vec();
    cands.sort_unstable();
    cands.dedup();
    let meets = |e: EdgeId, xs: &[Vertex]| h.edge(e).iter().any(|v| xs.contains(v));
    let starts: Vec<EdgeId> = cands.iter().copied().filter(|&e| meets(e, x1)).collect();
    for len in 1..=cands.len() {
        for &s in &starts {
            let mut path = vec![s];
            if extend_path(h, &cands, x1, x2, len, &mut path) {
                return Some(path);
            }
        }
    }
    None
}

fn extend_path(h: &Hypergraph, cands: &[EdgeId], x1: &[Vertex], x2: &[Vertex], len: usize, path: &mut Vec<EdgeId>) -> bool {
    let last = *path.last().expect("non-empty path");
    let touches_x2 = h.edge(last).iter().any(|v| x2.contains(v));
    if path.len() == len {
        return touches_x2;
    }
    if touches_x2 {
        return false;
    }
    for &e in cands {
        if path.contains(&e) || h.edge(e).iter().any(|v| x1.contains(v)) {
            continue;
        }
        let ev = h.edge(e);
        let ok = crate::hypergraph::intersection_size(ev, h.edge(last)) >= 1
            && path[..path.len() - 1].iter().all(|&p| crate::hypergraph::intersection_size(ev, h.edge(p)) == 0);
        if ok {
            path.push(e);
            if extend_path(h, cands, x1, x2, len, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}
