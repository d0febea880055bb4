//! Orders of a bicycle-free component in which a short named prefix is followed only by
//! good edges.
//!
//! The construction starts from a greedy allowed order. If it is not simple, the first
//! non-good edge yields an overlapping pair or loose cycle as seed. The seed is placed
//! first and the rest is filled in greedily with good edges; a k-bad edge that blocks the
//! fill grows the seed into a Pasch configuration, a larger star or a larger link, and
//! the fill restarts.

use std::collections::BTreeSet;

use serde::Serialize;

use super::bicycle::{detect_bicycle_bounded, seeds};
use super::structures::{recognize, StructureKind, StructureWitness};
use super::{classify_order, classify_sequence, find_minimal_path, EdgeClass};
use crate::error::{Error, Result};
use crate::hypergraph::{intersection_size, EdgeId, Hypergraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionCase {
    /// Every edge after the first is good.
    Simple,
    LooseCycle,
    OverlappingPair,
    Pasch,
    Star,
    Link,
}

impl DecompositionCase {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionCase::Simple => "simple",
            DecompositionCase::LooseCycle => "loose_cycle",
            DecompositionCase::OverlappingPair => "overlapping_pair",
            DecompositionCase::Pasch => "pasch",
            DecompositionCase::Star => "star",
            DecompositionCase::Link => "link",
        }
    }

    fn kind(self) -> Option<StructureKind> {
        match self {
            DecompositionCase::Simple => None,
            DecompositionCase::LooseCycle => Some(StructureKind::LooseCycle),
            DecompositionCase::OverlappingPair => Some(StructureKind::OverlappingPair),
            DecompositionCase::Pasch => Some(StructureKind::Pasch),
            DecompositionCase::Star => Some(StructureKind::StarKU2),
            DecompositionCase::Link => Some(StructureKind::LinkKUA),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Edge ids of the ambient hypergraph.
    pub order: Vec<EdgeId>,
    /// Index of the last prefix edge; every later edge is good.
    pub a: usize,
    pub case: DecompositionCase,
    /// The prefix as a validated structure; absent for the simple case.
    pub prefix: Option<StructureWitness>,
}

impl Decomposition {
    pub fn prefix_edges(&self) -> &[EdgeId] {
        if self.order.is_empty() {
            &[]
        } else {
            &self.order[..=self.a]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Decomposed(Decomposition),
    Bicycle(StructureWitness),
}

/// Decomposes a component, or returns a bicycle inside it.
pub fn decompose_component(h: &Hypergraph, component: usize) -> Result<Outcome> {
    decompose_component_bounded(h, component, usize::MAX)
}

/// As [`decompose_component`], with a step budget for the bicycle and seed searches.
pub fn decompose_component_bounded(h: &Hypergraph, component: usize, budget: usize) -> Result<Outcome> {
    if let Some(w) = detect_bicycle_bounded(h, component, budget)? {
        return Ok(Outcome::Bicycle(w));
    }
    let c = h.component_hypergraph(component);
    let to_global = |local: &[EdgeId]| -> Vec<EdgeId> {
        local.iter().map(|&e| h.edge_id(c.edge(e)).expect("component edge is an edge")).collect()
    };
    let m = c.num_edges();
    if m == 0 {
        return Ok(Outcome::Decomposed(Decomposition { order: Vec::new(), a: 0, case: DecompositionCase::Simple, prefix: None }));
    }
    let k = c.uniformity();
    let greedy = fill(&c, &[]).expect("a connected component has an allowed order");
    if (k - 1) * m + 1 == c.num_vertices() {
        return Ok(Outcome::Decomposed(Decomposition { order: to_global(&greedy), a: 0, case: DecompositionCase::Simple, prefix: None }));
    }

    let mut candidates = Vec::new();
    if let Some(seed) = first_seed(&c, &greedy) {
        candidates.push(seed);
    }
    candidates.extend(seeds(&c, budget)?);
    for seed in candidates {
        if let Some((order, a, case)) = grow(&c, seed) {
            let edges: Vec<Vec<Vertex>> = order[..=a].iter().map(|&e| c.edge(e).to_vec()).collect();
            let prefix = case.kind().and_then(|kind| StructureWitness::new(k, kind, edges));
            let d = Decomposition { order: to_global(&order), a, case, prefix };
            if verify_decomposition(h, component, &d) {
                return Ok(Outcome::Decomposed(d));
            }
        }
    }
    Err(Error::Internal(format!("component {component} is bicycle-free but no decomposition was found")))
}

/// Re-checks a decomposition: the order covers the component, is allowed, is good after
/// position `a`, and its prefix has the shape named by the case.
pub fn verify_decomposition(h: &Hypergraph, component: usize, d: &Decomposition) -> bool {
    if component >= h.components().len() {
        return false;
    }
    let mut expected = h.component(component).edges.clone();
    expected.sort_unstable();
    let mut got = d.order.clone();
    got.sort_unstable();
    if got != expected {
        return false;
    }
    if d.order.is_empty() {
        return d.case == DecompositionCase::Simple;
    }
    let Ok(o) = classify_order(h, &d.order) else {
        return false;
    };
    if d.a >= d.order.len() || !o.is_allowed() || o.classes[d.a + 1..].iter().any(|&c| c != EdgeClass::Good) {
        return false;
    }
    let k = h.uniformity();
    let prefix: Vec<Vec<Vertex>> = d.order[..=d.a].iter().map(|&e| h.edge(e).to_vec()).collect();
    match d.case.kind() {
        None => d.a == 0,
        Some(kind) => match recognize(k, &prefix, kind) {
            None => false,
            Some(p) => match d.case {
                DecompositionCase::Star => d.a + 1 >= 4,
                DecompositionCase::Link => d.a + 1 >= 3 && p.a.is_some_and(|x| x <= k / d.a),
                _ => true,
            },
        },
    }
}

/// Where a greedy fill got stuck: the order so far and the touching non-good edges.
#[derive(Debug)]
struct Stuck {
    partial: Vec<EdgeId>,
    blocked: Vec<EdgeId>,
}

/// Extends `start` to an order of all edges, taking the smallest admissible edge at each
/// step. With an empty start any edge meeting the placed part is admissible; otherwise
/// only good edges are.
fn fill(c: &Hypergraph, start: &[EdgeId]) -> std::result::Result<Vec<EdgeId>, Stuck> {
    let m = c.num_edges();
    let mut order: Vec<EdgeId> = if start.is_empty() { vec![0] } else { start.to_vec() };
    let mut placed = vec![false; m];
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for &e in &order {
        placed[e] = true;
        seen.extend(c.edge(e).iter().copied());
    }
    let any = start.is_empty();
    while order.len() < m {
        let old = |e: EdgeId| c.edge(e).iter().filter(|v| seen.contains(v)).count();
        match (0..m).filter(|&e| !placed[e]).find(|&e| if any { old(e) >= 1 } else { old(e) == 1 }) {
            Some(e) => {
                placed[e] = true;
                seen.extend(c.edge(e).iter().copied());
                order.push(e);
            }
            None => {
                let blocked = (0..m).filter(|&e| !placed[e] && old(e) >= 2).collect();
                return Err(Stuck { partial: order, blocked });
            }
        }
    }
    Ok(order)
}

/// The overlapping pair or loose cycle closed by the first non-good edge of `order`.
fn first_seed(c: &Hypergraph, order: &[EdgeId]) -> Option<Vec<EdgeId>> {
    let refs: Vec<&[Vertex]> = order.iter().map(|&e| c.edge(e)).collect();
    let classes = classify_sequence(c.uniformity(), &refs);
    let i = classes.iter().position(|&cl| matches!(cl, EdgeClass::Bad | EdgeClass::KBad))?;
    let ei = order[i];
    let prefix = &order[..i];
    if let Some(&j) = prefix.iter().find(|&&j| intersection_size(c.edge(j), c.edge(ei)) >= 2) {
        return Some(vec![j, ei]);
    }
    // Every earlier edge meets e_i at most once, so two old vertices of e_i lie in
    // different edges of the loose tree built so far.
    let seen: BTreeSet<Vertex> = prefix.iter().flat_map(|&e| c.edge(e).iter().copied()).collect();
    let old: Vec<Vertex> = c.edge(ei).iter().copied().filter(|v| seen.contains(v)).collect();
    for (s, &x1) in old.iter().enumerate() {
        for &x2 in &old[s + 1..] {
            if let Some(path) = find_minimal_path(c, prefix, &[x1], &[x2]) {
                let mut cycle = path;
                cycle.push(ei);
                let edges: Vec<Vec<Vertex>> = cycle.iter().map(|&e| c.edge(e).to_vec()).collect();
                if recognize(c.uniformity(), &edges, StructureKind::LooseCycle).is_some() {
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn kind_of(k: usize, edges: &[EdgeId], c: &Hypergraph) -> Option<DecompositionCase> {
    let seq: Vec<Vec<Vertex>> = edges.iter().map(|&e| c.edge(e).to_vec()).collect();
    let is = |kind| recognize(k, &seq, kind).is_some();
    if edges.len() == 2 && is(StructureKind::OverlappingPair) {
        Some(DecompositionCase::OverlappingPair)
    } else if is(StructureKind::LooseCycle) {
        Some(DecompositionCase::LooseCycle)
    } else if is(StructureKind::Pasch) {
        Some(DecompositionCase::Pasch)
    } else if is(StructureKind::StarKU2) {
        Some(DecompositionCase::Star)
    } else if is(StructureKind::LinkKUA) {
        Some(DecompositionCase::Link)
    } else {
        None
    }
}

/// Places `seed` first and fills greedily, growing the prefix on k-bad blockers.
fn grow(c: &Hypergraph, mut prefix: Vec<EdgeId>) -> Option<(Vec<EdgeId>, usize, DecompositionCase)> {
    let k = c.uniformity();
    let mut case = kind_of(k, &prefix, c)?;
    loop {
        let Stuck { partial, blocked } = match fill(c, &prefix) {
            Ok(order) => return Some((order, prefix.len() - 1, case)),
            Err(stuck) => stuck,
        };
        let placed_verts: BTreeSet<Vertex> = partial.iter().flat_map(|&e| c.edge(e).iter().copied()).collect();
        let mut grown = None;
        for f in blocked {
            if c.edge(f).iter().any(|v| !placed_verts.contains(v)) {
                // A bad blocker: this seed does not lead anywhere.
                continue;
            }
            let mut with_f = prefix.clone();
            with_f.push(f);
            let next_case = match (case, kind_of(k, &with_f, c)) {
                (DecompositionCase::LooseCycle, Some(DecompositionCase::Pasch)) => Some(DecompositionCase::Pasch),
                (DecompositionCase::OverlappingPair | DecompositionCase::Link, Some(DecompositionCase::Link)) => {
                    Some(DecompositionCase::Link)
                }
                _ => None,
            };
            if let Some(nc) = next_case {
                grown = Some((with_f, nc));
                break;
            }
            if matches!(case, DecompositionCase::OverlappingPair | DecompositionCase::Star) {
                for &g in &partial[prefix.len()..] {
                    if intersection_size(c.edge(g), c.edge(f)) != k - 1 {
                        continue;
                    }
                    let mut s = prefix.clone();
                    s.push(g);
                    s.push(f);
                    if kind_of(k, &s, c) == Some(DecompositionCase::Star) {
                        grown = Some((s, DecompositionCase::Star));
                        break;
                    }
                }
                if grown.is_some() {
                    break;
                }
            }
        }
        let (p, nc) = grown?;
        prefix = p;
        case = nc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decompose(edges: Vec<Vec<Vertex>>) -> Outcome {
        let h = Hypergraph::from_edges(3, edges).unwrap();
        decompose_component(&h, 0).unwrap()
    }

    fn case_of(edges: Vec<Vec<Vertex>>) -> (DecompositionCase, usize) {
        match decompose(edges) {
            Outcome::Decomposed(d) => (d.case, d.a),
            Outcome::Bicycle(w) => panic!("unexpected bicycle {w:?}"),
        }
    }

    #[test]
    fn paths_and_trees_are_simple() {
        assert_eq!(case_of(vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]), (DecompositionCase::Simple, 0));
        assert_eq!(case_of(vec![vec![1, 2, 3], vec![1, 4, 5], vec![1, 6, 7], vec![3, 8, 9]]), (DecompositionCase::Simple, 0));
    }

    #[test]
    fn prefix_cases() {
        assert_eq!(case_of(vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1]]), (DecompositionCase::LooseCycle, 2));
        assert_eq!(case_of(vec![vec![1, 2, 3], vec![2, 3, 4], vec![4, 5, 6]]), (DecompositionCase::OverlappingPair, 1));
        assert_eq!(case_of(vec![vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 6], vec![3, 5, 6]]), (DecompositionCase::Pasch, 3));
        assert_eq!(case_of(vec![vec![1, 3, 4], vec![2, 3, 4], vec![1, 5, 6], vec![2, 5, 6]]), (DecompositionCase::Star, 3));
        assert_eq!(case_of(vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4]]), (DecompositionCase::Link, 2));
    }

    #[test]
    fn tails_are_good() {
        let edges = vec![vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 6], vec![3, 5, 6], vec![6, 7, 8], vec![8, 9, 10]];
        let h = Hypergraph::from_edges(3, edges).unwrap();
        let Outcome::Decomposed(d) = decompose_component(&h, 0).unwrap() else { panic!() };
        assert_eq!(d.case, DecompositionCase::Pasch);
        assert!(verify_decomposition(&h, 0, &d));
        let mut bad = d.clone();
        bad.order.swap(0, 5);
        assert!(!verify_decomposition(&h, 0, &bad));
    }

    #[test]
    fn bicycles_are_returned() {
        let o = decompose(vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1], vec![2, 4, 7]]);
        assert!(matches!(o, Outcome::Bicycle(w) if w.kind == StructureKind::PairOrCycleWithHandle));
    }
}
