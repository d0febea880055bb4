//! Pure validators for the named edge sequences.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{classify_sequence, EdgeClass};
use crate::hypergraph::{intersection_size, EdgeId, Hypergraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    OverlappingPair,
    LoosePath,
    LooseCycle,
    SpoiledCycle,
    DoubleLooseCycle,
    DoubleOverlappingPair,
    PairOrCycleWithHandle,
    PairOrCycleToPairOrCycle,
    Pasch,
    StarKU2,
    LinkKUA,
}

impl StructureKind {
    pub const ALL: [StructureKind; 11] = [
        StructureKind::OverlappingPair,
        StructureKind::LoosePath,
        StructureKind::LooseCycle,
        StructureKind::SpoiledCycle,
        StructureKind::DoubleLooseCycle,
        StructureKind::DoubleOverlappingPair,
        StructureKind::PairOrCycleWithHandle,
        StructureKind::PairOrCycleToPairOrCycle,
        StructureKind::Pasch,
        StructureKind::StarKU2,
        StructureKind::LinkKUA,
    ];

    pub fn is_bicycle(self) -> bool {
        matches!(
            self,
            StructureKind::SpoiledCycle
                | StructureKind::DoubleLooseCycle
                | StructureKind::DoubleOverlappingPair
                | StructureKind::PairOrCycleWithHandle
                | StructureKind::PairOrCycleToPairOrCycle
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::OverlappingPair => "overlapping_pair",
            StructureKind::LoosePath => "loose_path",
            StructureKind::LooseCycle => "loose_cycle",
            StructureKind::SpoiledCycle => "spoiled_cycle",
            StructureKind::DoubleLooseCycle => "double_loose_cycle",
            StructureKind::DoubleOverlappingPair => "double_overlapping_pair",
            StructureKind::PairOrCycleWithHandle => "pair_or_cycle_with_handle",
            StructureKind::PairOrCycleToPairOrCycle => "pair_or_cycle_to_pair_or_cycle",
            StructureKind::Pasch => "pasch",
            StructureKind::StarKU2 => "star_k_u_2",
            StructureKind::LinkKUA => "link_k_u_a",
        }
    }
}

/// Parameters read off a recognized sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StructureParams {
    pub k: usize,
    /// Edge count, except for stars, where it is the size of each loose star.
    pub u: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    /// Lengths of the prefixes where the sequence splits into its parts.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub split: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centers: Option<[Vertex; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureWitness {
    pub kind: StructureKind,
    pub edges: Vec<Vec<Vertex>>,
    pub parameters: StructureParams,
}

impl StructureWitness {
    /// Builds a witness if the sequence really is of the given kind.
    pub fn new(k: usize, kind: StructureKind, edges: Vec<Vec<Vertex>>) -> Option<Self> {
        let parameters = recognize(k, &edges, kind)?;
        Some(Self { kind, edges, parameters })
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        vertex_set(&self.edges).into_iter().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("witness serializes")
    }
}

/// Validates a sequence of edges of `h`, given by id.
pub fn recognize_structure(h: &Hypergraph, edges: &[EdgeId], kind: StructureKind) -> bool {
    if edges.iter().any(|&e| e >= h.num_edges()) {
        return false;
    }
    let seq: Vec<Vec<Vertex>> = edges.iter().map(|&e| h.edge(e).to_vec()).collect();
    recognize(h.uniformity(), &seq, kind).is_some()
}

/// Validates a sequence of sorted k-sets against a definition.
pub fn recognize(k: usize, edges: &[Vec<Vertex>], kind: StructureKind) -> Option<StructureParams> {
    if edges.is_empty() || edges.iter().any(|e| e.len() != k || e.windows(2).any(|w| w[0] >= w[1])) {
        return None;
    }
    let distinct: BTreeSet<&Vec<Vertex>> = edges.iter().collect();
    if distinct.len() != edges.len() {
        return None;
    }
    let u = edges.len();
    let base = StructureParams { k, u, ..Default::default() };
    match kind {
        StructureKind::OverlappingPair => (u == 2 && is_pair(k, edges)).then_some(base),
        StructureKind::LoosePath => is_loose_path(k, edges).then_some(base),
        StructureKind::LooseCycle => is_loose_cycle(k, edges).then_some(base),
        StructureKind::SpoiledCycle => spoiled_cycle(k, edges),
        StructureKind::DoubleLooseCycle => double_loose_cycle(k, edges),
        StructureKind::DoubleOverlappingPair => double_pair(k, edges),
        StructureKind::PairOrCycleWithHandle => with_handle(k, edges),
        StructureKind::PairOrCycleToPairOrCycle => connected_pair(k, edges),
        StructureKind::Pasch => pasch(k, edges),
        StructureKind::StarKU2 => star(k, edges),
        StructureKind::LinkKUA => link(k, edges),
    }
}

fn vertex_set(edges: &[Vec<Vertex>]) -> BTreeSet<Vertex> {
    edges.iter().flatten().copied().collect()
}

fn set_of(e: &[Vertex]) -> BTreeSet<Vertex> {
    e.iter().copied().collect()
}

/// `(a \ b) ∩ (c \ d)`.
fn diff_meet(a: &[Vertex], b: &[Vertex], c: &[Vertex], d: &[Vertex]) -> BTreeSet<Vertex> {
    a.iter().filter(|v| !b.contains(v) && c.contains(v) && !d.contains(v)).copied().collect()
}

fn is_singleton(s: &BTreeSet<Vertex>, v: Vertex) -> bool {
    s.len() == 1 && s.contains(&v)
}

/// A valid order in which consecutive edges meet.
fn valid_chain(k: usize, edges: &[Vec<Vertex>]) -> bool {
    let refs: Vec<&[Vertex]> = edges.iter().map(Vec::as_slice).collect();
    let classes = classify_sequence(k, &refs);
    classes.iter().skip(1).all(|c| matches!(c, EdgeClass::Good | EdgeClass::Bad))
        && edges.windows(2).all(|w| intersection_size(&w[0], &w[1]) >= 1)
}

fn allowed(k: usize, edges: &[Vec<Vertex>]) -> bool {
    let refs: Vec<&[Vertex]> = edges.iter().map(Vec::as_slice).collect();
    !classify_sequence(k, &refs).contains(&EdgeClass::Disconnected)
}

fn is_pair(k: usize, edges: &[Vec<Vertex>]) -> bool {
    edges.len() == 2 && {
        let s = intersection_size(&edges[0], &edges[1]);
        (2..k).contains(&s)
    }
}

fn is_loose_path(k: usize, edges: &[Vec<Vertex>]) -> bool {
    let u = edges.len();
    u >= 1
        && (0..u).all(|i| {
            (i + 1..u).all(|j| intersection_size(&edges[i], &edges[j]) == usize::from(j == i + 1))
        })
        && valid_chain(k, edges)
}

/// For three edges the three pairwise intersections must be different vertices, so the
/// closing edge has two old vertices; three edges through one common vertex do not count.
fn is_loose_cycle(k: usize, edges: &[Vec<Vertex>]) -> bool {
    let u = edges.len();
    u >= 3
        && (0..u).all(|i| {
            (i + 1..u).all(|j| {
                let adjacent = j == i + 1 || (i == 0 && j == u - 1);
                intersection_size(&edges[i], &edges[j]) == usize::from(adjacent)
            })
        })
        && (u > 3 || edges[0].iter().all(|v| !(edges[1].contains(v) && edges[2].contains(v))))
        && valid_chain(k, edges)
}

fn pair_or_cycle(k: usize, edges: &[Vec<Vertex>]) -> bool {
    match edges.len() {
        2 => is_pair(k, edges) && valid_chain(k, edges),
        n if n >= 3 => is_loose_cycle(k, edges),
        _ => false,
    }
}

/// The two shared vertices of two parts, if there are exactly two.
fn two_common(a: &[Vec<Vertex>], b: &[Vec<Vertex>]) -> Option<[Vertex; 2]> {
    let common: Vec<Vertex> = vertex_set(a).intersection(&vertex_set(b)).copied().collect();
    (common.len() == 2).then(|| [common[0], common[1]])
}

fn spoiled_cycle(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    let u = e.len();
    if u < 3 || !valid_chain(k, e) || !is_pair(k, &e[..2]) || !is_loose_path(k, &e[2..]) {
        return None;
    }
    let [p, q] = two_common(&e[..2], &e[2..])?;
    let ez = if u >= 4 { &e[3] } else { &e[0] };
    for (x, y) in [(p, q), (q, p)] {
        if is_singleton(&diff_meet(&e[1], &e[0], &e[2], ez), x) && is_singleton(&diff_meet(&e[0], &e[1], &e[u - 1], &e[u - 2]), y) {
            return Some(StructureParams { k, u, split: vec![2], x: Some(x), y: Some(y), ..Default::default() });
        }
    }
    None
}

fn double_loose_cycle(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    let u = e.len();
    if u < 5 || !valid_chain(k, e) {
        return None;
    }
    for v in 3..=u - 2 {
        let (p1, p2) = (&e[..v], &e[v..]);
        if !is_loose_cycle(k, p1) || !is_loose_path(k, p2) {
            continue;
        }
        let Some([p, q]) = two_common(p1, p2) else { continue };
        for (x, y) in [(p, q), (q, p)] {
            let x_ok = is_singleton(&diff_meet(&e[v], &e[v + 1], &e[v - 1], &[]), x);
            let y_ok = (0..v).any(|a| is_singleton(&diff_meet(&e[u - 1], &e[u - 2], &e[a], &[]), y));
            if x_ok && y_ok {
                return Some(StructureParams { k, u, split: vec![v], x: Some(x), y: Some(y), ..Default::default() });
            }
        }
    }
    None
}

fn double_pair(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    if e.len() != 4 || !valid_chain(k, e) || !is_pair(k, &e[..2]) || !is_pair(k, &e[2..]) {
        return None;
    }
    if intersection_size(&e[2], &e[3]) > k - 2 {
        return None;
    }
    let [p, q] = two_common(&e[..2], &e[2..])?;
    for (x, y) in [(p, q), (q, p)] {
        if is_singleton(&diff_meet(&e[0], &e[1], &e[3], &e[2]), x) && is_singleton(&diff_meet(&e[1], &e[0], &e[2], &e[3]), y) {
            return Some(StructureParams { k, u: 4, split: vec![2], x: Some(x), y: Some(y), ..Default::default() });
        }
    }
    None
}

fn with_handle(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    let u = e.len();
    if u < 3 || !valid_chain(k, e) || !pair_or_cycle(k, &e[..u - 1]) {
        return None;
    }
    let refs: Vec<&[Vertex]> = e.iter().map(Vec::as_slice).collect();
    (classify_sequence(k, &refs)[u - 1] == EdgeClass::Bad).then(|| StructureParams { k, u, split: vec![u - 1], ..Default::default() })
}

fn connected_pair(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    let u = e.len();
    if u < 4 || !valid_chain(k, e) {
        return None;
    }
    for w in 2..=u - 2 {
        if !pair_or_cycle(k, &e[..w]) {
            continue;
        }
        let v1 = vertex_set(&e[..w]);
        for v in w..=u - 2 {
            let (p2, p3) = (&e[w..v], &e[v..]);
            if !pair_or_cycle(k, p3) {
                continue;
            }
            let v3 = vertex_set(p3);
            let ok = if w == v {
                v1.intersection(&v3).count() == 1
            } else {
                let v2 = vertex_set(p2);
                is_loose_path(k, p2)
                    && v1.intersection(&v2).count() == 1
                    && v1.is_disjoint(&v3)
                    && v2.intersection(&v3).count() == 1
                    && (v - w < 2 || (set_of(&e[w + 1]).is_disjoint(&v1) && set_of(&e[v - 2]).is_disjoint(&v3)))
            };
            if ok {
                return Some(StructureParams { k, u, split: vec![w, v], ..Default::default() });
            }
        }
    }
    None
}

fn pasch(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    if k != 3 || e.len() != 4 || !allowed(k, e) || vertex_set(e).len() != 6 {
        return None;
    }
    let pairwise_one = (0..4).all(|i| (i + 1..4).all(|j| intersection_size(&e[i], &e[j]) == 1));
    let twice = vertex_set(e).iter().all(|v| e.iter().filter(|x| x.contains(v)).count() == 2);
    (pairwise_one && twice).then_some(StructureParams { k, u: 4, ..Default::default() })
}

fn star(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    let u = e.len();
    if u < 4 || u % 2 == 1 || !allowed(k, e) {
        return None;
    }
    let half = u / 2;
    let verts: Vec<Vertex> = vertex_set(e).into_iter().collect();
    for &c1 in &verts {
        for &c2 in &verts {
            if c1 == c2 {
                continue;
            }
            let s1: Vec<&Vec<Vertex>> = e.iter().filter(|x| x.contains(&c1)).collect();
            let s2: Vec<&Vec<Vertex>> = e.iter().filter(|x| x.contains(&c2)).collect();
            if s1.len() != half || s2.len() != half || s1.iter().any(|x| x.contains(&c2)) {
                continue;
            }
            let loose = s1.iter().enumerate().all(|(i, a)| {
                s1[i + 1..].iter().all(|b| {
                    let common: Vec<&Vertex> = a.iter().filter(|v| b.contains(v)).collect();
                    common == vec![&c1]
                })
            });
            let matched = s1.iter().all(|a| {
                let mut partner: Vec<Vertex> = a.iter().map(|&v| if v == c1 { c2 } else { v }).collect();
                partner.sort_unstable();
                s2.contains(&&partner)
            });
            if loose && matched {
                return Some(StructureParams { k, u: half, a: Some(2), centers: Some([c1, c2]), ..Default::default() });
            }
        }
    }
    None
}

fn link(k: usize, e: &[Vec<Vertex>]) -> Option<StructureParams> {
    let u = e.len();
    if u < 2 || !allowed(k, e) {
        return None;
    }
    let total = vertex_set(e).len();
    let covering = (0..u).all(|i| (i + 1..u).all(|j| 2 * k - intersection_size(&e[i], &e[j]) == total));
    (covering && total > k).then(|| StructureParams { k, u, a: Some(total - k), ..Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(k: usize, edges: &[&[Vertex]], kind: StructureKind) -> Option<StructureParams> {
        let es: Vec<Vec<Vertex>> = edges.iter().map(|e| e.to_vec()).collect();
        recognize(k, &es, kind)
    }

    #[test]
    fn basic_shapes() {
        use StructureKind::*;
        assert!(rec(3, &[&[1, 2, 3], &[3, 4, 5], &[1, 5, 6]], LooseCycle).is_some());
        assert!(rec(3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]], Pasch).is_some());
        assert!(rec(3, &[&[1, 2, 3], &[2, 3, 4]], LoosePath).is_none());
        assert!(rec(3, &[&[1, 2, 3], &[2, 3, 4]], OverlappingPair).is_some());
        assert!(rec(3, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]], LoosePath).is_some());
        // Three edges through one vertex are a sunflower, not a cycle.
        assert!(rec(3, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]], LooseCycle).is_none());
    }

    #[test]
    fn pair_with_handle_is_also_spoiled_cycle() {
        let e: [&[Vertex]; 3] = [&[1, 2, 4, 6, 8], &[1, 2, 3, 5, 7], &[7, 8, 9, 10, 11]];
        assert!(rec(5, &e, StructureKind::PairOrCycleWithHandle).is_some());
        let sp = rec(5, &e, StructureKind::SpoiledCycle).unwrap();
        assert_eq!((sp.x, sp.y), (Some(7), Some(8)));
    }

    #[test]
    fn pair_to_cycle_figure() {
        let e: [&[Vertex]; 8] = [
            &[2, 3, 4],
            &[1, 2, 3],
            &[2, 5, 6],
            &[6, 7, 8],
            &[8, 9, 10],
            &[10, 11, 15],
            &[13, 14, 15],
            &[9, 12, 14],
        ];
        let p = rec(3, &e, StructureKind::PairOrCycleToPairOrCycle).unwrap();
        assert_eq!(p.split, vec![2, 4]);
        assert!(rec(3, &e[4..], StructureKind::LooseCycle).is_some());
    }

    #[test]
    fn double_structures() {
        // Two overlapping pairs glued at x = 1 and y = 5.
        let e: [&[Vertex]; 4] = [&[1, 2, 3], &[2, 3, 5], &[5, 6, 7], &[1, 6, 7]];
        assert!(rec(3, &e, StructureKind::DoubleOverlappingPair).is_none(), "|e3 ∩ e4| = 2 > k - 2");
        let e: [&[Vertex]; 4] = [&[1, 2, 3, 9], &[2, 3, 5, 10], &[5, 6, 7, 11], &[1, 6, 7, 12]];
        let p = rec(4, &e, StructureKind::DoubleOverlappingPair).unwrap();
        assert_eq!((p.x, p.y), (Some(1), Some(5)));

        // Triangle plus a two-edge chord joining vertex 5 to vertex 1.
        let e: [&[Vertex]; 5] = [&[1, 2, 3], &[3, 4, 5], &[1, 5, 6], &[5, 7, 8], &[2, 8, 9]];
        assert!(rec(3, &e, StructureKind::DoubleLooseCycle).is_some());
    }

    #[test]
    fn stars_and_links() {
        // (3,2,2)-star: centers 1 and 2.
        let e: [&[Vertex]; 4] = [&[1, 3, 4], &[2, 3, 4], &[1, 5, 6], &[2, 5, 6]];
        let p = rec(3, &e, StructureKind::StarKU2).unwrap();
        assert_eq!(p.centers, Some([1, 2]));
        assert_eq!(p.u, 2);
        // Three 4-sets inside 5 vertices pairwise cover everything.
        let e: [&[Vertex]; 3] = [&[1, 2, 3, 4], &[1, 2, 3, 5], &[1, 2, 4, 5]];
        assert_eq!(rec(4, &e, StructureKind::LinkKUA).unwrap().a, Some(1));
        assert!(rec(3, &[&[1, 2, 3], &[4, 5, 6]], StructureKind::LinkKUA).is_none());
    }

    #[test]
    fn bicycle_kinds() {
        assert_eq!(StructureKind::ALL.iter().filter(|k| k.is_bicycle()).count(), 5);
        let w = StructureWitness::new(3, StructureKind::LoosePath, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(w.to_json()["kind"], "loose_path");
    }
}
