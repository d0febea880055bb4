//! Pattern search for bicycles.
//!
//! Seeds are the overlapping pairs and loose cycles of a component. Each bicycle family is
//! a seed plus either one bad edge, a second seed, or a loose path leaving the seed at one
//! vertex; the search enumerates all of these exhaustively, and every candidate is checked
//! with the validators before it is returned.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::structures::{StructureKind, StructureWitness};
use crate::error::{Error, Result};
use crate::hypergraph::{intersection_size, EdgeId, Hypergraph, Vertex};

pub const DEFAULT_DETECT_BUDGET: usize = 2_000_000;

/// A bicycle inside the component, if there is one.
pub fn detect_bicycle(h: &Hypergraph, component: usize) -> Option<StructureWitness> {
    detect_bicycle_bounded(h, component, usize::MAX).expect("an unbounded search cannot run out of budget")
}

/// As [`detect_bicycle`], giving up with a cap error after `budget` search steps.
pub fn detect_bicycle_bounded(h: &Hypergraph, component: usize, budget: usize) -> Result<Option<StructureWitness>> {
    let c = h.component_hypergraph(component);
    let mut s = Search { h: &c, k: c.uniformity(), budget, steps: 0 };
    s.run()
}

/// Overlapping pairs, then loose cycles in cyclic order, of an already connected
/// hypergraph.
pub(super) fn seeds(h: &Hypergraph, budget: usize) -> Result<Vec<Vec<EdgeId>>> {
    let mut s = Search { h, k: h.uniformity(), budget, steps: 0 };
    if s.k < 3 {
        return Ok(Vec::new());
    }
    let mut out: Vec<Vec<EdgeId>> = s.pairs()?.into_iter().map(|p| p.edges).collect();
    out.extend(s.cycles()?.into_iter().map(|c| c.edges));
    Ok(out)
}

#[derive(Debug, Clone)]
struct Seed {
    /// Pair, or cycle in cyclic order.
    edges: Vec<EdgeId>,
    verts: BTreeSet<Vertex>,
}

impl Seed {
    fn is_cycle(&self) -> bool {
        self.edges.len() >= 3
    }

    /// Every order of the seed that is again a pair or cycle: both orders of a pair, all
    /// rotations and reflections of a cycle.
    fn orientations(&self) -> Vec<Vec<EdgeId>> {
        let n = self.edges.len();
        let mut out = Vec::new();
        for r in 0..n {
            out.push((0..n).map(|i| self.edges[(r + i) % n]).collect());
            if n >= 3 {
                out.push((0..n).map(|i| self.edges[(r + n - i) % n]).collect());
            }
        }
        out
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    k: usize,
    budget: usize,
    steps: usize,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::CapExceeded { what: "bicycle search steps", actual: self.steps, cap: self.budget });
        }
        Ok(())
    }

    fn edge(&self, e: EdgeId) -> &[Vertex] {
        self.h.edge(e)
    }

    fn witness(&self, kind: StructureKind, order: &[EdgeId]) -> Option<StructureWitness> {
        StructureWitness::new(self.k, kind, order.iter().map(|&e| self.edge(e).to_vec()).collect())
    }

    fn verts(&self, edges: &[EdgeId]) -> BTreeSet<Vertex> {
        edges.iter().flat_map(|&e| self.edge(e).iter().copied()).collect()
    }

    /// Edges meeting any vertex of `e`, other than `e`.
    fn neighbours(&self, e: EdgeId) -> BTreeSet<EdgeId> {
        self.edge(e).iter().flat_map(|&v| self.h.incident(v).iter().copied()).filter(|&f| f != e).collect()
    }

    fn run(&mut self) -> Result<Option<StructureWitness>> {
        if self.k < 3 || self.h.num_edges() < 2 {
            return Ok(None);
        }
        let pairs = self.pairs()?;
        for p in &pairs {
            if let Some(w) = self.handle(p)? {
                return Ok(Some(w));
            }
        }
        if let Some(w) = self.double_pair(&pairs)? {
            return Ok(Some(w));
        }
        let cycles = self.cycles()?;
        for c in &cycles {
            if let Some(w) = self.handle(c)? {
                return Ok(Some(w));
            }
        }
        let seeds: Vec<Seed> = pairs.into_iter().chain(cycles).collect();
        let mut by_vertex: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (i, s) in seeds.iter().enumerate() {
            for &v in &s.verts {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        for i in 0..seeds.len() {
            if let Some(w) = self.touching(&seeds, &by_vertex, i)? {
                return Ok(Some(w));
            }
            if let Some(w) = self.paths_from(&seeds, &by_vertex, i)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn pairs(&mut self) -> Result<Vec<Seed>> {
        let mut out = Vec::new();
        for a in 0..self.h.num_edges() {
            for b in self.neighbours(a) {
                self.tick()?;
                let s = intersection_size(self.edge(a), self.edge(b));
                if b > a && s >= 2 && s < self.k {
                    out.push(Seed { edges: vec![a, b], verts: self.verts(&[a, b]) });
                }
            }
        }
        Ok(out)
    }

    /// Loose cycles, each once, listed from their smallest edge.
    fn cycles(&mut self) -> Result<Vec<Seed>> {
        let mut out = Vec::new();
        let mut seen: HashSet<Vec<EdgeId>> = HashSet::new();
        for s in 0..self.h.num_edges() {
            let mut path = vec![s];
            self.grow_cycle(&mut path, &mut out, &mut seen)?;
        }
        Ok(out)
    }

    fn grow_cycle(&mut self, path: &mut Vec<EdgeId>, out: &mut Vec<Seed>, seen: &mut HashSet<Vec<EdgeId>>) -> Result<()> {
        self.tick()?;
        let first = path[0];
        let last = *path.last().expect("non-empty");
        for f in self.neighbours(last) {
            if f <= first || path.contains(&f) || intersection_size(self.edge(f), self.edge(last)) != 1 {
                continue;
            }
            let middle_clear = path.iter().skip(1).take(path.len().saturating_sub(2)).all(|&p| intersection_size(self.edge(f), self.edge(p)) == 0);
            if !middle_clear {
                continue;
            }
            let to_first = intersection_size(self.edge(f), self.edge(first));
            if path.len() == 1 {
                // f is the second edge, meeting the first in one vertex.
                path.push(f);
                self.grow_cycle(path, out, seen)?;
                path.pop();
            } else if to_first == 1 {
                path.push(f);
                let mut key = path.clone();
                key.sort_unstable();
                if self.witness(StructureKind::LooseCycle, path).is_some() && seen.insert(key) {
                    out.push(Seed { edges: path.clone(), verts: self.verts(path) });
                }
                path.pop();
            } else if to_first == 0 {
                path.push(f);
                self.grow_cycle(path, out, seen)?;
                path.pop();
            }
        }
        Ok(())
    }

    /// A seed followed by an edge with between two and `k - 1` vertices on it.
    fn handle(&mut self, seed: &Seed) -> Result<Option<StructureWitness>> {
        let near: BTreeSet<EdgeId> = seed.verts.iter().flat_map(|&v| self.h.incident(v).iter().copied()).collect();
        for e in near {
            self.tick()?;
            if seed.edges.contains(&e) {
                continue;
            }
            let old = self.edge(e).iter().filter(|v| seed.verts.contains(v)).count();
            if old >= 2 && old < self.k {
                for mut o in seed.orientations() {
                    o.push(e);
                    if let Some(w) = self.witness(StructureKind::PairOrCycleWithHandle, &o) {
                        return Ok(Some(w));
                    }
                }
            }
        }
        Ok(None)
    }

    fn double_pair(&mut self, pairs: &[Seed]) -> Result<Option<StructureWitness>> {
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[i + 1..] {
                self.tick()?;
                if p.verts.intersection(&q.verts).count() != 2 || p.edges.iter().any(|e| q.edges.contains(e)) {
                    continue;
                }
                for a in p.orientations() {
                    for b in q.orientations() {
                        for (x, y) in [(&a, &b), (&b, &a)] {
                            let order: Vec<EdgeId> = x.iter().chain(y.iter()).copied().collect();
                            if let Some(w) = self.witness(StructureKind::DoubleOverlappingPair, &order) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Two seeds sharing exactly one vertex.
    fn touching(&mut self, seeds: &[Seed], by_vertex: &HashMap<Vertex, Vec<usize>>, i: usize) -> Result<Option<StructureWitness>> {
        let p1 = &seeds[i];
        let others: BTreeSet<usize> = p1.verts.iter().flat_map(|v| by_vertex[v].iter().copied()).filter(|&j| j != i).collect();
        for j in others {
            self.tick()?;
            let p3 = &seeds[j];
            if p1.verts.intersection(&p3.verts).count() != 1 || p1.edges.iter().any(|e| p3.edges.contains(e)) {
                continue;
            }
            if let Some(w) = self.connector(p1, &[], p3) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn connector(&self, p1: &Seed, path: &[EdgeId], p3: &Seed) -> Option<StructureWitness> {
        for a in p1.orientations() {
            for b in p3.orientations() {
                let order: Vec<EdgeId> = a.iter().chain(path).chain(b.iter()).copied().collect();
                if let Some(w) = self.witness(StructureKind::PairOrCycleToPairOrCycle, &order) {
                    return Some(w);
                }
            }
        }
        None
    }

    /// Loose paths leaving seed `i` at one vertex. A path returning to the seed at a
    /// second vertex closes a spoiled or double loose cycle; a path reaching another seed
    /// at one vertex forms a connector.
    fn paths_from(&mut self, seeds: &[Seed], by_vertex: &HashMap<Vertex, Vec<usize>>, i: usize) -> Result<Option<StructureWitness>> {
        let p1 = &seeds[i];
        let starts: BTreeSet<EdgeId> = p1.verts.iter().flat_map(|&v| self.h.incident(v).iter().copied()).collect();
        for e in starts {
            let meet: Vec<Vertex> = self.edge(e).iter().copied().filter(|v| p1.verts.contains(v)).collect();
            if meet.len() != 1 {
                continue;
            }
            let mut path = vec![e];
            let mut used: BTreeSet<Vertex> = self.edge(e).iter().copied().collect();
            if let Some(w) = self.extend(seeds, by_vertex, p1, meet[0], &mut path, &mut used)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn extend(
        &mut self,
        seeds: &[Seed],
        by_vertex: &HashMap<Vertex, Vec<usize>>,
        p1: &Seed,
        x: Vertex,
        path: &mut Vec<EdgeId>,
        used: &mut BTreeSet<Vertex>,
    ) -> Result<Option<StructureWitness>> {
        self.tick()?;
        let last = *path.last().expect("non-empty");
        // Connectors ending at the current edge.
        let prev: &[Vertex] = if path.len() >= 2 { self.edge(path[path.len() - 2]) } else { &[] };
        let exits: Vec<Vertex> =
            self.edge(last).iter().copied().filter(|v| !prev.contains(v) && !p1.verts.contains(v)).collect();
        for z in exits {
            for &j in by_vertex.get(&z).map_or(&[][..], Vec::as_slice) {
                self.tick()?;
                let p3 = &seeds[j];
                if !p3.verts.is_disjoint(&p1.verts) || p3.verts.intersection(used).count() != 1 {
                    continue;
                }
                if p3.edges.iter().any(|e| path.contains(e)) {
                    continue;
                }
                if let Some(w) = self.connector(p1, path, p3) {
                    return Ok(Some(w));
                }
            }
        }
        for f in self.neighbours(last) {
            if path.contains(&f) || p1.edges.contains(&f) || intersection_size(self.edge(f), self.edge(last)) != 1 {
                continue;
            }
            if path[..path.len() - 1].iter().any(|&p| intersection_size(self.edge(f), self.edge(p)) != 0) {
                continue;
            }
            let back: Vec<Vertex> = self.edge(f).iter().copied().filter(|v| p1.verts.contains(v)).collect();
            match back.as_slice() {
                [] => {
                    path.push(f);
                    let added: Vec<Vertex> = self.edge(f).iter().copied().filter(|&v| used.insert(v)).collect();
                    let r = self.extend(seeds, by_vertex, p1, x, path, used)?;
                    for v in added {
                        used.remove(&v);
                    }
                    path.pop();
                    if r.is_some() {
                        return Ok(r);
                    }
                }
                [y] if *y != x => {
                    path.push(f);
                    let w = self.closed(p1, path);
                    path.pop();
                    if w.is_some() {
                        return Ok(w);
                    }
                }
                _ => {}
            }
        }
        Ok(None)
    }

    fn closed(&mut self, p1: &Seed, path: &[EdgeId]) -> Option<StructureWitness> {
        let kind = if p1.is_cycle() { StructureKind::DoubleLooseCycle } else { StructureKind::SpoiledCycle };
        for a in p1.orientations() {
            let order: Vec<EdgeId> = a.iter().chain(path).copied().collect();
            if let Some(w) = self.witness(kind, &order) {
                return Some(w);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn detect(edges: Vec<Vec<Vertex>>) -> Option<StructureWitness> {
        let h = Hypergraph::from_edges(3, edges).unwrap();
        detect_bicycle(&h, 0)
    }

    #[test]
    fn cycle_with_handle() {
        let w = detect(vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1], vec![2, 4, 7]]).unwrap();
        assert_eq!(w.kind, StructureKind::PairOrCycleWithHandle);
    }

    #[test]
    fn loose_path_and_star_are_clean() {
        assert!(detect(vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7], vec![7, 8, 9]]).is_none());
        assert!(detect(vec![vec![1, 3, 4], vec![2, 3, 4], vec![1, 5, 6], vec![2, 5, 6]]).is_none());
        assert!(detect(vec![vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 6], vec![3, 5, 6]]).is_none());
    }

    #[test]
    fn finds_each_family() {
        let w = detect(vec![vec![2, 3, 4], vec![1, 2, 3], vec![2, 5, 6], vec![6, 7, 8], vec![8, 9, 10], vec![10, 11, 15], vec![13, 14, 15], vec![9, 12, 14]]).unwrap();
        assert_eq!(w.kind, StructureKind::PairOrCycleToPairOrCycle);
        // Triangle plus a chord; it is also the 4-cycle 123,345,578,289 with handle 156.
        let w = detect(vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1], vec![5, 7, 8], vec![8, 9, 2]]).unwrap();
        assert_eq!(w.kind, StructureKind::PairOrCycleWithHandle);
        // Every route between the two branch edges has two interior edges.
        let w = detect(vec![
            vec![1, 2, 3],
            vec![3, 4, 5],
            vec![5, 6, 7],
            vec![7, 8, 9],
            vec![9, 10, 11],
            vec![1, 11, 12],
            vec![2, 13, 14],
            vec![8, 14, 15],
        ])
        .unwrap();
        assert_eq!(w.kind, StructureKind::DoubleLooseCycle);
        // Overlapping pair closed by a two-edge path: spoiled cycle.
        let w = detect(vec![vec![1, 2, 3], vec![2, 3, 4], vec![4, 5, 6], vec![6, 7, 1]]).unwrap();
        assert_eq!(w.kind, StructureKind::SpoiledCycle);
        // Two overlapping pairs sharing a vertex.
        let w = detect(vec![vec![1, 2, 3], vec![2, 3, 4], vec![4, 5, 6], vec![5, 6, 7]]).unwrap();
        assert_eq!(w.kind, StructureKind::PairOrCycleToPairOrCycle);
    }

    #[test]
    fn budget_is_reported() {
        let h = Hypergraph::from_edges(3, vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap();
        assert!(matches!(detect_bicycle_bounded(&h, 0, 1), Err(Error::CapExceeded { .. })));
    }
}
