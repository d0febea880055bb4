//! Boards, k-uniform hypergraphs and their connected components.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type EdgeId = usize;

/// A subset of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Board {
    n: u32,
    members: Vec<Vertex>,
}

impl Board {
    pub fn new(n: u32, members: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let set: BTreeSet<Vertex> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidInput(format!("board member {bad} outside [1, {n}]")));
        }
        Ok(Self { n, members: set.into_iter().collect() })
    }

    /// All of `[n]`.
    pub fn full(n: u32) -> Self {
        Self { n, members: (1..=n).collect() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Keeps `i` iff `uniforms[i - 1] < p`. Using one array of uniforms for several
    /// values of `p` yields nested boards.
    pub fn from_uniforms(uniforms: &[f64], p: f64) -> Self {
        let members = (1..=uniforms.len() as u32).filter(|&i| uniforms[i as usize - 1] < p).collect();
        Self { n: uniforms.len() as u32, members }
    }
}

/// One uniform draw in `[0, 1)` per element of `[n]`, from a seeded ChaCha stream.
pub fn board_uniforms(n: u32, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

/// `[n]_p`: each element kept independently with probability `p`.
pub fn sample_board(n: u32, p: f64, seed: u64) -> Board {
    Board::from_uniforms(&board_uniforms(n, seed), p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

/// A k-uniform hypergraph with sorted vertices and lexicographically sorted,
/// duplicate-free edges. An edge's id is its index in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Vec<Vertex>>,
    incidence: Vec<Vec<EdgeId>>,
    component_of: Vec<usize>,
    components: Vec<Component>,
}

impl Hypergraph {
    pub fn new(k: usize, vertices: impl IntoIterator<Item = Vertex>, edges: impl IntoIterator<Item = Vec<Vertex>>) -> Result<Self> {
        let vertices: Vec<Vertex> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut es: Vec<Vec<Vertex>> = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.len() != k {
                return Err(Error::InvalidInput(format!("edge {e:?} does not have {k} distinct vertices")));
            }
            if let Some(v) = e.iter().find(|v| vertices.binary_search(v).is_err()) {
                return Err(Error::InvalidInput(format!("edge vertex {v} is not a vertex")));
            }
            es.push(e);
        }
        es.sort_unstable();
        es.dedup();
        Ok(Self::build(k, vertices, es))
    }

    /// Vertex set is the union of the edges.
    pub fn from_edges(k: usize, edges: impl IntoIterator<Item = Vec<Vertex>>) -> Result<Self> {
        let edges: Vec<Vec<Vertex>> = edges.into_iter().collect();
        let vertices: Vec<Vertex> = edges.iter().flatten().copied().collect();
        Self::new(k, vertices, edges)
    }

    /// `vertices` sorted and unique, `edges` validated, sorted and unique.
    fn build(k: usize, vertices: Vec<Vertex>, edges: Vec<Vec<Vertex>>) -> Self {
        let mut incidence = vec![Vec::new(); vertices.len()];
        let mut dsu = Dsu::new(vertices.len());
        for (id, e) in edges.iter().enumerate() {
            let idx: Vec<usize> = e.iter().map(|v| vertices.binary_search(v).expect("validated vertex")).collect();
            for &i in &idx {
                incidence[i].push(id);
            }
            for w in idx.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let mut root_to_comp = vec![usize::MAX; vertices.len()];
        let mut component_of = vec![0; vertices.len()];
        let mut components: Vec<Component> = Vec::new();
        for i in 0..vertices.len() {
            let r = dsu.find(i);
            if root_to_comp[r] == usize::MAX {
                root_to_comp[r] = components.len();
                components.push(Component { vertices: Vec::new(), edges: Vec::new() });
            }
            let c = root_to_comp[r];
            component_of[i] = c;
            components[c].vertices.push(vertices[i]);
        }
        for (id, e) in edges.iter().enumerate() {
            let c = component_of[vertices.binary_search(&e[0]).expect("validated vertex")];
            components[c].edges.push(id);
        }
        Self { k, vertices, edges, incidence, component_of, components }
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &[Vertex] {
        &self.edges[id]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    /// Ids of the edges containing `v`; empty for a non-vertex.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        self.index_of(v).map_or(&[], |i| &self.incidence[i])
    }

    pub fn edge_id(&self, e: &[Vertex]) -> Option<EdgeId> {
        let mut sorted = e.to_vec();
        sorted.sort_unstable();
        self.edges.binary_search(&sorted).ok()
    }

    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        self.index_of(v).map(|i| self.component_of[i])
    }

    pub fn edge_component(&self, e: EdgeId) -> usize {
        self.component_of(self.edges[e][0]).expect("edge vertex")
    }

    /// Components ordered by their smallest vertex; isolated vertices are singletons.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: usize) -> &Component {
        &self.components[id]
    }

    /// Components that contain at least one edge.
    pub fn nontrivial_components(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components.iter().enumerate().filter(|(_, c)| !c.edges.is_empty())
    }

    pub fn max_component_size(&self) -> usize {
        self.components.iter().map(|c| c.vertices.len()).max().unwrap_or(0)
    }

    /// The hypergraph formed by the given edges and their vertices. Edge ids are renumbered.
    pub fn restrict_to_edges(&self, ids: &[EdgeId]) -> Hypergraph {
        let mut edges: Vec<Vec<Vertex>> = ids.iter().map(|&i| self.edges[i].clone()).collect();
        edges.sort_unstable();
        edges.dedup();
        let vertices: Vec<Vertex> = edges.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        Self::build(self.k, vertices, edges)
    }

    /// The component as a hypergraph of its own.
    pub fn component_hypergraph(&self, id: usize) -> Hypergraph {
        let c = &self.components[id];
        let edges = c.edges.iter().map(|&i| self.edges[i].clone()).collect();
        Self::build(self.k, c.vertices.clone(), edges)
    }

    /// Vertices in `keep` (that are vertices here) with the edges lying wholly inside them.
    pub fn induced(&self, keep: &[Vertex]) -> Hypergraph {
        let vertices: Vec<Vertex> =
            keep.iter().copied().filter(|&v| self.contains_vertex(v)).collect::<BTreeSet<_>>().into_iter().collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| vertices.binary_search(v).is_ok()))
            .cloned()
            .collect();
        Self::build(self.k, vertices, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "vertices": self.vertices, "edges": self.edges })
    }

    /// Reads `{"vertices": [...], "edges": [[...], ...]}`; uniformity is taken from the
    /// first edge unless given.
    pub fn from_json(text: &str, k: Option<usize>) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Option<Vec<Vertex>>,
            edges: Vec<Vec<Vertex>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        let k = k
            .or_else(|| raw.edges.first().map(Vec::len))
            .ok_or_else(|| Error::InvalidInput("cannot infer uniformity from an edgeless hypergraph".into()))?;
        let vertices = raw.vertices.unwrap_or_else(|| raw.edges.iter().flatten().copied().collect());
        Self::new(k, vertices, raw.edges)
    }
}

/// Size of the intersection of two sorted vertex lists.
pub fn intersection_size(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn board_extremes() {
        assert!(sample_board(10, 0.0, 7).is_empty());
        assert_eq!(sample_board(10, 1.0, 7), Board::full(10));
        assert_eq!(sample_board(50, 0.3, 99), sample_board(50, 0.3, 99));
    }

    #[test]
    fn board_density_concentrates() {
        let n = 10_000;
        let mean: f64 = (0..100).map(|s| sample_board(n, 0.5, s).len() as f64 / n as f64).sum::<f64>() / 100.0;
        assert!((mean - 0.5).abs() < 0.02, "mean density {mean}");
    }

    #[test]
    fn coupled_boards_are_nested() {
        let u = board_uniforms(200, 3);
        let small = Board::from_uniforms(&u, 0.2);
        let big = Board::from_uniforms(&u, 0.6);
        assert!(small.members().iter().all(|&v| big.contains(v)));
    }

    #[test]
    fn board_rejects_out_of_range() {
        assert!(Board::new(5, [0]).is_err());
        assert!(Board::new(5, [6]).is_err());
        assert_eq!(Board::new(5, [3, 1, 3]).unwrap().members(), &[1, 3]);
    }

    #[test]
    fn components_examples() {
        let h = Hypergraph::from_edges(3, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert_eq!(h.components().len(), 1);
        assert_eq!(h.component(0).vertices, vec![1, 2, 3, 4, 5]);

        let h = Hypergraph::from_edges(3, vec![vec![7, 8, 9], vec![1, 2, 3]]).unwrap();
        assert_eq!(h.components().len(), 2);
        assert_eq!(h.edge(0), &[1, 2, 3]);
        assert_ne!(h.component_of(1), h.component_of(9));

        let h = Hypergraph::new(3, [1, 2], Vec::<Vec<Vertex>>::new()).unwrap();
        assert_eq!(h.components().len(), 2);
    }

    #[test]
    fn edges_are_deduplicated_sets() {
        let h = Hypergraph::from_edges(3, vec![vec![3, 2, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(h.num_edges(), 1);
        assert!(Hypergraph::from_edges(3, vec![vec![1, 1, 2]]).is_err());
        assert!(Hypergraph::new(3, [1, 2], vec![vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = Hypergraph::new(3, [1, 2, 3, 4, 9], vec![vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        let back = Hypergraph::from_json(&h.to_json().to_string(), None).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn induced_and_restricted() {
        let h = Hypergraph::from_edges(3, vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap();
        let ind = h.induced(&[1, 2, 3, 4, 5]);
        assert_eq!(ind.num_edges(), 2);
        let r = h.restrict_to_edges(&[2]);
        assert_eq!(r.vertices(), &[5, 6, 7]);
        assert_eq!(intersection_size(h.edge(0), h.edge(1)), 1);
    }
}
