//! Breaker's answer strategy on bicycle-free boards, driven by one decomposition per
//! component.
//!
//! A Maker move on a tail edge is answered by another new vertex of the edge where the
//! move was new. A move on the prefix structure gets a case-specific answer inside the
//! structure.

use std::collections::BTreeSet;

use crate::edge_order::{decompose_component, Decomposition, DecompositionCase, Outcome};
use crate::error::{Error, Result};
use crate::game::{Certificate, GameState, Player};
use crate::hypergraph::{intersection_size, EdgeId, Hypergraph, Vertex};

use super::Strategy;

#[derive(Debug, Clone)]
struct Plan {
    case: DecompositionCase,
    /// Number of prefix edges; zero in the simple case.
    prefix_len: usize,
    /// Edges in order, sorted vertex lists.
    edges: Vec<Vec<Vertex>>,
    /// Vertices each edge adds to its predecessors.
    new: Vec<Vec<Vertex>>,
}

impl Plan {
    fn new(h: &Hypergraph, d: &Decomposition) -> Self {
        let edges: Vec<Vec<Vertex>> = d.order.iter().map(|&e| h.edge(e).to_vec()).collect();
        let mut seen = BTreeSet::new();
        let new = edges.iter().map(|e| e.iter().copied().filter(|&v| seen.insert(v)).collect()).collect();
        let prefix_len = if d.case == DecompositionCase::Simple { 0 } else { d.a + 1 };
        Self { case: d.case, prefix_len, edges, new }
    }

    fn prefix(&self) -> &[Vec<Vertex>] {
        &self.edges[..self.prefix_len]
    }

    fn prefix_vertices(&self) -> BTreeSet<Vertex> {
        self.prefix().iter().flatten().copied().collect()
    }

    /// Index of the edge in which `m` first appears.
    fn home(&self, m: Vertex) -> Option<usize> {
        self.new.iter().position(|n| n.contains(&m))
    }

    fn answer(&self, state: &GameState, m: Vertex) -> Option<Vertex> {
        let free = |set: &mut dyn Iterator<Item = Vertex>| set.filter(|&v| state.is_unclaimed(v)).min();
        let i = self.home(m)?;
        if i < self.prefix_len {
            if let Some(v) = self.structure_answer(state, m) {
                return Some(v);
            }
        }
        free(&mut self.new[i].iter().copied())
    }

    fn structure_answer(&self, state: &GameState, m: Vertex) -> Option<Vertex> {
        let free = |it: &mut dyn Iterator<Item = Vertex>| it.filter(|&v| state.is_unclaimed(v)).min();
        let s = self.prefix();
        let k = s[0].len();
        match self.case {
            DecompositionCase::Simple => None,
            DecompositionCase::Star => {
                for (x, e) in s.iter().enumerate() {
                    for f in &s[x + 1..] {
                        if intersection_size(e, f) + 1 == k && e.contains(&m) && f.contains(&m) {
                            if let Some(v) = free(&mut e.iter().copied().filter(|v| f.contains(v))) {
                                return Some(v);
                            }
                        }
                    }
                }
                None
            }
            DecompositionCase::LooseCycle => {
                // The sets e_i minus its cyclic predecessor partition the cycle.
                let pred = |i: usize| &s[(i + s.len() - 1) % s.len()];
                let i = (0..s.len()).find(|&i| s[i].contains(&m) && !pred(i).contains(&m))?;
                free(&mut s[i].iter().copied().filter(|v| !pred(i).contains(v)))
            }
            DecompositionCase::OverlappingPair => {
                if s[0].contains(&m) && s[1].contains(&m) {
                    free(&mut s[0].iter().copied().filter(|v| s[1].contains(v)))
                } else {
                    None
                }
            }
            DecompositionCase::Link => free(&mut self.prefix_vertices().into_iter()),
            DecompositionCase::Pasch => {
                for e in s.iter().filter(|e| e.contains(&m)) {
                    let maker = e.iter().filter(|&&v| state.owner(v) == Some(Player::Maker)).count();
                    let open: Vec<Vertex> = e.iter().copied().filter(|&v| state.is_unclaimed(v)).collect();
                    if maker + 1 == k && open.len() == 1 {
                        return Some(open[0]);
                    }
                }
                free(&mut self.prefix_vertices().into_iter())
            }
        }
    }
}

/// Per-component plans, indexed by component id of the board it was built for.
#[derive(Debug, Clone)]
pub struct Dl2Breaker {
    plans: Vec<Option<Plan>>,
    components: Vec<Vec<Vertex>>,
}

impl Dl2Breaker {
    /// Decomposes every component; components with a bicycle get no plan.
    pub fn new(h: &Hypergraph) -> Result<Self> {
        let mut decs = Vec::new();
        for (c, _) in h.nontrivial_components() {
            if let Outcome::Decomposed(d) = decompose_component(h, c)? {
                decs.push(d);
            }
        }
        Self::with_decompositions(h, decs)
    }

    /// Uses the given decompositions, at most one per component.
    pub fn with_decompositions(h: &Hypergraph, decs: Vec<Decomposition>) -> Result<Self> {
        let mut plans = vec![None; h.components().len()];
        for d in &decs {
            let Some(&first) = d.order.first() else { continue };
            let c = h.edge_component(first);
            if d.order.iter().any(|&e: &EdgeId| e >= h.num_edges() || h.edge_component(e) != c) {
                return Err(Error::InvalidInput("decomposition spans several components".into()));
            }
            if plans[c].is_some() {
                return Err(Error::InvalidInput(format!("two decompositions for component {c}")));
            }
            plans[c] = Some(Plan::new(h, d));
        }
        let components = h.components().iter().map(|c| c.vertices.clone()).collect();
        Ok(Self { plans, components })
    }

    fn arbitrary(&self, state: &GameState, near: Option<Vertex>) -> Result<Vertex> {
        let h = state.hypergraph();
        let local = near
            .and_then(|m| h.component_of(m))
            .and_then(|c| self.components.get(c))
            .and_then(|vs| vs.iter().copied().find(|&v| state.is_unclaimed(v)));
        local.or_else(|| state.smallest_unclaimed()).ok_or_else(|| Error::Precondition("no unclaimed vertex".into()))
    }
}

impl Strategy for Dl2Breaker {
    fn name(&self) -> String {
        "dl2-breaker".into()
    }

    fn next_move(&mut self, state: &GameState) -> Result<Vertex> {
        let Some(m) = state.answering_maker() else {
            return self.arbitrary(state, None);
        };
        let h = state.hypergraph();
        let c = h.component_of(m).ok_or_else(|| Error::Internal(format!("vertex {m} has no component")))?;
        if h.component(c).edges.is_empty() {
            return self.arbitrary(state, Some(m));
        }
        let plan = self.plans.get(c).and_then(Option::as_ref).ok_or_else(|| {
            Error::Precondition(format!("the component of {m} contains a bicycle or has no decomposition"))
        })?;
        match plan.answer(state, m) {
            Some(v) => Ok(v),
            None => self.arbitrary(state, Some(m)),
        }
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(Certificate::BicycleFree)
    }
}
