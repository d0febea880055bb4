//! Certified winners for the unbiased game with Maker moving first.
//!
//! Breaker wins when every component is bicycle-free, each then being decomposable and so
//! won by answering in Maker's component. Maker wins as soon as some sub-board is a
//! first-player win for her, because extra board elements never hurt Maker. Candidate
//! sub-boards are a caller hint, whole small components, and balls grown around bicycle
//! witnesses or edges of larger components.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::edge_order::{decompose_component_bounded, Outcome, DEFAULT_DETECT_BUDGET};
use crate::hypergraph::{Hypergraph, Vertex};

use super::solver::{solve_exact, SolverConfig};
use super::{Certificate, GameConfig, Player};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyCaps {
    /// Solver limits for components and sub-boards.
    pub solver: SolverConfig,
    pub detect_budget: usize,
    /// Vertex limit for sub-boards grown inside large components.
    pub local_cap: usize,
    /// Sub-boards tried per large component.
    pub local_tries: usize,
}

impl Default for CertifyCaps {
    fn default() -> Self {
        Self {
            solver: SolverConfig { max_positions: 2_000_000, ..SolverConfig::default() },
            detect_budget: DEFAULT_DETECT_BUDGET,
            local_cap: 14,
            local_tries: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certification {
    /// `None` when nothing could be certified.
    pub winner: Option<Player>,
    pub certificate: Certificate,
    /// Whether some component contains a bicycle; `None` if a search ran out of budget
    /// without finding one.
    pub bicycle: Option<bool>,
    /// Vertices of a sub-board Maker wins on, when Maker is certified.
    pub maker_board: Option<Vec<Vertex>>,
}

impl Certification {
    fn maker(board: Vec<Vertex>, bicycle: Option<bool>) -> Self {
        Self { winner: Some(Player::Maker), certificate: Certificate::Minimax, bicycle, maker_board: Some(board) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Free,
    Bicycle,
    Unknown,
}

/// Certifies the winner with Maker moving first and bias one, trying `hint` first as a
/// sub-board for Maker.
pub fn certify_winner(h: &Hypergraph, caps: &CertifyCaps, hint: Option<&[Vertex]>) -> Certification {
    let solver = SolverConfig { game: GameConfig::default(), ..caps.solver };
    let comps: Vec<usize> = h.nontrivial_components().map(|(id, _)| id).collect();
    let mut statuses = Vec::with_capacity(comps.len());
    let mut witnesses: Vec<Option<Vec<Vertex>>> = Vec::with_capacity(comps.len());
    for &c in &comps {
        match decompose_component_bounded(h, c, caps.detect_budget) {
            Ok(Outcome::Decomposed(_)) => {
                statuses.push(Status::Free);
                witnesses.push(None);
            }
            Ok(Outcome::Bicycle(w)) => {
                statuses.push(Status::Bicycle);
                witnesses.push(Some(w.vertices()));
            }
            Err(_) => {
                statuses.push(Status::Unknown);
                witnesses.push(None);
            }
        }
    }
    let bicycle = if statuses.contains(&Status::Bicycle) {
        Some(true)
    } else if statuses.contains(&Status::Unknown) {
        None
    } else {
        Some(false)
    };
    if bicycle == Some(false) {
        return Certification { winner: Some(Player::Breaker), certificate: Certificate::BicycleFree, bicycle, maker_board: None };
    }

    if let Some(hint) = hint {
        let sub = h.induced(hint);
        if sub.num_edges() > 0 && solve_exact(&sub, &solver).ok() == Some(Player::Maker) {
            return Certification::maker(sub.vertices().to_vec(), bicycle);
        }
    }

    let mut all_breaker = true;
    let mut large = Vec::new();
    for (i, &c) in comps.iter().enumerate() {
        if statuses[i] == Status::Free {
            continue;
        }
        let comp = h.component_hypergraph(c);
        if comp.num_vertices() <= solver.cap {
            match solve_exact(&comp, &solver) {
                Ok(Player::Maker) => return Certification::maker(comp.vertices().to_vec(), bicycle),
                Ok(Player::Breaker) => continue,
                Err(_) => {}
            }
        }
        all_breaker = false;
        large.push(i);
    }
    if all_breaker {
        return Certification { winner: Some(Player::Breaker), certificate: Certificate::Minimax, bicycle, maker_board: None };
    }

    for i in large {
        let c = comps[i];
        for start in local_starts(h, c, witnesses[i].as_deref(), caps.local_tries) {
            let ball = grow_ball(h, c, &start, caps.local_cap);
            let sub = h.induced(&ball);
            if sub.num_edges() > 0 && solve_exact(&sub, &solver).ok() == Some(Player::Maker) {
                return Certification::maker(sub.vertices().to_vec(), bicycle);
            }
        }
    }
    Certification { winner: None, certificate: Certificate::UnknownHeuristic, bicycle, maker_board: None }
}

/// Seed vertex sets for balls: the witness, then edges spread evenly over the component.
fn local_starts(h: &Hypergraph, c: usize, witness: Option<&[Vertex]>, tries: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    if let Some(w) = witness {
        out.push(w.to_vec());
    }
    let edges = &h.component(c).edges;
    let want = tries.saturating_sub(out.len()).min(edges.len());
    for t in 0..want {
        out.push(h.edge(edges[t * edges.len() / want]).to_vec());
    }
    out.truncate(tries);
    out
}

/// Breadth-first growth by whole edges from `start`, never exceeding `cap` vertices.
fn grow_ball(h: &Hypergraph, c: usize, start: &[Vertex], cap: usize) -> Vec<Vertex> {
    let mut ball: BTreeSet<Vertex> = start.iter().copied().take(cap).collect();
    let mut frontier: Vec<Vertex> = ball.iter().copied().collect();
    let edges = &h.component(c).edges;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let touching: BTreeSet<usize> = frontier.iter().flat_map(|&v| h.incident(v).iter().copied()).collect();
        for e in touching {
            debug_assert!(edges.binary_search(&e).is_ok());
            let new: Vec<Vertex> = h.edge(e).iter().copied().filter(|v| !ball.contains(v)).collect();
            if ball.len() + new.len() > cap {
                continue;
            }
            ball.extend(new.iter().copied());
            next.extend(new);
        }
        frontier = next;
    }
    ball.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Board;
    use crate::solutions::enumerate_solutions;
    use crate::system::RadoSystem;

    #[test]
    fn loose_path_is_bicycle_free() {
        let h = Hypergraph::from_edges(3, vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap();
        let c = certify_winner(&h, &CertifyCaps::default(), None);
        assert_eq!((c.winner, c.certificate, c.bicycle), (Some(Player::Breaker), Certificate::BicycleFree, Some(false)));
    }

    #[test]
    fn small_maker_component() {
        let h = enumerate_solutions(&RadoSystem::schur(), &Board::full(12)).unwrap();
        let c = certify_winner(&h, &CertifyCaps::default(), None);
        assert_eq!(solve_exact(&h, &SolverConfig::default()).unwrap(), Player::Maker);
        assert_eq!((c.winner, c.certificate.clone()), (Some(Player::Maker), Certificate::Minimax));
        let sub = h.induced(c.maker_board.as_deref().unwrap());
        assert_eq!(solve_exact(&sub, &SolverConfig::default()).unwrap(), Player::Maker);
    }

    #[test]
    fn large_components_use_sub_boards_or_unknown() {
        let h = enumerate_solutions(&RadoSystem::schur(), &Board::full(40)).unwrap();
        let caps = CertifyCaps { detect_budget: 1, ..CertifyCaps::default() };
        let c = certify_winner(&h, &caps, None);
        assert_eq!(c.bicycle, None);
        assert_eq!(c.winner, Some(Player::Maker));
        let caps = CertifyCaps { local_tries: 0, detect_budget: 1, ..CertifyCaps::default() };
        let c = certify_winner(&h, &caps, None);
        assert_eq!((c.winner, c.certificate), (None, Certificate::UnknownHeuristic));
        let c = certify_winner(&h, &caps, Some(&(1..=12).collect::<Vec<_>>()));
        assert_eq!(c.winner, Some(Player::Maker));
    }
}
