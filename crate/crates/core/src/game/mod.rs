//! Maker-Breaker games on a hypergraph: state, rules, the (1:b) bias, and matches between
//! strategies.

mod certify;
mod solver;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::strategies::Strategy;

pub use certify::{certify_winner, CertifyCaps, Certification};
pub use solver::{best_move, solve_exact, solve_naive, solve_state, Solver, SolverConfig, DEFAULT_SOLVER_CAP, DEFAULT_SOLVER_POSITIONS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Player::Maker => "maker",
            Player::Breaker => "breaker",
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    /// Vertices Breaker claims per turn.
    pub bias: u32,
    pub first_player: Player,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self { bias: 1, first_player: Player::Maker }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub player: Player,
    pub vertex: Vertex,
    /// Zero-based; a round is one turn of each player.
    pub round: usize,
}

/// How a winner was established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "edge", rename_all = "snake_case")]
pub enum Certificate {
    /// Maker owns this edge.
    MakerEdge(Vec<Vertex>),
    /// Every vertex was claimed without Maker completing an edge.
    Exhaustion,
    Minimax,
    BicycleFree,
    Pairing,
    #[serde(rename = "unknown-heuristic")]
    UnknownHeuristic,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::MakerEdge(_) => "maker_edge",
            Certificate::Exhaustion => "exhaustion",
            Certificate::Minimax => "minimax",
            Certificate::BicycleFree => "bicycle_free",
            Certificate::Pairing => "pairing",
            Certificate::UnknownHeuristic => "unknown-heuristic",
        }
    }
}

/// An immutable snapshot of a game; [`GameState::apply_move`] returns a new one.
#[derive(Debug, Clone)]
pub struct GameState {
    h: Arc<Hypergraph>,
    owner: Vec<Option<Player>>,
    config: GameConfig,
    to_move: Player,
    picks_left: u32,
    turns: usize,
    transcript: Vec<Move>,
}

impl GameState {
    pub fn new(h: impl Into<Arc<Hypergraph>>, config: GameConfig) -> Result<Self> {
        if config.bias == 0 {
            return Err(Error::InvalidInput("bias must be positive".into()));
        }
        let h = h.into();
        let owner = vec![None; h.num_vertices()];
        let picks_left = if config.first_player == Player::Maker { 1 } else { config.bias };
        Ok(Self { h, owner, config, to_move: config.first_player, picks_left, turns: 0, transcript: Vec::new() })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn shared_hypergraph(&self) -> Arc<Hypergraph> {
        Arc::clone(&self.h)
    }

    pub fn config(&self) -> GameConfig {
        self.config
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    /// Picks the mover still has in the current turn.
    pub fn picks_left(&self) -> u32 {
        self.picks_left
    }

    pub fn transcript(&self) -> &[Move] {
        &self.transcript
    }

    pub fn owner(&self, v: Vertex) -> Option<Player> {
        self.h.index_of(v).and_then(|i| self.owner[i])
    }

    pub fn is_unclaimed(&self, v: Vertex) -> bool {
        self.h.index_of(v).is_some_and(|i| self.owner[i].is_none())
    }

    pub fn claimed_by(&self, p: Player) -> Vec<Vertex> {
        self.h.vertices().iter().zip(&self.owner).filter(|(_, o)| **o == Some(p)).map(|(&v, _)| v).collect()
    }

    pub fn unclaimed(&self) -> Vec<Vertex> {
        self.h.vertices().iter().zip(&self.owner).filter(|(_, o)| o.is_none()).map(|(&v, _)| v).collect()
    }

    pub fn smallest_unclaimed(&self) -> Option<Vertex> {
        self.h.vertices().iter().zip(&self.owner).find(|(_, o)| o.is_none()).map(|(&v, _)| v)
    }

    pub fn last_move_by(&self, p: Player) -> Option<Vertex> {
        self.transcript.iter().rev().find(|m| m.player == p).map(|m| m.vertex)
    }

    /// Whether the previous pick was Maker's, so the mover is answering it.
    pub fn answering_maker(&self) -> Option<Vertex> {
        self.transcript.last().filter(|m| m.player == Player::Maker).map(|m| m.vertex)
    }

    /// Edges with no Breaker vertex.
    pub fn live_edges(&self) -> impl Iterator<Item = &[Vertex]> {
        self.h.edges().iter().map(Vec::as_slice).filter(|e| e.iter().all(|&v| self.owner(v) != Some(Player::Breaker)))
    }

    pub fn apply_move(&self, v: Vertex) -> Result<GameState> {
        if self.winner_check().is_some() {
            return Err(Error::IllegalMove { vertex: v, reason: "the game is over" });
        }
        let Some(i) = self.h.index_of(v) else {
            return Err(Error::IllegalMove { vertex: v, reason: "not on the board" });
        };
        if self.owner[i].is_some() {
            return Err(Error::IllegalMove { vertex: v, reason: "already claimed" });
        }
        let mut next = self.clone();
        let player = self.to_move;
        next.owner[i] = Some(player);
        next.transcript.push(Move { player, vertex: v, round: self.turns / 2 });
        next.picks_left -= 1;
        if next.picks_left == 0 {
            next.to_move = player.other();
            next.picks_left = if next.to_move == Player::Maker { 1 } else { self.config.bias };
            next.turns += 1;
        }
        Ok(next)
    }

    /// An edge wholly owned by Maker.
    pub fn maker_edge(&self) -> Option<&[Vertex]> {
        self.h.edges().iter().map(Vec::as_slice).find(|e| e.iter().all(|&v| self.owner(v) == Some(Player::Maker)))
    }

    pub fn winner_check(&self) -> Option<Player> {
        if self.maker_edge().is_some() {
            Some(Player::Maker)
        } else if self.owner.iter().all(Option::is_some) {
            Some(Player::Breaker)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameResult {
    pub winner: Player,
    pub certificate: Certificate,
    pub transcript: Vec<Move>,
}

impl GameResult {
    /// Replays the transcript from a fresh state.
    pub fn replay(&self, h: impl Into<Arc<Hypergraph>>, config: GameConfig) -> Result<GameState> {
        let mut s = GameState::new(h, config)?;
        for m in &self.transcript {
            if s.to_move() != m.player {
                return Err(Error::IllegalMove { vertex: m.vertex, reason: "out of turn" });
            }
            s = s.apply_move(m.vertex)?;
        }
        Ok(s)
    }

    pub fn transcript_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.transcript).expect("moves serialize")
    }
}

fn verify_move(state: &GameState, v: Vertex, who: &str) -> Result<()> {
    if state.is_unclaimed(v) {
        Ok(())
    } else {
        Err(Error::Internal(format!("strategy {who} chose unavailable vertex {v}")))
    }
}

/// Plays to the end of the game.
pub fn play_match(h: impl Into<Arc<Hypergraph>>, maker: &mut dyn Strategy, breaker: &mut dyn Strategy, config: GameConfig) -> Result<GameResult> {
    let mut state = GameState::new(h, config)?;
    loop {
        match state.winner_check() {
            Some(Player::Maker) => {
                let edge = state.maker_edge().expect("maker won").to_vec();
                return Ok(GameResult { winner: Player::Maker, certificate: Certificate::MakerEdge(edge), transcript: state.transcript });
            }
            Some(Player::Breaker) => {
                let certificate = breaker.certificate().unwrap_or(Certificate::Exhaustion);
                return Ok(GameResult { winner: Player::Breaker, certificate, transcript: state.transcript });
            }
            None => {}
        }
        let v = match state.to_move() {
            Player::Maker => {
                let v = maker.next_move(&state)?;
                verify_move(&state, v, &maker.name())?;
                v
            }
            Player::Breaker => {
                let v = breaker.next_move(&state)?;
                verify_move(&state, v, &breaker.name())?;
                v
            }
        };
        state = state.apply_move(v)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> Hypergraph {
        Hypergraph::from_edges(3, vec![vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn moves_and_turns() {
        let s = GameState::new(single_edge(), GameConfig::default()).unwrap();
        let s = s.apply_move(3).unwrap();
        assert_eq!(s.claimed_by(Player::Maker), vec![3]);
        assert_eq!(s.to_move(), Player::Breaker);
        assert!(matches!(s.apply_move(3), Err(Error::IllegalMove { .. })));
        assert!(matches!(s.apply_move(9), Err(Error::IllegalMove { .. })));

        let cfg = GameConfig { bias: 2, first_player: Player::Maker };
        let s = GameState::new(Hypergraph::from_edges(3, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap(), cfg).unwrap();
        let s = s.apply_move(1).unwrap().apply_move(2).unwrap();
        assert_eq!(s.to_move(), Player::Breaker);
        let s = s.apply_move(4).unwrap();
        assert_eq!(s.to_move(), Player::Maker);
        assert_eq!(s.transcript().iter().map(|m| m.round).collect::<Vec<_>>(), vec![0, 0, 0]);
        assert_eq!(s.apply_move(5).unwrap().transcript()[3].round, 1);
    }

    #[test]
    fn winners() {
        let s = GameState::new(single_edge(), GameConfig::default()).unwrap();
        assert_eq!(s.winner_check(), None);
        let s = s.apply_move(1).unwrap().apply_move(4).err();
        assert!(s.is_some());
        let h = Hypergraph::new(3, 1..=5, vec![vec![1, 2, 3]]).unwrap();
        let s = GameState::new(h, GameConfig::default()).unwrap();
        let m = [1, 4, 2, 5, 3];
        let mut t = s;
        for v in m {
            t = t.apply_move(v).unwrap();
        }
        assert_eq!(t.winner_check(), Some(Player::Maker));
        assert!(t.apply_move(1).is_err());

        let h = Hypergraph::new(3, 1..=3, vec![vec![1, 2, 3]]).unwrap();
        let s = GameState::new(h, GameConfig::default()).unwrap();
        let s = s.apply_move(1).unwrap().apply_move(2).unwrap().apply_move(3).unwrap();
        assert_eq!(s.winner_check(), Some(Player::Breaker));
    }

    #[test]
    fn certificate_json() {
        let c = serde_json::to_string(&Certificate::MakerEdge(vec![1, 2, 3])).unwrap();
        assert_eq!(c, r#"{"kind":"maker_edge","edge":[1,2,3]}"#);
        assert_eq!(serde_json::to_string(&Certificate::UnknownHeuristic).unwrap(), r#"{"kind":"unknown-heuristic"}"#);
    }
}
