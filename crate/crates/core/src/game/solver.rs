//! Exact game values by memoized minimax.
//!
//! A position is reduced to the family of unclaimed parts of the edges Breaker has not
//! touched. Vertices outside that family cannot matter, and a set containing another is
//! redundant for Maker, so the family is kept as its inclusion-minimal members. With the
//! unbiased game the family splits into components. With Maker to move, Maker wins iff
//! she wins some component moving first. With Breaker to move, she wins iff two
//! components are first-mover wins for her or one is a win even with Breaker moving
//! first. Breaker answering in Maker's component realizes the converse.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

use super::{GameConfig, GameState, Player};

pub const DEFAULT_SOLVER_CAP: usize = 24;
pub const DEFAULT_SOLVER_POSITIONS: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub game: GameConfig,
    /// Largest component (largest whole board when the bias exceeds one), in vertices.
    pub cap: usize,
    /// Memo entries before giving up.
    pub max_positions: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { game: GameConfig::default(), cap: DEFAULT_SOLVER_CAP, max_positions: DEFAULT_SOLVER_POSITIONS }
    }
}

impl SolverConfig {
    pub fn with_game(game: GameConfig) -> Self {
        Self { game, ..Self::default() }
    }
}

/// The winner of the whole game under optimal play.
pub fn solve_exact(h: &Hypergraph, cfg: &SolverConfig) -> Result<Player> {
    Solver::new(*cfg).solve(&GameState::new(h.clone(), cfg.game)?)
}

/// The winner from a position under optimal play.
pub fn solve_state(state: &GameState, cfg: &SolverConfig) -> Result<Player> {
    Solver::new(SolverConfig { game: state.config(), ..*cfg }).solve(state)
}

/// A move that wins for the player to move, if one exists; smallest such vertex.
pub fn best_move(state: &GameState, cfg: &SolverConfig) -> Result<Option<Vertex>> {
    Solver::new(SolverConfig { game: state.config(), ..*cfg }).best_move(state)
}

/// Keeps its memo across calls; the bias is fixed at construction.
pub struct Solver {
    cfg: SolverConfig,
    memo: HashMap<(Vec<u64>, u32), bool>,
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Self {
        Self { cfg, memo: HashMap::new() }
    }

    pub fn solve(&mut self, state: &GameState) -> Result<Player> {
        if state.config().bias != self.cfg.game.bias {
            return Err(Error::InvalidInput("solver bias differs from the game's".into()));
        }
        if state.maker_edge().is_some() {
            return Ok(Player::Maker);
        }
        let residuals: Vec<Vec<Vertex>> =
            state.live_edges().map(|e| e.iter().copied().filter(|&v| state.is_unclaimed(v)).collect()).collect();
        let turn = match state.to_move() {
            Player::Maker => 0,
            Player::Breaker => state.picks_left(),
        };
        let maker = if self.cfg.game.bias == 1 {
            let comps = split(&residuals);
            let mut families = Vec::with_capacity(comps.len());
            for c in &comps {
                families.push(to_masks(c, self.cfg.cap, "component vertices")?);
            }
            self.combine(&families, turn)?
        } else {
            let fam = to_masks(&residuals, self.cfg.cap.min(64), "board vertices")?;
            self.maker_wins(normalize(fam), turn)?
        };
        Ok(if maker { Player::Maker } else { Player::Breaker })
    }

    pub fn best_move(&mut self, state: &GameState) -> Result<Option<Vertex>> {
        let me = state.to_move();
        for v in state.unclaimed() {
            let next = state.apply_move(v)?;
            if self.solve(&next)? == me {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    fn combine(&mut self, families: &[Vec<u64>], turn: u32) -> Result<bool> {
        let mut first_wins = 0;
        for fam in families {
            let fam = normalize(fam.clone());
            if !self.maker_wins(fam.clone(), 0)? {
                continue;
            }
            if turn == 0 {
                return Ok(true);
            }
            first_wins += 1;
            if first_wins >= 2 || self.maker_wins(fam, turn)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `turn` is 0 with Maker to move, else Breaker's picks left in the turn.
    fn maker_wins(&mut self, sets: Vec<u64>, turn: u32) -> Result<bool> {
        if sets.first() == Some(&0) {
            return Ok(true);
        }
        if sets.is_empty() {
            return Ok(false);
        }
        if turn == 0 && sets.iter().any(|s| s.count_ones() == 1) {
            return Ok(true);
        }
        let key = (sets, turn);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let (sets, turn) = key;
        let value = if turn == 0 { self.maker_turn(&sets)? } else { self.breaker_turn(&sets, turn)? };
        if self.memo.len() >= self.cfg.max_positions {
            return Err(Error::CapExceeded { what: "solver positions", actual: self.memo.len() + 1, cap: self.cfg.max_positions });
        }
        self.memo.insert((sets, turn), value);
        Ok(value)
    }

    fn maker_turn(&mut self, sets: &[u64]) -> Result<bool> {
        for v in ordered_vertices(sets) {
            let bit = 1u64 << v;
            let child = normalize(sets.iter().map(|s| s & !bit).collect());
            if self.maker_wins(child, self.cfg.game.bias)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn breaker_turn(&mut self, sets: &[u64], picks: u32) -> Result<bool> {
        let singles: u64 = sets.iter().filter(|s| s.count_ones() == 1).fold(0, |a, s| a | s);
        if singles.count_ones() > picks {
            return Ok(true);
        }
        let candidates: Vec<u32> =
            if singles != 0 { vec![singles.trailing_zeros()] } else { ordered_vertices(sets) };
        let next_turn = picks - 1;
        for v in candidates {
            let bit = 1u64 << v;
            let child: Vec<u64> = sets.iter().copied().filter(|s| s & bit == 0).collect();
            if !self.maker_wins(child, next_turn)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Inclusion-minimal members, sorted by size then value.
fn normalize(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & s == k) {
            kept.push(s);
        }
    }
    kept
}

/// Vertices of the family, most heavily weighted first.
fn ordered_vertices(sets: &[u64]) -> Vec<u32> {
    let mut weight: BTreeMap<u32, f64> = BTreeMap::new();
    for &s in sets {
        let w = 0.5f64.powi(s.count_ones() as i32);
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            *weight.entry(v).or_default() += w;
            rest &= rest - 1;
        }
    }
    let mut vs: Vec<(u32, f64)> = weight.into_iter().collect();
    vs.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    vs.into_iter().map(|(v, _)| v).collect()
}

/// Groups sets that share vertices.
fn split(sets: &[Vec<Vertex>]) -> Vec<Vec<Vec<Vertex>>> {
    let mut parent: HashMap<Vertex, Vertex> = HashMap::new();
    fn find(p: &mut HashMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let mut r = v;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        let mut c = v;
        while c != r {
            let next = p[&c];
            p.insert(c, r);
            c = next;
        }
        r
    }
    for s in sets {
        for &v in s {
            parent.entry(v).or_insert(v);
        }
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
    }
    let mut groups: BTreeMap<Vertex, Vec<Vec<Vertex>>> = BTreeMap::new();
    let mut empty = Vec::new();
    for s in sets {
        match s.first() {
            Some(&v) => {
                let r = find(&mut parent, v);
                groups.entry(r).or_default().push(s.clone());
            }
            None => empty.push(s.clone()),
        }
    }
    let mut out: Vec<Vec<Vec<Vertex>>> = groups.into_values().collect();
    if !empty.is_empty() {
        out.push(empty);
    }
    out
}

fn to_masks(sets: &[Vec<Vertex>], cap: usize, what: &'static str) -> Result<Vec<u64>> {
    let mut verts: Vec<Vertex> = sets.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let cap = cap.min(64);
    if verts.len() > cap {
        return Err(Error::CapExceeded { what, actual: verts.len(), cap });
    }
    Ok(sets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, v| m | 1 << verts.binary_search(v).expect("collected vertex")))
        .collect())
}

/// Plain minimax over all claim patterns of the whole board, for cross-checking.
pub fn solve_naive(h: &Hypergraph, game: GameConfig, cap: usize) -> Result<Player> {
    let n = h.num_vertices();
    let cap = cap.min(63);
    if n > cap {
        return Err(Error::CapExceeded { what: "board vertices", actual: n, cap });
    }
    let edges: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << h.index_of(v).expect("edge vertex")))
        .collect();
    let mut memo = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let start = if game.first_player == Player::Maker { 0 } else { game.bias };
    let maker = naive(&edges, full, game.bias, 0, 0, start, &mut memo);
    Ok(if maker { Player::Maker } else { Player::Breaker })
}

fn naive(edges: &[u64], full: u64, bias: u32, maker: u64, breaker: u64, turn: u32, memo: &mut HashMap<(u64, u64, u32), bool>) -> bool {
    if edges.iter().any(|&e| e & maker == e) {
        return true;
    }
    if maker | breaker == full || edges.iter().all(|&e| e & breaker != 0) {
        return false;
    }
    if let Some(&v) = memo.get(&(maker, breaker, turn)) {
        return v;
    }
    let free = full & !(maker | breaker);
    let mut rest = free;
    let value = if turn == 0 {
        let mut win = false;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if naive(edges, full, bias, maker | bit, breaker, bias, memo) {
                win = true;
                break;
            }
        }
        win
    } else {
        let mut win = true;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if !naive(edges, full, bias, maker, breaker | bit, turn - 1, memo) {
                win = false;
                break;
            }
        }
        win
    };
    memo.insert((maker, breaker, turn), value);
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Board;
    use crate::solutions::enumerate_solutions;
    use crate::system::RadoSystem;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solve(edges: Vec<Vec<Vertex>>, game: GameConfig) -> Player {
        let h = Hypergraph::from_edges(3, edges).unwrap();
        solve_exact(&h, &SolverConfig::with_game(game)).unwrap()
    }

    #[test]
    fn small_wins() {
        let g = GameConfig::default();
        assert_eq!(solve(vec![], g), Player::Breaker);
        assert_eq!(solve(vec![vec![1, 2, 3]], g), Player::Breaker);
        // Two triples through one vertex with 2-sets hanging off: Maker needs a fork.
        assert_eq!(solve(vec![vec![1, 2, 3], vec![1, 4, 5], vec![1, 2, 4], vec![1, 3, 5], vec![1, 2, 5]], g), Player::Maker);
    }

    #[test]
    fn schur_five_matches_naive() {
        let h = enumerate_solutions(&RadoSystem::schur(), &Board::full(5)).unwrap();
        assert_eq!(h.num_edges(), 4);
        for first in [Player::Maker, Player::Breaker] {
            let g = GameConfig { bias: 1, first_player: first };
            let fast = solve_exact(&h, &SolverConfig::with_game(g)).unwrap();
            assert_eq!(fast, solve_naive(&h, g, 20).unwrap());
        }
    }

    #[test]
    fn decomposition_matches_naive_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(5..=22);
            let p: f64 = rng.gen_range(0.3..0.9);
            let members: Vec<Vertex> = (1..=n).filter(|_| rng.gen_bool(p)).collect();
            if members.len() > 12 {
                continue;
            }
            let board = Board::new(n, members).unwrap();
            let h = enumerate_solutions(&RadoSystem::schur(), &board).unwrap();
            for first in [Player::Maker, Player::Breaker] {
                for bias in [1, 2] {
                    let g = GameConfig { bias, first_player: first };
                    let fast = solve_exact(&h, &SolverConfig::with_game(g)).unwrap();
                    assert_eq!(fast, solve_naive(&h, g, 20).unwrap(), "{:?} {g:?}", h.edges());
                }
            }
        }
    }

    #[test]
    fn caps_are_reported() {
        let h = enumerate_solutions(&RadoSystem::schur(), &Board::full(30)).unwrap();
        let cfg = SolverConfig { cap: 10, ..SolverConfig::default() };
        assert!(matches!(solve_exact(&h, &cfg), Err(Error::CapExceeded { .. })));
        let cfg = SolverConfig { max_positions: 10, ..SolverConfig::default() };
        let h = enumerate_solutions(&RadoSystem::schur(), &Board::full(12)).unwrap();
        assert!(matches!(solve_exact(&h, &cfg), Err(Error::CapExceeded { .. })));
        let h = Hypergraph::new(3, 0..70, vec![vec![1, 2, 3]]).unwrap();
        assert!(solve_naive(&h, GameConfig::default(), 20).is_err());
    }

    #[test]
    fn best_move_wins() {
        let h = enumerate_solutions(&RadoSystem::schur(), &Board::full(9)).unwrap();
        let cfg = SolverConfig::default();
        let s = GameState::new(h.clone(), GameConfig::default()).unwrap();
        if solve_exact(&h, &cfg).unwrap() == Player::Maker {
            let v = best_move(&s, &cfg).unwrap().unwrap();
            assert_eq!(solve_state(&s.apply_move(v).unwrap(), &cfg).unwrap(), Player::Maker);
        } else {
            assert_eq!(best_move(&s, &cfg).unwrap(), None);
        }
    }
}
