//! Move policies for both players and the Erdős–Selfridge criterion.

mod dl2;
mod pairing;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Certificate, GameConfig, GameState, Player, Solver, SolverConfig};
use crate::hypergraph::{Hypergraph, Vertex};

pub use dl2::Dl2Breaker;
pub use pairing::{
    breaker_chain_pairing, breaker_power_pairing, power_form, solve_residue, triple_around, PairingBreaker, PairingTable,
    Residue, TripleMaker,
};

/// A deterministic policy; any randomness comes from a seed fixed at construction.
pub trait Strategy {
    fn name(&self) -> String;

    /// An unclaimed vertex for the player to move.
    fn next_move(&mut self, state: &GameState) -> Result<Vertex>;

    /// What a Breaker win under this policy proves, if more than exhaustion.
    fn certificate(&self) -> Option<Certificate> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EsCriterion {
    #[serde(serialize_with = "as_string")]
    pub sum: BigRational,
    /// Whether the sum is below one.
    pub holds: bool,
}

fn as_string<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// The sum of `2^-|F|` over the edges of `h`.
pub fn es_criterion(h: &Hypergraph) -> EsCriterion {
    let mut sum = BigRational::zero();
    for e in h.edges() {
        sum += BigRational::new(BigUint::one().into(), (BigUint::one() << e.len()).into());
    }
    let holds = sum < BigRational::one();
    EsCriterion { sum, holds }
}

/// Live edges as (edge, unclaimed count).
fn live_with_free<'a>(state: &'a GameState) -> impl Iterator<Item = (&'a [Vertex], usize)> + 'a {
    state.live_edges().map(move |e| (e, e.iter().filter(|&&v| state.is_unclaimed(v)).count()))
}

/// `2^-u` scaled by `2^k` so sums stay integral.
fn weight(k: usize, free: usize) -> BigUint {
    BigUint::one() << (k - free.min(k))
}

/// The potential: sum over live edges of `2^-(unclaimed vertices)`.
pub fn es_potential(state: &GameState) -> BigRational {
    let k = state.hypergraph().uniformity();
    let total: BigUint = live_with_free(state).map(|(_, u)| weight(k, u)).sum();
    BigRational::new(total.into(), (BigUint::one() << k).into())
}

/// For each unclaimed vertex, the summed weight of live edges through it, scaled by `2^k`.
fn vertex_weights(state: &GameState) -> Vec<(Vertex, BigUint)> {
    let h = state.hypergraph();
    let k = h.uniformity();
    let mut w: Vec<BigUint> = vec![BigUint::zero(); h.num_vertices()];
    for (e, u) in live_with_free(state) {
        let x = weight(k, u);
        for &v in e {
            if state.is_unclaimed(v) {
                w[h.index_of(v).expect("edge vertex")] += &x;
            }
        }
    }
    h.vertices().iter().copied().zip(w).filter(|(v, _)| state.is_unclaimed(*v)).collect()
}

/// The unclaimed vertex whose claim by Breaker removes the most potential; smallest on ties.
pub fn es_potential_breaker(state: &GameState) -> Result<Vertex> {
    argmax(vertex_weights(state)).ok_or_else(|| Error::Precondition("no unclaimed vertex".into()))
}

fn argmax(weights: Vec<(Vertex, BigUint)>) -> Option<Vertex> {
    let mut best: Option<(Vertex, BigUint)> = None;
    for (v, w) in weights {
        if best.as_ref().is_none_or(|(_, b)| w > *b) {
            best = Some((v, w));
        }
    }
    best.map(|(v, _)| v)
}

/// Breaker playing the potential argmax.
#[derive(Debug, Clone, Default)]
pub struct EsBreaker;

impl Strategy for EsBreaker {
    fn name(&self) -> String {
        "es-breaker".into()
    }

    fn next_move(&mut self, state: &GameState) -> Result<Vertex> {
        es_potential_breaker(state)
    }
}

/// Completes an edge when one move away, else takes the vertex of largest live weight.
#[derive(Debug, Clone, Default)]
pub struct GreedyMaker;

impl Strategy for GreedyMaker {
    fn name(&self) -> String {
        "greedy-maker".into()
    }

    fn next_move(&mut self, state: &GameState) -> Result<Vertex> {
        if let Some(v) = winning_completion(state) {
            return Ok(v);
        }
        argmax(vertex_weights(state)).ok_or_else(|| Error::Precondition("no unclaimed vertex".into()))
    }
}

/// The unclaimed vertex of a live edge whose other vertices all belong to Maker.
fn winning_completion(state: &GameState) -> Option<Vertex> {
    live_with_free(state)
        .filter(|&(_, u)| u == 1)
        .filter_map(|(e, _)| e.iter().copied().find(|&v| state.is_unclaimed(v)))
        .min()
}

/// Uniformly random unclaimed vertices from a seeded generator.
#[derive(Debug, Clone)]
pub struct RandomMaker {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomMaker {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for RandomMaker {
    fn name(&self) -> String {
        format!("random-maker({})", self.seed)
    }

    fn next_move(&mut self, state: &GameState) -> Result<Vertex> {
        state.unclaimed().choose(&mut self.rng).copied().ok_or_else(|| Error::Precondition("no unclaimed vertex".into()))
    }
}

/// Optimal play by exact search, for either side. From a lost position it falls back to
/// the greedy or potential move.
pub struct MinimaxStrategy {
    solver: Option<Solver>,
    cfg: SolverConfig,
}

impl MinimaxStrategy {
    pub fn new(cfg: SolverConfig) -> Self {
        Self { solver: None, cfg }
    }
}

impl Strategy for MinimaxStrategy {
    fn name(&self) -> String {
        "minimax".into()
    }

    fn next_move(&mut self, state: &GameState) -> Result<Vertex> {
        let cfg = SolverConfig { game: state.config(), ..self.cfg };
        let solver = self.solver.get_or_insert_with(|| Solver::new(cfg));
        if let Some(v) = solver.best_move(state)? {
            return Ok(v);
        }
        match state.to_move() {
            Player::Maker => GreedyMaker.next_move(state),
            Player::Breaker => es_potential_breaker(state),
        }
    }
}

/// Searches every Maker line against a Breaker whose answer depends only on the position.
/// Returns a winning Maker line with Breaker's answers interleaved, if one exists.
pub fn adversarial_maker_search(h: &Hypergraph, breaker: &mut dyn Strategy, config: GameConfig) -> Result<Option<Vec<Vertex>>> {
    if h.num_vertices() > 64 {
        return Err(Error::CapExceeded { what: "search vertices", actual: h.num_vertices(), cap: 64 });
    }
    let start = GameState::new(h.clone(), config)?;
    let mut memo = HashMap::new();
    let mut line = Vec::new();
    Ok(maker_line(&start, breaker, &mut memo, &mut line)?.then_some(line))
}

fn claimed_mask(state: &GameState, p: Player) -> u64 {
    let h = state.hypergraph();
    state.claimed_by(p).iter().map(|&v| 1u64 << h.index_of(v).expect("board vertex")).fold(0, |a, b| a | b)
}

fn maker_line(
    state: &GameState,
    breaker: &mut dyn Strategy,
    memo: &mut HashMap<(u64, u64), bool>,
    line: &mut Vec<Vertex>,
) -> Result<bool> {
    if let Some(p) = state.winner_check() {
        return Ok(p == Player::Maker);
    }
    let key = (claimed_mask(state, Player::Maker), claimed_mask(state, Player::Breaker));
    if let Some(&w) = memo.get(&key) {
        if !w {
            return Ok(false);
        }
    }
    let mark = line.len();
    let win = if state.to_move() == Player::Breaker {
        let v = breaker.next_move(state)?;
        line.push(v);
        maker_line(&state.apply_move(v)?, breaker, memo, line)?
    } else {
        let mut any = false;
        for v in state.unclaimed() {
            line.push(v);
            if maker_line(&state.apply_move(v)?, breaker, memo, line)? {
                any = true;
                break;
            }
            line.truncate(mark);
        }
        any
    };
    if !win {
        line.truncate(mark);
    }
    memo.insert(key, win);
    Ok(win)
}

/// Strategy names accepted by [`by_name`].
pub const STRATEGY_NAMES: [&str; 8] =
    ["es-breaker", "dl2-breaker", "chain-pairing", "power-pairing", "triple-maker", "greedy-maker", "random-maker", "minimax"];

/// Parameters some strategies need beyond the board.
#[derive(Debug, Clone, Copy, Default)]
pub struct StrategyParams {
    pub seed: u64,
    /// `(alpha, beta, b)` of a single equation `alpha x1 - beta x2 = b`.
    pub pair_equation: Option<(u64, u64, i64)>,
    pub solver: Option<SolverConfig>,
}

/// Builds a named strategy for the given board. `random-maker(7)` fixes the seed inline.
pub fn by_name(name: &str, h: &Hypergraph, params: &StrategyParams) -> Result<Box<dyn Strategy>> {
    let (base, arg) = match name.split_once('(') {
        Some((b, rest)) => (b, rest.strip_suffix(')').map(str::trim)),
        None => (name, None),
    };
    let eq = || params.pair_equation.ok_or_else(|| Error::InvalidInput(format!("{base} needs a two-variable equation")));
    let board: Vec<Vertex> = h.vertices().to_vec();
    Ok(match base {
        "es-breaker" => Box::new(EsBreaker),
        "dl2-breaker" | "dl2" => Box::new(Dl2Breaker::new(h)?),
        "chain-pairing" => {
            let (a, b, c) = eq()?;
            Box::new(PairingBreaker::new("chain-pairing", breaker_chain_pairing(&board, a, b, c)?))
        }
        "power-pairing" => {
            let (a, b, _) = eq()?;
            Box::new(PairingBreaker::new("power-pairing", breaker_power_pairing(&board, a, b)?))
        }
        "triple-maker" => {
            let (a, b, c) = eq()?;
            Box::new(TripleMaker::new(a, b, c))
        }
        "greedy-maker" => Box::new(GreedyMaker),
        "random-maker" => {
            let seed = match arg {
                Some(s) => s.parse().map_err(|_| Error::InvalidInput(format!("bad seed in {name}")))?,
                None => params.seed,
            };
            Box::new(RandomMaker::new(seed))
        }
        "minimax" => Box::new(MinimaxStrategy::new(params.solver.unwrap_or_default())),
        _ => return Err(Error::InvalidInput(format!("unknown strategy {name}; expected one of {}", STRATEGY_NAMES.join(", ")))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn state(edges: Vec<Vec<Vertex>>, moves: &[Vertex]) -> GameState {
        let h = Hypergraph::from_edges(edges[0].len(), edges).unwrap();
        let mut s = GameState::new(h, GameConfig::default()).unwrap();
        for &m in moves {
            s = s.apply_move(m).unwrap();
        }
        s
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn criterion_examples() {
        let h = Hypergraph::from_edges(3, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(es_criterion(&h), EsCriterion { sum: ratio(1, 4), holds: true });
        let h = Hypergraph::new(3, 1..=3, Vec::<Vec<Vertex>>::new()).unwrap();
        assert_eq!(es_criterion(&h), EsCriterion { sum: ratio(0, 1), holds: true });
        let h = Hypergraph::from_edges(2, vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]]).unwrap();
        assert_eq!(es_criterion(&h), EsCriterion { sum: ratio(1, 1), holds: false });
    }

    #[test]
    fn potential_breaker_examples() {
        let s = state(vec![vec![1, 2, 3]], &[1]);
        assert_eq!(es_potential_breaker(&s).unwrap(), 2);
        // Every edge already dead: smallest unclaimed vertex.
        let h = Hypergraph::new(3, 1..=6, vec![vec![1, 2, 3]]).unwrap();
        let s = GameState::new(h, GameConfig::default()).unwrap().apply_move(4).unwrap().apply_move(1).unwrap().apply_move(5).unwrap();
        assert_eq!(es_potential_breaker(&s).unwrap(), 2);
        let h = Hypergraph::new(3, 1..=6, vec![vec![1, 4, 5]]).unwrap();
        let s = GameState::new(h, GameConfig::default()).unwrap().apply_move(6).unwrap().apply_move(1).unwrap().apply_move(2).unwrap();
        assert_eq!(es_potential_breaker(&s).unwrap(), 3);
    }

    #[test]
    fn potential_breaker_takes_shared_vertex() {
        let s = state(vec![vec![1, 2, 5], vec![5, 6, 7]], &[]);
        let cfg = GameConfig { bias: 1, first_player: Player::Breaker };
        let s = GameState::new(s.shared_hypergraph(), cfg).unwrap();
        assert_eq!(es_potential_breaker(&s).unwrap(), 5);
    }

    #[test]
    fn greedy_maker_completes() {
        let s = state(vec![vec![1, 2, 3], vec![4, 5, 6]], &[1, 4, 2, 5]);
        assert_eq!(GreedyMaker.next_move(&s).unwrap(), 3);
    }

    #[test]
    fn random_maker_is_seeded() {
        let s = state(vec![vec![1, 2, 3], vec![4, 5, 6]], &[]);
        let a: Vec<Vertex> = (0..5).map(|_| RandomMaker::new(3).next_move(&s).unwrap()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(RandomMaker::new(3).name(), "random-maker(3)");
    }

    #[test]
    fn names_resolve() {
        let h = Hypergraph::from_edges(2, vec![vec![3, 5], vec![5, 8]]).unwrap();
        let params = StrategyParams { pair_equation: Some((2, 3, 1)), ..Default::default() };
        for name in STRATEGY_NAMES {
            if name == "dl2-breaker" {
                continue;
            }
            let s = by_name(name, &h, &params);
            assert!(s.is_ok() || name == "chain-pairing", "{name}");
        }
        assert_eq!(by_name("random-maker(9)", &h, &params).unwrap().name(), "random-maker(9)");
        assert!(by_name("nope", &h, &params).is_err());
    }
}
