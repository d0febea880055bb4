//! Strategies for a single equation `alpha x1 - beta x2 = b`, whose winning sets are pairs
//! `{(beta y + b) / alpha, y}`. Three consecutive chain members give Maker a double threat;
//! without one, Breaker pairs.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Certificate, GameState, Player};
use crate::hypergraph::Vertex;

use super::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Residue {
    pub z: u64,
    /// Product of the reduced coefficients.
    pub modulus: u64,
}

/// The residue class of `x` for which both `(alpha x - b) / beta` and `(beta x + b) / alpha`
/// are integers, after dividing the equation by `gcd(alpha, beta)`.
pub fn solve_residue(alpha: u64, beta: u64, b: i64) -> Result<Residue> {
    if alpha == 0 || beta == 0 || alpha == beta {
        return Err(Error::InvalidInput(format!("need distinct positive coefficients, got {alpha} and {beta}")));
    }
    let t = alpha.gcd(&beta);
    if b.unsigned_abs() % t != 0 {
        return Err(Error::Divisibility(b.to_string(), t.to_string()));
    }
    let (a, c, b) = ((alpha / t) as i128, (beta / t) as i128, (b / t as i64) as i128);
    let m = a * c;
    // a x = b (mod c) and c x = -b (mod a).
    let x1 = (b * inverse(a, c)).rem_euclid(c);
    let x2 = (-b * inverse(c, a)).rem_euclid(a);
    let z = crt(x1, c, x2, a);
    let ok = |x: i128| (a * x - b).rem_euclid(c) == 0 && (c * x + b).rem_euclid(a) == 0;
    if !ok(z) || (m <= 1 << 20 && (0..m).filter(|&x| ok(x)).count() != 1) {
        return Err(Error::Internal(format!("residue scan disagrees for ({alpha}, {beta}, {b})")));
    }
    Ok(Residue { z: z as u64, modulus: m as u64 })
}

/// Combines `x = r1 (mod m1)` and `x = r2 (mod m2)` for coprime moduli.
fn crt(r1: i128, m1: i128, r2: i128, m2: i128) -> i128 {
    let k = ((r2 - r1) * inverse(m1, m2)).rem_euclid(m2);
    (r1 + m1 * k).rem_euclid(m1 * m2)
}

fn inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// `[(alpha x - b) / beta, x, (beta x + b) / alpha]` when all three are positive distinct
/// integers that fit a vertex.
pub fn triple_around(x: Vertex, alpha: u64, beta: u64, b: i64) -> Option<[Vertex; 3]> {
    let (a, c, b, x) = (alpha as i128, beta as i128, b as i128, x as i128);
    let lo = a * x - b;
    let hi = c * x + b;
    if lo % c != 0 || hi % a != 0 {
        return None;
    }
    let (lo, hi) = (lo / c, hi / a);
    let fits = |v: i128| v > 0 && v <= Vertex::MAX as i128;
    (fits(lo) && fits(hi) && lo != x && hi != x && lo != hi).then(|| [lo as Vertex, x as Vertex, hi as Vertex])
}

/// Maker's double threat: claim the middle of a free triple, then whichever end survives.
#[derive(Debug, Clone)]
pub struct TripleMaker {
    alpha: u64,
    beta: u64,
    b: i64,
    chosen: Option<[Vertex; 3]>,
}

impl TripleMaker {
    pub fn new(alpha: u64, beta: u64, b: i64) -> Self {
        Self { alpha, beta, b, chosen: None }
    }

    pub fn chosen(&self) -> Option<[Vertex; 3]> {
        self.chosen
    }
}

impl Strategy for TripleMaker {
    fn name(&self) -> String {
        "triple-maker".into()
    }

    fn next_move(&mut self, state: &GameState) -> Result<Vertex> {
        let fallback = || state.smallest_unclaimed().ok_or_else(|| Error::Precondition("no unclaimed vertex".into()));
        if self.chosen.is_none() && state.claimed_by(Player::Maker).is_empty() {
            self.chosen = state
                .unclaimed()
                .into_iter()
                .filter_map(|x| triple_around(x, self.alpha, self.beta, self.b))
                .find(|t| t.iter().all(|&v| state.is_unclaimed(v)));
            if let Some(t) = self.chosen {
                return Ok(t[1]);
            }
        }
        match self.chosen {
            Some([lo, x, hi]) if state.owner(x) == Some(Player::Maker) => {
                [lo, hi].into_iter().find(|&v| state.is_unclaimed(v)).map_or_else(fallback, Ok)
            }
            _ => fallback(),
        }
    }
}

/// Pairwise disjoint vertex pairs with partner lookup.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairingTable {
    pairs: Vec<(Vertex, Vertex)>,
    #[serde(skip)]
    partner: HashMap<Vertex, Vertex>,
}

impl PairingTable {
    pub fn new(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut t = Self::default();
        for (x, y) in pairs {
            if x == y || t.partner.contains_key(&x) || t.partner.contains_key(&y) {
                return Err(Error::InvalidInput(format!("pair {{{x}, {y}}} overlaps the table")));
            }
            t.partner.insert(x, y);
            t.partner.insert(y, x);
            t.pairs.push((x.min(y), x.max(y)));
        }
        t.pairs.sort_unstable();
        Ok(t)
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.partner.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.pairs.iter().all(|&(x, y)| x != y && seen.insert(x) && seen.insert(y))
    }
}

/// Next chain member `(beta y + c) / alpha`, if a positive integer other than `y`.
fn chain_next(y: Vertex, alpha: u64, beta: u64, c: i64) -> Option<Vertex> {
    let num = beta as i128 * y as i128 + c as i128;
    if num % alpha as i128 != 0 {
        return None;
    }
    let n = num / alpha as i128;
    (n > 0 && n <= Vertex::MAX as i128 && n != y as i128).then_some(n as Vertex)
}

/// Pairs consecutive chain members present on the board, walking each chain from its
/// smallest present member.
pub fn breaker_chain_pairing(board: &[Vertex], alpha: u64, beta: u64, c: i64) -> Result<PairingTable> {
    if alpha == 0 || beta == 0 {
        return Err(Error::InvalidInput("coefficients must be positive".into()));
    }
    let on: BTreeSet<Vertex> = board.iter().copied().collect();
    let next = |y: Vertex| chain_next(y, alpha, beta, c).filter(|n| on.contains(n));
    for &y in &on {
        if let Some(z) = next(y) {
            if let Some(w) = next(z).filter(|&w| w != y) {
                return Err(Error::ChainOnBoard(vec![y, z, w]));
            }
        }
    }
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    for &y in &on {
        if used.contains(&y) {
            continue;
        }
        if let Some(z) = next(y).filter(|z| !used.contains(z)) {
            used.insert(y);
            used.insert(z);
            pairs.push((y, z));
        }
    }
    PairingTable::new(pairs)
}

/// `(i, j, y)` with `v = alpha^i beta^j y` and `y` divisible by neither coefficient. A
/// coefficient equal to one has no well-defined exponent; then `i` (or `j`) is set to make
/// consecutive powers of the other coefficient alternate between the two roles.
pub fn power_form(v: Vertex, alpha: u64, beta: u64) -> (u32, u32, u64) {
    let strip = |mut y: u64, p: u64| {
        let mut e = 0;
        if p > 1 {
            while y % p == 0 {
                y /= p;
                e += 1;
            }
        }
        (e, y)
    };
    let (i, y) = strip(v as u64, alpha);
    let (j, y) = strip(y, beta);
    match (alpha, beta) {
        (1, _) => (u32::from(j % 2 == 0), j, y),
        (_, 1) => (i, u32::from(i % 2 == 0), y),
        _ => (i, j, y),
    }
}

/// Pairs `alpha^i beta^j y` (i even, j at least one) with `alpha^(i+1) beta^(j-1) y`.
pub fn breaker_power_pairing(board: &[Vertex], alpha: u64, beta: u64) -> Result<PairingTable> {
    if alpha == 0 || beta == 0 || alpha == beta || alpha.gcd(&beta) != 1 {
        return Err(Error::InvalidInput(format!("need distinct coprime positive coefficients, got {alpha} and {beta}")));
    }
    let on: BTreeSet<Vertex> = board.iter().copied().collect();
    let mut pairs = Vec::new();
    for &v in &on {
        let (i, j, _) = power_form(v, alpha, beta);
        if i % 2 != 0 || j == 0 {
            continue;
        }
        let partner = v as u128 / beta as u128 * alpha as u128;
        if partner <= Vertex::MAX as u128 && on.contains(&(partner as Vertex)) {
            pairs.push((v, partner as Vertex));
        }
    }
    PairingTable::new(pairs)
}

/// Answers Maker's move with its partner, else the smallest unclaimed vertex.
#[derive(Debug, Clone)]
pub struct PairingBreaker {
    name: String,
    table: PairingTable,
}

impl PairingBreaker {
    pub fn new(name: impl Into<String>, table: PairingTable) -> Self {
        Self { name: name.into(), table }
    }

    pub fn table(&self) -> &PairingTable {
        &self.table
    }
}

impl Strategy for PairingBreaker {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn next_move(&mut self, state: &GameState) -> Result<Vertex> {
        state
            .answering_maker()
            .and_then(|m| self.table.partner(m))
            .filter(|&p| state.is_unclaimed(p))
            .or_else(|| state.smallest_unclaimed())
            .ok_or_else(|| Error::Precondition("no unclaimed vertex".into()))
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(Certificate::Pairing)
    }
}
