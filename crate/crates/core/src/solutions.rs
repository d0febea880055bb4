//! The solution hypergraph of a system over a board, and the largest solution-free subset
//! of `[n]`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Board, Hypergraph, Vertex};
use crate::linalg::{rref, scale_to_integers, to_rational, ExactInt};
use crate::system::RadoSystem;

/// `d * x_pivot + sum(a_j x_j) = e` over free coordinates `j`.
struct Row<T> {
    pivot: usize,
    d: T,
    terms: Vec<(usize, T)>,
    e: T,
}

/// All k-subsets of the board that are the value set of a k-distinct solution.
pub fn enumerate_solutions(system: &RadoSystem, board: &Board) -> Result<Hypergraph> {
    let k = system.cols();
    let red = rref(&to_rational(&system.augmented_rows()));
    if red.pivots.is_empty() {
        return Err(Error::Precondition("the matrix has rank 0".into()));
    }
    let empty = || Hypergraph::new(k, board.members().iter().copied(), Vec::<Vec<Vertex>>::new());
    if red.pivots.last() == Some(&k) {
        return empty();
    }
    let is_pivot: Vec<bool> = (0..k).map(|c| red.pivots.contains(&c)).collect();
    let free: Vec<usize> = (0..k).filter(|&c| !is_pivot[c]).collect();
    let rows: Vec<Row<BigInt>> = red
        .rows
        .iter()
        .zip(&red.pivots)
        .map(|(row, &p)| {
            let ints = scale_to_integers(row);
            Row {
                pivot: p,
                d: ints[p].clone(),
                terms: free.iter().filter(|&&c| !ints[c].is_zero()).map(|&c| (c, ints[c].clone())).collect(),
                e: ints[k].clone(),
            }
        })
        .collect();

    let limit = BigInt::one() << 60u32;
    let small = rows.iter().all(|r| {
        r.d.abs() < limit && r.e.abs() < limit && r.terms.iter().all(|(_, a)| a.abs() < limit)
    });
    let edges = if small {
        collect_edges::<i128>(k, &free, &convert(&rows), board)
    } else {
        collect_edges::<BigInt>(k, &free, &rows, board)
    };
    Hypergraph::new(k, board.members().iter().copied(), edges)
}

fn convert<T: ExactInt>(rows: &[Row<BigInt>]) -> Vec<Row<T>> {
    rows.iter()
        .map(|r| Row {
            pivot: r.pivot,
            d: T::from_big(&r.d),
            terms: r.terms.iter().map(|(c, a)| (*c, T::from_big(a))).collect(),
            e: T::from_big(&r.e),
        })
        .collect()
}

fn collect_edges<T: ExactInt>(k: usize, free: &[usize], rows: &[Row<T>], board: &Board) -> Vec<Vec<Vertex>> {
    let members = board.members();
    let mut x: Vec<u64> = vec![0; k];
    let mut out: HashSet<Vec<Vertex>> = HashSet::new();
    // Odometer over ordered tuples of distinct members for the free coordinates.
    let f = free.len();
    let mut idx = vec![0usize; f];
    if f > 0 && members.len() < f {
        return Vec::new();
    }
    loop {
        let distinct_free = (0..f).all(|i| (0..i).all(|j| idx[i] != idx[j]));
        if distinct_free {
            for (slot, &c) in free.iter().enumerate() {
                x[c] = members[idx[slot]] as u64;
            }
            if solve_pivots(rows, &mut x, board) {
                let mut e: Vec<Vertex> = x.iter().map(|&v| v as Vertex).collect();
                e.sort_unstable();
                if e.windows(2).all(|w| w[0] != w[1]) {
                    out.insert(e);
                }
            }
        }
        // Advance.
        let mut pos = f;
        loop {
            if pos == 0 {
                let mut edges: Vec<Vec<Vertex>> = out.into_iter().collect();
                edges.sort_unstable();
                return edges;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < members.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn solve_pivots<T: ExactInt>(rows: &[Row<T>], x: &mut [u64], board: &Board) -> bool {
    for r in rows {
        let mut rhs = r.e.clone();
        for (c, a) in &r.terms {
            rhs = rhs - a.clone() * T::from_u64(x[*c]);
        }
        let (q, rem) = rhs.div_rem(&r.d);
        if !rem.is_zero() || !q.is_positive() || q > T::from_u64(board.n() as u64) {
            return false;
        }
        let v = q.as_coord();
        if !board.contains(v as Vertex) {
            return false;
        }
        x[r.pivot] = v;
    }
    true
}

/// Reference enumeration: every k-subset of the board under every assignment to the coordinates.
pub fn enumerate_solutions_naive(system: &RadoSystem, board: &Board) -> Result<Hypergraph> {
    let k = system.cols();
    let members = board.members();
    let mut edges = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    if members.len() >= k {
        loop {
            let set: Vec<Vertex> = subset.iter().map(|&i| members[i]).collect();
            if permutations(&set).into_iter().any(|perm| {
                let xs: Vec<BigInt> = perm.iter().map(|&v| BigInt::from(v)).collect();
                system.is_solution(&xs)
            }) {
                edges.push(set);
            }
            // Next combination.
            let mut i = k;
            loop {
                if i == 0 {
                    return Hypergraph::new(k, members.iter().copied(), edges);
                }
                i -= 1;
                if subset[i] < members.len() - k + i {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    Hypergraph::new(k, members.iter().copied(), edges)
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuMode {
    Exact,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuResult {
    pub mu: usize,
    pub witness: Vec<Vertex>,
}

pub const MU_EXACT_CAP: u32 = 24;
pub const MU_BRANCH_CAP: u32 = 64;

/// Size of the largest subset of `[n]` containing no edge of the solution hypergraph on `[n]`.
pub fn compute_mu(system: &RadoSystem, n: u32, mode: MuMode) -> Result<MuResult> {
    let cap = match mode {
        MuMode::Exact => MU_EXACT_CAP,
        MuMode::BranchAndBound => MU_BRANCH_CAP,
    };
    if n > cap {
        return Err(Error::CapExceeded { what: "n for mu", actual: n as usize, cap: cap as usize });
    }
    let h = enumerate_solutions(system, &Board::full(n))?;
    let masks: Vec<u64> = h.edges().iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << (v - 1))).collect();
    let mask = match mode {
        MuMode::Exact => mu_exact(n, &masks),
        MuMode::BranchAndBound => mu_branch(n, &masks),
    };
    let witness: Vec<Vertex> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
    Ok(MuResult { mu: witness.len(), witness })
}

/// Subset DP: a set is independent iff dropping its top element leaves an independent set
/// and no edge with that top element lies inside it. Returns the lexicographically least
/// maximum independent set.
fn mu_exact(n: u32, edges: &[u64]) -> u64 {
    let n = n as usize;
    let mut by_top: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &e in edges {
        by_top[63 - e.leading_zeros() as usize].push(e);
    }
    let total = 1usize << n;
    let mut indep = vec![0u64; total.div_ceil(64)];
    indep[0] = 1;
    let (mut best, mut best_count) = (0u64, 0u32);
    for mask in 1..total {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask ^ (1 << top);
        if indep[rest / 64] >> (rest % 64) & 1 == 0 {
            continue;
        }
        let m = mask as u64;
        if by_top[top].iter().any(|&e| e & m == e) {
            continue;
        }
        indep[mask / 64] |= 1 << (mask % 64);
        let c = m.count_ones();
        let lex_smaller = || {
            let diff = m ^ best;
            m & diff & diff.wrapping_neg() != 0
        };
        if c > best_count || (c == best_count && lex_smaller()) {
            best = m;
            best_count = c;
        }
    }
    best
}

/// Include/exclude search over `1..=n` with a greedy starting solution and a bound from a
/// packing of edges that would each force one more exclusion.
fn mu_branch(n: u32, edges: &[u64]) -> u64 {
    let n = n as usize;
    let mut incident: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &e in edges {
        for v in 0..n {
            if e >> v & 1 == 1 {
                incident[v].push(e);
            }
        }
    }
    let can_add = |set: u64, v: usize| {
        let s = set | 1 << v;
        incident[v].iter().all(|&e| e & s != e)
    };
    let mut greedy = 0u64;
    for v in 0..n {
        if can_add(greedy, v) {
            greedy |= 1 << v;
        }
    }
    struct Search<'a> {
        n: usize,
        edges: &'a [u64],
        best: u64,
    }
    impl Search<'_> {
        fn upper_bound(&self, set: u64, i: usize) -> u32 {
            let undecided = if i >= 64 { 0 } else { !0u64 << i } & if self.n >= 64 { !0 } else { (1u64 << self.n) - 1 };
            let mut used = 0u64;
            let mut forced = 0;
            for &e in self.edges {
                let open = e & undecided;
                if e & !(set | undecided) == 0 && open & used == 0 {
                    used |= open;
                    forced += 1;
                }
            }
            set.count_ones() + undecided.count_ones() - forced
        }
    }
    let mut s = Search { n, edges, best: greedy };
    fn go(s: &mut Search<'_>, incident: &[Vec<u64>], set: u64, i: usize) {
        if set.count_ones() > s.best.count_ones() {
            s.best = set;
        }
        if i == s.n || s.upper_bound(set, i) <= s.best.count_ones() {
            return;
        }
        let with = set | 1 << i;
        if incident[i].iter().all(|&e| e & with != e) {
            go(s, incident, with, i + 1);
        }
        go(s, incident, set, i + 1);
    }
    go(&mut s, &incident, 0, 0);
    s.best
}
