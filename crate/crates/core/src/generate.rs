//! Small connected k-uniform hypergraphs and sparse random boards for tests and benchmarks.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::edge_order::{decompose_component, Decomposition, Outcome};
use crate::hypergraph::{sample_board, Hypergraph, Vertex};
use crate::solutions::enumerate_solutions;
use crate::system::RadoSystem;

/// A connected k-uniform hypergraph with `edges` edges on vertices `0..max_vertices`.
///
/// Each edge after the first reuses between one and `k` earlier vertices, drawn with a
/// preference for one or two so that sparse shapes are common. Returns `None` if the
/// vertex budget runs out first, which only happens when `max_vertices` is tight.
pub fn random_connected<R: Rng>(rng: &mut R, k: usize, edges: usize, max_vertices: usize) -> Option<Hypergraph> {
    if edges == 0 || max_vertices < k {
        return None;
    }
    let mut next: Vertex = k as Vertex;
    let mut out: Vec<Vec<Vertex>> = vec![(0..k as Vertex).collect()];
    let mut tries = 0;
    while out.len() < edges {
        tries += 1;
        if tries > 1000 {
            return None;
        }
        let room = max_vertices - next as usize;
        let min_old = k.saturating_sub(room).max(1);
        let old_count = match rng.gen_range(0..10) {
            0..=5 => 1,
            6..=8 => 2,
            _ => rng.gen_range(1..=k),
        }
        .clamp(min_old, k.min(next as usize));
        let pool: Vec<Vertex> = (0..next).collect();
        let mut e: Vec<Vertex> = pool.choose_multiple(rng, old_count).copied().collect();
        for _ in old_count..k {
            e.push(next);
            next += 1;
        }
        e.sort_unstable();
        if out.contains(&e) {
            next -= (k - old_count) as Vertex;
            continue;
        }
        out.push(e);
    }
    Hypergraph::from_edges(k, out).ok()
}

/// Every connected k-uniform hypergraph with at most `max_edges` edges and at most
/// `max_vertices` vertices, up to isomorphism, possibly with repeats.
///
/// Edges are added in an allowed order with new vertices numbered consecutively, so each
/// isomorphism class shows up at least once.
pub fn connected_family(k: usize, max_edges: usize, max_vertices: usize) -> Vec<Hypergraph> {
    let mut seen: BTreeSet<Vec<Vec<Vertex>>> = BTreeSet::new();
    let mut out = Vec::new();
    if max_edges == 0 || max_vertices < k {
        return out;
    }
    let mut stack: Vec<Vec<Vec<Vertex>>> = vec![vec![(0..k as Vertex).collect()]];
    while let Some(edges) = stack.pop() {
        let mut key = edges.clone();
        key.sort();
        if !seen.insert(key) {
            continue;
        }
        out.push(Hypergraph::from_edges(k, edges.clone()).expect("generated edges are k-sets"));
        if edges.len() == max_edges {
            continue;
        }
        let used = edges.iter().flatten().max().map_or(0, |&v| v as usize + 1);
        for old in 1..=k {
            let fresh = k - old;
            if used + fresh > max_vertices {
                continue;
            }
            for base in (0..used as Vertex).combinations(old) {
                let mut e = base;
                e.extend((used..used + fresh).map(|v| v as Vertex));
                if edges.contains(&e) {
                    continue;
                }
                let mut next = edges.clone();
                next.push(e);
                stack.push(next);
            }
        }
    }
    out
}

/// Bicycle-free components with at most `max_vertices` vertices of random boards
/// `[n]_p` for the given system, with their decompositions, from consecutive seeds until
/// `count` are found. Successive boards cycle through `ns`, with `p = c / sqrt(n)`.
pub fn sparse_components(system: &RadoSystem, ns: &[u32], c: f64, seed: u64, max_vertices: usize, count: usize) -> Vec<(Hypergraph, Decomposition)> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        let n = ns[(s - seed) as usize % ns.len()];
        let board = sample_board(n, (c / (n as f64).sqrt()).min(1.0), s);
        s += 1;
        let Ok(h) = enumerate_solutions(system, &board) else { continue };
        for (id, comp) in h.nontrivial_components() {
            if comp.vertices.len() > max_vertices || out.len() >= count {
                continue;
            }
            let sub = h.component_hypergraph(id);
            if let Ok(Outcome::Decomposed(d)) = decompose_component(&sub, 0) {
                out.push((sub, d));
            }
        }
    }
    out
}
