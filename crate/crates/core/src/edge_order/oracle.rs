//! Exhaustive reference test for valid orders with two bad edges.

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};

pub const DEFAULT_ORACLE_CAP: usize = 10;

/// Searches every connected sub-hypergraph of the component for a valid order with at
/// least two bad edges, returning one such order.
pub fn has_bad_valid_order(h: &Hypergraph, component: usize, cap: usize) -> Result<Option<Vec<EdgeId>>> {
    bad_valid_order_in(h, &h.component(component).edges, cap)
}

/// Same search restricted to sub-hypergraphs of the given edges.
///
/// Whether an edge is good or bad when appended depends only on the set of edges before
/// it, so a DP over edge subsets suffices: `best[S]` is the largest number of bad edges
/// (capped at two) over valid orders of `S`.
pub fn bad_valid_order_in(h: &Hypergraph, edges: &[EdgeId], cap: usize) -> Result<Option<Vec<EdgeId>>> {
    let m = edges.len();
    if m > cap {
        return Err(Error::CapExceeded { what: "component edges", actual: m, cap });
    }
    let k = h.uniformity();
    let mut vmask: Vec<Vec<u32>> = Vec::with_capacity(1 << m);
    vmask.push(Vec::new());
    for s in 1usize..1 << m {
        let low = s.trailing_zeros() as usize;
        let mut v = vmask[s & (s - 1)].clone();
        for &x in h.edge(edges[low]) {
            if let Err(p) = v.binary_search(&x) {
                v.insert(p, x);
            }
        }
        vmask.push(v);
    }
    const NONE: i8 = -1;
    let mut best = vec![NONE; 1 << m];
    let mut from: Vec<(usize, usize)> = vec![(0, 0); 1 << m];
    for i in 0..m {
        best[1 << i] = 0;
    }
    for s in 1usize..1 << m {
        if best[s] == NONE {
            continue;
        }
        for (i, &e) in edges.iter().enumerate() {
            if s >> i & 1 == 1 {
                continue;
            }
            let old = h.edge(e).iter().filter(|x| vmask[s].binary_search(x).is_ok()).count();
            if old == 0 || old >= k {
                continue;
            }
            let t = s | 1 << i;
            let score = (best[s] + i8::from(old >= 2)).min(2);
            if score > best[t] {
                best[t] = score;
                from[t] = (s, i);
            }
        }
        if best[s] >= 2 {
            let mut order = Vec::new();
            let mut cur = s;
            while cur.count_ones() > 1 {
                let (prev, i) = from[cur];
                order.push(edges[i]);
                cur = prev;
            }
            order.push(edges[cur.trailing_zeros() as usize]);
            order.reverse();
            return Ok(Some(order));
        }
    }
    Ok(None)
}
