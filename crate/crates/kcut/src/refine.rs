//! Local refinement of sampled spanning trees.
//!
//! A spanning tree crossing some minimum k-cut at most `2k - 2` times is
//! easy to sample from a good packing; the solvers, however, want *tight*
//! trees that cross it exactly `k - 1` times. One refinement step deletes a
//! uniformly random tree edge and reconnects the two halves with a graph
//! edge chosen with probability proportional to weight. Each step removes
//! one excess crossing with probability at least on the order of
//! `1 / (n k^2)`, so short chains restarted from the sampled tree reach a
//! tight tree after boundedly many restarts. Every distinct tree seen along
//! the way is kept as a candidate.

use crate::graph::{Weight, WeightedGraph};
use rand::Rng;
use std::collections::HashSet;

/// One delete-and-reconnect step. `tree` must be a spanning tree of `g`
/// given as graph edge indices; the result is again a sorted spanning tree.
pub fn refine_step<R: Rng>(g: &WeightedGraph, tree: &[usize], rng: &mut R) -> Vec<usize> {
    let n = g.n();
    debug_assert_eq!(tree.len(), n - 1);
    let drop_pos = rng.gen_range(0..tree.len());
    let dropped = tree[drop_pos];

    // Component of one endpoint of the dropped edge in T - e.
    let mut adj = vec![Vec::new(); n];
    for (pos, &e) in tree.iter().enumerate() {
        if pos == drop_pos {
            continue;
        }
        let (u, v, _) = g.edge(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let (su, _, _) = g.edge(dropped);
    let mut side = vec![false; n];
    side[su] = true;
    let mut stack = vec![su];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !side[u] {
                side[u] = true;
                stack.push(u);
            }
        }
    }

    // Weighted choice among all graph edges reconnecting the two sides
    // (the dropped edge itself is a candidate, so the step can stand pat).
    let total: Weight = g
        .edges()
        .iter()
        .filter(|&&(u, v, _)| side[u] != side[v])
        .map(|&(_, _, w)| w)
        .sum();
    let mut pick = rng.gen_range(0..total);
    let mut replacement = dropped;
    for (i, &(u, v, w)) in g.edges().iter().enumerate() {
        if side[u] == side[v] {
            continue;
        }
        if pick < w {
            replacement = i;
            break;
        }
        pick -= w;
    }

    let mut next: Vec<usize> = tree.to_vec();
    next[drop_pos] = replacement;
    next.sort_unstable();
    next
}

/// Runs `chains` independent refinement chains of `chain_len` steps, each
/// restarted from `start`, and returns every distinct tree encountered
/// (including `start` itself), in first-seen order.
pub fn refine_chains<R: Rng>(
    g: &WeightedGraph,
    start: &[usize],
    chain_len: usize,
    chains: usize,
    rng: &mut R,
) -> Vec<Vec<usize>> {
    let mut sorted_start = start.to_vec();
    sorted_start.sort_unstable();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    if seen.insert(sorted_start.clone()) {
        out.push(sorted_start.clone());
    }
    for _ in 0..chains {
        let mut cur = sorted_start.clone();
        for _ in 0..chain_len {
            cur = refine_step(g, &cur, rng);
            if seen.insert(cur.clone()) {
                out.push(cur.clone());
            }
        }
    }
    out
}
