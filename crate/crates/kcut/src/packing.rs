//! Greedy spanning tree packing under load balancing.
//!
//! Repeatedly picks a minimum spanning tree where the cost of an edge is its
//! current load `uses(e) / w(e)`, then increments the load of the chosen
//! edges. Heavily used edges become expensive, so the packing spreads over
//! the whole graph. The payoff is statistical: for a packing of adequate
//! size, the trees cross any fixed minimum k-cut fewer than
//! `2(k - 1 + 2*alpha)` times on average, so trees crossing it at most
//! `2k - 2` times are plentiful and uniform sampling finds one quickly.

use crate::graph::{Partition, WeightedGraph};
use rand::Rng;

/// Default load-balance slack for sizing formulas.
pub const DEFAULT_ALPHA: f64 = 0.125;

/// A multiset of spanning trees of one graph, each stored as a sorted list
/// of graph edge indices, together with the per-edge use counts.
#[derive(Debug, Clone)]
pub struct TreePacking {
    trees: Vec<Vec<usize>>,
    uses: Vec<u64>,
}

impl TreePacking {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn tree(&self, i: usize) -> &[usize] {
        &self.trees[i]
    }

    pub fn trees(&self) -> &[Vec<usize>] {
        &self.trees
    }

    /// How many trees use each graph edge.
    pub fn uses(&self) -> &[u64] {
        &self.uses
    }

    /// Index of a uniformly random tree.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.trees.len())
    }
}

/// Number of trees the analysis asks for: `ceil(3 m (k/alpha)^3 ln(n m k / alpha))`.
///
/// This is a worst-case bound; the solvers use far smaller packings sized by
/// [`practical_packing_size`] and fall back to growing them only if needed.
pub fn packing_size_formula(n: usize, m: usize, k: usize, alpha: f64) -> u64 {
    assert!(alpha > 0.0 && alpha < 0.9, "alpha must lie in (0, 9/10)");
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let trees = 3.0 * mf * (kf / alpha).powi(3) * (nf * mf * kf / alpha).ln();
    trees.ceil() as u64
}

/// Packing size actually used by the pipelines: enough for the sampling
/// bounds to hold comfortably on instances this library targets, small
/// enough to build in milliseconds.
pub fn practical_packing_size(n: usize, k: usize) -> usize {
    (8 * n * k).clamp(64, 512)
}

/// Builds a greedy load-balanced packing of `size` spanning trees.
///
/// Each round runs Kruskal ordered by load `uses(e) / w(e)` — compared
/// exactly by cross-multiplication, never floats — with ties broken by edge
/// index, so the construction is deterministic.
pub fn greedy_tree_packing(g: &WeightedGraph, size: usize) -> TreePacking {
    let m = g.m();
    let mut uses = vec![0u64; m];
    let mut trees = Vec::with_capacity(size);
    let mut order: Vec<usize> = (0..m).collect();
    for _ in 0..size {
        // load(a) < load(b)  <=>  uses(a) * w(b) < uses(b) * w(a)
        order.sort_unstable_by(|&a, &b| {
            let la = uses[a] as i128 * g.edge(b).2 as i128;
            let lb = uses[b] as i128 * g.edge(a).2 as i128;
            la.cmp(&lb).then(a.cmp(&b))
        });
        let mut comp: Vec<usize> = (0..g.n()).collect();
        fn find(comp: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while comp[r] != r {
                r = comp[r];
            }
            let mut x = v;
            while comp[x] != r {
                let next = comp[x];
                comp[x] = r;
                x = next;
            }
            r
        }
        let mut tree = Vec::with_capacity(g.n() - 1);
        for &e in &order {
            let (u, v, _) = g.edge(e);
            let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
            if ru != rv {
                comp[ru] = rv;
                tree.push(e);
                if tree.len() == g.n() - 1 {
                    break;
                }
            }
        }
        debug_assert_eq!(tree.len(), g.n() - 1, "graph must be connected");
        for &e in &tree {
            uses[e] += 1;
        }
        tree.sort_unstable();
        trees.push(tree);
    }
    TreePacking { trees, uses }
}

/// Number of edges of `tree` (given as graph edge indices) whose endpoints
/// lie in different parts of `p`.
pub fn crossing_number(g: &WeightedGraph, tree: &[usize], p: &Partition) -> usize {
    tree.iter()
        .filter(|&&e| {
            let (u, v, _) = g.edge(e);
            p.label(u) != p.label(v)
        })
        .count()
}

/// Index and crossing count of the packing tree crossing `p` the fewest
/// times (ties to the earliest tree).
pub fn min_crossing_tree(g: &WeightedGraph, packing: &TreePacking, p: &Partition) -> (usize, usize) {
    let mut best = (0usize, usize::MAX);
    for (i, tree) in packing.trees().iter().enumerate() {
        let c = crossing_number(g, tree, p);
        if c < best.1 {
            best = (i, c);
        }
    }
    best
}

/// Mean crossing number of the packing against `p`, as an exact fraction
/// `(total crossings, tree count)`.
pub fn mean_crossing(g: &WeightedGraph, packing: &TreePacking, p: &Partition) -> (usize, usize) {
    let total: usize = packing
        .trees()
        .iter()
        .map(|t| crossing_number(g, t, p))
        .sum();
    (total, packing.len())
}
