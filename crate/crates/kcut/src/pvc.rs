//! Node-weighted partial vertex cover.
//!
//! An instance assigns a nonnegative weight to every node and to every
//! unordered node pair. A pick of exactly `size` nodes pays the weights of
//! the picked nodes plus the weights of all pairs touching at least one
//! picked node. The approximation tower solves one such instance at every
//! tree vertex: node weights are child subproblem values and pair weights
//! are the crossing weights that would otherwise be double-counted between
//! sibling choices.
//!
//! [`pvc_exact`] enumerates every feasible pick. [`pvc_approx`] runs
//! color-coding rounds: each node independently turns red with probability
//! `1/τ` where `τ = ⌈size/δ⌉`, and the round enumerates picks among red
//! nodes only. Every candidate is scored with the true objective, so any
//! round's winner is a valid upper bound, and a round that happens to color
//! an optimal pick fully red returns the exact optimum — probability at
//! least `(1/τ)^size` per round. Tiny search spaces, including picks of
//! size one, are solved exactly without sampling.
//!
//! Both solvers accept the side constraints the tree dynamic program needs:
//! a set of nodes that must appear in the pick, and per-node loads that
//! must add up to an exact total.

use crate::graph::{for_each_subset, mix_seed, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Search spaces at most this large are enumerated outright instead of
/// sampled, both as a fast path and to make tiny instances exact.
const SMALL_SEARCH: u128 = 4096;

/// Largest per-round enumeration [`pvc_approx`] accepts; rounds whose red
/// set would exceed it are skipped (they are rare for the intended `τ`).
const ROUND_CAP: u128 = 1 << 17;

/// A complete node- and pair-weighted instance. `phi[v]` is the weight of
/// node `v`; `psi[u][v]` the weight of the pair `{u, v}` (symmetric, zero
/// diagonal). All weights are nonnegative.
#[derive(Debug, Clone)]
pub struct PvcInstance {
    phi: Vec<Weight>,
    psi: Vec<Vec<Weight>>,
}

impl PvcInstance {
    pub fn new(phi: Vec<Weight>, psi: Vec<Vec<Weight>>) -> Self {
        let n = phi.len();
        assert_eq!(psi.len(), n, "pair matrix must be square");
        for (i, row) in psi.iter().enumerate() {
            assert_eq!(row.len(), n, "pair matrix must be square");
            assert_eq!(row[i], 0, "pair matrix diagonal must be zero");
            for (j, &w) in row.iter().enumerate() {
                assert!(w >= 0, "pair weights must be nonnegative");
                assert_eq!(w, psi[j][i], "pair matrix must be symmetric");
            }
        }
        for &w in &phi {
            assert!(w >= 0, "node weights must be nonnegative");
        }
        PvcInstance { phi, psi }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// Objective of a pick: its node weights plus every pair weight with at
    /// least one endpoint picked, each pair counted once.
    pub fn value(&self, pick: &[usize]) -> Weight {
        let n = self.len();
        let mut chosen = vec![false; n];
        for &v in pick {
            assert!(v < n && !chosen[v], "pick must be a set of valid nodes");
            chosen[v] = true;
        }
        let mut total: Weight = pick.iter().map(|&v| self.phi[v]).sum();
        for i in 0..n {
            for j in i + 1..n {
                if chosen[i] || chosen[j] {
                    total += self.psi[i][j];
                }
            }
        }
        total
    }
}

/// Side constraints on a pick: its exact size, nodes it must contain, and
/// optionally per-node loads that must sum to an exact total.
#[derive(Debug, Clone, Default)]
pub struct PvcConstraints {
    pub size: usize,
    pub forced: Vec<usize>,
    pub loads: Option<(Vec<usize>, usize)>,
}

impl PvcConstraints {
    fn admits(&self, pick: &[usize]) -> bool {
        if !self.forced.iter().all(|f| pick.contains(f)) {
            return false;
        }
        match &self.loads {
            Some((loads, total)) => pick.iter().map(|&v| loads[v]).sum::<usize>() == *total,
            None => true,
        }
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r.min(n - r) {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn best_over_subsets(
    inst: &PvcInstance,
    cons: &PvcConstraints,
    pool: &[usize],
    best: &mut Option<(Vec<usize>, Weight)>,
) {
    for_each_subset(pool, cons.size, &mut |pick| {
        if !cons.admits(pick) {
            return;
        }
        let val = inst.value(pick);
        if best.as_ref().map_or(true, |(_, b)| val < *b) {
            *best = Some((pick.to_vec(), val));
        }
    });
}

/// Optimal pick by full enumeration; exponential in the instance size.
/// Ties keep the lexicographically smallest pick.
pub fn pvc_exact(inst: &PvcInstance, cons: &PvcConstraints) -> Option<(Vec<usize>, Weight)> {
    let pool: Vec<usize> = (0..inst.len()).collect();
    let mut best = None;
    best_over_subsets(inst, cons, &pool, &mut best);
    best
}

/// Randomized color-coding solver. Deterministic given `seed`; never
/// returns a value below the true optimum, and returns the exact optimum
/// whenever some round colors an optimal pick entirely red.
pub fn pvc_approx(
    inst: &PvcInstance,
    cons: &PvcConstraints,
    delta: f64,
    seed: u64,
    rounds: usize,
) -> Option<(Vec<usize>, Weight)> {
    assert!(delta > 0.0, "approximation slack must be positive");
    let n = inst.len();
    if cons.size > n {
        return None;
    }
    if cons.size <= 1 || binomial(n, cons.size) <= SMALL_SEARCH {
        return pvc_exact(inst, cons);
    }
    let tau = ((cons.size as f64 / delta).ceil() as u64).max(1);
    let mut best = None;
    for round in 0..rounds {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, round as u64));
        let red: Vec<usize> = (0..n)
            .filter(|v| {
                let keep = rng.gen_range(0..tau) == 0;
                keep || cons.forced.contains(v)
            })
            .collect();
        if red.len() < cons.size || binomial(red.len(), cons.size) > ROUND_CAP {
            continue;
        }
        best_over_subsets(inst, cons, &red, &mut best);
    }
    best
}
