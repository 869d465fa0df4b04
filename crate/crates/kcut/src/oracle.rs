//! Reference solvers and classical baselines.
//!
//! These are the independent yardsticks the fancier algorithms are tested
//! against: an exhaustive search over partitions ([`brute_force_k_cut`]),
//! randomized edge contraction ([`contraction_k_cut`]), an exact global
//! min-cut routine ([`stoer_wagner`]), the classical 2-approximation by
//! repeated splitting ([`split_two_approx`]), and a reduction from maximum
//! clique ([`clique_reduction`]) that plants known-optimal instances.

use crate::graph::{
    build_graph, cut_weight, mix_seed, Error, KCutSolution, Partition, Result, Weight,
    WeightedGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest vertex count accepted by [`brute_force_k_cut`]. The number of set
/// partitions of 14 elements is about 1.9e8, which is still fast enough with
/// pruning; beyond that the enumeration is hopeless.
pub const BRUTE_FORCE_MAX_N: usize = 14;

fn check_k(g: &WeightedGraph, k: usize) -> Result<()> {
    if k < 1 || k > g.n() {
        return Err(Error::InvalidInput(format!(
            "k = {k} out of range for a graph on {} vertices",
            g.n()
        )));
    }
    Ok(())
}

/// Exact minimum k-cut by exhaustive search over set partitions.
///
/// Partitions are enumerated as restricted-growth strings (vertex 0 gets
/// label 0; each later vertex gets a label at most one above the current
/// maximum), accumulating the crossing weight incrementally and pruning
/// branches that already meet the best value. Ties resolve to the first
/// partition in enumeration order.
pub fn brute_force_k_cut(g: &WeightedGraph, k: usize) -> Result<KCutSolution> {
    check_k(g, k)?;
    if g.n() > BRUTE_FORCE_MAX_N {
        return Err(Error::Unsupported(format!(
            "brute force is capped at {BRUTE_FORCE_MAX_N} vertices, got {}",
            g.n()
        )));
    }
    let n = g.n();
    // Edges from each vertex to smaller-numbered vertices only, so the cost
    // of a prefix labeling is exact for the edges it covers.
    let mut back: Vec<Vec<(usize, Weight)>> = vec![Vec::new(); n];
    for &(u, v, w) in g.edges() {
        back[v.max(u)].push((v.min(u), w));
    }

    let mut labels = vec![0usize; n];
    let mut best: Option<(Weight, Vec<usize>)> = None;

    fn go(
        v: usize,
        max_used: usize,
        cost: Weight,
        n: usize,
        k: usize,
        back: &[Vec<(usize, Weight)>],
        labels: &mut Vec<usize>,
        best: &mut Option<(Weight, Vec<usize>)>,
    ) {
        if let Some((b, _)) = best {
            if cost >= *b {
                return;
            }
        }
        if v == n {
            if max_used + 1 == k {
                *best = Some((cost, labels.clone()));
            }
            return;
        }
        // Remaining vertices must suffice to open the missing labels.
        let missing = k.saturating_sub(max_used + 1);
        if n - v < missing {
            return;
        }
        let top = (max_used + 1).min(k - 1);
        for l in 0..=top {
            let extra: Weight = back[v]
                .iter()
                .filter(|&&(u, _)| labels[u] != l)
                .map(|&(_, w)| w)
                .sum();
            labels[v] = l;
            go(
                v + 1,
                max_used.max(l),
                cost + extra,
                n,
                k,
                back,
                labels,
                best,
            );
        }
    }

    go(1, 0, 0, n, k, &back, &mut labels, &mut best);
    let (value, labels) = best.expect("k <= n guarantees a feasible partition");
    let partition = Partition::new(labels, k)?;
    debug_assert_eq!(cut_weight(g, &partition), value);
    Ok(KCutSolution { partition, value, algorithm: "brute".into(), seed: None })
}

/// Randomized minimum k-cut by repeated edge contraction.
///
/// Each trial contracts a weighted-random edge until `k` super-vertices
/// remain; the best partition over all trials is returned. This is a Monte
/// Carlo baseline: with enough trials it finds the optimum with high
/// probability, but no single run is guaranteed.
pub fn contraction_k_cut(
    g: &WeightedGraph,
    k: usize,
    seed: u64,
    trials: usize,
) -> Result<KCutSolution> {
    check_k(g, k)?;
    let mut best: Option<(Weight, Partition)> = None;
    for trial in 0..trials.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, trial as u64));
        let labels = contract_once(g, k, &mut rng);
        let p = Partition::from_raw_labels(&labels);
        let value = cut_weight(g, &p);
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, p));
        }
    }
    let (value, partition) = best.unwrap();
    Ok(KCutSolution {
        partition,
        value,
        algorithm: "contraction".into(),
        seed: Some(seed),
    })
}

/// One contraction run down to `k` super-vertices; returns raw labels.
fn contract_once(g: &WeightedGraph, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.n();
    let mut comp: Vec<usize> = (0..n).collect();
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
    let mut parts = n;
    while parts > k {
        // Weighted choice among edges whose endpoints are still separate.
        let mut total: Weight = 0;
        for &(u, v, w) in g.edges() {
            if find(&mut comp, u) != find(&mut comp, v) {
                total += w;
            }
        }
        debug_assert!(total > 0, "connected graph cannot run out of edges");
        let mut pick = rng.gen_range(0..total);
        for &(u, v, w) in g.edges() {
            let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
            if ru == rv {
                continue;
            }
            if pick < w {
                comp[ru] = rv;
                parts -= 1;
                break;
            }
            pick -= w;
        }
    }
    (0..n).map(|v| find(&mut comp, v)).collect()
}

/// Exact global minimum cut (minimum 2-cut) by maximum-adjacency phases.
///
/// Deterministic: phases start from the smallest active vertex id, ties in
/// the most-tightly-connected choice go to the smallest id, and the first
/// phase achieving the best value provides the returned side.
pub fn stoer_wagner(g: &WeightedGraph) -> Result<(Partition, Weight)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidInput(
            "global min cut needs at least two vertices".into(),
        ));
    }
    // Dense weight matrix over super-vertices; merged[v] lists the original
    // vertices currently fused into v.
    let mut w = vec![vec![0 as Weight; n]; n];
    for &(u, v, wt) in g.edges() {
        w[u][v] += wt;
        w[v][u] += wt;
    }
    let mut merged: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(Weight, Vec<usize>)> = None;

    while active.len() > 1 {
        // Maximum adjacency order over the active super-vertices.
        let mut order = vec![active[0]];
        let mut in_a: Vec<bool> = vec![false; n];
        in_a[active[0]] = true;
        let mut conn = vec![0 as Weight; n];
        for &v in &active[1..] {
            conn[v] = w[active[0]][v];
        }
        while order.len() < active.len() {
            let mut pick = usize::MAX;
            for &v in &active {
                if !in_a[v] && (pick == usize::MAX || conn[v] > conn[pick]) {
                    pick = v;
                }
            }
            in_a[pick] = true;
            order.push(pick);
            for &v in &active {
                if !in_a[v] {
                    conn[v] += w[pick][v];
                }
            }
        }
        let t = *order.last().unwrap();
        let s = order[order.len() - 2];
        let phase_cut = conn[t];
        if best.as_ref().map_or(true, |(b, _)| phase_cut < *b) {
            best = Some((phase_cut, merged[t].clone()));
        }
        // Merge t into s.
        let t_merged = std::mem::take(&mut merged[t]);
        merged[s].extend(t_merged);
        for &v in &active {
            if v != s && v != t {
                w[s][v] += w[t][v];
                w[v][s] = w[s][v];
            }
        }
        active.retain(|&v| v != t);
    }

    let (value, side) = best.unwrap();
    let mut raw = vec![0usize; n];
    for &v in &side {
        raw[v] = 1;
    }
    let partition = Partition::from_raw_labels(&raw);
    debug_assert_eq!(cut_weight(g, &partition), value);
    Ok((partition, value))
}

/// 2-approximate minimum k-cut by repeated cheapest splitting.
///
/// Maintains a partition, and while it has fewer than `k` parts, computes
/// the global min cut of every part with at least two vertices and splits
/// the part whose min cut is cheapest (ties to the earliest-created part).
/// The result is within a factor `2 - 2/k` of the optimum.
pub fn split_two_approx(g: &WeightedGraph, k: usize) -> Result<KCutSolution> {
    check_k(g, k)?;
    // Components in creation order.
    let mut comps: Vec<Vec<usize>> = vec![(0..g.n()).collect()];
    while comps.len() < k {
        let mut choice: Option<(Weight, usize, Partition)> = None;
        for (ci, comp) in comps.iter().enumerate() {
            if comp.len() < 2 {
                continue;
            }
            let sub = g.induced(comp)?;
            let (sp, sv) = stoer_wagner(&sub)?;
            if choice.as_ref().map_or(true, |(b, _, _)| sv < *b) {
                choice = Some((sv, ci, sp));
            }
        }
        let (_, ci, sp) = choice.expect("k <= n guarantees a splittable part");
        let comp = comps[ci].clone();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (local, &v) in comp.iter().enumerate() {
            if sp.label(local) == 0 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        comps[ci] = a;
        comps.push(b);
    }
    let mut raw = vec![0usize; g.n()];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            raw[v] = ci;
        }
    }
    let partition = Partition::from_raw_labels(&raw);
    let value = cut_weight(g, &partition);
    Ok(KCutSolution { partition, value, algorithm: "split2".into(), seed: None })
}

/// Merges the two parts of `p` with the heaviest crossing weight between
/// them (ties to the lexicographically smallest label pair), returning the
/// coarser partition and its cut weight. Since the crossing weight of `p`
/// splits over its label pairs, the result loses at least a `1 / C(k,2)`
/// fraction of the cut weight — the workhorse inequality behind the
/// splitting 2-approximation.
pub fn merge_heaviest_pair(g: &WeightedGraph, p: &Partition) -> (Partition, Weight) {
    let k = p.k();
    assert!(k >= 2, "nothing to merge in a {k}-partition");
    let mut between = vec![vec![0 as Weight; k]; k];
    for &(u, v, w) in g.edges() {
        let (a, b) = (p.label(u), p.label(v));
        if a != b {
            between[a.min(b)][a.max(b)] += w;
        }
    }
    let mut pick = (0usize, 1usize);
    for a in 0..k {
        for b in a + 1..k {
            if between[a][b] > between[pick.0][pick.1] {
                pick = (a, b);
            }
        }
    }
    let raw: Vec<usize> = p
        .labels()
        .iter()
        .map(|&l| if l == pick.1 { pick.0 } else { l })
        .collect();
    let merged = Partition::from_raw_labels(&raw);
    let value = cut_weight(g, &merged);
    (merged, value)
}

/// Simple undirected graph given as a vertex count and a list of edges,
/// input to the clique reduction.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }
}

/// Reduces "does `h` contain a k-clique?" to a minimum (k+1)-cut instance.
///
/// The weighted graph keeps the vertices of `h` (edges get weight 1) and
/// adds an apex vertex `h.n` joined to every vertex `v` with weight
/// `n^2 - deg(v)`. Splitting off `k` singletons `S` then costs exactly
/// `k * n^2 - e(S)` where `e(S)` counts the edges of `h` inside `S`, and the
/// huge spoke weights force every optimal (k+1)-cut into that shape, so the
/// minimum (k+1)-cut value is `k * n^2 - e(S*)` for `S*` with the most
/// internal edges. `h` has a k-clique iff the value is
/// `k * n^2 - k*(k-1)/2`.
pub fn clique_reduction(h: &SimpleGraph, k: usize) -> Result<WeightedGraph> {
    if k < 1 || k > h.n {
        return Err(Error::InvalidInput(format!(
            "clique size k = {k} out of range for a graph on {} vertices",
            h.n
        )));
    }
    let n = h.n;
    let nsq = (n * n) as Weight;
    let apex = n;
    let mut edges: Vec<(usize, usize, Weight)> = Vec::new();
    for &(u, v) in &h.edges {
        if u >= n || v >= n || u == v {
            return Err(Error::InvalidInput(format!("bad clique-instance edge ({u},{v})")));
        }
        edges.push((u, v, 1));
    }
    for v in 0..n {
        let w = nsq - h.degree(v) as Weight;
        edges.push((v, apex, w));
    }
    build_graph(n + 1, &edges)
}

/// Reads a k-clique of `h` back out of a minimum (k+1)-cut of the reduced
/// graph: the non-apex singleton parts must be exactly `k` pairwise-adjacent
/// vertices; otherwise the cut certifies that no k-clique exists and the
/// result is `None`. For `k = 1` every vertex is a clique, so the singleton
/// part is returned directly.
pub fn extract_clique(h: &SimpleGraph, k: usize, cut: &Partition) -> Option<Vec<usize>> {
    let apex = h.n;
    if cut.len() != h.n + 1 || cut.k() != k + 1 {
        return None;
    }
    let parts = cut.parts();
    let mut clique = Vec::new();
    for part in &parts {
        if part.len() == 1 && part[0] != apex {
            clique.push(part[0]);
        }
    }
    if clique.len() < k {
        return None;
    }
    clique.sort_unstable();
    clique.truncate(k);
    for i in 0..clique.len() {
        for j in i + 1..clique.len() {
            if !h.has_edge(clique[i], clique[j]) {
                return None;
            }
        }
    }
    Some(clique)
}
