//! Deterministic exact search over one spanning tree.
//!
//! A tree that crosses some minimum k-cut at most `2k - 2` times already
//! determines that cut: deleting the crossed edges splits the tree into
//! components that lie entirely inside parts, so regrouping the components
//! recovers the optimal partition. [`det_tree_search`] therefore minimizes
//! over all ways to delete between `k - 1` and `2k - 2` tree edges and
//! relabel the resulting components into exactly `k` nonempty groups —
//! no randomness anywhere.
//!
//! The remaining items implement the structured search that makes the same
//! optimization scale in theory, and are validated against the direct
//! search: [`degree_reduce`] rebuilds the tree with auxiliary vertices so
//! every degree is at most 3; [`balanced_separator`] and
//! [`balanced_tripartition`] split the tree vertices into three groups each
//! holding about a third of a marked edge set while deleting only
//! `O(log)` edges; [`tripartite_label_search`] then finds the best cut as a
//! minimum-weight triangle over per-group cut-and-label choices.

use crate::graph::{
    cut_weight, for_each_subset, Error, Partition, Result, RootedSpanningTree, Weight,
    WeightedGraph,
};
use std::collections::{HashMap, HashSet};

/// Result of the deterministic per-tree search: the best value, its
/// partition and the tree edges whose deletion produced it (between `k - 1`
/// and `2k - 2` of them).
#[derive(Debug, Clone)]
pub struct DetSolve {
    pub value: Weight,
    pub partition: Partition,
    pub cut_edges: Vec<usize>,
}

/// Minimum k-cut among partitions obtained by deleting `k - 1 ..= 2k - 2`
/// edges of `t` and grouping the components into exactly `k` nonempty
/// groups. Exact for the graph whenever `t` crosses some minimum k-cut at
/// most `2k - 2` times.
pub fn det_tree_search(g: &WeightedGraph, t: &RootedSpanningTree, k: usize) -> Result<DetSolve> {
    if k < 1 || k > g.n() {
        return Err(Error::InvalidInput(format!(
            "k = {k} out of range for a graph on {} vertices",
            g.n()
        )));
    }
    if k == 1 {
        let partition = Partition::new(vec![0; g.n()], 1)?;
        return Ok(DetSolve { value: 0, partition, cut_edges: Vec::new() });
    }
    let edges: Vec<usize> = t.tree_edges().collect();
    let max_del = (2 * k - 2).min(edges.len());
    let mut best: Option<(Weight, Partition, Vec<usize>)> = None;
    for del in k - 1..=max_del {
        for_each_subset(&edges, del, &mut |f| {
            // Components of T - f, in preorder discovery order.
            let mut comp = vec![usize::MAX; t.n()];
            let mut is_cut = vec![false; t.n()];
            for &v in f {
                is_cut[v] = true;
            }
            let mut p = 0usize;
            for &v in t.preorder() {
                if v == t.root() || is_cut[v] {
                    comp[v] = p;
                    p += 1;
                } else {
                    comp[v] = comp[t.parent(v)];
                }
            }
            // Crossing weight between components.
            let mut between = vec![vec![0 as Weight; p]; p];
            for &(u, v, w) in g.edges() {
                let (a, b) = (comp[u], comp[v]);
                if a != b {
                    between[a][b] += w;
                    between[b][a] += w;
                }
            }
            let bound = best.as_ref().map(|(b, _, _)| *b);
            if let Some((cost, groups)) = best_grouping(&between, p, k, bound) {
                if best.as_ref().map_or(true, |(b, _, _)| cost < *b) {
                    let labels: Vec<usize> = (0..t.n()).map(|v| groups[comp[v]]).collect();
                    let partition = Partition::from_raw_labels(&labels);
                    debug_assert_eq!(cut_weight(g, &partition), cost);
                    best = Some((cost, partition, f.to_vec()));
                }
            }
        });
    }
    let (value, partition, cut_edges) = best.expect("k <= n guarantees some grouping");
    Ok(DetSolve { value, partition, cut_edges })
}

/// Cheapest assignment of `p` components to exactly `k` nonempty groups,
/// where splitting components `i != j` apart costs `between[i][j]`.
/// Enumerates restricted-growth labelings with incremental cost and prunes
/// against `bound`. Returns the cost and one optimal labeling.
fn best_grouping(
    between: &[Vec<Weight>],
    p: usize,
    k: usize,
    bound: Option<Weight>,
) -> Option<(Weight, Vec<usize>)> {
    if p < k {
        return None;
    }
    let mut groups = vec![0usize; p];
    let mut best: Option<(Weight, Vec<usize>)> = bound.map(|b| (b, Vec::new()));
    rec(between, p, k, 1, 0, 0, &mut groups, &mut best);
    fn rec(
        between: &[Vec<Weight>],
        p: usize,
        k: usize,
        i: usize,
        max_used: usize,
        cost: Weight,
        groups: &mut Vec<usize>,
        best: &mut Option<(Weight, Vec<usize>)>,
    ) {
        if let Some((b, _)) = best {
            if cost >= *b {
                return;
            }
        }
        if i == p {
            if max_used + 1 == k {
                *best = Some((cost, groups.clone()));
            }
            return;
        }
        if p - i < k - 1 - max_used {
            return; // not enough components left to open the missing groups
        }
        for l in 0..=(max_used + 1).min(k - 1) {
            let extra: Weight = (0..i).filter(|&j| groups[j] != l).map(|j| between[i][j]).sum();
            groups[i] = l;
            rec(between, p, k, i + 1, max_used.max(l), cost + extra, groups, best);
        }
    }
    match best {
        Some((cost, groups)) if !groups.is_empty() => Some((cost, groups)),
        _ => None,
    }
}

/// A tree rebuilt so every vertex has degree at most 3. Original vertices
/// keep their ids (`0..n_real`); auxiliary vertices get ids from `n_real`
/// up. Each original tree edge survives with the same child endpoint, so
/// edge sets project across unchanged.
#[derive(Debug)]
pub struct DegreeReduced {
    pub tree: RootedSpanningTree,
    pub n_real: usize,
}

/// Replaces the children of every vertex with more than two children by a
/// balanced binary tree of auxiliary vertices (exactly `z - 1` of them for
/// `z` children), hanging the original children at its leaves.
pub fn degree_reduce(t: &RootedSpanningTree) -> DegreeReduced {
    let n = t.n();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next_id = n;

    // Builds a balanced binary combiner over `items` and returns its root.
    fn combine(
        items: &[usize],
        next_id: &mut usize,
        edges: &mut Vec<(usize, usize)>,
    ) -> usize {
        if items.len() == 1 {
            return items[0];
        }
        let mid = items.len() / 2;
        let left = combine(&items[..mid], next_id, edges);
        let right = combine(&items[mid..], next_id, edges);
        let node = *next_id;
        *next_id += 1;
        edges.push((node, left));
        edges.push((node, right));
        node
    }

    for v in 0..n {
        let kids = t.children(v);
        if kids.len() <= 2 {
            for &u in kids {
                edges.push((v, u));
            }
        } else {
            let top = combine(kids, &mut next_id, &mut edges);
            edges.push((v, top));
        }
    }
    let tree = RootedSpanningTree::from_tree_edges(next_id, t.root(), &edges)
        .expect("degree reduction preserves the tree shape");
    DegreeReduced { tree, n_real: n }
}

/// Restriction of a partition over a reduced tree back to the real
/// vertices, in canonical form.
pub fn restrict_to_real(p: &Partition, n_real: usize) -> Partition {
    Partition::from_raw_labels(&p.labels()[..n_real])
}

/// Output of [`balanced_separator`]: a vertex side `A` and the tree edges
/// crossing between `A` and the rest.
#[derive(Debug, Clone)]
pub struct Separation {
    pub a_side: Vec<usize>,
    pub crossing: Vec<(usize, usize)>,
}

fn canon(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Splits a tree of maximum degree 3 so that side `A` accounts for exactly
/// `r` of the marked edges `f` (counting edges inside `A` plus marked edges
/// it cuts), deleting at most `2 ceil(log2(r+1)) + 2` tree edges.
///
/// Each round re-roots the remaining tree at its smallest leaf, walks to the
/// deepest vertex whose subtree still holds more than the remaining target
/// of marked edges, and peels the child subtree accounting for more than
/// half of the target — so the target at least halves every round.
///
/// `verts`/`edges` describe the current tree; `f` must be a subset of
/// `edges` (as unordered pairs) and `r` must lie in `[1, |f| - 1]`.
pub fn balanced_separator(
    verts: &[usize],
    edges: &[(usize, usize)],
    f: &[(usize, usize)],
    r: usize,
) -> Result<Separation> {
    if f.len() < 2 || r < 1 || r > f.len() - 1 {
        return Err(Error::InvalidInput(format!(
            "separator target r = {r} must lie in [1, {}]",
            f.len().saturating_sub(1)
        )));
    }
    let mut alive: HashSet<usize> = verts.iter().copied().collect();
    let mut cur_edges: HashSet<(usize, usize)> = edges.iter().map(|&(u, v)| canon(u, v)).collect();
    let mut cur_f: HashSet<(usize, usize)> = f.iter().map(|&(u, v)| canon(u, v)).collect();
    for e in &cur_f {
        if !cur_edges.contains(e) {
            return Err(Error::InvalidInput(format!(
                "marked edge {e:?} is not a tree edge"
            )));
        }
    }
    let mut need = r;
    let mut a_side: Vec<usize> = Vec::new();
    let mut crossing: Vec<(usize, usize)> = Vec::new();

    loop {
        // Re-root at the smallest-id leaf of the current tree.
        let mut deg: HashMap<usize, usize> = alive.iter().map(|&v| (v, 0)).collect();
        for &(u, v) in &cur_edges {
            *deg.get_mut(&u).unwrap() += 1;
            *deg.get_mut(&v).unwrap() += 1;
        }
        let root = alive
            .iter()
            .copied()
            .filter(|v| deg[v] <= 1)
            .min()
            .expect("a tree always has a leaf");

        // Rooted structure over the alive vertices.
        let mut adj: HashMap<usize, Vec<usize>> = alive.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in &cur_edges {
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut order: Vec<usize> = Vec::with_capacity(alive.len());
        parent.insert(root, root);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            let mut kids: Vec<usize> = adj[&v]
                .iter()
                .copied()
                .filter(|u| !parent.contains_key(u))
                .collect();
            kids.sort_unstable();
            for &u in &kids {
                parent.insert(u, v);
            }
            for &u in kids.iter().rev() {
                stack.push(u);
            }
        }

        // Marked-edge count inside each subtree.
        let mut count: HashMap<usize, usize> = alive.iter().map(|&v| (v, 0)).collect();
        for &v in order.iter().rev() {
            let p = parent[&v];
            if p != v {
                let mut c = count[&v];
                if cur_f.contains(&canon(v, p)) {
                    c += 1;
                }
                *count.get_mut(&p).unwrap() += c;
            }
        }
        let subtree_f = |v: usize| -> usize {
            // count[v] excludes v's own parent edge by construction below.
            count[&v]
        };
        // The deepest vertex whose subtree holds more than `need` marked
        // edges; depth = position in preorder suffices with smallest-id
        // tie-break on equal depth.
        let mut depth: HashMap<usize, usize> = HashMap::new();
        depth.insert(root, 0);
        for &v in &order {
            if v != root {
                depth.insert(v, depth[&parent[&v]] + 1);
            }
        }
        let mut pick: Option<usize> = None;
        for &v in alive.iter() {
            if subtree_f(v) > need {
                let better = match pick {
                    None => true,
                    Some(b) => {
                        depth[&v] > depth[&b] || (depth[&v] == depth[&b] && v < b)
                    }
                };
                if better {
                    pick = Some(v);
                }
            }
        }
        let v = pick.expect("the whole tree holds more than `need` marked edges");

        let kids: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&u| u != root && parent[&u] == v)
            .collect();
        // Augmented counts: subtree plus the connecting edge if marked.
        let aug = |u: usize| subtree_f(u) + usize::from(cur_f.contains(&canon(u, v)));

        // Prefer a child accounting for more than half but at most all of
        // the remaining target (smallest id on ties).
        let mut peeled: Option<usize> = None;
        for &u in &kids {
            let a = aug(u);
            if 2 * a > need && a <= need {
                peeled = Some(u);
                break;
            }
        }
        if let Some(u) = peeled {
            let a = aug(u);
            // Collect the subtree of u.
            let mut sub = vec![u];
            let mut i = 0;
            while i < sub.len() {
                let x = sub[i];
                i += 1;
                for &y in order.iter().filter(|&&y| y != root && parent[&y] == x) {
                    sub.push(y);
                }
            }
            crossing.push(canon(u, v));
            for &x in &sub {
                a_side.push(x);
                alive.remove(&x);
            }
            cur_edges.retain(|&(x, y)| alive.contains(&x) && alive.contains(&y));
            cur_f.retain(|&(x, y)| alive.contains(&x) && alive.contains(&y));
            if a == need {
                break;
            }
            need -= a;
            continue;
        }
        // Otherwise some child must overshoot by exactly one, meaning its
        // subtree alone holds exactly `need` marked edges: take it whole
        // (its marked connecting edge crosses but no further target
        // remains).
        let u = kids
            .iter()
            .copied()
            .find(|&u| aug(u) == need + 1)
            .expect("degree-3 case analysis: some child exceeds half the target");
        debug_assert_eq!(subtree_f(u), need);
        let mut sub = vec![u];
        let mut i = 0;
        while i < sub.len() {
            let x = sub[i];
            i += 1;
            for &y in order.iter().filter(|&&y| y != root && parent[&y] == x) {
                sub.push(y);
            }
        }
        crossing.push(canon(u, v));
        for &x in &sub {
            a_side.push(x);
            alive.remove(&x);
        }
        break;
    }
    a_side.sort_unstable();
    Ok(Separation { a_side, crossing })
}

/// Output of [`balanced_tripartition`]: three vertex groups covering the
/// tree, plus the tree edges deleted between them.
#[derive(Debug, Clone)]
pub struct Tripartition {
    pub sides: [Vec<usize>; 3],
    pub deleted: Vec<(usize, usize)>,
}

/// Splits the tree vertices into three groups, each containing at most
/// `ceil(|f| / 3)` of the marked edges, by applying the separator twice.
/// Between the applications the leftover side is reconnected into a tree by
/// linking its components leaf-to-leaf (smallest component first, in at its
/// smallest leaf, out at its largest leaf), which keeps every degree at 3;
/// the artificial links are discarded from the output.
pub fn balanced_tripartition(
    verts: &[usize],
    edges: &[(usize, usize)],
    f: &[(usize, usize)],
) -> Result<Tripartition> {
    let r = f.len().div_ceil(3);
    if f.len() <= 1 {
        return Ok(Tripartition {
            sides: [verts.to_vec(), Vec::new(), Vec::new()],
            deleted: Vec::new(),
        });
    }
    let sep1 = balanced_separator(verts, edges, f, r)?;
    let a: HashSet<usize> = sep1.a_side.iter().copied().collect();
    let b_verts: Vec<usize> = verts.iter().copied().filter(|v| !a.contains(v)).collect();
    let b_edges: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| canon(u, v))
        .filter(|&(u, v)| !a.contains(&u) && !a.contains(&v))
        .collect();
    let f_rest: Vec<(usize, usize)> = f
        .iter()
        .map(|&(u, v)| canon(u, v))
        .filter(|&(u, v)| !a.contains(&u) && !a.contains(&v))
        .collect();

    if f_rest.len() <= r {
        return Ok(Tripartition {
            sides: [sep1.a_side.clone(), b_verts, Vec::new()],
            deleted: sep1.crossing,
        });
    }

    // Reconnect the components of B into one tree with artificial links.
    let (components, _) = components_of(&b_verts, &b_edges);
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut full_edges = b_edges.clone();
    for pair in components.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        let deg = |comp: &Vec<usize>, v: usize| {
            b_edges
                .iter()
                .filter(|&&(x, y)| x == v || y == v)
                .count()
                .min(comp.len())
        };
        // Out-link: largest leaf of the previous component; in-link:
        // smallest leaf of the next.
        let out = *prev
            .iter()
            .filter(|&&v| deg(prev, v) <= 1)
            .max()
            .expect("every tree component has a leaf");
        let inn = *next
            .iter()
            .filter(|&&v| deg(next, v) <= 1)
            .min()
            .expect("every tree component has a leaf");
        links.push(canon(out, inn));
        full_edges.push(canon(out, inn));
    }

    let sep2 = balanced_separator(&b_verts, &full_edges, &f_rest, r)?;
    let a2: HashSet<usize> = sep2.a_side.iter().copied().collect();
    let b2: Vec<usize> = b_verts.iter().copied().filter(|v| !a2.contains(v)).collect();
    let link_set: HashSet<(usize, usize)> = links.into_iter().collect();
    let mut deleted = sep1.crossing;
    deleted.extend(sep2.crossing.into_iter().filter(|e| !link_set.contains(e)));
    Ok(Tripartition { sides: [sep1.a_side.clone(), sep2.a_side, b2], deleted })
}

/// Connected components of a forest given by vertices and edges, each
/// sorted, ordered by smallest vertex; also returns a vertex-to-component
/// index map.
fn components_of(verts: &[usize], edges: &[(usize, usize)]) -> (Vec<Vec<usize>>, HashMap<usize, usize>) {
    let mut adj: HashMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        adj.get_mut(&u).unwrap().push(v);
        adj.get_mut(&v).unwrap().push(u);
    }
    let mut seen: HashSet<usize> = HashSet::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut sorted = verts.to_vec();
    sorted.sort_unstable();
    for &v in &sorted {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = vec![v];
        seen.insert(v);
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in &adj[&x] {
                if seen.insert(y) {
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    let mut index = HashMap::new();
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            index.insert(v, ci);
        }
    }
    (comps, index)
}

/// Minimum k-cut by the tripartite cut-and-label search.
///
/// `sides` must partition the vertices of the (possibly degree-reduced)
/// tree `tr`; vertices `>= n_real` are auxiliary and carry no graph edges.
/// Each side independently enumerates ways to delete up to `per_side_cap`
/// of its internal tree edges and to label the resulting components that
/// contain real vertices; label sets `S_1 ∪ S_2 ∪ S_3 = [k]` are enumerated
/// outside. Any compatible choice triple merges into a k-partition whose
/// cut weight is recovered exactly as the triangle weight
/// `w(1,2) + w(2,3) + w(3,1)`, where `w(a, b)` charges the crossing weight
/// between differently-labeled component pairs inside side `a` and across
/// the pair `(a, b)` — so every graph edge is charged exactly once.
pub fn tripartite_label_search(
    g: &WeightedGraph,
    tr: &RootedSpanningTree,
    n_real: usize,
    sides: &[Vec<usize>; 3],
    k: usize,
    per_side_cap: usize,
) -> Option<(Weight, Partition)> {
    // Weight lookup between real vertices.
    let mut wmat = vec![vec![0 as Weight; n_real]; n_real];
    for &(u, v, w) in g.edges() {
        wmat[u][v] += w;
        wmat[v][u] += w;
    }

    // Internal tree edges per side.
    let side_of = {
        let mut map = HashMap::new();
        for (si, side) in sides.iter().enumerate() {
            for &v in side {
                map.insert(v, si);
            }
        }
        map
    };
    let mut side_edges: [Vec<(usize, usize)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for v in tr.tree_edges() {
        let p = tr.parent(v);
        if let (Some(&a), Some(&b)) = (side_of.get(&v), side_of.get(&p)) {
            if a == b {
                side_edges[a].push(canon(v, p));
            }
        }
    }

    // All cut-and-label choices per side, grouped by exact label set
    // (stored as a bitmask over [k]).
    #[derive(Clone)]
    struct Choice {
        label_of: Vec<(usize, usize)>, // (real vertex, label)
        comps: Vec<(usize, Vec<usize>)>, // (label, real vertices) per normal component
    }
    let mut by_set: [HashMap<u32, Vec<Choice>>; 3] =
        [HashMap::new(), HashMap::new(), HashMap::new()];
    for si in 0..3 {
        let edge_list: Vec<usize> = (0..side_edges[si].len()).collect();
        for cut in 0..=per_side_cap.min(edge_list.len()) {
            for_each_subset(&edge_list, cut, &mut |x| {
                let kept: Vec<(usize, usize)> = side_edges[si]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !x.contains(i))
                    .map(|(_, &e)| e)
                    .collect();
                let (comps, _) = components_of(&sides[si], &kept);
                let normal: Vec<Vec<usize>> = comps
                    .iter()
                    .filter(|c| c.iter().any(|&v| v < n_real))
                    .map(|c| c.iter().copied().filter(|&v| v < n_real).collect())
                    .collect();
                // All labelings of the normal components.
                let mut assign = vec![0usize; normal.len()];
                loop {
                    let mut mask = 0u32;
                    for &l in &assign {
                        mask |= 1 << l;
                    }
                    let mut label_of = Vec::new();
                    let mut comp_list = Vec::new();
                    for (ci, c) in normal.iter().enumerate() {
                        for &v in c {
                            label_of.push((v, assign[ci]));
                        }
                        comp_list.push((assign[ci], c.clone()));
                    }
                    by_set[si]
                        .entry(mask)
                        .or_default()
                        .push(Choice { label_of, comps: comp_list });
                    // Next assignment in base-k counting order.
                    let mut pos = 0;
                    loop {
                        if pos == assign.len() {
                            break;
                        }
                        assign[pos] += 1;
                        if assign[pos] < k {
                            break;
                        }
                        assign[pos] = 0;
                        pos += 1;
                    }
                    if pos == assign.len() {
                        break;
                    }
                }
                if normal.is_empty() {
                    by_set[si].entry(0).or_default().push(Choice {
                        label_of: Vec::new(),
                        comps: Vec::new(),
                    });
                }
            });
        }
    }

    // Directed pair weight: own crossings of side a plus crossings between
    // sides a and b, each charged when labels differ.
    let pair_weight = |a: &Choice, b: &Choice| -> Weight {
        let mut w = 0;
        for i in 0..a.comps.len() {
            for j in i + 1..a.comps.len() {
                if a.comps[i].0 != a.comps[j].0 {
                    for &x in &a.comps[i].1 {
                        for &y in &a.comps[j].1 {
                            w += wmat[x][y];
                        }
                    }
                }
            }
        }
        for (la, ca) in &a.comps {
            for (lb, cb) in &b.comps {
                if la != lb {
                    for &x in ca {
                        for &y in cb {
                            w += wmat[x][y];
                        }
                    }
                }
            }
        }
        w
    };

    let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut best: Option<(Weight, Partition)> = None;
    // Enumerate label-set triples with union [k] by scanning the sets that
    // actually occurred.
    let keys: [Vec<u32>; 3] = [
        by_set[0].keys().copied().collect(),
        by_set[1].keys().copied().collect(),
        by_set[2].keys().copied().collect(),
    ];
    for &s1 in &keys[0] {
        for &s2 in &keys[1] {
            for &s3 in &keys[2] {
                if s1 | s2 | s3 != full {
                    continue;
                }
                for c1 in &by_set[0][&s1] {
                    for c2 in &by_set[1][&s2] {
                        let w12 = pair_weight(c1, c2);
                        for c3 in &by_set[2][&s3] {
                            let w = w12 + pair_weight(c2, c3) + pair_weight(c3, c1);
                            if best.as_ref().map_or(true, |(b, _)| w < *b) {
                                let mut labels = vec![0usize; n_real];
                                for choice in [c1, c2, c3] {
                                    for &(v, l) in &choice.label_of {
                                        labels[v] = l;
                                    }
                                }
                                let partition = Partition::from_raw_labels(&labels);
                                if partition.k() == k {
                                    best = Some((w, partition));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    best
}
