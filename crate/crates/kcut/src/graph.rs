//! Graph and tree representations shared by every solver.
//!
//! The central objects are [`WeightedGraph`] (undirected, positive integer
//! weights), [`Partition`] (a labeling of vertices into k nonempty parts),
//! [`RootedSpanningTree`] (parent links plus Euler intervals for O(1)
//! ancestor tests), and [`CrossWeightTable`] (memoized subtree boundary and
//! subtree-vs-subtree crossing weights).
//!
//! All cut weights count each crossing edge exactly once. Arithmetic is
//! integer throughout; total weight is bounded at build time so that every
//! intermediate sum fits comfortably in an `i64`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

/// Edge weights and cut values. Signed because auxiliary constructions
/// (triangle searches, DP corrections) subtract crossing weights.
pub type Weight = i64;

/// Upper bound on the total weight of a graph accepted by [`build_graph`].
/// Keeps every sum or difference of cut values far away from overflow.
pub const MAX_TOTAL_WEIGHT: Weight = 1 << 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input (self-loop, bad vertex id, nonpositive weight, ...).
    InvalidInput(String),
    /// Structurally valid input outside the supported range of an operation.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Calls `emit` with every sorted `r`-subset of `items`, in lexicographic
/// position order. `r = 0` emits the single empty subset.
pub(crate) fn for_each_subset(items: &[usize], r: usize, emit: &mut impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        r: usize,
        from: usize,
        cur: &mut Vec<usize>,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == r {
            emit(cur);
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, r, i + 1, cur, emit);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(r);
    rec(items, r, 0, &mut cur, emit);
}

/// Deterministic seed mixing for derived streams (per repetition, per chain,
/// per instance). SplitMix64 finalizer over `seed + GOLDEN * (salt + 1)`, so
/// distinct salts give independent-looking streams and results never depend
/// on scheduling order.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(salt.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Undirected connected graph with positive integer edge weights.
///
/// Parallel edges are merged at construction by summing their weights, so
/// `edges` is a canonical sorted list of distinct unordered pairs.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, Weight)>,
    adj: Vec<Vec<(usize, usize)>>, // per vertex: (neighbor, edge index)
    weight_bound: Weight,          // maximum single edge weight
}

impl WeightedGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: sorted `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize, Weight)] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> (usize, usize, Weight) {
        self.edges[idx]
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs.
    pub fn adj(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Maximum weight of a single edge.
    pub fn weight_bound(&self) -> Weight {
        self.weight_bound
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }

    /// Weighted degree of `v`.
    pub fn degree_weight(&self, v: usize) -> Weight {
        self.adj[v].iter().map(|&(_, e)| self.edges[e].2).sum()
    }

    /// Subgraph induced by `verts`, with vertices renumbered `0..verts.len()`
    /// in the given order. Returns the graph only if it is connected.
    pub fn induced(&self, verts: &[usize]) -> Result<WeightedGraph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v, w) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v], w));
            }
        }
        build_graph(verts.len(), &edges)
    }
}

/// Builds a [`WeightedGraph`], merging parallel edges and validating that the
/// result is connected, loop-free and within the weight budget.
pub fn build_graph(n: usize, edge_list: &[(usize, usize, Weight)]) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::InvalidInput("graph must have at least one vertex".into()));
    }
    let mut merged: HashMap<(usize, usize), Weight> = HashMap::new();
    for &(u, v, w) in edge_list {
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge ({u},{v}) references a vertex >= n = {n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        if w < 1 {
            return Err(Error::InvalidInput(format!(
                "edge ({u},{v}) has nonpositive weight {w}"
            )));
        }
        let key = (u.min(v), u.max(v));
        *merged.entry(key).or_insert(0) += w;
    }
    let mut edges: Vec<(usize, usize, Weight)> =
        merged.into_iter().map(|((u, v), w)| (u, v, w)).collect();
    edges.sort_unstable();

    let total: Weight = edges.iter().map(|&(_, _, w)| w).sum();
    if total > MAX_TOTAL_WEIGHT {
        return Err(Error::InvalidInput(format!(
            "total edge weight {total} exceeds the supported bound {MAX_TOTAL_WEIGHT}"
        )));
    }

    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }

    // Connectivity check; on failure name one vertex from each side.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(u, _) in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    if let Some(unreached) = (0..n).find(|&v| !seen[v]) {
        return Err(Error::InvalidInput(format!(
            "graph is disconnected: no path between vertex 0 and vertex {unreached}"
        )));
    }

    let weight_bound = edges.iter().map(|&(_, _, w)| w).max().unwrap_or(1);
    Ok(WeightedGraph { n, edges, adj, weight_bound })
}

/// A labeling of vertices into `k` nonempty parts `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Validates that exactly the labels `0..k` occur and each is nonempty.
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Partition> {
        if k == 0 {
            return Err(Error::InvalidInput("partition needs at least one part".into()));
        }
        let mut used = vec![false; k];
        for (v, &l) in labels.iter().enumerate() {
            if l >= k {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} has label {l} outside 0..{k}"
                )));
            }
            used[l] = true;
        }
        if let Some(l) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidInput(format!("part {l} is empty")));
        }
        Ok(Partition { labels, k })
    }

    /// Relabels arbitrary per-vertex ids into canonical restricted-growth
    /// form (labels appear in increasing order of first occurrence).
    pub fn from_raw_labels(raw: &[usize]) -> Partition {
        let mut map: HashMap<usize, usize> = HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &r in raw {
            let next = map.len();
            labels.push(*map.entry(r).or_insert(next));
        }
        let k = map.len();
        Partition { labels, k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertex sets of the parts, indexed by label.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            parts[l].push(v);
        }
        parts
    }

    /// Canonical restricted-growth relabeling of this partition.
    pub fn canonical(&self) -> Partition {
        Partition::from_raw_labels(&self.labels)
    }
}

/// Total weight of edges whose endpoints carry different labels.
pub fn cut_weight(g: &WeightedGraph, p: &Partition) -> Weight {
    assert_eq!(
        p.len(),
        g.n(),
        "partition covers {} vertices but the graph has {}",
        p.len(),
        g.n()
    );
    g.edges()
        .iter()
        .filter(|&&(u, v, _)| p.label(u) != p.label(v))
        .map(|&(_, _, w)| w)
        .sum()
}

/// A solution to the minimum k-cut problem: the partition, its crossing
/// weight, and where it came from.
#[derive(Debug, Clone)]
pub struct KCutSolution {
    pub partition: Partition,
    pub value: Weight,
    pub algorithm: String,
    pub seed: Option<u64>,
}

impl KCutSolution {
    pub fn new(g: &WeightedGraph, partition: Partition, algorithm: &str, seed: Option<u64>) -> KCutSolution {
        let value = cut_weight(g, &partition);
        KCutSolution { partition, value, algorithm: algorithm.to_string(), seed }
    }
}

/// Rooted spanning tree with parent links, preorder, subtree sizes and Euler
/// intervals. Tree edges are identified by their child endpoint: the edge
/// `e = (v, parent(v))` exists for every `v != root`, and `T_e` is the
/// subtree below it, i.e. the subtree rooted at `v`.
#[derive(Debug, Clone)]
pub struct RootedSpanningTree {
    root: usize,
    parent: Vec<usize>,
    parent_edge_weight: Vec<Weight>,
    parent_graph_edge: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    depth: Vec<usize>,
    subtree_size: Vec<usize>,
}

impl RootedSpanningTree {
    /// Builds a spanning tree of `g` from `n - 1` graph edge indices.
    pub fn from_graph_edges(g: &WeightedGraph, root: usize, edge_idxs: &[usize]) -> Result<RootedSpanningTree> {
        let pairs: Vec<(usize, usize)> = edge_idxs
            .iter()
            .map(|&i| {
                let (u, v, _) = g.edge(i);
                (u, v)
            })
            .collect();
        let mut t = Self::from_tree_edges(g.n(), root, &pairs)?;
        // Attach graph edge indices and weights to the parent links.
        let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
        for &i in edge_idxs {
            let (u, v, _) = g.edge(i);
            by_pair.insert((u.min(v), u.max(v)), i);
        }
        for v in 0..t.n() {
            if v == root {
                continue;
            }
            let p = t.parent[v];
            let idx = by_pair[&(v.min(p), v.max(p))];
            t.parent_graph_edge[v] = Some(idx);
            t.parent_edge_weight[v] = g.edge(idx).2;
        }
        Ok(t)
    }

    /// Builds a rooted tree on `n` vertices from explicit undirected edges.
    /// Used for trees that are not spanning trees of a companion graph
    /// (degree-reduced trees with auxiliary vertices, hand-built fixtures).
    pub fn from_tree_edges(n: usize, root: usize, edges: &[(usize, usize)]) -> Result<RootedSpanningTree> {
        if root >= n {
            return Err(Error::InvalidInput(format!("root {root} out of range")));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidInput(format!(
                "a tree on {n} vertices needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidInput(format!("bad tree edge ({u},{v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![usize::MAX; n];
        let mut children = vec![Vec::new(); n];
        let mut preorder = Vec::with_capacity(n);
        let mut tin = vec![0usize; n];
        let mut tout = vec![0usize; n];
        let mut depth = vec![0usize; n];
        let mut subtree_size = vec![1usize; n];

        parent[root] = root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            tin[v] = preorder.len();
            preorder.push(v);
            // Deterministic child order: ascending vertex id.
            let mut kids: Vec<usize> = adj[v]
                .iter()
                .copied()
                .filter(|&u| parent[u] == usize::MAX && u != root)
                .collect();
            kids.sort_unstable();
            for &u in &kids {
                parent[u] = v;
                depth[u] = depth[v] + 1;
            }
            children[v] = kids.clone();
            // Push in reverse so preorder visits ascending ids first.
            for &u in kids.iter().rev() {
                stack.push(u);
            }
        }
        if preorder.len() != n {
            return Err(Error::InvalidInput("edges do not form a connected tree".into()));
        }
        // Postorder pass for tout and sizes.
        for &v in preorder.iter().rev() {
            let mut size = 1;
            let mut hi = tin[v];
            for &c in &children[v] {
                size += subtree_size[c];
                hi = hi.max(tout[c]);
            }
            subtree_size[v] = size;
            tout[v] = hi;
        }
        Ok(RootedSpanningTree {
            root,
            parent,
            parent_edge_weight: vec![0; n],
            parent_graph_edge: vec![None; n],
            children,
            preorder,
            tin,
            tout,
            depth,
            subtree_size,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.subtree_size[v]
    }

    /// Vertices in preorder (root first, children in ascending id order).
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Graph edge index of the parent edge of `v`, when the tree was built
    /// from a companion graph.
    pub fn parent_graph_edge(&self, v: usize) -> Option<usize> {
        self.parent_graph_edge[v]
    }

    pub fn parent_edge_weight(&self, v: usize) -> Weight {
        self.parent_edge_weight[v]
    }

    /// Tree edges as child endpoints, ascending.
    pub fn tree_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| v != self.root)
    }

    /// True iff `u` is an ancestor of `v` (inclusive: every vertex is its own
    /// ancestor). Euler intervals make this O(1).
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.tin[u] <= self.tin[v] && self.tout[v] <= self.tout[u]
    }

    /// True iff the subtrees below `u` and `v` are disjoint, i.e. neither is
    /// an ancestor of the other. This is the incomparability test for the
    /// tree edges identified by `u` and `v`.
    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        !self.is_ancestor(u, v) && !self.is_ancestor(v, u)
    }

    /// True iff `x` lies in the subtree rooted at `v`.
    pub fn in_subtree(&self, x: usize, v: usize) -> bool {
        self.is_ancestor(v, x)
    }

    /// Vertices of the subtree rooted at `v`, in preorder.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let lo = self.tin[v];
        let hi = self.tout[v];
        self.preorder[lo..=hi].to_vec()
    }

    /// Sorted graph-edge indices of the tree, for deduplicating trees.
    /// Requires the tree to come from a companion graph.
    pub fn graph_edge_key(&self) -> Vec<usize> {
        let mut key: Vec<usize> = (0..self.n())
            .filter(|&v| v != self.root)
            .map(|v| self.parent_graph_edge[v].expect("tree has no companion graph edges"))
            .collect();
        key.sort_unstable();
        key
    }
}

/// Deletes the parent edges of the vertices in `f` and returns the resulting
/// partition (one part per component, `|f| + 1` parts) and its cut weight in
/// `g`. Entries of `f` are tree edges named by their child endpoints.
pub fn tree_cut(
    g: &WeightedGraph,
    t: &RootedSpanningTree,
    f: &[usize],
) -> Result<(Partition, Weight)> {
    let mut is_cut = vec![false; t.n()];
    for &v in f {
        if v >= t.n() || v == t.root() {
            return Err(Error::InvalidInput(format!(
                "{v} does not name a tree edge (edges are non-root child vertices)"
            )));
        }
        if is_cut[v] {
            return Err(Error::InvalidInput(format!("tree edge {v} listed twice")));
        }
        is_cut[v] = true;
    }
    let mut raw = vec![0usize; t.n()];
    let mut next = 0usize;
    for &v in t.preorder() {
        if v == t.root() || is_cut[v] {
            raw[v] = next;
            next += 1;
        } else {
            raw[v] = raw[t.parent(v)];
        }
    }
    let partition = Partition::from_raw_labels(&raw);
    debug_assert_eq!(partition.k(), f.len() + 1);
    let value = cut_weight(g, &partition);
    Ok((partition, value))
}

/// Memoized crossing weights between subtrees of one rooted spanning tree.
///
/// `boundary(v)` is the weight of edges leaving the subtree below `v`;
/// `pairwise(u, v)` is the weight of edges between two disjoint subtrees;
/// `outside_within(u, a)` is the weight of edges from the subtree below `u`
/// to vertices outside the subtree below an ancestor `a`. Queries are O(m)
/// scans on first use, cached afterwards.
#[derive(Debug)]
pub struct CrossWeightTable {
    edges: Vec<(usize, usize, Weight)>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    boundary: Vec<Weight>,
    pair_memo: RefCell<HashMap<(usize, usize), Weight>>,
    out_memo: RefCell<HashMap<(usize, usize), Weight>>,
}

impl CrossWeightTable {
    fn inside(&self, x: usize, v: usize) -> bool {
        self.tin[v] <= self.tin[x] && self.tout[x] <= self.tout[v]
    }

    /// Weight of `E(T_v, V - T_v)`; zero at the root.
    pub fn boundary(&self, v: usize) -> Weight {
        self.boundary[v]
    }

    /// Weight of `E(T_u, T_v)` for incomparable `u, v`.
    pub fn pairwise(&self, u: usize, v: usize) -> Weight {
        let key = (u.min(v), u.max(v));
        if let Some(&w) = self.pair_memo.borrow().get(&key) {
            return w;
        }
        debug_assert!(
            !self.inside(u, v) && !self.inside(v, u),
            "pairwise({u},{v}) requires disjoint subtrees"
        );
        let w = self
            .edges
            .iter()
            .filter(|&&(x, y, _)| {
                (self.inside(x, u) && self.inside(y, v)) || (self.inside(x, v) && self.inside(y, u))
            })
            .map(|&(_, _, w)| w)
            .sum();
        self.pair_memo.borrow_mut().insert(key, w);
        w
    }

    /// Weight of `E(T_u, V - T_a)` where `a` is an ancestor of `u`.
    pub fn outside_within(&self, u: usize, a: usize) -> Weight {
        let key = (u, a);
        if let Some(&w) = self.out_memo.borrow().get(&key) {
            return w;
        }
        debug_assert!(self.inside(u, a), "outside_within({u},{a}) requires an ancestor");
        let w = self
            .edges
            .iter()
            .filter(|&&(x, y, _)| {
                (self.inside(x, u) && !self.inside(y, a)) || (self.inside(y, u) && !self.inside(x, a))
            })
            .map(|&(_, _, w)| w)
            .sum();
        self.out_memo.borrow_mut().insert(key, w);
        w
    }

    /// Evaluates the counting identity for a pairwise-incomparable edge set:
    /// the cut weight of deleting all of `f` equals the sum of boundaries
    /// minus the pairwise crossings, each crossing edge counted once.
    pub fn incomparable_cut_value(&self, f: &[usize]) -> Weight {
        let mut total = 0;
        for (i, &u) in f.iter().enumerate() {
            total += self.boundary(u);
            for &v in &f[i + 1..] {
                total -= self.pairwise(u, v);
            }
        }
        total
    }
}

/// Precomputes subtree boundary weights for `t` over `g` and prepares the
/// memoized pairwise tables.
pub fn build_cross_table(g: &WeightedGraph, t: &RootedSpanningTree) -> CrossWeightTable {
    assert_eq!(g.n(), t.n(), "tree does not span the graph");
    let edges = g.edges().to_vec();
    let tin = (0..t.n()).map(|v| t.tin[v]).collect::<Vec<_>>();
    let tout = (0..t.n()).map(|v| t.tout[v]).collect::<Vec<_>>();
    let inside = |x: usize, v: usize| tin[v] <= tin[x] && tout[x] <= tout[v];
    let mut boundary = vec![0 as Weight; t.n()];
    for v in 0..t.n() {
        boundary[v] = edges
            .iter()
            .filter(|&&(x, y, _)| inside(x, v) != inside(y, v))
            .map(|&(_, _, w)| w)
            .sum();
    }
    CrossWeightTable {
        edges,
        tin,
        tout,
        boundary,
        pair_memo: RefCell::new(HashMap::new()),
        out_memo: RefCell::new(HashMap::new()),
    }
}
