//! Graph representation and classical connectivity subroutines.
//!
//! Vertex ids live in a fixed universe `0..cap` with `cap <= 128`, so vertex
//! sets are single `u128` bit masks. Subgraphs, torsos and minors keep the
//! ambient ids; a standalone graph on `n` vertices uses ids `0..n`.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

/// Maximum size of the vertex id universe.
pub const MAX_VERTICES: usize = 128;

/// A set of vertex ids, stored as a 128-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u128 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet(0);
        for v in iter {
            s.insert(v);
        }
        s
    }

    /// All ids `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// Simple undirected graph over vertex ids drawn from a universe `0..cap`.
#[derive(Clone, Serialize)]
pub struct Graph {
    cap: usize,
    vertices: VertexSet,
    #[serde(skip)]
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Empty graph with dense vertex ids `0..n`.
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs beyond {MAX_VERTICES} vertices are unsupported");
        Graph { cap: n, vertices: VertexSet::full(n), adj: vec![VertexSet::EMPTY; n], edges: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Graph over an explicit vertex subset of a `cap`-sized universe.
    pub fn with_vertices(cap: usize, vertices: VertexSet) -> Self {
        assert!(cap <= MAX_VERTICES);
        debug_assert!(vertices.is_subset(&VertexSet::full(cap)));
        Graph { cap, vertices, adj: vec![VertexSet::EMPTY; cap], edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        assert!(self.vertices.contains(u) && self.vertices.contains(v), "edge endpoint outside vertex set");
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.edges.push((u.min(v), u.max(v)));
            self.edges.sort_unstable();
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.edges.retain(|&(a, b)| (a, b) != (u.min(v), u.max(v)));
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge list, sorted, each pair with the smaller id first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.cap && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Induced subgraph on `keep`, preserving vertex ids.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let keep = keep.intersection(self.vertices);
        let mut g = Graph::with_vertices(self.cap, keep);
        for &(u, v) in &self.edges {
            if keep.contains(u) && keep.contains(v) {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Checks whether the induced subgraph on the full vertex set is connected.
    pub fn is_connected(&self) -> bool {
        match self.vertices.min() {
            None => true,
            Some(s) => self.reachable_from(s, self.vertices) == self.vertices,
        }
    }

    fn reachable_from(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v].intersection(within));
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(V={:?}, E={:?})", self.vertices, self.edges)
    }
}

/// Connected components of `g` with `x` deleted, sorted by smallest member.
pub fn components(g: &Graph, x: VertexSet) -> Vec<VertexSet> {
    let mut remaining = g.vertices().difference(x);
    let mut comps = Vec::new();
    while let Some(s) = remaining.min() {
        let comp = g.reachable_from(s, remaining);
        remaining = remaining.difference(comp);
        comps.push(comp);
    }
    comps
}

/// All vertices outside `s` adjacent to some vertex of `s`.
pub fn neighborhood(g: &Graph, s: VertexSet) -> VertexSet {
    let mut n = VertexSet::EMPTY;
    for v in s.iter() {
        n = n.union(g.neighbors(v));
    }
    n.difference(s)
}

/// True iff `|V| > k` and no vertex set of fewer than `k` vertices disconnects `g`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.vertex_count() <= k {
        return false;
    }
    let verts = g.vertices().to_vec();
    let mut cut = Vec::new();
    subsets_up_to(&verts, k.saturating_sub(1), &mut cut, 0, &mut |cut| {
        components(g, VertexSet::from_iter(cut.iter().copied())).len() <= 1
    })
}

/// Visits all subsets of `verts` with at most `max` elements; returns false as
/// soon as the predicate fails.
fn subsets_up_to(
    verts: &[usize],
    max: usize,
    current: &mut Vec<usize>,
    start: usize,
    pred: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if !pred(current) {
        return false;
    }
    if current.len() == max {
        return true;
    }
    for i in start..verts.len() {
        current.push(verts[i]);
        let ok = subsets_up_to(verts, max, current, i + 1, pred);
        current.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// A cycle inside the induced subgraph on `a`, or `None` if that subgraph is a
/// forest. The cycle is returned as a vertex sequence without repetition.
pub fn find_cycle_in(g: &Graph, a: VertexSet) -> Option<Vec<usize>> {
    let sub = g.induced(a);
    let mut parent: Vec<Option<usize>> = vec![None; sub.cap()];
    let mut visited = VertexSet::EMPTY;
    for root in sub.vertices().iter() {
        if visited.contains(root) {
            continue;
        }
        // Iterative DFS, smallest-id-first for determinism.
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, from)) = stack.pop() {
            if visited.contains(v) {
                continue;
            }
            visited.insert(v);
            if from != usize::MAX {
                parent[v] = Some(from);
            }
            let mut nbrs: Vec<usize> = sub.neighbors(v).iter().collect();
            nbrs.reverse();
            for w in nbrs {
                if w == from {
                    continue;
                }
                if visited.contains(w) {
                    // Back edge v-w: walk parents from v up to w.
                    let mut path = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur].expect("back edge target must be an ancestor");
                        path.push(cur);
                    }
                    return Some(path);
                }
                stack.push((w, v));
            }
        }
    }
    None
}

/// The blocks of `g`: maximal 2-connected subgraphs, bridge edges, and
/// isolated vertices, each as a subgraph preserving the original vertex ids.
pub fn blocks(g: &Graph) -> Vec<Graph> {
    struct Dfs<'a> {
        g: &'a Graph,
        num: Vec<usize>,
        low: Vec<usize>,
        counter: usize,
        edge_stack: Vec<(usize, usize)>,
        result: Vec<Graph>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, v: usize, parent: usize) {
            self.num[v] = self.counter;
            self.low[v] = self.counter;
            self.counter += 1;
            for w in self.g.neighbors(v).iter() {
                if self.num[w] == usize::MAX {
                    self.edge_stack.push((v, w));
                    self.visit(w, v);
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.num[v] {
                        // v separates w's subtree: everything stacked above
                        // the tree edge (v, w) forms one block.
                        let mut vs = VertexSet::EMPTY;
                        while let Some((a, b)) = self.edge_stack.pop() {
                            vs.insert(a);
                            vs.insert(b);
                            if (a, b) == (v, w) {
                                break;
                            }
                        }
                        self.result.push(self.g.induced(vs));
                    }
                } else if w != parent && self.num[w] < self.num[v] {
                    self.edge_stack.push((v, w));
                    self.low[v] = self.low[v].min(self.num[w]);
                }
            }
        }
    }
    let mut dfs = Dfs {
        g,
        num: vec![usize::MAX; g.cap()],
        low: vec![0; g.cap()],
        counter: 0,
        edge_stack: Vec::new(),
        result: Vec::new(),
    };
    for root in g.vertices().iter() {
        if dfs.num[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            dfs.num[root] = dfs.counter;
            dfs.counter += 1;
            dfs.result.push(g.induced(VertexSet::singleton(root)));
            continue;
        }
        dfs.visit(root, usize::MAX);
    }
    let mut result = dfs.result;
    result.sort_by_key(|b| (b.vertices().min(), b.vertices()));
    result
}

/// The cut vertices of `g`.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let base = components(g, VertexSet::EMPTY).len();
    g.vertices()
        .iter()
        .filter(|&v| components(g, VertexSet::singleton(v)).len() > base)
        .collect()
}

/// Up to `k` fully vertex-disjoint paths from `sources` to `targets`,
/// internally avoiding both sets, found via unit-capacity vertex flow with
/// smallest-id-first augmentation. `None` when no such family exists.
pub fn disjoint_paths(
    g: &Graph,
    sources: VertexSet,
    targets: VertexSet,
    k: usize,
) -> Option<Vec<Vec<usize>>> {
    assert!(k >= 1);
    let cap = g.cap();
    // Node numbering: v_in = 2v, v_out = 2v+1, source = 2cap, sink = 2cap+1.
    let n_nodes = 2 * cap + 2;
    let src = 2 * cap;
    let snk = 2 * cap + 1;
    let mut arcs: Vec<(usize, usize)> = Vec::new(); // capacity-1 arcs
    for v in g.vertices().iter() {
        arcs.push((2 * v, 2 * v + 1));
    }
    for v in sources.iter() {
        arcs.push((src, 2 * v));
    }
    for v in targets.iter() {
        arcs.push((2 * v + 1, snk));
    }
    for &(u, v) in g.edges() {
        // Sources receive flow only from the super-source; targets send flow
        // only to the super-sink. This keeps paths internally disjoint from
        // the endpoint sets.
        if !sources.contains(v) && !targets.contains(u) {
            arcs.push((2 * u + 1, 2 * v));
        }
        if !sources.contains(u) && !targets.contains(v) {
            arcs.push((2 * v + 1, 2 * u));
        }
    }
    arcs.sort_unstable();

    let mut head: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    let mut to: Vec<usize> = Vec::new();
    let mut residual: Vec<i32> = Vec::new();
    for &(a, b) in &arcs {
        head[a].push(to.len());
        to.push(b);
        residual.push(1);
        head[b].push(to.len());
        to.push(a);
        residual.push(0);
    }

    let mut flow = 0usize;
    loop {
        // BFS over the residual network, smallest-id-first.
        let mut pred: Vec<usize> = vec![usize::MAX; n_nodes];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(src);
        let mut pred_edge = vec![usize::MAX; n_nodes];
        pred[src] = src;
        while let Some(u) = queue.pop_front() {
            for &e in &head[u] {
                if residual[e] > 0 && pred[to[e]] == usize::MAX {
                    pred[to[e]] = u;
                    pred_edge[to[e]] = e;
                    queue.push_back(to[e]);
                }
            }
        }
        if pred[snk] == usize::MAX {
            break;
        }
        let mut cur = snk;
        while cur != src {
            let e = pred_edge[cur];
            residual[e] -= 1;
            residual[e ^ 1] += 1;
            cur = pred[cur];
        }
        flow += 1;
        if flow >= k {
            break;
        }
    }
    if flow < k {
        return None;
    }

    // Trace unit flows from each saturated source arc. Vertex capacities make
    // the flow support a union of vertex-disjoint paths (plus cycles the
    // trace never enters), so following saturated arcs terminates at the sink.
    let mut paths = Vec::new();
    for v in sources.iter() {
        let carries = head[src].iter().any(|&e| to[e] == 2 * v && residual[e] == 0);
        if !carries {
            continue;
        }
        let mut path = vec![v];
        let mut cur_out = 2 * v + 1;
        'trace: loop {
            for &e in &head[cur_out] {
                if e % 2 == 0 && residual[e] == 0 {
                    if to[e] == snk {
                        break 'trace;
                    }
                    let w = to[e] / 2;
                    residual[e] = 1; // consume, so no later trace reuses it
                    path.push(w);
                    cur_out = 2 * w + 1;
                    continue 'trace;
                }
            }
            unreachable!("unit flow must reach the sink");
        }
        paths.push(path);
        if paths.len() == k {
            break;
        }
    }
    debug_assert_eq!(paths.len(), k);
    Some(paths)
}

/// Deterministic isomorphism test: color refinement plus backtracking with
/// smallest-id-first tie breaking. Returns a vertex bijection `g -> h`.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<(usize, usize)>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let cg = refine_colors(g, &[]);
    let ch = refine_colors(h, &[]);
    if color_histogram(&cg, g) != color_histogram(&ch, h) {
        return None;
    }
    let gv: Vec<usize> = {
        // Map vertices in order of (color, id); rarer colors first helps pruning.
        let mut vs = g.vertices().to_vec();
        vs.sort_by_key(|&v| (cg[v], v));
        vs
    };
    let mut mapping: Vec<usize> = vec![usize::MAX; g.cap()];
    let mut used = VertexSet::EMPTY;
    if match_next(g, h, &cg, &ch, &gv, 0, &mut mapping, &mut used) {
        Some(gv.iter().map(|&v| (v, mapping[v])).collect())
    } else {
        None
    }
}

fn match_next(
    g: &Graph,
    h: &Graph,
    cg: &[u64],
    ch: &[u64],
    order: &[usize],
    idx: usize,
    mapping: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    for w in h.vertices().iter() {
        if used.contains(w) || ch[w] != cg[v] || h.degree(w) != g.degree(v) {
            continue;
        }
        // Adjacency to already-mapped vertices must agree both ways.
        let ok = order[..idx].iter().all(|&p| g.has_edge(v, p) == h.has_edge(w, mapping[p]));
        if !ok {
            continue;
        }
        mapping[v] = w;
        used.insert(w);
        if match_next(g, h, cg, ch, order, idx + 1, mapping, used) {
            return true;
        }
        used.remove(w);
        mapping[v] = usize::MAX;
    }
    false
}

/// Stable coloring from iterated neighborhood refinement. `pinned` vertices
/// receive unique starting colors.
pub fn refine_colors(g: &Graph, pinned: &[usize]) -> Vec<u64> {
    let cap = g.cap();
    let mut color: Vec<u64> = vec![0; cap];
    for v in g.vertices().iter() {
        color[v] = g.degree(v) as u64 + 1;
    }
    for (i, &p) in pinned.iter().enumerate() {
        color[p] = u64::MAX - i as u64;
    }
    loop {
        let mut signatures: Vec<(u64, Vec<u64>, usize)> = g
            .vertices()
            .iter()
            .map(|v| {
                let mut ns: Vec<u64> = g.neighbors(v).iter().map(|w| color[w]).collect();
                ns.sort_unstable();
                (color[v], ns, v)
            })
            .collect();
        signatures.sort();
        let mut next: Vec<u64> = vec![0; cap];
        let mut current = 0u64;
        for i in 0..signatures.len() {
            if i > 0 && (signatures[i].0, &signatures[i].1) != (signatures[i - 1].0, &signatures[i - 1].1) {
                current += 1;
            }
            next[signatures[i].2] = current + 1;
        }
        if g.vertices().iter().all(|v| {
            g.vertices()
                .iter()
                .all(|w| (color[v] == color[w]) == (next[v] == next[w]))
        }) {
            return next;
        }
        color = next;
    }
}

fn color_histogram(colors: &[u64], g: &Graph) -> Vec<(u64, usize)> {
    let mut hist = std::collections::BTreeMap::new();
    for v in g.vertices().iter() {
        *hist.entry(colors[v]).or_insert(0usize) += 1;
    }
    hist.into_iter().collect()
}
