//! Splitting trees into balanced pieces, forests with component
//! bookkeeping, and balance predicates.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, Graph, Partition};
use crate::tree::SpanningTree;

/// Tree edges whose removal splits a tree into equal pieces.
///
/// By construction every `SplitSet` returned by [`find_balanced_split`]
/// leaves `k` components of `N / k` vertices. There is at most one such set
/// per tree and `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSet {
    edges: Vec<Edge>,
}

impl SplitSet {
    /// Sorts and normalizes `edges`.
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| normalize(u, v)).collect();
        edges.sort_unstable();
        SplitSet { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Subtree sizes when `t` is rooted at `root`: `size[root] == N`.
pub fn subtree_sizes(t: &SpanningTree, root: usize) -> Vec<usize> {
    let n = t.num_vertices();
    let mut size = vec![1usize; n];
    if root == t.root() {
        for &v in t.order().iter().rev() {
            if v != root {
                size[t.parent(v)] += size[v];
            }
        }
        return size;
    }
    let (offsets, targets) = t.adjacency();
    let mut parent = vec![usize::MAX; n];
    parent[root] = root;
    let mut order = Vec::with_capacity(n);
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in &targets[offsets[u]..offsets[u + 1]] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    for &v in order.iter().rev() {
        if v != root {
            size[parent[v]] += size[v];
        }
    }
    size
}

/// Labels the components of `t` after removing the edges `(v, parent(v))`
/// for every `v` with `cut[v]`. Returns the labels and component count.
fn cut_components(t: &SpanningTree, cut: &[bool]) -> (Vec<usize>, usize) {
    let mut label = vec![0usize; t.num_vertices()];
    let mut count = 1;
    for &v in t.order() {
        if v == t.root() {
            continue;
        }
        label[v] = if cut[v] {
            count += 1;
            count - 1
        } else {
            label[t.parent(v)]
        };
    }
    (label, count)
}

/// The unique set of `k - 1` tree edges whose removal leaves `k` components
/// of equal size, if it exists.
///
/// An edge belongs to the set exactly when both sides of it have sizes that
/// are multiples of `N / k`; the set is returned when it has `k - 1` edges.
/// The resulting component sizes are re-checked before returning.
pub fn find_balanced_split(t: &SpanningTree, k: usize) -> Result<Option<SplitSet>> {
    let n_total = t.num_vertices();
    if k == 0 || !n_total.is_multiple_of(k) {
        return Err(Error::NotDivisible {
            num_vertices: n_total,
            parts: k,
        });
    }
    let piece = n_total / k;
    let size = subtree_sizes(t, t.root());
    let mut cut = vec![false; n_total];
    let mut edges = Vec::new();
    for v in 0..n_total {
        if v != t.root() && size[v].is_multiple_of(piece) {
            cut[v] = true;
            edges.push(normalize(v, t.parent(v)));
            if edges.len() >= k {
                return Ok(None);
            }
        }
    }
    if edges.len() != k - 1 {
        return Ok(None);
    }
    let (label, count) = cut_components(t, &cut);
    let mut sizes = vec![0usize; count];
    for &l in &label {
        sizes[l] += 1;
    }
    assert!(
        count == k && sizes.iter().all(|&s| s == piece),
        "multiple-of-n edge test produced an unbalanced split"
    );
    Ok(Some(SplitSet::new(edges)))
}

/// Removes the edges of `s` from `t` and returns the components.
pub fn apply_split(t: &SpanningTree, s: &SplitSet) -> Result<Partition> {
    let mut cut = vec![false; t.num_vertices()];
    for &(u, v) in s.edges() {
        let child = if t.parent(u) == v && u != t.root() {
            u
        } else if t.parent(v) == u && v != t.root() {
            v
        } else {
            return Err(Error::EdgeNotInTree(u, v));
        };
        cut[child] = true;
    }
    let (label, count) = cut_components(t, &cut);
    Ok(Partition::from_dense_labels(&label, count))
}

/// Every block has exactly `n` vertices.
pub fn is_balanced(p: &Partition, n: usize) -> bool {
    p.blocks().iter().all(|b| b.len() == n)
}

/// Every block has between `n - s` and `n + s` vertices.
pub fn is_slack_balanced(p: &Partition, n: usize, s: usize) -> bool {
    p.blocks()
        .iter()
        .all(|b| b.len() + s >= n && b.len() <= n + s)
}

/// All tree edges whose removal leaves two sides with sizes in
/// `[n - s, n + s]`. With `s = 0` on `2n` vertices there is at most one.
pub fn find_two_split_edges_with_slack(t: &SpanningTree, n: usize, s: usize) -> Vec<Edge> {
    let total = t.num_vertices();
    let ok = |x: usize| x + s >= n && x <= n + s;
    let size = subtree_sizes(t, t.root());
    (0..total)
        .filter(|&v| v != t.root() && ok(size[v]) && ok(total - size[v]))
        .map(|v| normalize(v, t.parent(v)))
        .collect()
}

/// A spanning forest of a host graph with incrementally maintained
/// component labels and sizes. Isolated vertices are components of size 1,
/// so a forest with `c` components has `N - c` edges.
#[derive(Debug, Clone)]
pub struct Forest<'g> {
    graph: &'g Graph,
    in_forest: Vec<bool>,
    edge_list: Vec<usize>,
    position: Vec<usize>,
    label: Vec<usize>,
    sizes: Vec<usize>,
    free_labels: Vec<usize>,
}

impl<'g> Forest<'g> {
    /// Forest on `graph` from edge indices; rejects cycles and duplicates.
    pub fn from_edges(graph: &'g Graph, edges: &[usize]) -> Result<Self> {
        let n = graph.num_vertices();
        let mut f = Forest {
            graph,
            in_forest: vec![false; graph.num_edges()],
            edge_list: Vec::with_capacity(edges.len() + 1),
            position: vec![usize::MAX; graph.num_edges()],
            label: (0..n).collect(),
            sizes: vec![1; n],
            free_labels: Vec::new(),
        };
        for &e in edges {
            if e >= graph.num_edges() || f.in_forest[e] {
                return Err(Error::InvalidParameter(
                    "forest edge repeated or out of range",
                ));
            }
            let (u, v) = graph.edge(e);
            if f.label[u] == f.label[v] {
                return Err(Error::InvalidParameter("forest edges contain a cycle"));
            }
            f.insert(e);
        }
        Ok(f)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn num_edges(&self) -> usize {
        self.edge_list.len()
    }

    pub fn num_components(&self) -> usize {
        self.graph.num_vertices() - self.edge_list.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.in_forest[e]
    }

    /// Edge indices, sorted.
    pub fn edges(&self) -> Vec<usize> {
        let mut e = self.edge_list.clone();
        e.sort_unstable();
        e
    }

    pub(crate) fn edge_at(&self, i: usize) -> usize {
        self.edge_list[i]
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.label[u] == self.label[v]
    }

    pub fn component_size(&self, v: usize) -> usize {
        self.sizes[self.label[v]]
    }

    /// Component sizes, one entry per component, in no particular order.
    pub fn component_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        let mut seen = vec![false; self.sizes.len()];
        self.label.iter().filter_map(move |&l| {
            if core::mem::replace(&mut seen[l], true) {
                None
            } else {
                Some(self.sizes[l])
            }
        })
    }

    /// True when all components have exactly `n` vertices.
    pub fn is_balanced(&self, n: usize) -> bool {
        let k = self.num_components();
        k * n == self.graph.num_vertices() && self.component_sizes().all(|s| s == n)
    }

    /// Components as a partition of the host's vertices.
    pub fn partition(&self) -> Partition {
        Partition::from_labels(&self.label)
    }

    /// Vertices reachable from `start` along forest edges, skipping `skip`.
    fn collect_component(&self, start: usize, skip: usize) -> Vec<usize> {
        let mut seen = vec![false; self.graph.num_vertices()];
        seen[start] = true;
        let mut out = vec![start];
        let mut head = 0;
        while head < out.len() {
            let u = out[head];
            head += 1;
            for &(w, e) in self.graph.incident(u) {
                if e != skip && self.in_forest[e] && !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out
    }

    /// Adds edge `e`, which must join two different components.
    pub(crate) fn insert(&mut self, e: usize) {
        let (u, v) = self.graph.edge(e);
        let (lu, lv) = (self.label[u], self.label[v]);
        debug_assert_ne!(lu, lv);
        // Relabel the smaller side.
        let (keep, moved_from) = if self.sizes[lu] >= self.sizes[lv] {
            (lu, v)
        } else {
            (lv, u)
        };
        let moved = self.collect_component(moved_from, usize::MAX);
        let old = self.label[moved_from];
        for &w in &moved {
            self.label[w] = keep;
        }
        self.sizes[keep] += self.sizes[old];
        self.sizes[old] = 0;
        self.free_labels.push(old);
        self.in_forest[e] = true;
        self.position[e] = self.edge_list.len();
        self.edge_list.push(e);
    }

    /// Removes forest edge `e`, splitting its component.
    pub(crate) fn remove(&mut self, e: usize) {
        debug_assert!(self.in_forest[e]);
        let pos = self.position[e];
        self.edge_list.swap_remove(pos);
        if pos < self.edge_list.len() {
            self.position[self.edge_list[pos]] = pos;
        }
        self.position[e] = usize::MAX;
        self.in_forest[e] = false;
        let (u, _) = self.graph.edge(e);
        let side = self.collect_component(u, e);
        let old = self.label[u];
        let fresh = self
            .free_labels
            .pop()
            .expect("a merge freed a label earlier");
        for &w in &side {
            self.label[w] = fresh;
        }
        self.sizes[fresh] = side.len();
        self.sizes[old] -= side.len();
    }
}
