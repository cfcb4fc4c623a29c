//! Rooted spanning trees and uniform spanning tree samplers.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, Graph};

/// A spanning tree on vertices `0..n`, stored as a parent array.
///
/// `parent[root] == root`. `order` lists every vertex with each parent ahead
/// of its children (root first), so subtree sizes are one reverse sweep.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<usize>,
    order: Vec<usize>,
}

impl SpanningTree {
    /// Validates that `parent` describes a tree rooted at `root`.
    pub fn from_parents(root: usize, parent: Vec<usize>) -> Result<Self> {
        let n = parent.len();
        if root >= n || parent[root] != root {
            return Err(Error::InvalidTree("root must be its own parent"));
        }
        if parent.iter().any(|&p| p >= n) {
            return Err(Error::InvalidTree("parent out of range"));
        }
        let order = top_down_order(root, &parent);
        if order.len() != n {
            return Err(Error::InvalidTree("parent array contains a cycle"));
        }
        Ok(SpanningTree {
            root,
            parent,
            order,
        })
    }

    /// Builds a tree rooted at 0 from an unordered edge list.
    pub fn from_edges(num_vertices: usize, edges: &[Edge]) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex"));
        }
        if edges.len() + 1 != num_vertices {
            return Err(Error::InvalidTree("a spanning tree has N-1 edges"));
        }
        let g = Graph::new(num_vertices, edges.iter().copied())?;
        let mut parent = vec![usize::MAX; num_vertices];
        parent[0] = 0;
        let mut order = Vec::with_capacity(num_vertices);
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in g.neighbors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        if order.len() != num_vertices {
            return Err(Error::InvalidTree("edges do not connect every vertex"));
        }
        Ok(SpanningTree {
            root: 0,
            parent,
            order,
        })
    }

    pub(crate) fn from_parts_unchecked(root: usize, parent: Vec<usize>, order: Vec<usize>) -> Self {
        debug_assert_eq!(parent.len(), order.len());
        SpanningTree {
            root,
            parent,
            order,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    /// Vertices with every parent before its children.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Tree edges `(v, parent(v))`, normalized, in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter(move |&(v, _)| v != self.root)
            .map(|(v, &p)| normalize(v, p))
    }

    /// Sorted edge list; equal for equal trees regardless of root.
    pub fn canonical_edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self.edges().collect();
        e.sort_unstable();
        e
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        (self.parent[u] == v && u != self.root) || (self.parent[v] == u && v != self.root)
    }

    /// Children lists in compressed form: children of `v` are
    /// `targets[offsets[v]..offsets[v + 1]]`.
    pub(crate) fn adjacency(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.num_vertices();
        let mut offsets = vec![0usize; n + 1];
        for (v, &p) in self.parent.iter().enumerate() {
            if v != self.root {
                offsets[p + 1] += 1;
                offsets[v + 1] += 1;
            }
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; offsets[n]];
        for (v, &p) in self.parent.iter().enumerate() {
            if v != self.root {
                targets[fill[p]] = v;
                fill[p] += 1;
                targets[fill[v]] = p;
                fill[v] += 1;
            }
        }
        (offsets, targets)
    }

    /// Checks every tree edge against `host`.
    pub fn check_in(&self, host: &Graph) -> Result<()> {
        if host.num_vertices() != self.num_vertices() {
            return Err(Error::InvalidTree(
                "vertex count differs from the host graph",
            ));
        }
        if self.edges().any(|(u, v)| !host.has_edge(u, v)) {
            return Err(Error::InvalidTree("tree edge missing from host graph"));
        }
        Ok(())
    }

    /// Number of edges on a longest path.
    pub fn diameter(&self) -> usize {
        let (offsets, targets) = self.adjacency();
        let far = |start: usize| {
            let mut dist = vec![usize::MAX; self.num_vertices()];
            dist[start] = 0;
            let mut queue = vec![start];
            let mut head = 0;
            let mut last = start;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                last = u;
                for &w in &targets[offsets[u]..offsets[u + 1]] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push(w);
                    }
                }
            }
            (last, dist[last])
        };
        let (a, _) = far(self.root);
        far(a).1
    }
}

fn top_down_order(root: usize, parent: &[usize]) -> Vec<usize> {
    let n = parent.len();
    let mut offsets = vec![0usize; n + 1];
    for (v, &p) in parent.iter().enumerate() {
        if v != root {
            offsets[p + 1] += 1;
        }
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut children = vec![0usize; n.saturating_sub(1)];
    for (v, &p) in parent.iter().enumerate() {
        if v != root {
            children[fill[p]] = v;
            fill[p] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        order.extend_from_slice(&children[offsets[u]..offsets[u + 1]]);
    }
    order
}

/// Uniform spanning tree by Wilson's loop-erased random walk, rooted at
/// vertex 0.
///
/// Loop erasure keeps only the most recent exit from each vertex (the
/// successor array), which is the cycle-popping form of the algorithm.
pub fn wilson_ust<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<SpanningTree> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph has no spanning tree"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(wilson_connected(g, 0, rng))
}

/// Wilson's algorithm without the connectivity check; `g` must be connected.
pub(crate) fn wilson_connected<R: Rng + ?Sized>(
    g: &Graph,
    root: usize,
    rng: &mut R,
) -> SpanningTree {
    let n = g.num_vertices();
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n];
    in_tree[root] = true;
    next[root] = root;
    for start in 0..n {
        let mut u = start;
        while !in_tree[u] {
            let nbrs = g.incident(u);
            next[u] = nbrs[rng.random_range(0..nbrs.len())].0;
            u = next[u];
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    let order = top_down_order(root, &next);
    SpanningTree::from_parts_unchecked(root, next, order)
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) in linear time.
/// The result is rooted at `n - 1`.
pub(crate) fn prufer_decode(n: usize, seq: &[usize]) -> SpanningTree {
    debug_assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut parent = vec![0usize; n];
    // Leaves in removal order; reversed it is a valid top-down order.
    let mut removed = Vec::with_capacity(n);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        parent[leaf] = s;
        removed.push(leaf);
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    let root = n - 1;
    parent[leaf] = root;
    removed.push(leaf);
    parent[root] = root;
    removed.push(root);
    removed.reverse();
    SpanningTree::from_parts_unchecked(root, parent, removed)
}

/// Uniform random labeled tree on `n >= 1` vertices via a uniform Prüfer
/// sequence. Equivalent in distribution to `wilson_ust` on `K_n` without
/// materializing the complete graph.
pub fn random_labeled_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SpanningTree> {
    match n {
        0 => Err(Error::InvalidParameter("a tree needs at least one vertex")),
        1 => Ok(SpanningTree::from_parts_unchecked(0, vec![0], vec![0])),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
            Ok(prufer_decode(n, &seq))
        }
    }
}
