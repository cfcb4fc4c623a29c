//! Simple undirected graphs, quotient multigraphs, connected partitions and
//! the generators for every graph family used by the experiments.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};

/// An undirected edge stored with its smaller endpoint first.
pub type Edge = (usize, usize);

/// Attempt budget used by the connectivity-conditioned random generators.
pub const DEFAULT_REJECTION_BUDGET: usize = 10_000;

#[inline]
pub(crate) fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable undirected simple graph on vertices `0..num_vertices`.
///
/// Edges are kept sorted, so two graphs built from the same edge set compare
/// equal and serialize identically. Each adjacency entry carries the index of
/// the edge it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints. Edge orientation and order in the input do not matter.
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list: Vec<Edge> = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        num_vertices,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push(normalize(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(num_vertices, list))
    }

    /// `edges` must be sorted, normalized, free of duplicates and loops.
    pub(crate) fn from_sorted(num_vertices: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); num_vertices];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            num_vertices,
            edges,
            adj,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order; position in this slice is the edge index.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge index)` pairs around `v`, sorted by neighbor.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`. Duplicate entries are not allowed.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.num_vertices];
        for (i, &v) in vertices.iter().enumerate() {
            debug_assert_eq!(local[v], usize::MAX, "duplicate vertex {v}");
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &(w, _) in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Graph::from_sorted(vertices.len(), edges)
    }

    /// Component label per vertex, labels numbered by first appearance.
    pub fn connected_components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.num_vertices];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.num_vertices {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().iter().all(|&l| l == 0)
    }

    /// True when the vertices of `set` induce a connected subgraph. The empty
    /// set is not connected.
    pub fn is_connected_set(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut inside = vec![false; self.num_vertices];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.num_vertices];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(w, _) in &self.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == set.len()
    }
}

/// Loopless multigraph stored as a dense symmetric multiplicity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    num_vertices: usize,
    multiplicity: Vec<u64>,
}

impl Multigraph {
    pub fn new(num_vertices: usize) -> Self {
        Multigraph {
            num_vertices,
            multiplicity: vec![0; num_vertices * num_vertices],
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.multiplicity[i * self.num_vertices + j]
    }

    /// Adds `count` parallel edges between `i` and `j`; loops are dropped.
    pub fn add_edges(&mut self, i: usize, j: usize, count: u64) {
        if i == j {
            return;
        }
        let n = self.num_vertices;
        self.multiplicity[i * n + j] += count;
        self.multiplicity[j * n + i] += count;
    }

    pub fn total_edges(&self) -> u64 {
        let n = self.num_vertices;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.multiplicity(i, j))
            .sum()
    }
}

impl From<&Graph> for Multigraph {
    fn from(g: &Graph) -> Self {
        let mut h = Multigraph::new(g.num_vertices());
        for &(u, v) in g.edges() {
            h.add_edges(u, v, 1);
        }
        h
    }
}

/// A partition of the vertex set into disjoint blocks.
///
/// Blocks are sorted internally and ordered by their smallest vertex, so two
/// partitions that differ only by block labels compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes `blocks`, which must be non-empty, disjoint and cover
    /// `0..num_vertices` exactly.
    pub fn from_blocks(num_vertices: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; num_vertices];
        let mut covered = 0;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block"));
            }
            for &v in block {
                if v >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        num_vertices,
                    });
                }
                if seen[v] {
                    return Err(Error::InvalidPartition("blocks overlap"));
                }
                seen[v] = true;
                covered += 1;
            }
        }
        if covered != num_vertices {
            return Err(Error::InvalidPartition("blocks do not cover every vertex"));
        }
        Ok(Self::canonical(blocks))
    }

    /// Groups vertices by label. Labels can be arbitrary values.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let idx = match remap.iter().find(|(label, _)| *label == l) {
                Some(&(_, idx)) => idx,
                None => {
                    remap.push((l, blocks.len()));
                    blocks.push(Vec::new());
                    blocks.len() - 1
                }
            };
            blocks[idx].push(v);
        }
        // Vertices were visited in increasing order, so blocks are already
        // sorted and ordered by their minimum.
        Partition { blocks }
    }

    /// Labels are assumed dense in `0..k` here; used on hot paths.
    pub(crate) fn from_dense_labels(labels: &[usize], k: usize) -> Self {
        let mut blocks = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l].push(v);
        }
        Self::canonical(blocks)
    }

    fn canonical(mut blocks: Vec<Vec<usize>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.num_vertices()];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                labels[v] = i;
            }
        }
        labels
    }

    /// Checks that the partition covers `g` and every block is connected.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.num_vertices() != g.num_vertices() {
            return Err(Error::InvalidPartition(
                "vertex count differs from the graph",
            ));
        }
        if self.blocks.iter().any(|b| !g.is_connected_set(b)) {
            return Err(Error::InvalidPartition("block is not connected"));
        }
        Ok(())
    }
}

/// Contracts every block of `p` to a single vertex; vertex `i` of the result
/// is block `i`, and intra-block edges disappear.
pub fn contract_partition(g: &Graph, p: &Partition) -> Result<Multigraph> {
    p.validate(g)?;
    Ok(contract_labels(g, &p.labels(), p.num_blocks()))
}

pub(crate) fn contract_labels(g: &Graph, labels: &[usize], k: usize) -> Multigraph {
    let mut h = Multigraph::new(k);
    for &(u, v) in g.edges() {
        h.add_edges(labels[u], labels[v], 1);
    }
    h
}

/// Complete graph `K_n`.
pub fn make_complete(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted(n, edges)
}

/// Rectangular grid; vertex `(x, y)` has index `y * width + x`.
pub fn make_grid(width: usize, height: usize) -> Graph {
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let v = y * width + x;
            if x + 1 < width {
                edges.push((v, v + 1));
            }
            if y + 1 < height {
                edges.push((v, v + width));
            }
        }
    }
    edges.sort_unstable();
    Graph::from_sorted(width * height, edges)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn make_path(n: usize) -> Graph {
    Graph::from_sorted(n, (1..n).map(|v| (v - 1, v)).collect())
}

/// Cycle on `n >= 3` vertices.
pub fn make_cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    let mut edges: Vec<Edge> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    edges.sort_unstable();
    Graph::from_sorted(n, edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn make_star(leaves: usize) -> Graph {
    Graph::from_sorted(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
}

/// Complete bipartite graph with sides `0..a` and `a..a+b`.
pub fn make_complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted(a + b, edges)
}

#[inline]
fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Maps `index` in `0..C(n,2)` to the `index`-th pair in lexicographic order,
/// given `row_start[u]` = index of the first pair `(u, u+1)`.
fn unrank_pair(row_start: &[usize], n: usize, index: usize) -> Edge {
    let u = row_start.partition_point(|&s| s <= index) - 1;
    let v = u + 1 + (index - row_start[u]);
    debug_assert!(v < n);
    (u, v)
}

fn gnm_once<R: Rng + ?Sized>(n: usize, m: usize, row_start: &[usize], rng: &mut R) -> Graph {
    let mut edges: Vec<Edge> = rand::seq::index::sample(rng, pair_count(n), m)
        .into_iter()
        .map(|i| unrank_pair(row_start, n, i))
        .collect();
    edges.sort_unstable();
    Graph::from_sorted(n, edges)
}

/// Uniform random graph with exactly `m` edges on `n` vertices.
///
/// With `require_connected`, draws are repeated until connected, giving the
/// uniform distribution over connected graphs with `m` edges. More than
/// `budget` attempts is an error.
pub fn gen_gnm<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    require_connected: bool,
    budget: usize,
    rng: &mut R,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("G(N, m) needs N >= 1"));
    }
    if m > pair_count(n) || (require_connected && m + 1 < n) {
        return Err(Error::InfeasibleEdgeCount {
            num_vertices: n,
            edges: m,
        });
    }
    let row_start: Vec<usize> = (0..n).map(|u| u * (2 * n - u - 1) / 2).collect();
    for _ in 0..budget.max(1) {
        let g = gnm_once(n, m, &row_start, rng);
        if !require_connected || g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::BudgetExhausted { attempts: budget })
}

/// Erdős–Rényi `G(n, p)`, optionally conditioned on connectivity by
/// rejection with at most `budget` attempts.
pub fn gen_gnp<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    require_connected: bool,
    budget: usize,
    rng: &mut R,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("G(N, p) needs N >= 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(
            "edge probability must lie in [0, 1]",
        ));
    }
    for _ in 0..budget.max(1) {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_sorted(n, edges);
        if !require_connected || g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::BudgetExhausted { attempts: budget })
}
