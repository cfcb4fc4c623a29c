//! Brute-force ground truth for small instances: exhaustive enumeration of
//! trees, forests and connected partitions, and closed-form counts.
//!
//! Everything here is deliberately naive and independent of the fast paths
//! it is used to check. Each enumeration has a hard size guard.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::gadget::{make_slack_gadget, SlackGadget};
use crate::graph::{Edge, Graph, Partition};
use crate::split::{find_balanced_split, SplitSet};
use crate::tree::SpanningTree;

/// Largest complete graph whose labeled trees will be enumerated.
pub const MAX_LABELED_TREE_VERTICES: usize = 10;
/// Most spanning trees or forests an enumeration will produce.
pub const MAX_TREES: u64 = 1_000_000;
/// Most partitions an enumeration will produce.
pub const MAX_PARTITIONS: u64 = 2_000_000;

/// Decodes a Prüfer sequence the textbook way, in quadratic time.
fn prufer_to_edges(n: usize, seq: &[usize]) -> Vec<Edge> {
    let mut degree = vec![1usize; n];
    for &a in seq {
        degree[a] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let leaf = (0..n)
            .find(|&j| degree[j] == 1)
            .expect("a leaf always exists");
        edges.push(if leaf < a { (leaf, a) } else { (a, leaf) });
        degree[leaf] -= 1;
        degree[a] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&j| degree[j] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Every labeled tree on `n` vertices, one per Prüfer sequence.
#[derive(Debug, Clone)]
pub struct LabeledTrees {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl Iterator for LabeledTrees {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        if self.done {
            return None;
        }
        let edges = prufer_to_edges(self.n, &self.seq);
        let tree = SpanningTree::from_edges(self.n, &edges).expect("Prüfer decoding yields a tree");
        // Odometer increment.
        self.done = true;
        for digit in self.seq.iter_mut() {
            *digit += 1;
            if *digit < self.n {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(tree)
    }
}

/// All `n^(n-2)` labeled trees on `n` vertices, for `2 <= n <= 10`.
pub fn enumerate_labeled_trees(n: usize) -> Result<LabeledTrees> {
    if !(2..=MAX_LABELED_TREE_VERTICES).contains(&n) {
        return Err(Error::InvalidParameter(
            "labeled tree enumeration needs 2 <= N <= 10",
        ));
    }
    Ok(LabeledTrees {
        n,
        seq: vec![0; n - 2],
        done: false,
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Whether the edges `chosen` plus `g.edges()[from..]` connect the graph.
fn still_connected(g: &Graph, chosen: &[usize], from: usize) -> bool {
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    let mut parts = g.num_vertices();
    for e in chosen.iter().copied().chain(from..g.num_edges()) {
        let (u, v) = g.edge(e);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

struct ForestSearch<'a> {
    g: &'a Graph,
    target: usize,
    connected_prune: bool,
    limit: u64,
    out: Vec<Vec<usize>>,
}

impl ForestSearch<'_> {
    /// Include or exclude each edge in order. `label` tracks components of
    /// the chosen edges.
    fn run(&mut self, idx: usize, chosen: &mut Vec<usize>, label: &[usize]) -> Result<()> {
        if chosen.len() == self.target {
            if self.out.len() as u64 >= self.limit {
                return Err(Error::GuardExceeded {
                    what: "enumerated forests",
                    limit: self.limit,
                });
            }
            self.out.push(chosen.clone());
            return Ok(());
        }
        if idx == self.g.num_edges() || self.g.num_edges() - idx < self.target - chosen.len() {
            return Ok(());
        }
        let (u, v) = self.g.edge(idx);
        if label[u] != label[v] {
            let (from, to) = (label[v], label[u]);
            let merged: Vec<usize> = label
                .iter()
                .map(|&l| if l == from { to } else { l })
                .collect();
            chosen.push(idx);
            self.run(idx + 1, chosen, &merged)?;
            chosen.pop();
        }
        if !self.connected_prune || still_connected(self.g, chosen, idx + 1) {
            self.run(idx + 1, chosen, label)?;
        }
        Ok(())
    }
}

/// Every spanning tree of `g` as a set of edge indices, by recursive
/// deletion and contraction of edges. At most one million trees.
pub fn enumerate_spanning_tree_edges(g: &Graph) -> Result<Vec<Vec<usize>>> {
    if g.num_vertices() == 0 {
        return Ok(Vec::new());
    }
    if !g.is_connected() {
        return Ok(Vec::new());
    }
    let mut search = ForestSearch {
        g,
        target: g.num_vertices() - 1,
        connected_prune: true,
        limit: MAX_TREES,
        out: Vec::new(),
    };
    let label: Vec<usize> = (0..g.num_vertices()).collect();
    search.run(0, &mut Vec::new(), &label)?;
    Ok(search.out)
}

/// Every spanning tree of `g`.
pub fn enumerate_spanning_trees(g: &Graph) -> Result<Vec<SpanningTree>> {
    enumerate_spanning_tree_edges(g)?
        .into_iter()
        .map(|es| {
            let edges: Vec<Edge> = es.iter().map(|&e| g.edge(e)).collect();
            SpanningTree::from_edges(g.num_vertices(), &edges)
        })
        .collect()
}

/// Every spanning forest of `g` with exactly `k` components, as sorted edge
/// index lists.
pub fn enumerate_forests(g: &Graph, k: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.num_vertices();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter("component count must lie in 1..=N"));
    }
    let mut search = ForestSearch {
        g,
        target: n - k,
        connected_prune: false,
        limit: MAX_TREES,
        out: Vec::new(),
    };
    let label: Vec<usize> = (0..n).collect();
    search.run(0, &mut Vec::new(), &label)?;
    Ok(search.out)
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    label: Vec<usize>,
    limit: u64,
    out: Vec<Partition>,
}

const UNASSIGNED: usize = usize::MAX;

impl PartitionSearch<'_> {
    fn run(&mut self, remaining: &mut Vec<usize>, next_label: usize) -> Result<()> {
        let Some(v) = self.label.iter().position(|&l| l == UNASSIGNED) else {
            if self.out.len() as u64 >= self.limit {
                return Err(Error::GuardExceeded {
                    what: "enumerated partitions",
                    limit: self.limit,
                });
            }
            self.out.push(Partition::from_labels(&self.label));
            return Ok(());
        };
        if !self.feasible(remaining) {
            return Ok(());
        }
        let mut tried: Vec<usize> = Vec::new();
        for idx in 0..remaining.len() {
            let size = remaining[idx];
            if tried.contains(&size) {
                continue;
            }
            tried.push(size);
            let blocks = self.connected_sets_with_min(v, size);
            remaining.swap_remove(idx);
            for block in blocks {
                for &w in &block {
                    self.label[w] = next_label;
                }
                self.run(remaining, next_label + 1)?;
                for &w in &block {
                    self.label[w] = UNASSIGNED;
                }
            }
            remaining.push(size);
            let last = remaining.len() - 1;
            remaining.swap(idx, last);
        }
        Ok(())
    }

    /// Each component of the unassigned vertices must be able to hold at
    /// least the smallest remaining block; with equal sizes its size must be
    /// a multiple of that size.
    fn feasible(&self, remaining: &[usize]) -> bool {
        let min = remaining.iter().copied().min().unwrap_or(0);
        let all_equal = remaining.iter().all(|&s| s == min);
        let n = self.g.num_vertices();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] || self.label[start] != UNASSIGNED {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut size = 0;
            while let Some(u) = stack.pop() {
                size += 1;
                for w in self.g.neighbors(u) {
                    if !seen[w] && self.label[w] == UNASSIGNED {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if size < min || (all_equal && size % min != 0) {
                return false;
            }
        }
        true
    }

    /// Connected sets of unassigned vertices with `size` elements whose
    /// smallest vertex is `v` (every other unassigned vertex is larger).
    fn connected_sets_with_min(&self, v: usize, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let ext: Vec<usize> = self
            .g
            .neighbors(v)
            .filter(|&w| w > v && self.label[w] == UNASSIGNED)
            .collect();
        self.extend(&mut vec![v], ext, v, size, &mut out);
        out
    }

    fn extend(
        &self,
        set: &mut Vec<usize>,
        mut ext: Vec<usize>,
        v: usize,
        size: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if set.len() == size {
            out.push(set.clone());
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for u in self.g.neighbors(w) {
                if u > v
                    && self.label[u] == UNASSIGNED
                    && !set.contains(&u)
                    && !next.contains(&u)
                    && !set.iter().any(|&s| self.g.has_edge(s, u))
                {
                    next.push(u);
                }
            }
            set.push(w);
            self.extend(set, next, v, size, out);
            set.pop();
        }
    }
}

/// Every partition of `g` into connected blocks whose sizes form the
/// multiset `sizes`, each exactly once.
pub fn enumerate_connected_partitions(g: &Graph, sizes: &[usize]) -> Result<Vec<Partition>> {
    if sizes.iter().sum::<usize>() != g.num_vertices() || sizes.contains(&0) {
        return Err(Error::InvalidParameter(
            "block sizes must be positive and sum to N",
        ));
    }
    let mut search = PartitionSearch {
        g,
        label: vec![UNASSIGNED; g.num_vertices()],
        limit: MAX_PARTITIONS,
        out: Vec::new(),
    };
    search.run(&mut sizes.to_vec(), 0)?;
    search.out.sort_unstable();
    Ok(search.out)
}

/// Every partition of `g` into `k` connected blocks of `N / k` vertices.
pub fn enumerate_balanced_partitions(g: &Graph, k: usize) -> Result<Vec<Partition>> {
    let n = g.num_vertices();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisible {
            num_vertices: n,
            parts: k,
        });
    }
    enumerate_connected_partitions(g, &vec![n / k; k])
}

/// Every set of `k - 1` tree edges whose removal leaves `k` equal
/// components, found by trying all subsets.
pub fn brute_force_split_sets(t: &SpanningTree, k: usize) -> Vec<SplitSet> {
    let n = t.num_vertices();
    if k == 0 || !n.is_multiple_of(k) || k > n {
        return Vec::new();
    }
    let edges = t.canonical_edges();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..k - 1).collect();
    loop {
        let mut parent: Vec<usize> = (0..n).collect();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if !pick.contains(&i) {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let mut size = vec![0usize; n];
        for v in 0..n {
            size[find(&mut parent, v)] += 1;
        }
        if size.iter().all(|&s| s == 0 || s == n / k) {
            out.push(SplitSet::new(pick.iter().map(|&i| edges[i])));
        }
        // Next combination in lexicographic order.
        let m = edges.len();
        let r = pick.len();
        let Some(i) = (0..r).rev().find(|&i| pick[i] != i + m - r) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..r {
            pick[j] = pick[j - 1] + 1;
        }
    }
    out
}

/// Spanning-tree count and `k`-splittable spanning-tree count of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCensus {
    pub total_trees: BigCount,
    pub splittable_trees: BigCount,
}

impl SplitCensus {
    /// `splittable / total` in lowest terms.
    pub fn ratio(&self) -> (BigUint, BigUint) {
        let (a, b) = (&self.splittable_trees.0, &self.total_trees.0);
        if b == &BigUint::from(0u32) {
            return (BigUint::from(0u32), BigUint::one());
        }
        let g = a.gcd(b);
        (a / &g, b / &g)
    }

    pub fn probability(&self) -> f64 {
        let (a, b) = self.ratio();
        a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
    }
}

fn census_of(trees: impl Iterator<Item = SpanningTree>, k: usize) -> Result<SplitCensus> {
    let (mut total, mut splittable) = (0u64, 0u64);
    for t in trees {
        total += 1;
        let fast = find_balanced_split(&t, k)?;
        let slow = brute_force_split_sets(&t, k);
        if slow.len() > 1 {
            return Err(Error::OracleMismatch(
                "tree with more than one balanced split set",
            ));
        }
        if fast.as_ref() != slow.first() {
            return Err(Error::OracleMismatch(
                "split finder disagrees with subset search",
            ));
        }
        splittable += fast.is_some() as u64;
    }
    Ok(SplitCensus {
        total_trees: total.into(),
        splittable_trees: splittable.into(),
    })
}

/// Exact census over every spanning tree of `g`, checking the split finder
/// against subset search on each tree.
pub fn exact_split_census(g: &Graph, k: usize) -> Result<SplitCensus> {
    if k == 0 || !g.num_vertices().is_multiple_of(k) {
        return Err(Error::NotDivisible {
            num_vertices: g.num_vertices(),
            parts: k,
        });
    }
    census_of(enumerate_spanning_trees(g)?.into_iter(), k)
}

/// Exact census on the complete graph `K_n`, enumerating its trees through
/// Prüfer sequences.
pub fn complete_graph_census(n: usize, k: usize) -> Result<SplitCensus> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisible {
            num_vertices: n,
            parts: k,
        });
    }
    census_of(enumerate_labeled_trees(n)?, k)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn power(base: usize, exp: i64) -> BigUint {
    // Negative exponents only arise with base 1.
    if exp <= 0 {
        assert!(exp == 0 || base == 1, "negative power of a base above 1");
        return BigUint::one();
    }
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Number of `k`-splittable spanning trees of `K_(kn)`:
/// the number of ways to cut the vertices into `k` blocks of `n`, times
/// `n^(n-2)` trees inside each block, times `k^(k-2)` trees on the blocks,
/// times `n^2` choices for each of the `k - 1` connecting edges.
pub fn splittable_count_formula(n: usize, k: usize) -> Result<BigCount> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be at least 1"));
    }
    let (ni, ki) = (n as i64, k as i64);
    let blocks = factorial(k * n) / (num_traits::pow(factorial(n), k) * factorial(k));
    let inside = power(n, ki * (ni - 2));
    let quotient = power(k, ki - 2);
    let links = power(n, 2 * (ki - 1));
    Ok(BigCount(blocks * inside * quotient * links))
}

fn binomial(n: usize, r: usize) -> BigUint {
    factorial(n) / (factorial(r) * factorial(n - r))
}

/// Total spanning-tree weight of the unordered 2-partitions of `K_n` with
/// block sizes `(i, n - i)`, for `i = 1..=n/2`.
pub fn split_size_weight_histogram(n: usize) -> Result<Vec<(usize, BigCount)>> {
    if n < 2 {
        return Err(Error::InvalidParameter("histogram needs N >= 2"));
    }
    Ok((1..=n / 2)
        .map(|i| {
            let j = n - i;
            let mut w = binomial(n, i) * power(i, i as i64 - 2) * power(j, j as i64 - 2);
            if i == j {
                w /= 2u32;
            }
            (i, BigCount(w))
        })
        .collect())
}

/// The `n` balanced 3-partitions of the slack gadget obtained by cutting its
/// Hamiltonian cycle into arcs of length `n`, after checking the gadget's
/// structure and that every arc partition is connected and balanced.
pub fn gadget_balanced_partitions(n: usize) -> Result<(SlackGadget, Vec<Partition>)> {
    let gadget = make_slack_gadget(n)?;
    gadget.verify()?;
    let parts = gadget.cycle_partitions();
    for p in &parts {
        p.validate(&gadget.graph)?;
        if !crate::split::is_balanced(p, n) {
            return Err(Error::OracleMismatch("cycle arc partition is not balanced"));
        }
    }
    Ok((gadget, parts))
}

/// Confirms by exhaustive enumeration that the cycle arc partitions are the
/// only balanced 3-partitions of the gadget.
pub fn verify_gadget_exhaustively(gadget: &SlackGadget) -> Result<()> {
    let mut expected = gadget.cycle_partitions();
    expected.sort_unstable();
    let found = enumerate_balanced_partitions(&gadget.graph, 3)?;
    if found != expected {
        return Err(Error::OracleMismatch(
            "gadget has balanced partitions off the cycle",
        ));
    }
    Ok(())
}

/// Partitions reachable from `p` by one slack-free recombination move other
/// than the identity: for each adjacent pair of blocks, every other way to
/// split their union into two connected halves. Empty means the chain is
/// frozen at `p`.
pub fn recom_alternatives(g: &Graph, p: &Partition) -> Result<Vec<Partition>> {
    let labels = p.labels();
    let blocks = p.blocks();
    let mut out = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if blocks[i].len() != blocks[j].len() {
                return Err(Error::InvalidPartition("blocks of unequal size"));
            }
            let adjacent = blocks[i]
                .iter()
                .any(|&u| g.neighbors(u).any(|w| labels[w] == j));
            if !adjacent {
                continue;
            }
            let mut region: Vec<usize> = blocks[i].iter().chain(&blocks[j]).copied().collect();
            region.sort_unstable();
            let sub = g.induced_subgraph(&region);
            let half = blocks[i].len();
            for split in enumerate_connected_partitions(&sub, &[half, half])? {
                let mut new_labels = labels.clone();
                for &local in &split.blocks()[0] {
                    new_labels[region[local]] = i;
                }
                for &local in &split.blocks()[1] {
                    new_labels[region[local]] = j;
                }
                let q = Partition::from_labels(&new_labels);
                if &q != p {
                    out.push(q);
                }
            }
        }
    }
    Ok(out)
}
