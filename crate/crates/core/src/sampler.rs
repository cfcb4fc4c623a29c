//! Samplers for balanced partitions: tree splitting with rejection, the
//! up-down forest walk, reversible recombination, and the splittability
//! estimator.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::count::{count_spanning_trees_multigraph, BigCount};
use crate::error::{Error, Result};
use crate::graph::{contract_labels, gen_gnm, gen_gnp, Graph, Partition, DEFAULT_REJECTION_BUDGET};
use crate::rng::RngStream;
use crate::split::{apply_split, find_balanced_split, find_two_split_edges_with_slack, Forest};
use crate::tree::{random_labeled_tree, wilson_ust, SpanningTree};

/// Where a single tree-splitting attempt stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectionStage {
    /// The spanning tree had no balanced split.
    NotSplittable,
    /// The tree split, but the `1 / tau(H)` coin rejected it.
    TreeWeightRejected,
    Accepted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    /// Present exactly when `stage` is `Accepted`.
    pub partition: Option<Partition>,
    pub stage: RejectionStage,
    pub trees_drawn: usize,
    /// Spanning-tree count of the contracted multigraph, when the tree split.
    pub quotient_trees: Option<BigCount>,
}

fn check_divisible(g: &Graph, k: usize) -> Result<()> {
    if k == 0 || !g.num_vertices().is_multiple_of(k) {
        return Err(Error::NotDivisible {
            num_vertices: g.num_vertices(),
            parts: k,
        });
    }
    Ok(())
}

/// One round of tree splitting: draw a uniform spanning tree, split it into
/// `k` equal pieces if possible, and accept the pieces with probability
/// `1 / tau(H)`, where `H` contracts each piece to a vertex.
///
/// Accepted partitions are distributed proportionally to their spanning-tree
/// weight among balanced `k`-partitions.
pub fn split_tree_once<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Result<SampleOutcome> {
    check_divisible(g, k)?;
    let tree = wilson_ust(g, rng)?;
    let Some(split) = find_balanced_split(&tree, k)? else {
        return Ok(SampleOutcome {
            partition: None,
            stage: RejectionStage::NotSplittable,
            trees_drawn: 1,
            quotient_trees: None,
        });
    };
    let partition = apply_split(&tree, &split)?;
    let h = contract_labels(g, &partition.labels(), k);
    let tau_h = count_spanning_trees_multigraph(&h);
    let accepted = tau_h.one_in(rng);
    Ok(SampleOutcome {
        partition: accepted.then_some(partition),
        stage: if accepted {
            RejectionStage::Accepted
        } else {
            RejectionStage::TreeWeightRejected
        },
        trees_drawn: 1,
        quotient_trees: Some(tau_h),
    })
}

/// Repeats [`split_tree_once`] until a partition is accepted. Returns `None`
/// once `max_trees` trees have been drawn without success.
pub fn sample_balanced_partition<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    rng: &mut R,
    max_trees: usize,
) -> Result<Option<Partition>> {
    check_divisible(g, k)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for _ in 0..max_trees {
        let outcome = split_tree_once(g, k, rng)?;
        if outcome.partition.is_some() {
            return Ok(outcome.partition);
        }
    }
    Ok(None)
}

/// How the up-down walk picks the edge to add.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UpDownVariant {
    /// Draw the edge uniformly from all edges of the graph and hold when it
    /// falls inside a component. The walk is symmetric, so its stationary
    /// distribution is uniform over forests with the given component count.
    #[default]
    Symmetric,
    /// Draw uniformly among edges joining different components. Stationary
    /// probability of a forest is proportional to its number of such edges.
    CrossEdgeOnly,
}

/// One step of the up-down walk on spanning forests with `k >= 2`
/// components: add an edge between two components, then delete a uniformly
/// chosen edge of the enlarged forest (possibly the one just added).
pub fn up_down_step<R: Rng + ?Sized>(
    f: &mut Forest<'_>,
    rng: &mut R,
    variant: UpDownVariant,
) -> Result<()> {
    if f.num_components() < 2 {
        return Err(Error::InvalidParameter(
            "up-down walk needs at least two components",
        ));
    }
    let g = f.graph();
    let added = match variant {
        UpDownVariant::Symmetric => {
            let e = rng.random_range(0..g.num_edges());
            let (u, v) = g.edge(e);
            if f.same_component(u, v) {
                return Ok(());
            }
            e
        }
        UpDownVariant::CrossEdgeOnly => {
            let cross: Vec<usize> = (0..g.num_edges())
                .filter(|&e| {
                    let (u, v) = g.edge(e);
                    !f.same_component(u, v)
                })
                .collect();
            if cross.is_empty() {
                return Err(Error::Disconnected);
            }
            cross[rng.random_range(0..cross.len())]
        }
    };
    f.insert(added);
    let removed = f.edge_at(rng.random_range(0..f.num_edges()));
    f.remove(removed);
    Ok(())
}

/// A spanning tree found by breadth-first search with its `k - 1` most
/// recently discovered edges removed: a forest with `k` components.
pub fn initial_forest(g: &Graph, k: usize) -> Result<Forest<'_>> {
    let n = g.num_vertices();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter("component count must lie in 1..=N"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut seen = vec![false; n];
    let mut queue = vec![0];
    seen[0] = true;
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &(w, e) in g.incident(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push(w);
                tree_edges.push(e);
            }
        }
    }
    tree_edges.truncate(n - k);
    Forest::from_edges(g, &tree_edges)
}

/// Runs the symmetric up-down walk with `k` components, checking every
/// `steps_per_sample` steps whether all components have `N / k` vertices,
/// and returns the first balanced partition seen. Returns `None` after
/// `max_samples` unsuccessful checks.
pub fn up_down_sample_balanced<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    rng: &mut R,
    steps_per_sample: usize,
    max_samples: usize,
) -> Result<Option<Partition>> {
    check_divisible(g, k)?;
    let mut f = initial_forest(g, k)?;
    if k == 1 {
        return Ok(Some(f.partition()));
    }
    let n = g.num_vertices() / k;
    for _ in 0..max_samples {
        for _ in 0..steps_per_sample.max(1) {
            up_down_step(&mut f, rng, UpDownVariant::Symmetric)?;
        }
        if f.is_balanced(n) {
            return Ok(Some(f.partition()));
        }
    }
    Ok(None)
}

/// What a recombination step did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecomMove {
    /// The chosen pair of blocks shares no edge.
    NonAdjacent,
    /// The spanning tree of the merged pair had no admissible split edge.
    Unsplittable,
    /// The proposal was rejected by the acceptance coin.
    Rejected,
    Accepted(Partition),
}

fn check_recom_state(g: &Graph, p: &Partition, n: usize, slack: usize) -> Result<()> {
    if p.num_vertices() != g.num_vertices() {
        return Err(Error::InvalidPartition("partition and graph sizes differ"));
    }
    if p.num_blocks() < 2 {
        return Err(Error::InvalidPartition(
            "recombination needs at least two blocks",
        ));
    }
    if slack > 0 && n <= 3 * slack {
        return Err(Error::InvalidParameter(
            "slack recombination needs n > 3 * slack",
        ));
    }
    if p.blocks()
        .iter()
        .any(|b| b.len() + slack < n || b.len() > n + slack)
    {
        return Err(Error::InvalidPartition(
            "block size outside [n - slack, n + slack]",
        ));
    }
    p.validate(g)
}

/// One step of reversible recombination, reporting what happened.
///
/// A pair of blocks is chosen uniformly; non-adjacent pairs hold. A uniform
/// spanning tree of the merged pair is drawn and an admissible cut edge (both
/// sides within `[n - slack, n + slack]`) is chosen uniformly among the
/// `c` candidates. The move is accepted with probability
/// `c / (E * (2 slack + 1))`, where `E` counts edges between the two new
/// blocks. With `slack = 0` there is at most one candidate and this is
/// `1 / E`. The chain is reversible with respect to spanning-tree weight.
pub fn recom_move<R: Rng + ?Sized>(
    g: &Graph,
    p: &Partition,
    n: usize,
    slack: usize,
    rng: &mut R,
) -> Result<RecomMove> {
    check_recom_state(g, p, n, slack)?;
    let k = p.num_blocks();
    let pair = rng.random_range(0..k * (k - 1) / 2);
    let (i, j) = unrank_block_pair(k, pair);
    let labels = p.labels();
    let (bi, bj) = (&p.blocks()[i], &p.blocks()[j]);
    let adjacent = bi.iter().any(|&u| g.neighbors(u).any(|w| labels[w] == j));
    if !adjacent {
        return Ok(RecomMove::NonAdjacent);
    }
    let mut region: Vec<usize> = bi.iter().chain(bj).copied().collect();
    region.sort_unstable();
    let sub = g.induced_subgraph(&region);
    let tree = wilson_ust(&sub, rng)?;
    let candidates = find_two_split_edges_with_slack(&tree, n, slack);
    if candidates.is_empty() {
        return Ok(RecomMove::Unsplittable);
    }
    let limit = 2 * slack + 1;
    assert!(
        candidates.len() <= limit,
        "more admissible cut edges than 2 * slack + 1"
    );
    let (a, b) = candidates[rng.random_range(0..candidates.len())];
    let side = tree_side(&tree, a, b);
    let mut crossing = 0usize;
    for &(u, v) in sub.edges() {
        if side[u] != side[v] {
            crossing += 1;
        }
    }
    if rng.random_range(0..crossing * limit) >= candidates.len() {
        return Ok(RecomMove::Rejected);
    }
    let mut new_labels = labels;
    for (local, &v) in region.iter().enumerate() {
        new_labels[v] = if side[local] { i } else { j };
    }
    Ok(RecomMove::Accepted(Partition::from_labels(&new_labels)))
}

/// One step of reversible recombination; see [`recom_move`]. Holding moves
/// return `p` unchanged.
pub fn recom_step<R: Rng + ?Sized>(
    g: &Graph,
    p: &Partition,
    n: usize,
    slack: usize,
    rng: &mut R,
) -> Result<Partition> {
    Ok(match recom_move(g, p, n, slack, rng)? {
        RecomMove::Accepted(q) => q,
        _ => p.clone(),
    })
}

fn unrank_block_pair(k: usize, mut r: usize) -> (usize, usize) {
    for i in 0..k {
        let row = k - 1 - i;
        if r < row {
            return (i, i + 1 + r);
        }
        r -= row;
    }
    unreachable!("pair rank out of range")
}

/// Marks the side of tree edge `(a, b)` that does not contain the root.
fn tree_side(t: &SpanningTree, a: usize, b: usize) -> Vec<bool> {
    let child = if t.parent(a) == b && a != t.root() {
        a
    } else {
        b
    };
    let mut side = vec![false; t.num_vertices()];
    side[child] = true;
    for &v in t.order() {
        if v != t.root() && v != child && side[t.parent(v)] {
            side[v] = true;
        }
    }
    side
}

/// Source of host graphs for the splittability estimator.
#[derive(Debug, Clone)]
pub enum GraphFamily {
    /// The complete graph, whose uniform spanning trees are drawn from
    /// uniform Prüfer sequences without building the graph.
    Complete {
        vertices: usize,
    },
    Fixed(Graph),
    /// A fresh connected uniform graph with `edges` edges per trial.
    Gnm {
        vertices: usize,
        edges: usize,
    },
    /// A fresh connected Erdős–Rényi graph per trial.
    Gnp {
        vertices: usize,
        p: f64,
    },
}

impl GraphFamily {
    pub fn num_vertices(&self) -> usize {
        match self {
            GraphFamily::Complete { vertices } => *vertices,
            GraphFamily::Fixed(g) => g.num_vertices(),
            GraphFamily::Gnm { vertices, .. } => *vertices,
            GraphFamily::Gnp { vertices, .. } => *vertices,
        }
    }

    /// A uniform spanning tree of a graph drawn from the family.
    pub fn draw_tree<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SpanningTree> {
        match self {
            GraphFamily::Complete { vertices } => random_labeled_tree(*vertices, rng),
            GraphFamily::Fixed(g) => wilson_ust(g, rng),
            GraphFamily::Gnm { vertices, edges } => {
                let g = gen_gnm(*vertices, *edges, true, DEFAULT_REJECTION_BUDGET, rng)?;
                wilson_ust(&g, rng)
            }
            GraphFamily::Gnp { vertices, p } => {
                let g = gen_gnp(*vertices, *p, true, DEFAULT_REJECTION_BUDGET, rng)?;
                wilson_ust(&g, rng)
            }
        }
    }
}

/// Success count out of a number of trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub successes: u64,
    pub trials: u64,
}

impl Tally {
    pub fn point(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn merge(self, other: Tally) -> Tally {
        Tally {
            successes: self.successes + other.successes,
            trials: self.trials + other.trials,
        }
    }
}

/// Trial `index` of the splittability estimator: whether a uniform spanning
/// tree of a graph from `family` is `k`-splittable. Uses the stream
/// `master.derive(index)`, so trials can run in any order.
pub fn splittability_trial(
    family: &GraphFamily,
    k: usize,
    master: &RngStream,
    index: u64,
) -> Result<bool> {
    let mut rng = master.derive(index);
    let tree = family.draw_tree(&mut rng)?;
    Ok(find_balanced_split(&tree, k)?.is_some())
}

/// Counts `k`-splittable uniform spanning trees over `trials` independent
/// draws from `family`.
pub fn estimate_splittability(
    family: &GraphFamily,
    k: usize,
    trials: u64,
    master: &RngStream,
) -> Result<Tally> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1"));
    }
    if k == 0 || !family.num_vertices().is_multiple_of(k) {
        return Err(Error::NotDivisible {
            num_vertices: family.num_vertices(),
            parts: k,
        });
    }
    let mut tally = Tally {
        successes: 0,
        trials,
    };
    for i in 0..trials {
        if splittability_trial(family, k, master, i)? {
            tally.successes += 1;
        }
    }
    Ok(tally)
}
