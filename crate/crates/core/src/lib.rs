//! Balanced `k`-partitions of graphs under the spanning-tree weight.
//!
//! The weight of a partition into connected blocks is the product of the
//! spanning-tree counts of its blocks. This crate samples balanced partitions
//! from that distribution three ways (tree splitting with rejection, the
//! up-down forest walk, and reversible recombination), counts spanning trees
//! exactly, and carries a brute-force oracle layer used to validate all of it.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, statistics and
//! the experiment CLI live in the `treesplit` crate.

#![no_std]

extern crate alloc;

pub mod count;
mod error;
pub mod gadget;
pub mod graph;
pub mod oracle;
pub mod rng;
pub mod sampler;
pub mod split;
pub mod tree;

pub use count::{
    count_spanning_trees, count_spanning_trees_multigraph, grimmett_bound,
    log_count_spanning_trees, partition_weight, BigCount, LogCount,
};
pub use error::{Error, Result};
pub use gadget::{make_slack_gadget, make_triangular_ladder, SlackGadget};
pub use graph::{Edge, Graph, Multigraph, Partition};
pub use rng::RngStream;
pub use sampler::{
    estimate_splittability, initial_forest, recom_move, recom_step, sample_balanced_partition,
    split_tree_once, splittability_trial, up_down_sample_balanced, up_down_step, GraphFamily,
    RecomMove, RejectionStage, SampleOutcome, Tally, UpDownVariant,
};
pub use split::{
    apply_split, find_balanced_split, find_two_split_edges_with_slack, is_balanced,
    is_slack_balanced, subtree_sizes, Forest, SplitSet,
};
pub use tree::{random_labeled_tree, wilson_ust, SpanningTree};
