use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};
use treesplit_core::graph::{make_complete, make_cycle, make_grid};
use treesplit_core::oracle::{
    enumerate_balanced_partitions, enumerate_connected_partitions, enumerate_forests,
    enumerate_spanning_trees,
};
use treesplit_core::*;

fn tv<K: Ord>(counts: &BTreeMap<K, u64>, target: &BTreeMap<K, f64>) -> f64 {
    let total: u64 = counts.values().sum();
    let mut d: f64 = counts
        .keys()
        .filter(|k| !target.contains_key(*k))
        .map(|k| counts[k] as f64 / total as f64)
        .sum();
    for (k, &p) in target {
        let q = counts.get(k).copied().unwrap_or(0) as f64 / total as f64;
        d += (p - q).abs();
    }
    d / 2.0
}

fn weight_target(g: &Graph, parts: &[Partition]) -> BTreeMap<Partition, f64> {
    let w: Vec<f64> = parts
        .iter()
        .map(|p| partition_weight(g, p).unwrap().to_f64())
        .collect();
    let total: f64 = w.iter().sum();
    parts
        .iter()
        .cloned()
        .zip(w.iter().map(|x| x / total))
        .collect()
}

#[test]
fn wilson_is_uniform_on_k4() {
    let g = make_complete(4);
    let trees = enumerate_spanning_trees(&g).unwrap();
    let index: BTreeMap<_, _> = trees
        .iter()
        .enumerate()
        .map(|(i, t)| (t.canonical_edges(), i))
        .collect();
    let mut counts = vec![0u64; trees.len()];
    let mut rng = RngStream::new(10);
    let draws = 32_000;
    for _ in 0..draws {
        counts[index[&wilson_ust(&g, &mut rng).unwrap().canonical_edges()]] += 1;
    }
    let expected = draws as f64 / trees.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let p = 1.0 - ChiSquared::new((trees.len() - 1) as f64).unwrap().cdf(stat);
    assert!(p > 0.001, "chi-square p = {p}");
}

#[test]
fn tree_splitting_targets_tree_weight() {
    for (g, k) in [
        (make_cycle(6), 2),
        (make_grid(2, 3), 3),
        (make_grid(2, 3), 2),
    ] {
        let target = weight_target(&g, &enumerate_balanced_partitions(&g, k).unwrap());
        let mut rng = RngStream::new(11);
        let mut counts = BTreeMap::new();
        for _ in 0..20_000 {
            let p = sample_balanced_partition(&g, k, &mut rng, 1_000_000)
                .unwrap()
                .unwrap();
            *counts.entry(p).or_insert(0u64) += 1;
        }
        assert!(tv(&counts, &target) < 0.03);
    }
}

#[test]
fn k4_stage_rates() {
    let g = make_complete(4);
    let mut rng = RngStream::new(12);
    let trials = 64_000;
    let (mut split, mut accepted) = (0, 0);
    for _ in 0..trials {
        let out = split_tree_once(&g, 2, &mut rng).unwrap();
        split += (out.stage != RejectionStage::NotSplittable) as u32;
        accepted += (out.stage == RejectionStage::Accepted) as u32;
    }
    let split_rate = split as f64 / trials as f64;
    let accept_rate = accepted as f64 / trials as f64;
    assert!((split_rate - 0.75).abs() < 0.01, "{split_rate}");
    assert!((accept_rate - 12.0 / 64.0).abs() < 0.01, "{accept_rate}");
}

fn forest_tv(
    g: &Graph,
    k: usize,
    variant: UpDownVariant,
    seed: u64,
) -> (f64, BTreeMap<Vec<usize>, u64>) {
    let forests = enumerate_forests(g, k).unwrap();
    let master = RngStream::new(seed);
    let mut counts = BTreeMap::new();
    for chain in 0..4_000 {
        let mut rng = master.derive(chain);
        let mut f = initial_forest(g, k).unwrap();
        for _ in 0..200 {
            up_down_step(&mut f, &mut rng, variant).unwrap();
        }
        *counts.entry(f.edges()).or_insert(0u64) += 1;
    }
    let uniform: BTreeMap<Vec<usize>, f64> = forests
        .iter()
        .map(|f| (f.clone(), 1.0 / forests.len() as f64))
        .collect();
    (tv(&counts, &uniform), counts)
}

#[test]
fn up_down_walk_is_uniform_over_forests() {
    for (g, k) in [
        (make_cycle(4), 2),
        (make_complete(4), 2),
        (make_cycle(6), 3),
    ] {
        let (d, _) = forest_tv(&g, k, UpDownVariant::Symmetric, 13);
        assert!(d < 0.05, "TV {d}");
    }
}

#[test]
fn cross_edge_walk_weights_by_cross_edges() {
    let g = make_complete(4);
    let (_, counts) = forest_tv(&g, 2, UpDownVariant::CrossEdgeOnly, 14);
    let forests = enumerate_forests(&g, 2).unwrap();
    let cross = |f: &Vec<usize>| {
        let forest = Forest::from_edges(&g, f).unwrap();
        (0..g.num_edges())
            .filter(|&e| {
                let (u, v) = g.edge(e);
                !forest.same_component(u, v)
            })
            .count() as f64
    };
    let total: f64 = forests.iter().map(cross).sum();
    let target: BTreeMap<Vec<usize>, f64> = forests
        .iter()
        .map(|f| (f.clone(), cross(f) / total))
        .collect();
    assert!(tv(&counts, &target) < 0.05);
}

fn recom_counts(
    g: &Graph,
    start: Partition,
    n: usize,
    slack: usize,
    steps: usize,
    seed: u64,
) -> BTreeMap<Partition, u64> {
    let mut rng = RngStream::new(seed);
    let mut state = start;
    let mut counts = BTreeMap::new();
    for _ in 0..steps {
        state = recom_step(g, &state, n, slack, &mut rng).unwrap();
        *counts.entry(state.clone()).or_insert(0u64) += 1;
    }
    counts
}

#[test]
fn recom_targets_tree_weight() {
    let g = make_grid(3, 4);
    let parts = enumerate_balanced_partitions(&g, 2).unwrap();
    let target = weight_target(&g, &parts);
    let counts = recom_counts(&g, parts[0].clone(), 6, 0, 200_000, 15);
    assert!(tv(&counts, &target) < 0.03);
}

#[test]
fn slack_recom_targets_tree_weight() {
    let g = make_grid(2, 4);
    let mut parts = enumerate_connected_partitions(&g, &[4, 4]).unwrap();
    parts.extend(enumerate_connected_partitions(&g, &[3, 5]).unwrap());
    let target = weight_target(&g, &parts);
    let counts = recom_counts(&g, parts[0].clone(), 4, 1, 300_000, 16);
    assert!(tv(&counts, &target) < 0.03, "{}", tv(&counts, &target));
}

#[test]
fn samplers_are_deterministic() {
    let g = make_grid(3, 4);
    let run = || {
        let mut rng = RngStream::new(17);
        let a = sample_balanced_partition(&g, 3, &mut rng, 100_000).unwrap();
        let b = up_down_sample_balanced(&g, 3, &mut rng, 5, 100_000).unwrap();
        let c = recom_step(&g, a.as_ref().unwrap(), 4, 0, &mut rng).unwrap();
        (a, b, c)
    };
    assert_eq!(run(), run());
}

#[test]
fn up_down_balanced_hits_are_uniform_on_c6() {
    let g = make_cycle(6);
    let parts = enumerate_balanced_partitions(&g, 2).unwrap();
    let target: BTreeMap<Partition, f64> = parts.iter().map(|p| (p.clone(), 1.0 / 3.0)).collect();
    let master = RngStream::new(18);
    let mut counts = BTreeMap::new();
    for i in 0..6_000 {
        let mut rng = master.derive(i);
        let p = up_down_sample_balanced(&g, 2, &mut rng, 50, 10_000)
            .unwrap()
            .unwrap();
        *counts.entry(p).or_insert(0u64) += 1;
    }
    assert!(tv(&counts, &target) < 0.05);
}
