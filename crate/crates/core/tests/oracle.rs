use std::collections::BTreeSet;

use treesplit_core::count::BigCount;
use treesplit_core::graph::{
    make_complete, make_complete_bipartite, make_cycle, make_grid, make_path, make_star,
};
use treesplit_core::oracle::*;
use treesplit_core::{count_spanning_trees, make_triangular_ladder, partition_weight, Graph};

fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("C_4", make_cycle(4)),
        ("C_6", make_cycle(6)),
        ("K_4", make_complete(4)),
        ("K_6", make_complete(6)),
        ("K_2,3", make_complete_bipartite(2, 3)),
        ("grid 2x3", make_grid(2, 3)),
        ("grid 3x3", make_grid(3, 3)),
        ("P_6", make_path(6)),
        ("star 5", make_star(5)),
        ("ladder 8", make_triangular_ladder(8).unwrap()),
    ]
}

#[test]
fn kirchhoff_matches_enumeration_on_corpus() {
    for (name, g) in corpus() {
        let listed = enumerate_spanning_trees(&g).unwrap();
        let distinct: BTreeSet<_> = listed.iter().map(|t| t.canonical_edges()).collect();
        assert_eq!(distinct.len(), listed.len(), "{name}: duplicate trees");
        for t in &listed {
            t.check_in(&g).unwrap();
        }
        assert_eq!(
            count_spanning_trees(&g),
            BigCount::from(listed.len() as u64),
            "{name}"
        );
    }
}

#[test]
fn formula_matches_census_on_small_complete_graphs() {
    for (n, k) in [(2, 2), (3, 2), (2, 3), (4, 2), (2, 4), (1, 4), (3, 1)] {
        let census = complete_graph_census(n * k, k).unwrap();
        assert_eq!(
            splittable_count_formula(n, k).unwrap(),
            census.splittable_trees,
            "n={n} k={k}"
        );
    }
    // The complete-graph shortcut agrees with generic enumeration.
    assert_eq!(
        complete_graph_census(6, 3).unwrap(),
        exact_split_census(&make_complete(6), 3).unwrap()
    );
}

#[test]
fn histogram_matches_partition_weights() {
    for n in 2..=7 {
        let g = make_complete(n);
        for (i, w) in split_size_weight_histogram(n).unwrap() {
            let total: BigCount = enumerate_connected_partitions(&g, &[i, n - i])
                .unwrap()
                .iter()
                .map(|p| partition_weight(&g, p).unwrap())
                .sum();
            assert_eq!(total, w, "N={n} i={i}");
        }
    }
}

#[test]
fn histogram_matches_forest_counts() {
    // Two-component forests of K_N grouped by the smaller component size.
    for n in [4, 6] {
        let g = make_complete(n);
        let mut counts = vec![0u64; n / 2 + 1];
        for forest in enumerate_forests(&g, 2).unwrap() {
            let mut parent: Vec<usize> = (0..n).collect();
            fn root(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            for e in forest {
                let (u, v) = g.edge(e);
                let (a, b) = (root(&mut parent, u), root(&mut parent, v));
                parent[a] = b;
            }
            let r0 = root(&mut parent, 0);
            let s = (0..n).filter(|&v| root(&mut parent, v) == r0).count();
            counts[s.min(n - s)] += 1;
        }
        for (i, w) in split_size_weight_histogram(n).unwrap() {
            assert_eq!(w, BigCount::from(counts[i]), "N={n} i={i}");
        }
    }
}

#[test]
fn histogram_minimum_is_balanced() {
    for n in [8, 16] {
        let h = split_size_weight_histogram(n).unwrap();
        let min = h.iter().min_by(|a, b| a.1 .0.cmp(&b.1 .0)).unwrap();
        assert_eq!(min.0, n / 2);
    }
}

#[test]
fn balanced_weight_to_splittable_ratio_is_polynomial() {
    for (name, g) in corpus() {
        let n_total = g.num_vertices();
        for k in [2, 3] {
            if n_total % k != 0 {
                continue;
            }
            let census = exact_split_census(&g, k).unwrap();
            let weight: BigCount = enumerate_balanced_partitions(&g, k)
                .unwrap()
                .iter()
                .map(|p| partition_weight(&g, p).unwrap())
                .sum();
            assert_eq!(
                census.splittable_trees.is_zero(),
                weight.is_zero(),
                "{name} k={k}"
            );
            if weight.is_zero() {
                continue;
            }
            let log_ratio = weight.ln() - census.splittable_trees.ln();
            let bound = 2.0 * (k as f64 - 1.0) * (n_total as f64).ln();
            assert!(log_ratio.abs() <= bound + 1e-9, "{name} k={k}: {log_ratio}");
        }
    }
}

#[test]
fn gadget_has_only_cycle_partitions() {
    let (gadget, parts) = gadget_balanced_partitions(8).unwrap();
    assert_eq!(parts.len(), 8);
    verify_gadget_exhaustively(&gadget).unwrap();
    for p in &parts {
        assert!(recom_alternatives(&gadget.graph, p).unwrap().is_empty());
    }
}

#[test]
fn gadget_partition_counts() {
    for n in [10, 12, 14] {
        let (_, parts) = gadget_balanced_partitions(n).unwrap();
        assert_eq!(parts.len(), n);
        let distinct: BTreeSet<_> = parts.iter().collect();
        assert_eq!(distinct.len(), n);
    }
}
