//! Induced subgraphs of the triangular lattice: ladders (triangle strips)
//! and the hexagon-with-four-ladders graph on which perfectly balanced
//! recombination freezes while one vertex of slack is exponentially favored.
//!
//! Lattice points use axial coordinates `(a, b)`; the six neighbors of a
//! point differ by the unit vectors in [`DIRECTIONS`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Partition};

pub type Point = (i32, i32);

pub const DIRECTIONS: [Point; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn add(p: Point, d: Point) -> Point {
    (p.0 + d.0, p.1 + d.1)
}

fn adjacent(p: Point, q: Point) -> bool {
    DIRECTIONS.iter().any(|&d| add(p, d) == q)
}

fn hex_distance(p: Point) -> i32 {
    p.0.abs().max(p.1.abs()).max((p.0 + p.1).abs())
}

/// The subgraph of the triangular lattice induced by `points`; vertex `i` is
/// `points[i]`. Points must be distinct.
pub fn lattice_induced_graph(points: &[Point]) -> Result<Graph> {
    let mut edges: Vec<Edge> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::InvalidParameter("lattice points must be distinct"));
            }
            if adjacent(points[i], points[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(points.len(), edges)
}

/// Ladder coordinates in zigzag order: rail points alternate, so
/// consecutive vertices are adjacent and the vertex `i` neighbors `i+1` and
/// `i+2`.
fn ladder_points(n: usize) -> Vec<Point> {
    (0..n as i32).map(|i| (i / 2, i % 2)).collect()
}

/// Triangular-lattice ladder on `n >= 2` vertices: two parallel rails of
/// `ceil(n/2)` and `floor(n/2)` vertices joined by rungs and diagonals.
/// Vertices are numbered in zigzag order along the strip.
pub fn make_triangular_ladder(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "a ladder needs at least 2 vertices",
        ));
    }
    lattice_induced_graph(&ladder_points(n))
}

/// Radius-2 hexagonal ring (12 points, two edges per side) in cyclic order.
fn hexagon_ring() -> [Point; 12] {
    let mut ring = [(0, 0); 12];
    let mut cur = (0, -2);
    for (side, &d) in DIRECTIONS.iter().enumerate() {
        for step in 0..2 {
            ring[side * 2 + step] = cur;
            cur = add(cur, d);
        }
    }
    ring
}

/// Role of a ladder in the slack witness partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderRole {
    /// `n - 1` vertices; forms a witness block on its own.
    Long,
    /// `(n - 6) / 2` vertices; two of these join seven ring vertices.
    Short,
    /// `n - 5` vertices; joins five ring vertices.
    Medium,
}

/// A ladder hanging off the hexagon.
#[derive(Debug, Clone)]
pub struct GadgetLadder {
    pub role: LadderRole,
    /// Ring positions `(i, i + 1)` of the base rung it is attached to.
    pub base: (usize, usize),
    /// Vertices beyond the base, in zigzag order outward.
    pub vertices: Vec<usize>,
}

/// Ring pair index, ladder role. The long ladder sits between the two short
/// ones inside the seven-vertex ring arc `5..=11`; the medium ladder sits
/// inside the arc `0..=4`.
const ATTACHMENTS: [(usize, LadderRole); 4] = [
    (7, LadderRole::Long),
    (5, LadderRole::Short),
    (9, LadderRole::Short),
    (1, LadderRole::Medium),
];

/// The slack gadget `G_n` together with its construction metadata.
#[derive(Debug, Clone)]
pub struct SlackGadget {
    pub n: usize,
    pub graph: Graph,
    pub coords: Vec<Point>,
    /// Vertex ids of the ring, in cyclic order.
    pub hexagon: [usize; 12],
    pub ladders: Vec<GadgetLadder>,
    /// A Hamiltonian cycle as a vertex sequence (closing edge implicit).
    pub cycle: Vec<usize>,
}

/// Builds `G_n` for even `n >= 8`: `3n` vertices, a 12-vertex hexagon and
/// four ladders of `n - 1`, `(n - 6)/2`, `(n - 6)/2` and `n - 5` vertices.
///
/// The graph is the lattice-induced subgraph on the chosen points. The
/// Hamiltonian cycle and the pendant structure of every ladder are checked
/// before returning.
pub fn make_slack_gadget(n: usize) -> Result<SlackGadget> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGadget(n));
    }
    let ring = hexagon_ring();
    let mut coords: Vec<Point> = ring.to_vec();
    let mut ladders = Vec::new();
    let mut cycle_detours: Vec<(usize, Vec<usize>)> = Vec::new();

    for &(pair, role) in &ATTACHMENTS {
        let count = match role {
            LadderRole::Long => n - 1,
            LadderRole::Short => (n - 6) / 2,
            LadderRole::Medium => n - 5,
        };
        let c = ring[pair];
        let m = ring[(pair + 1) % 12];
        let d = DIRECTIONS
            .iter()
            .copied()
            .rfind(|&d| {
                hex_distance(add(c, d)) > hex_distance(c)
                    && hex_distance(add(m, d)) > hex_distance(m)
            })
            .ok_or(Error::InvalidGadget(n))?;
        let rail = |start: Point, len: usize| -> Vec<Point> {
            (1..=len as i32)
                .map(|j| (start.0 + j * d.0, start.1 + j * d.1))
                .collect()
        };
        // The rail whose first point touches both base vertices leads the
        // zigzag and gets the extra vertex when the count is odd.
        let from_c_leads = adjacent(add(c, d), m);
        let (lead_len, trail_len) = (count.div_ceil(2), count / 2);
        let (c_len, m_len) = if from_c_leads {
            (lead_len, trail_len)
        } else {
            (trail_len, lead_len)
        };
        let c_rail = rail(c, c_len);
        let m_rail = rail(m, m_len);

        let first = coords.len();
        let (lead, trail) = if from_c_leads {
            (&c_rail, &m_rail)
        } else {
            (&m_rail, &c_rail)
        };
        let mut zigzag = Vec::with_capacity(count);
        for i in 0..lead.len() {
            zigzag.push(lead[i]);
            if i < trail.len() {
                zigzag.push(trail[i]);
            }
        }
        coords.extend_from_slice(&zigzag);
        let vertices: Vec<usize> = (first..first + count).collect();
        let id_of = |p: Point| first + zigzag.iter().position(|&q| q == p).unwrap();
        // Out along the rail starting next to ring[pair], back along the other.
        let mut detour: Vec<usize> = c_rail.iter().map(|&p| id_of(p)).collect();
        detour.extend(m_rail.iter().rev().map(|&p| id_of(p)));
        cycle_detours.push((pair, detour));
        ladders.push(GadgetLadder {
            role,
            base: (pair, (pair + 1) % 12),
            vertices,
        });
    }

    let graph = lattice_induced_graph(&coords)?;
    let mut cycle = Vec::with_capacity(3 * n);
    for i in 0..12 {
        cycle.push(i);
        if let Some((_, detour)) = cycle_detours.iter().find(|(pair, _)| *pair == i) {
            cycle.extend_from_slice(detour);
        }
    }
    let mut hexagon = [0; 12];
    for (i, h) in hexagon.iter_mut().enumerate() {
        *h = i;
    }
    let gadget = SlackGadget {
        n,
        graph,
        coords,
        hexagon,
        ladders,
        cycle,
    };
    gadget.verify()?;
    Ok(gadget)
}

impl SlackGadget {
    /// Structural checks: vertex count, Hamiltonian cycle, ring is an induced
    /// 12-cycle, and each ladder touches the rest of the graph only through
    /// its base rung and is shorter than `n`.
    pub fn verify(&self) -> Result<()> {
        let g = &self.graph;
        let n = self.n;
        let fail = || Error::OracleMismatch("slack gadget construction");
        if g.num_vertices() != 3 * n || self.cycle.len() != 3 * n {
            return Err(fail());
        }
        let mut seen = vec![false; 3 * n];
        for &v in &self.cycle {
            if core::mem::replace(&mut seen[v], true) {
                return Err(fail());
            }
        }
        for i in 0..self.cycle.len() {
            if !g.has_edge(self.cycle[i], self.cycle[(i + 1) % self.cycle.len()]) {
                return Err(fail());
            }
        }
        for i in 0..12 {
            for j in i + 1..12 {
                let ring_edge = j == i + 1 || (i == 0 && j == 11);
                if g.has_edge(self.hexagon[i], self.hexagon[j]) != ring_edge {
                    return Err(fail());
                }
            }
        }
        for ladder in &self.ladders {
            if ladder.vertices.len() >= n {
                return Err(fail());
            }
            let base = [self.hexagon[ladder.base.0], self.hexagon[ladder.base.1]];
            for &v in &ladder.vertices {
                for w in g.neighbors(v) {
                    if !ladder.vertices.contains(&w) && !base.contains(&w) {
                        return Err(fail());
                    }
                }
            }
            // A triangle strip: consecutive zigzag vertices are adjacent.
            let strip: Vec<usize> = base
                .iter()
                .copied()
                .chain(ladder.vertices.iter().copied())
                .collect();
            if !ladder.vertices.is_empty()
                && !strip.windows(2).skip(1).all(|w| g.has_edge(w[0], w[1]))
            {
                return Err(fail());
            }
        }
        Ok(())
    }

    /// The slack-1 witness: the long ladder alone (`n - 1`), ring positions
    /// `5..=11` with both short ladders (`n + 1`), and ring positions `0..=4`
    /// with the medium ladder (`n`).
    pub fn witness_partition(&self) -> Partition {
        let mut labels = vec![usize::MAX; 3 * self.n];
        for (i, &h) in self.hexagon.iter().enumerate() {
            labels[h] = if i >= 5 { 1 } else { 2 };
        }
        for ladder in &self.ladders {
            let label = match ladder.role {
                LadderRole::Long => 0,
                LadderRole::Short => 1,
                LadderRole::Medium => 2,
            };
            for &v in &ladder.vertices {
                labels[v] = label;
            }
        }
        Partition::from_labels(&labels)
    }

    /// The `n` partitions obtained by cutting the Hamiltonian cycle into
    /// three arcs of `n` vertices, one per rotation offset.
    pub fn cycle_partitions(&self) -> Vec<Partition> {
        let len = self.cycle.len();
        (0..self.n)
            .map(|offset| {
                let mut labels = vec![0; len];
                for pos in 0..len {
                    labels[self.cycle[(offset + pos) % len]] = pos / self.n;
                }
                Partition::from_labels(&labels)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_spanning_trees;

    #[test]
    fn ladder_small_counts() {
        assert!(make_triangular_ladder(1).is_err());
        let l2 = make_triangular_ladder(2).unwrap();
        assert_eq!(l2.num_edges(), 1);
        let l4 = make_triangular_ladder(4).unwrap();
        assert_eq!(l4.num_edges(), 5);
        assert_eq!(count_spanning_trees(&l4), 8.into());
        for n in 3..12 {
            let l = make_triangular_ladder(n).unwrap();
            assert_eq!(l.num_edges(), 2 * n - 3);
            for v in 0..n - 1 {
                assert!(l.has_edge(v, v + 1));
            }
        }
    }

    #[test]
    fn ring_is_radius_two() {
        let ring = hexagon_ring();
        assert!(ring.iter().all(|&p| hex_distance(p) == 2));
        for i in 0..12 {
            assert!(adjacent(ring[i], ring[(i + 1) % 12]));
        }
    }

    #[test]
    fn gadget_sizes() {
        let g = make_slack_gadget(14).unwrap();
        assert_eq!(g.graph.num_vertices(), 42);
        let mut sizes: Vec<usize> = g.ladders.iter().map(|l| l.vertices.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 4, 9, 13]);
        let g = make_slack_gadget(8).unwrap();
        let mut sizes: Vec<usize> = g.ladders.iter().map(|l| l.vertices.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 3, 7]);
        assert!(g.graph.is_connected());
    }

    #[test]
    fn gadget_rejects_bad_n() {
        for n in [0, 6, 7, 9, 13] {
            assert_eq!(make_slack_gadget(n).unwrap_err(), Error::InvalidGadget(n));
        }
    }

    #[test]
    fn gadget_is_planar_low_degree_and_hamiltonian() {
        for n in (8..=30).step_by(2) {
            let g = make_slack_gadget(n).unwrap();
            assert_eq!(g.graph.num_vertices(), 3 * n);
            assert!((0..3 * n).all(|v| g.graph.degree(v) <= 6));
            g.verify().unwrap();
        }
    }

    #[test]
    fn witness_sizes_and_connectivity() {
        for n in (8..=20).step_by(2) {
            let g = make_slack_gadget(n).unwrap();
            let w = g.witness_partition();
            w.validate(&g.graph).unwrap();
            let mut sizes = w.sizes();
            sizes.sort_unstable();
            assert_eq!(sizes, vec![n - 1, n, n + 1]);
        }
    }

    #[test]
    fn cycle_partitions_are_balanced_and_distinct() {
        let g = make_slack_gadget(10).unwrap();
        let parts = g.cycle_partitions();
        for p in &parts {
            p.validate(&g.graph).unwrap();
            assert!(p.sizes().iter().all(|&s| s == 10));
        }
        let mut dedup = parts.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 10);
    }
}
