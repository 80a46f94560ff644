//! Seeded generators for great graphs with planted partitions.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::partition::GreatPartition;

/// Splits n into four parts as evenly as possible, earlier parts larger.
pub fn balanced_sizes(n: usize) -> [usize; 4] {
    let q = n / 4;
    let r = n % 4;
    std::array::from_fn(|i| q + (i < r) as usize)
}

/// Random great graph with the given part sizes, deterministic in the seed.
///
/// Vertices are laid out contiguously: X1 first, then X2, X3, X4. The three
/// clique parts are complete. X4 is split by assigning its first vertex to
/// the A half and each later vertex to A or B by a fair coin, both halves
/// completed and no edge added between them. Every pair of vertices in
/// different parts gets an edge by an independent fair coin.
pub fn random_great_graph(sizes: &[usize; 4], seed: u64) -> (Graph, GreatPartition) {
    let n: usize = sizes.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);

    let mut bounds = [0usize; 5];
    for i in 0..4 {
        bounds[i + 1] = bounds[i] + sizes[i];
    }
    let part_of = |v: usize| (0..4).find(|&i| v < bounds[i + 1]).unwrap();

    let x4_lo = bounds[3];
    let mut x4a = VertexSet::empty(n);
    let mut x4b = VertexSet::empty(n);
    for v in x4_lo..n {
        if v == x4_lo {
            // first X4 vertex pins the A half, killing the swap symmetry
            x4a.insert(v);
        } else if rng.gen_bool(0.5) {
            x4a.insert(v);
        } else {
            x4b.insert(v);
        }
    }

    for u in 0..n {
        for v in u + 1..n {
            let (pu, pv) = (part_of(u), part_of(v));
            if pu != pv {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v);
                }
            } else if pu < 3 {
                g.add_edge(u, v);
            } else if x4a.contains(u) == x4a.contains(v) {
                g.add_edge(u, v);
            }
        }
    }

    let part_set = |i: usize| VertexSet::from_iter(n, bounds[i]..bounds[i + 1]);
    let p = GreatPartition::new(part_set(0), part_set(1), part_set(2), x4a, x4b);
    debug_assert!(p.is_valid(&g));
    (g, p)
}
