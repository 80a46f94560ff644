//! Undirected simple graphs on vertex set `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex, which keeps the common
//! operations (clique tests, common neighbourhoods) at a handful of word
//! operations for the graph sizes this crate targets.

use crate::bitset::VertexSet;
use crate::error::ParamError;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| VertexSet::empty(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Cycle 0-1-...-(n-1)-0. Panics for n < 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self loops not supported");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Relabels vertex v of the result as perm[v] of self.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        let mut inv = vec![0; self.n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        for (u, v) in self.edges() {
            g.add_edge(inv[u], inv[v]);
        }
        g
    }

    pub fn induced(&self, s: &VertexSet) -> Graph {
        let verts = s.to_vec();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// True iff every pair in s is adjacent. Empty and singleton sets count.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut need = s.clone();
            need.remove(v);
            need.is_subset(&self.adj[v])
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| s.is_disjoint(&self.adj[v]))
    }

    /// Neighbours of both u and v, excluding u and v themselves.
    /// Panics when u == v: the count is used as a similarity measure between
    /// distinct vertices and has no meaning on the diagonal.
    pub fn common_neighbors(&self, u: usize, v: usize) -> VertexSet {
        assert!(u != v, "common_neighbors needs distinct vertices");
        let mut s = self.adj[u].intersection(&self.adj[v]);
        s.remove(u);
        s.remove(v);
        s
    }

    /// Splits s into cliques (A, B) with no edge of self between them, if
    /// such a split exists. A contains the lowest-indexed vertex of s; for a
    /// clique the split is (s, {}). The split is unique up to swapping sides,
    /// so the result is deterministic.
    pub fn is_two_clique_union(&self, s: &VertexSet) -> Option<(VertexSet, VertexSet)> {
        let verts = s.to_vec();
        if verts.is_empty() {
            return Some((s.clone(), VertexSet::empty(self.n)));
        }
        // A, B are cliques with no cross edge iff the complement of the
        // induced subgraph is the complete bipartite graph on (A, B).
        // Empty complement: s is a clique. Otherwise the complement must be
        // connected and bipartite with every cross pair present.
        let h = self.induced(s).complement();
        if h.edge_count() == 0 {
            return Some((s.clone(), VertexSet::empty(self.n)));
        }
        let k = verts.len();
        let mut color = vec![None; k];
        let mut queue = std::collections::VecDeque::new();
        color[0] = Some(0u8);
        queue.push_back(0);
        let mut seen = 1;
        while let Some(u) = queue.pop_front() {
            for v in h.neighbors(u).iter() {
                match color[v] {
                    None => {
                        color[v] = Some(1 - color[u].unwrap());
                        seen += 1;
                        queue.push_back(v);
                    }
                    Some(c) if c == color[u].unwrap() => return None,
                    _ => {}
                }
            }
        }
        if seen != k {
            // An isolated-in-complement vertex is adjacent to all of s, but
            // any valid side for it would need complement edges to the other
            // side; disconnected complements admit no split.
            return None;
        }
        let side0 = color.iter().filter(|c| **c == Some(0)).count();
        if h.edge_count() != side0 * (k - side0) {
            return None;
        }
        let mut a = VertexSet::empty(self.n);
        let mut b = VertexSet::empty(self.n);
        for (i, &v) in verts.iter().enumerate() {
            if color[i] == color[0] {
                a.insert(v);
            } else {
                b.insert(v);
            }
        }
        Some((a, b))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Pair (u, v), u < v, at bit position k of an edge mask, ordered
/// (0,1),(0,2),...,(0,n-1),(1,2),...
pub fn edge_mask_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    for (k, (u, v)) in edge_mask_pairs(n).into_iter().enumerate() {
        if mask >> k & 1 == 1 {
            g.add_edge(u, v);
        }
    }
    g
}

/// All 2^C(n,2) labeled graphs on n vertices in edge-mask order.
/// Exhaustive enumeration is a desk-scale tool; n > 6 is rejected.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>, ParamError> {
    if n > 6 {
        return Err(ParamError::new(format!(
            "exhaustive enumeration limited to n <= 6, got {}",
            n
        )));
    }
    let total = 1u64 << (n * n.saturating_sub(1) / 2);
    Ok((0..total).map(move |mask| graph_from_edge_mask(n, mask)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_and_independent() {
        let g = Graph::complete(5);
        assert!(g.is_clique(&VertexSet::full(5)));
        assert!(g.is_clique(&VertexSet::empty(5)));
        let e = Graph::empty(4);
        assert!(e.is_independent(&VertexSet::full(4)));
        assert!(!e.is_clique(&VertexSet::from_iter(4, [0, 1])));
    }

    #[test]
    fn common_neighbors_excludes_endpoints() {
        // Triangle plus pendant: common of (0,1) is {2}, even though 0 ~ 1.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert_eq!(g.common_neighbors(0, 1).to_vec(), vec![2]);
        assert_eq!(g.common_neighbors(0, 3).to_vec(), vec![2]);
    }

    #[test]
    #[should_panic]
    fn common_neighbors_rejects_equal() {
        let g = Graph::complete(3);
        g.common_neighbors(1, 1);
    }

    /// Oracle: try all 2^|s| splits directly.
    fn two_clique_union_brute(g: &Graph, s: &VertexSet) -> bool {
        let verts = s.to_vec();
        let k = verts.len();
        for mask in 0..1u64 << k {
            let mut a = VertexSet::empty(g.n());
            let mut b = VertexSet::empty(g.n());
            for (i, &v) in verts.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.insert(v);
                } else {
                    b.insert(v);
                }
            }
            let cross_ok = a
                .iter()
                .all(|u| b.iter().all(|v| !g.adjacent(u, v)));
            if g.is_clique(&a) && g.is_clique(&b) && cross_ok {
                return true;
            }
        }
        false
    }

    #[test]
    fn two_clique_union_examples() {
        // Two disjoint triangles: the split recovers the triangles.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        let (a, b) = g.is_two_clique_union(&VertexSet::full(6)).unwrap();
        assert_eq!(a.to_vec(), vec![0, 1, 2]);
        assert_eq!(b.to_vec(), vec![3, 4, 5]);

        // A path on 3 vertices admits no split.
        let p3 = Graph::path(3);
        assert!(p3.is_two_clique_union(&VertexSet::full(3)).is_none());

        // C5 restricted to {0,1,3}: edge 0-1 plus isolated 3.
        let c5 = Graph::cycle(5);
        let s = VertexSet::from_iter(5, [0, 1, 3]);
        let (a, b) = c5.is_two_clique_union(&s).unwrap();
        assert_eq!(a.to_vec(), vec![0, 1]);
        assert_eq!(b.to_vec(), vec![3]);

        // A clique splits as (s, {}).
        let k4 = Graph::complete(4);
        let (a, b) = k4.is_two_clique_union(&VertexSet::full(4)).unwrap();
        assert_eq!(a.len(), 4);
        assert!(b.is_empty());
    }

    #[test]
    fn two_clique_union_matches_brute_force() {
        // Every subset of every graph on 4 vertices, plus all 5-vertex
        // graphs on the full set.
        for g in enumerate_labeled(4).unwrap() {
            for sub in 0..16u64 {
                let s = VertexSet::from_iter(4, (0..4).filter(|v| sub >> v & 1 == 1));
                assert_eq!(
                    g.is_two_clique_union(&s).is_some(),
                    two_clique_union_brute(&g, &s),
                    "graph {:?} subset {:?}",
                    g,
                    s
                );
            }
        }
        for g in enumerate_labeled(5).unwrap() {
            let s = VertexSet::full(5);
            assert_eq!(
                g.is_two_clique_union(&s).is_some(),
                two_clique_union_brute(&g, &s),
                "graph {:?}",
                g
            );
        }
    }

    #[test]
    fn two_clique_union_split_is_valid_when_found() {
        for g in enumerate_labeled(5).unwrap() {
            let s = VertexSet::full(5);
            if let Some((a, b)) = g.is_two_clique_union(&s) {
                assert!(g.is_clique(&a));
                assert!(g.is_clique(&b));
                assert!(a.iter().all(|u| b.iter().all(|v| !g.adjacent(u, v))));
                assert_eq!(a.union(&b), s);
                assert!(a.contains(s.min_vertex().unwrap()));
            }
        }
    }

    #[test]
    fn enumerate_labeled_counts() {
        assert_eq!(enumerate_labeled(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled(4).unwrap().count(), 64);
        assert!(enumerate_labeled(7).is_err());
    }

    #[test]
    fn permuted_preserves_structure() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]);
        let p = g.permuted(&[3, 2, 1, 0]);
        assert!(p.adjacent(3, 2));
        assert!(p.adjacent(2, 1));
        assert_eq!(p.edge_count(), 2);
    }
}
