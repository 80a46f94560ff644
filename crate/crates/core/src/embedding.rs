//! Combinatorial plane embeddings as rotation systems.
//!
//! Faces are traced with the next-dart rule: after arriving at v from u,
//! leave along the neighbor preceding u in v's rotation. With rotations
//! listed counterclockwise this traces internal faces counterclockwise and
//! the outer face clockwise; the packing layout relies on that orientation.

use crate::error::ParamError;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    outer_idx: usize,
}

fn cyclically_equal(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return a.len() == b.len();
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

impl PlanarEmbedding {
    /// Validates the rotation system: permutations of the neighborhoods,
    /// connectivity, the Euler relation V - E + F = 2, and that the given
    /// outer face is one of the traced faces.
    pub fn new(
        graph: Graph,
        rotation: Vec<Vec<usize>>,
        outer_face: Vec<usize>,
    ) -> Result<Self, ParamError> {
        let n = graph.n();
        if n == 0 {
            return Err(ParamError::new("embedding needs at least one vertex"));
        }
        if rotation.len() != n {
            return Err(ParamError::new("rotation length mismatch"));
        }
        for v in 0..n {
            let mut sorted = rotation[v].clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != rotation[v].len() || sorted != graph.neighbors(v).to_vec() {
                return Err(ParamError::new(format!(
                    "rotation at {} is not a permutation of its neighbors",
                    v
                )));
            }
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in graph.neighbors(u).iter() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(ParamError::new("graph is not connected"));
        }

        let faces = trace_faces(&graph, &rotation);
        let e = graph.edge_count();
        if n as i64 - e as i64 + faces.len() as i64 != 2 {
            return Err(ParamError::new(format!(
                "rotation system is not planar: V-E+F = {}-{}+{}",
                n,
                e,
                faces.len()
            )));
        }
        let outer_idx = faces
            .iter()
            .position(|f| cyclically_equal(f, &outer_face))
            .ok_or_else(|| ParamError::new("outer face is not a face of the embedding"))?;
        Ok(PlanarEmbedding { graph, rotation, faces, outer_idx })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// All face walks; internal faces run counterclockwise.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn outer_face(&self) -> &[usize] {
        &self.faces[self.outer_idx]
    }

    pub fn internal_faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        let outer = self.outer_idx;
        self.faces
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != outer)
            .map(|(_, f)| f)
    }

    pub fn is_tree(&self) -> bool {
        self.graph.edge_count() + 1 == self.graph.n()
    }

    pub fn is_internally_triangulated(&self) -> bool {
        self.internal_faces().all(|f| f.len() == 3)
    }

    /// Vertices not on the outer face.
    pub fn interior_vertices(&self) -> Vec<usize> {
        let outer = self.outer_face();
        (0..self.graph.n()).filter(|v| !outer.contains(v)).collect()
    }

    /// Star-triangulates every internal face longer than a triangle with a
    /// helper vertex; returns the refined embedding and the helper ids.
    /// Faces must be simple cycles for this to be meaningful.
    pub fn triangulate_internal(&self) -> Result<(PlanarEmbedding, Vec<usize>), ParamError> {
        let big: Vec<Vec<usize>> = self
            .internal_faces()
            .filter(|f| f.len() > 3)
            .cloned()
            .collect();
        if big.is_empty() {
            return Ok((self.clone(), Vec::new()));
        }
        let n = self.graph.n();
        let mut g = Graph::empty(n + big.len());
        for (u, v) in self.graph.edges() {
            g.add_edge(u, v);
        }
        let mut rotation = self.rotation.clone();
        for (h_off, face) in big.iter().enumerate() {
            let h = n + h_off;
            let mut dedup = face.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != face.len() {
                return Err(ParamError::new(
                    "cannot triangulate a face that repeats a vertex",
                ));
            }
            for (i, &v) in face.iter().enumerate() {
                let next = face[(i + 1) % face.len()];
                g.add_edge(v, h);
                // helper enters v's rotation right after the face successor,
                // so the corner (v, next) splits into (v, next, h)
                let pos = rotation[v].iter().position(|&w| w == next).unwrap();
                rotation[v].insert(pos + 1, h);
            }
            rotation.push(face.clone());
        }
        let outer = self.outer_face().to_vec();
        let refined = PlanarEmbedding::new(g, rotation, outer)?;
        Ok((refined, (n..n + big.len()).collect()))
    }

    // --- builders -------------------------------------------------------

    pub fn triangle() -> Self {
        PlanarEmbedding::new(
            Graph::complete(3),
            vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            vec![0, 2, 1],
        )
        .unwrap()
    }

    /// Wheel on k rim vertices 0..k plus hub k; complete4() is wheel(3).
    pub fn wheel(k: usize) -> Result<Self, ParamError> {
        if k < 3 {
            return Err(ParamError::new("wheel needs at least 3 rim vertices"));
        }
        let mut g = Graph::empty(k + 1);
        let mut rotation = Vec::with_capacity(k + 1);
        for j in 0..k {
            g.add_edge(j, (j + 1) % k);
            g.add_edge(j, k);
            rotation.push(vec![(j + 1) % k, k, (j + k - 1) % k]);
        }
        rotation.push((0..k).collect());
        let mut outer = vec![0];
        outer.extend((1..k).rev());
        PlanarEmbedding::new(g, rotation, outer)
    }

    pub fn complete4() -> Self {
        PlanarEmbedding::wheel(3).unwrap()
    }

    /// K5 minus the edge {3,4}: triangle 0,1,2 plus the two nonadjacent
    /// vertices 3 (inner) and 4 (on the outer face). Interior: 1 and 3.
    pub fn k5_minus_edge() -> Self {
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
        );
        PlanarEmbedding::new(
            g,
            vec![
                vec![2, 3, 1, 4],
                vec![4, 0, 3, 2],
                vec![4, 1, 3, 0],
                vec![1, 0, 2],
                vec![0, 1, 2],
            ],
            vec![0, 4, 2],
        )
        .unwrap()
    }

    /// K4 minus the edge {2,3}: two triangles glued along edge {0,1}.
    pub fn diamond() -> Self {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        PlanarEmbedding::new(
            g,
            vec![vec![3, 1, 2], vec![2, 0, 3], vec![1, 0], vec![1, 0]],
            vec![0, 2, 1, 3],
        )
        .unwrap()
    }

    pub fn path(n: usize) -> Result<Self, ParamError> {
        if n == 0 {
            return Err(ParamError::new("path needs at least one vertex"));
        }
        let g = Graph::path(n);
        let rotation = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        let mut outer = Vec::new();
        outer.extend(0..n);
        outer.extend((1..n.saturating_sub(1)).rev());
        PlanarEmbedding::new(g, rotation, outer)
    }

    /// Star with center 0 and the given number of leaves.
    pub fn star(leaves: usize) -> Result<Self, ParamError> {
        if leaves == 0 {
            return Err(ParamError::new("star needs at least one leaf"));
        }
        let n = leaves + 1;
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        let mut rotation = vec![(1..n).collect::<Vec<_>>()];
        rotation.extend((1..n).map(|_| vec![0]));
        let mut outer = Vec::new();
        for v in (1..n).rev() {
            outer.push(0);
            outer.push(v);
        }
        PlanarEmbedding::new(g, rotation, outer)
    }

    pub fn cycle(n: usize) -> Result<Self, ParamError> {
        if n < 3 {
            return Err(ParamError::new("cycle needs at least 3 vertices"));
        }
        let g = Graph::cycle(n);
        let rotation = (0..n)
            .map(|v| vec![(v + 1) % n, (v + n - 1) % n])
            .collect();
        let mut outer = vec![0];
        outer.extend((1..n).rev());
        PlanarEmbedding::new(g, rotation, outer)
    }
}

fn trace_faces(graph: &Graph, rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = graph.n();
    if graph.edge_count() == 0 {
        // isolated vertex: one face, the whole plane
        return vec![vec![0]];
    }
    let pos: Vec<std::collections::HashMap<usize, usize>> = rotation
        .iter()
        .map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect())
        .collect();
    let mut used = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for u0 in 0..n {
        for &v0 in &rotation[u0] {
            if used.contains(&(u0, v0)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                used.insert((u, v));
                walk.push(u);
                let r = &rotation[v];
                let i = pos[v][&u];
                let w = r[(i + r.len() - 1) % r.len()];
                u = v;
                v = w;
                if (u, v) == (u0, v0) {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face_count(e: &PlanarEmbedding) -> usize {
        e.faces().len()
    }

    #[test]
    fn triangle_has_two_faces() {
        let e = PlanarEmbedding::triangle();
        assert_eq!(face_count(&e), 2);
        assert_eq!(e.internal_faces().count(), 1);
        assert!(e.interior_vertices().is_empty());
        assert!(e.is_internally_triangulated());
    }

    #[test]
    fn wheel_faces_and_interior() {
        for k in 3..=6 {
            let e = PlanarEmbedding::wheel(k).unwrap();
            assert_eq!(face_count(&e), k + 1);
            assert_eq!(e.interior_vertices(), vec![k]);
            assert!(e.is_internally_triangulated());
            // every internal face is a rim edge plus the hub
            for f in e.internal_faces() {
                assert_eq!(f.len(), 3);
                assert!(f.contains(&k));
            }
        }
        assert!(PlanarEmbedding::wheel(2).is_err());
    }

    #[test]
    fn k5_minus_edge_shape() {
        let e = PlanarEmbedding::k5_minus_edge();
        assert_eq!(e.graph().edge_count(), 9);
        assert!(!e.graph().adjacent(3, 4));
        assert_eq!(face_count(&e), 6);
        assert!(e.is_internally_triangulated());
        let mut interior = e.interior_vertices();
        interior.sort_unstable();
        assert_eq!(interior, vec![1, 3]);
    }

    #[test]
    fn diamond_shape() {
        let e = PlanarEmbedding::diamond();
        assert_eq!(face_count(&e), 3);
        assert!(e.is_internally_triangulated());
        assert!(e.interior_vertices().is_empty());
    }

    #[test]
    fn trees_have_one_face() {
        for n in 1..=6 {
            let e = PlanarEmbedding::path(n).unwrap();
            assert_eq!(face_count(&e), 1);
            assert!(e.is_tree());
        }
        for k in 1..=5 {
            let e = PlanarEmbedding::star(k).unwrap();
            assert_eq!(face_count(&e), 1);
            assert_eq!(e.outer_face().len(), 2 * k);
        }
    }

    #[test]
    fn cycle_triangulation_yields_wheel() {
        let e = PlanarEmbedding::cycle(5).unwrap();
        assert_eq!(face_count(&e), 2);
        let (t, helpers) = e.triangulate_internal().unwrap();
        assert_eq!(helpers, vec![5]);
        assert!(t.is_internally_triangulated());
        assert_eq!(t.graph().degree(5), 5);
        assert_eq!(t.interior_vertices(), vec![5]);
    }

    #[test]
    fn triangulated_inputs_pass_through() {
        let e = PlanarEmbedding::k5_minus_edge();
        let (t, helpers) = e.triangulate_internal().unwrap();
        assert!(helpers.is_empty());
        assert_eq!(t.graph().edge_count(), e.graph().edge_count());
    }

    #[test]
    fn bad_embeddings_rejected() {
        // K4 with a cyclic-order mix that breaks planarity of the rotation
        let g = Graph::complete(4);
        let bad = PlanarEmbedding::new(
            g.clone(),
            vec![vec![1, 2, 3], vec![2, 3, 0], vec![3, 0, 1], vec![0, 1, 2]],
            vec![0, 2, 1],
        );
        assert!(bad.is_err());

        // disconnected
        let mut h = Graph::empty(4);
        h.add_edge(0, 1);
        h.add_edge(2, 3);
        assert!(PlanarEmbedding::new(
            h,
            vec![vec![1], vec![0], vec![3], vec![2]],
            vec![0, 1],
        )
        .is_err());

        // wrong outer face
        let g3 = Graph::complete(3);
        assert!(PlanarEmbedding::new(
            g3,
            vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            vec![0, 1], // not a face
        )
        .is_err());
    }

    #[test]
    fn rotation_must_match_neighborhoods() {
        let g = Graph::complete(3);
        assert!(PlanarEmbedding::new(
            g,
            vec![vec![1, 1], vec![2, 0], vec![0, 1]],
            vec![0, 2, 1],
        )
        .is_err());
    }
}
