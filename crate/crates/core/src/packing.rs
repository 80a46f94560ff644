//! Tangency circle packings for small plane graphs.
//!
//! Triangulated disks go through the classical angle-sum radius iteration:
//! outer-face radii are pinned, every interior radius is repeatedly moved to
//! the value that would make its neighbor angle sum exactly 2*pi if all its
//! neighbors had one uniform radius. Trees are laid out directly by a
//! shrinking wedge walk. Either way the result is normalized so the
//! smallest circle has radius 1.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use crate::embedding::PlanarEmbedding;
use crate::error::ParamError;
use crate::graph::Graph;

type Vec2 = (f64, f64);

fn add(a: Vec2, b: Vec2) -> Vec2 {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    (a.0 - b.0, a.1 - b.1)
}

fn scale(a: Vec2, s: f64) -> Vec2 {
    (a.0 * s, a.1 * s)
}

fn norm(a: Vec2) -> f64 {
    a.0.hypot(a.1)
}

fn rot(a: Vec2, ang: f64) -> Vec2 {
    let (s, c) = ang.sin_cos();
    (a.0 * c - a.1 * s, a.0 * s + a.1 * c)
}

/// Angle at the center of a circle of radius r in the triangle formed with
/// two tangent neighbors of radii a and b (all three mutually tangent).
fn corner_angle(r: f64, a: f64, b: f64) -> f64 {
    2.0 * ((a * b / ((r + a) * (r + b))).sqrt()).asin()
}

#[derive(Clone, Debug)]
pub struct CirclePacking {
    centers: Vec<Vec2>,
    radii: Vec<f64>,
    /// tangent pairs i < j with the touching point
    tangencies: Vec<(usize, usize, Vec2)>,
}

#[derive(Serialize, Deserialize)]
struct CircleJson {
    v: usize,
    x: f64,
    y: f64,
    r: f64,
}

#[derive(Serialize, Deserialize)]
struct PackingJson {
    circles: Vec<CircleJson>,
    tangency: Vec<(usize, usize, f64, f64)>,
}

impl CirclePacking {
    /// Tangency points are recomputed from centers and radii; the edge list
    /// fixes which pairs are meant to touch.
    pub fn from_parts(centers: Vec<Vec2>, radii: Vec<f64>, edges: &[(usize, usize)]) -> Self {
        let tangencies = edges
            .iter()
            .map(|&(i, j)| {
                let (i, j) = (i.min(j), i.max(j));
                (i, j, tangency_formula(centers[i], radii[i], centers[j]))
            })
            .collect();
        CirclePacking { centers, radii, tangencies }
    }

    /// Two unit circles touching at the origin's right, the smallest packing
    /// the blow-up construction consumes.
    pub fn tangent_pair() -> Self {
        CirclePacking::from_parts(vec![(0.0, 0.0), (2.0, 0.0)], vec![1.0, 1.0], &[(0, 1)])
    }

    pub fn n(&self) -> usize {
        self.radii.len()
    }

    pub fn center(&self, v: usize) -> Vec2 {
        self.centers[v]
    }

    pub fn radius(&self, v: usize) -> f64 {
        self.radii[v]
    }

    pub fn tangencies(&self) -> &[(usize, usize, Vec2)] {
        &self.tangencies
    }

    pub fn tangency_point(&self, i: usize, j: usize) -> Option<Vec2> {
        let (i, j) = (i.min(j), i.max(j));
        self.tangencies
            .iter()
            .find(|&&(a, b, _)| (a, b) == (i, j))
            .map(|&(_, _, t)| t)
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        CirclePacking {
            centers: self.centers.iter().map(|&c| scale(c, lambda)).collect(),
            radii: self.radii.iter().map(|r| r * lambda).collect(),
            tangencies: self
                .tangencies
                .iter()
                .map(|&(i, j, t)| (i, j, scale(t, lambda)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let circles = (0..self.n())
            .map(|v| CircleJson {
                v,
                x: self.centers[v].0,
                y: self.centers[v].1,
                r: self.radii[v],
            })
            .collect();
        let tangency = self
            .tangencies
            .iter()
            .map(|&(i, j, t)| (i, j, t.0, t.1))
            .collect();
        serde_json::to_string(&PackingJson { circles, tangency }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, ParamError> {
        let j: PackingJson = serde_json::from_str(text)
            .map_err(|e| ParamError::new(format!("bad packing json: {}", e)))?;
        let n = j.circles.len();
        let mut centers = vec![(0.0, 0.0); n];
        let mut radii = vec![0.0; n];
        for c in &j.circles {
            if c.v >= n {
                return Err(ParamError::new(format!("circle id {} out of range", c.v)));
            }
            centers[c.v] = (c.x, c.y);
            radii[c.v] = c.r;
        }
        let tangencies = j
            .tangency
            .into_iter()
            .map(|(i, j, tx, ty)| (i, j, (tx, ty)))
            .collect();
        Ok(CirclePacking { centers, radii, tangencies })
    }
}

fn tangency_formula(oi: Vec2, ri: f64, oj: Vec2) -> Vec2 {
    let d = sub(oj, oi);
    add(oi, scale(d, ri / norm(d)))
}

/// Computes a tangency packing of the embedded graph: circles touch exactly
/// along edges, stay apart otherwise, smallest radius 1. Accepts trees and
/// graphs whose internal faces are (or can be star-triangulated into)
/// triangles bounded by a simple outer cycle.
pub fn pack(e: &PlanarEmbedding, tol: f64) -> Result<CirclePacking, ParamError> {
    if !(tol > 0.0) {
        return Err(ParamError::new("tolerance must be positive"));
    }
    let n = e.graph().n();
    if n < 3 {
        return Err(ParamError::new("packing needs at least 3 circles"));
    }
    let mut p = if e.is_tree() {
        pack_tree(e)?
    } else {
        let (refined, helpers) = e.triangulate_internal()?;
        let full = pack_disk(&refined, tol)?;
        drop_helpers(full, n, e.graph(), &helpers)
    };
    let min_r = p.radii.iter().cloned().fold(f64::INFINITY, f64::min);
    p = p.scaled(1.0 / min_r);
    Ok(p)
}

fn drop_helpers(p: CirclePacking, n: usize, g: &Graph, helpers: &[usize]) -> CirclePacking {
    debug_assert!(helpers.iter().all(|&h| h >= n));
    let centers = p.centers[..n].to_vec();
    let radii = p.radii[..n].to_vec();
    CirclePacking::from_parts(centers, radii, &g.edges())
}

fn pack_disk(e: &PlanarEmbedding, tol: f64) -> Result<CirclePacking, ParamError> {
    let g = e.graph();
    let n = g.n();
    if !e.is_internally_triangulated() {
        return Err(ParamError::new("internal faces must be triangles"));
    }
    let outer = e.outer_face();
    {
        let mut o = outer.to_vec();
        o.sort_unstable();
        o.dedup();
        if o.len() != outer.len() {
            return Err(ParamError::new("outer face must be a simple cycle"));
        }
    }
    let interior: Vec<usize> = e.interior_vertices();

    // radius iteration; boundary circles stay at radius 1
    let mut r = vec![1.0f64; n];
    for &v in &interior {
        r[v] = 0.5;
    }
    let angle_sum = |r: &[f64], v: usize| -> f64 {
        let rot_v = &e.rotation()[v];
        let k = rot_v.len();
        (0..k)
            .map(|t| corner_angle(r[v], r[rot_v[t]], r[rot_v[(t + 1) % k]]))
            .sum()
    };
    let angle_tol = (tol * 1e-3).min(1e-12);
    for _ in 0..200_000 {
        let mut sweep_residual = 0.0f64;
        for &v in &interior {
            let k = e.rotation()[v].len() as f64;
            let theta = angle_sum(&r, v);
            sweep_residual = sweep_residual.max((theta - 2.0 * PI).abs());
            let beta = (theta / (2.0 * k)).sin();
            let uniform = beta * r[v] / (1.0 - beta);
            let s = (PI / k).sin();
            r[v] = uniform * (1.0 - s) / s;
        }
        if sweep_residual < angle_tol {
            break;
        }
    }
    if !interior.is_empty() {
        let residual = interior
            .iter()
            .map(|&v| (angle_sum(&r, v) - 2.0 * PI).abs())
            .fold(0.0, f64::max);
        if residual >= angle_tol {
            return Err(ParamError::new(format!(
                "packing iteration did not converge, angle residual {:.3e}",
                residual
            )));
        }
    }

    // layout by breadth-first traversal of the internal triangles
    let faces: Vec<[usize; 3]> = e
        .internal_faces()
        .map(|f| [f[0], f[1], f[2]])
        .collect();
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for t in 0..3 {
            let (a, b) = (f[t], f[(t + 1) % 3]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(fi);
        }
    }
    let mut pos: Vec<Option<Vec2>> = vec![None; n];
    let f0 = faces[0];
    pos[f0[0]] = Some((0.0, 0.0));
    pos[f0[1]] = Some((r[f0[0]] + r[f0[1]], 0.0));
    place_third(&mut pos, &r, f0[0], f0[1], f0[2]);
    let mut seen = vec![false; faces.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(fi) = queue.pop_front() {
        let f = faces[fi];
        for t in 0..3 {
            // rotate the face so the possibly-unplaced vertex comes last,
            // keeping the counterclockwise order
            let (a, b, c) = (f[t], f[(t + 1) % 3], f[(t + 2) % 3]);
            if pos[c].is_none() {
                place_third(&mut pos, &r, a, b, c);
            }
            let key = (a.min(b), a.max(b));
            for &nf in &by_edge[&key] {
                if !seen[nf] {
                    seen[nf] = true;
                    queue.push_back(nf);
                }
            }
        }
    }
    if pos.iter().any(|p| p.is_none()) {
        return Err(ParamError::new("layout did not reach every vertex"));
    }
    let centers: Vec<Vec2> = pos.into_iter().map(|p| p.unwrap()).collect();
    Ok(CirclePacking::from_parts(centers, r, &g.edges()))
}

/// In a counterclockwise triangle (a, b, c) with a and b placed, c sits to
/// the left of a->b, one corner angle around from b.
fn place_third(pos: &mut [Option<Vec2>], r: &[f64], a: usize, b: usize, c: usize) {
    let (oa, ob) = (pos[a].unwrap(), pos[b].unwrap());
    let alpha = corner_angle(r[a], r[b], r[c]);
    let dir = scale(sub(ob, oa), 1.0 / norm(sub(ob, oa)));
    pos[c] = Some(add(oa, scale(rot(dir, alpha), r[a] + r[c])));
}

fn pack_tree(e: &PlanarEmbedding) -> Result<CirclePacking, ParamError> {
    let g = e.graph();
    let n = g.n();
    let mut lambda = 0.45;
    for _ in 0..60 {
        let mut radii = vec![0.0f64; n];
        let mut centers = vec![(0.0, 0.0); n];
        radii[0] = 1.0;
        // depth-first wedge walk from the root
        let mut stack: Vec<(usize, usize, f64)> = Vec::new(); // (v, parent, incoming dir)
        stack.push((0, usize::MAX, 0.0));
        while let Some((v, parent, theta)) = stack.pop() {
            let children: Vec<usize> = g
                .neighbors(v)
                .iter()
                .filter(|&u| u != parent)
                .collect();
            let k = children.len();
            if k == 0 {
                continue;
            }
            for (j, &c) in children.iter().enumerate() {
                let dir = if parent == usize::MAX {
                    2.0 * PI * j as f64 / k as f64
                } else {
                    let spread = (0.95 * PI).min(k as f64 * 2.0 * PI / (k as f64 + 2.0));
                    let step = spread / k as f64;
                    theta + (j as f64 - (k as f64 - 1.0) / 2.0) * step
                };
                radii[c] = radii[v] * lambda;
                centers[c] = add(centers[v], scale((dir.cos(), dir.sin()), radii[v] + radii[c]));
                stack.push((c, v, dir));
            }
        }
        let ok = (0..n).all(|u| {
            (u + 1..n).all(|v| {
                let d = norm(sub(centers[u], centers[v]));
                let s = radii[u] + radii[v];
                if g.adjacent(u, v) {
                    (d - s).abs() < 1e-9 * s
                } else {
                    d - s > 1e-6 * s
                }
            })
        });
        if ok {
            return Ok(CirclePacking::from_parts(centers, radii, &g.edges()));
        }
        lambda *= 0.7;
    }
    Err(ParamError::new("tree layout failed to separate subtrees"))
}

/// Minimum angular gap between cyclically consecutive tangency directions,
/// taken over circles with at least two tangencies. When every circle has
/// exactly one tangency the full 2*pi gap is capped to 1, matching the
/// strict upper bound the downstream construction puts on this quantity.
pub fn min_gap_angle(p: &CirclePacking) -> Result<f64, ParamError> {
    if p.tangencies.is_empty() {
        return Err(ParamError::new("packing has no tangencies"));
    }
    let mut angles: Vec<Vec<f64>> = vec![Vec::new(); p.n()];
    for &(i, j, t) in &p.tangencies {
        let di = sub(t, p.centers[i]);
        angles[i].push(di.1.atan2(di.0));
        let dj = sub(t, p.centers[j]);
        angles[j].push(dj.1.atan2(dj.0));
    }
    let mut best = f64::INFINITY;
    for a in angles.iter_mut().filter(|a| a.len() >= 2) {
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for w in a.windows(2) {
            best = best.min(w[1] - w[0]);
        }
        best = best.min(2.0 * PI - (a[a.len() - 1] - a[0]));
    }
    if best.is_infinite() {
        return Ok(1.0);
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub enum PackingViolation {
    CountMismatch { expected: usize, found: usize },
    RadiusNotPositive { v: usize, r: f64 },
    Tangency { i: usize, j: usize, residual: f64 },
    Overlap { i: usize, j: usize, margin: f64 },
    TangencyPoint { i: usize, j: usize, dist: f64 },
    MissingTangencyEntry { i: usize, j: usize },
}

#[derive(Clone, Debug)]
pub struct PackingReport {
    pub violations: Vec<PackingViolation>,
    /// true when the smallest radius is 1 within tol, the solver's output
    /// normalization; scale copies remain valid packings, so this is
    /// informational rather than a violation
    pub normalized: bool,
}

impl PackingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validates a packing against the embedded graph from raw coordinates:
/// every edge touches within tol, every non-edge clears r_i + r_j by more
/// than 10*tol, and each recorded tangency point sits on the center segment
/// at distance r_i. Written independently of the solver.
pub fn check_packing(e: &PlanarEmbedding, p: &CirclePacking, tol: f64) -> PackingReport {
    let g = e.graph();
    let mut violations = Vec::new();
    if g.n() != p.n() {
        return PackingReport {
            violations: vec![PackingViolation::CountMismatch { expected: g.n(), found: p.n() }],
            normalized: false,
        };
    }
    for v in 0..p.n() {
        if !(p.radii[v] > 0.0) {
            violations.push(PackingViolation::RadiusNotPositive { v, r: p.radii[v] });
        }
    }
    for i in 0..p.n() {
        for j in i + 1..p.n() {
            let d = norm(sub(p.centers[j], p.centers[i]));
            let s = p.radii[i] + p.radii[j];
            if g.adjacent(i, j) {
                if (d - s).abs() > tol {
                    violations.push(PackingViolation::Tangency { i, j, residual: (d - s).abs() });
                }
                match p.tangency_point(i, j) {
                    None => violations.push(PackingViolation::MissingTangencyEntry { i, j }),
                    Some(t) => {
                        let expect = tangency_formula(p.centers[i], p.radii[i], p.centers[j]);
                        let dist = norm(sub(t, expect));
                        if dist > tol {
                            violations.push(PackingViolation::TangencyPoint { i, j, dist });
                        }
                    }
                }
            } else if d - s <= 10.0 * tol {
                violations.push(PackingViolation::Overlap { i, j, margin: d - s });
            }
        }
    }
    let min_r = p.radii.iter().cloned().fold(f64::INFINITY, f64::min);
    PackingReport { violations, normalized: (min_r - 1.0).abs() <= tol }
}
