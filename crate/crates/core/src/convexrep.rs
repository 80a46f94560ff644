//! Blowing a packed plane graph up into convex point-set hulls.
//!
//! Each template vertex i becomes a clique of n_i hull sets. All sets of
//! clique i contain the disk center o_i. For every template edge i < j a
//! short arc on the boundary of D_i around the tangency point t_ij carries
//! one point per distinct nonempty neighborhood trace A of the j-side
//! vertices; that point joins P_im exactly for m in A and joins P_jM for
//! every M whose trace is A. Adjacent blown vertices therefore share a
//! point, and for a sufficiently short arc (length delta < epsilon^2/100,
//! epsilon the minimal tangency gap angle) the hulls of non-adjacent blown
//! vertices stay disjoint. Disjointness is never taken on faith: the
//! builder re-verifies the whole intersection pattern in exact rational
//! arithmetic and halves delta on any mismatch.

use num::{BigInt, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::embedding::PlanarEmbedding;
use crate::error::ParamError;
use crate::geom::{
    convex_hull, dyadic, hulls_intersect, rat_from_i64, rationalize, QPoint, Rat,
};
use crate::graph::Graph;
use crate::packing::{min_gap_angle, pack, CirclePacking};
use crate::partition::find_great_partition;

// one shared dyadic grid keeps every hull coordinate on a single small
// denominator, which lets the verifier's predicates run on machine integers
const COORD_SHIFT: u32 = 44;
const MAX_DELTA_RETRIES: u32 = 6;

#[derive(Clone, Debug)]
pub struct BlowupSpec {
    template: PlanarEmbedding,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    /// cross[(i, j)][m][M] for template edges i < j
    cross: BTreeMap<(usize, usize), Vec<Vec<bool>>>,
}

impl BlowupSpec {
    /// Cross matrices may omit template edges entirely (no cross edges
    /// there); listing a non-edge of the template is an error.
    pub fn new(
        template: PlanarEmbedding,
        sizes: Vec<usize>,
        cross: BTreeMap<(usize, usize), Vec<Vec<bool>>>,
    ) -> Result<Self, ParamError> {
        let tn = template.graph().n();
        if sizes.len() != tn {
            return Err(ParamError::new("one size per template vertex required"));
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(ParamError::new("every clique size must be at least 1"));
        }
        for (&(i, j), mat) in &cross {
            if i >= j || j >= tn || !template.graph().adjacent(i, j) {
                return Err(ParamError::new(format!(
                    "cross edges allowed only on template edges, got ({}, {})",
                    i, j
                )));
            }
            if mat.len() != sizes[i] || mat.iter().any(|row| row.len() != sizes[j]) {
                return Err(ParamError::new(format!(
                    "cross matrix for ({}, {}) has wrong shape",
                    i, j
                )));
            }
        }
        let mut offsets = vec![0; tn];
        for i in 1..tn {
            offsets[i] = offsets[i - 1] + sizes[i - 1];
        }
        Ok(BlowupSpec { template, sizes, offsets, cross })
    }

    pub fn template(&self) -> &PlanarEmbedding {
        &self.template
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.offsets.last().map_or(0, |o| o + self.sizes[self.sizes.len() - 1])
    }

    pub fn index(&self, i: usize, m: usize) -> usize {
        self.offsets[i] + m
    }

    pub fn part_of(&self, v: usize) -> (usize, usize) {
        let i = match self.offsets.binary_search(&v) {
            Ok(exact) => exact,
            Err(ins) => ins - 1,
        };
        // offsets of empty-free sizes are strictly increasing, but repeated
        // values cannot occur since sizes are >= 1
        (i, v - self.offsets[i])
    }

    pub fn cross_edge(&self, i: usize, m: usize, j: usize, mm: usize) -> bool {
        if i == j {
            return m != mm;
        }
        let (a, am, b, bm) = if i < j { (i, m, j, mm) } else { (j, mm, i, m) };
        self.cross.get(&(a, b)).map_or(false, |mat| mat[am][bm])
    }

    /// The graph the representation must realize: cliques within template
    /// vertices, listed cross edges across template edges, nothing else.
    pub fn blown_graph(&self) -> Graph {
        let n = self.total();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                let (i, m) = self.part_of(u);
                let (j, mm) = self.part_of(v);
                if self.cross_edge(i, m, j, mm) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

/// Random spec over the four stock templates with clique sizes up to 4 and
/// fair-coin cross edges.
pub fn random_blowup_spec(rng: &mut impl rand::Rng) -> BlowupSpec {
    let template = match rng.gen_range(0..4) {
        0 => PlanarEmbedding::triangle(),
        1 => PlanarEmbedding::complete4(),
        2 => PlanarEmbedding::k5_minus_edge(),
        _ => PlanarEmbedding::wheel(4).unwrap(),
    };
    let tn = template.graph().n();
    let sizes: Vec<usize> = (0..tn).map(|_| rng.gen_range(1..=4)).collect();
    let mut cross = BTreeMap::new();
    for (i, j) in template.graph().edges() {
        let mat: Vec<Vec<bool>> = (0..sizes[i])
            .map(|_| (0..sizes[j]).map(|_| rng.gen_bool(0.5)).collect())
            .collect();
        cross.insert((i, j), mat);
    }
    BlowupSpec::new(template, sizes, cross).unwrap()
}

#[derive(Clone, Debug)]
pub struct ConvexRepresentation {
    /// template-position labels, ordered by blown (or graph) vertex
    pub labels: Vec<String>,
    pub points: Vec<Vec<QPoint>>,
    pub hulls: Vec<Vec<QPoint>>,
    pub epsilon: f64,
    pub delta: Rat,
}

#[derive(Serialize, Deserialize)]
struct RepParamsJson {
    epsilon: f64,
    delta: (i64, i64),
}

#[derive(Serialize, Deserialize)]
struct RepSetJson {
    vertex: String,
    points: Vec<(i64, i64, i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    params: RepParamsJson,
    sets: Vec<RepSetJson>,
}

fn rat_to_i64_pair(r: &Rat) -> Result<(i64, i64), ParamError> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(ParamError::new("coordinate does not fit the json number range")),
    }
}

impl ConvexRepresentation {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    fn from_point_sets(
        labels: Vec<String>,
        points: Vec<Vec<QPoint>>,
        epsilon: f64,
        delta: Rat,
    ) -> Self {
        let hulls = points.iter().map(|p| convex_hull(p)).collect();
        ConvexRepresentation { labels, points, hulls, epsilon, delta }
    }

    pub fn to_json(&self) -> Result<String, ParamError> {
        let sets = self
            .labels
            .iter()
            .zip(&self.points)
            .map(|(label, pts)| {
                let points = pts
                    .iter()
                    .map(|p| {
                        let (xn, xd) = rat_to_i64_pair(&p.x)?;
                        let (yn, yd) = rat_to_i64_pair(&p.y)?;
                        Ok((xn, xd, yn, yd))
                    })
                    .collect::<Result<_, ParamError>>()?;
                Ok(RepSetJson { vertex: label.clone(), points })
            })
            .collect::<Result<_, ParamError>>()?;
        let json = RepJson {
            params: RepParamsJson {
                epsilon: self.epsilon,
                delta: rat_to_i64_pair(&self.delta)?,
            },
            sets,
        };
        Ok(serde_json::to_string(&json).unwrap())
    }

    pub fn from_json(text: &str) -> Result<Self, ParamError> {
        let j: RepJson = serde_json::from_str(text)
            .map_err(|e| ParamError::new(format!("bad representation json: {}", e)))?;
        let mut labels = Vec::new();
        let mut points = Vec::new();
        for set in j.sets {
            labels.push(set.vertex);
            points.push(
                set.points
                    .into_iter()
                    .map(|(xn, xd, yn, yd)| {
                        if xd == 0 || yd == 0 {
                            return Err(ParamError::new("zero denominator in json"));
                        }
                        Ok(QPoint::new(rat_from_i64(xn, xd), rat_from_i64(yn, yd)))
                    })
                    .collect::<Result<_, ParamError>>()?,
            );
        }
        if j.params.delta.1 == 0 {
            return Err(ParamError::new("zero denominator in delta"));
        }
        Ok(ConvexRepresentation::from_point_sets(
            labels,
            points,
            j.params.epsilon,
            rat_from_i64(j.params.delta.0, j.params.delta.1),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepMismatch {
    pub u: usize,
    pub v: usize,
    /// true: edge required but hulls are disjoint; false: hulls meet on a
    /// non-edge
    pub adjacent_in_graph: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepReport {
    pub mismatches: Vec<RepMismatch>,
}

impl RepReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Exact check that pairwise hull intersection reproduces g: every pair is
/// decided in rational arithmetic, no tolerances involved.
pub fn verify_representation(rep: &ConvexRepresentation, g: &Graph) -> Result<RepReport, ParamError> {
    if rep.n() != g.n() {
        return Err(ParamError::new(format!(
            "representation has {} sets but the graph has {} vertices",
            rep.n(),
            g.n()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..g.n())
        .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
        .collect();
    let mut mismatches: Vec<RepMismatch> = pairs
        .par_iter()
        .filter_map(|&(u, v)| {
            let meet = hulls_intersect(&rep.hulls[u], &rep.hulls[v]);
            (meet != g.adjacent(u, v)).then_some(RepMismatch {
                u,
                v,
                adjacent_in_graph: g.adjacent(u, v),
            })
        })
        .collect();
    mismatches.sort_by_key(|m| (m.u, m.v));
    Ok(RepReport { mismatches })
}

fn label(i: usize, m: usize) -> String {
    format!("v_{}_{}", i + 1, m + 1)
}

/// One construction pass at a fixed delta, without verification.
pub fn build_representation_with_delta(
    spec: &BlowupSpec,
    p: &CirclePacking,
    epsilon: f64,
    delta: &Rat,
) -> Result<ConvexRepresentation, ParamError> {
    let tn = spec.template.graph().n();
    if p.n() != tn {
        return Err(ParamError::new("packing does not match the template"));
    }
    if !delta.is_positive() {
        return Err(ParamError::new("delta must be positive"));
    }
    let n = spec.total();
    let mut labels = vec![String::new(); n];
    let mut points: Vec<Vec<QPoint>> = vec![Vec::new(); n];
    for i in 0..tn {
        let (cx, cy) = p.center(i);
        let center = QPoint::new(dyadic(cx, COORD_SHIFT), dyadic(cy, COORD_SHIFT));
        for m in 0..spec.sizes[i] {
            let v = spec.index(i, m);
            labels[v] = label(i, m);
            points[v].push(center.clone());
        }
    }
    let delta_f = delta.to_f64().unwrap();
    for (i, j) in spec.template.graph().edges() {
        let t = p
            .tangency_point(i, j)
            .ok_or_else(|| ParamError::new(format!("packing lacks tangency {}-{}", i, j)))?;
        let (ox, oy) = p.center(i);
        let ri = p.radius(i);
        let phi = (t.1 - oy).atan2(t.0 - ox);
        let arc = delta_f / ri;
        // nonempty traces of the j-side vertices on clique i, in a fixed
        // canonical order
        let mut traces: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for mm in 0..spec.sizes[j] {
            let tr: Vec<usize> = (0..spec.sizes[i])
                .filter(|&m| spec.cross_edge(i, m, j, mm))
                .collect();
            if !tr.is_empty() {
                traces.entry(tr).or_default().push(mm);
            }
        }
        let k_total = traces.len();
        for (k, (tr, js)) in traces.iter().enumerate() {
            // offsets stay strictly inside the lower half of the arc, never
            // hitting the tangency point shared with D_j
            let theta = phi - arc / 2.0
                + (k as f64 + 1.0) * arc / (2.0 * k_total as f64 + 1.0);
            let pt = QPoint::new(
                dyadic(ox + ri * theta.cos(), COORD_SHIFT),
                dyadic(oy + ri * theta.sin(), COORD_SHIFT),
            );
            for &m in tr {
                points[spec.index(i, m)].push(pt.clone());
            }
            for &mm in js {
                points[spec.index(j, mm)].push(pt.clone());
            }
        }
    }
    Ok(ConvexRepresentation::from_point_sets(
        labels,
        points,
        epsilon,
        delta.clone(),
    ))
}

/// Full construction: derives epsilon from the packing's minimal tangency
/// gap, starts at delta = epsilon^2 / 101 and halves until the exact
/// verifier accepts the intersection pattern.
pub fn build_representation(
    spec: &BlowupSpec,
    p: &CirclePacking,
) -> Result<ConvexRepresentation, ParamError> {
    let epsilon = if spec.template.graph().edge_count() == 0 {
        1.0
    } else {
        min_gap_angle(p)?.min(1.0)
    };
    let eps_r = rationalize(epsilon, 1 << 24);
    let mut delta = &eps_r * &eps_r / Rat::from_integer(BigInt::from(101));
    let expected = spec.blown_graph();
    let mut last = 0;
    for _ in 0..=MAX_DELTA_RETRIES {
        let rep = build_representation_with_delta(spec, p, epsilon, &delta)?;
        let report = verify_representation(&rep, &expected)?;
        if report.ok() {
            return Ok(rep);
        }
        last = report.mismatches.len();
        delta /= Rat::from_integer(BigInt::from(2));
    }
    Err(ParamError::new(format!(
        "point placement failed after {} delta halvings ({} mismatched pairs)",
        MAX_DELTA_RETRIES, last
    )))
}

/// Builds and exactly verifies a convex representation of a canonical
/// graph, with sets indexed by the graph's own vertices. Returns None when
/// the graph has no great partition; an internal failure on a great graph
/// is an error, since the construction is guaranteed to succeed.
pub fn represent_canonical(g: &Graph) -> Result<Option<ConvexRepresentation>, ParamError> {
    let part = match find_great_partition(g) {
        Some(p) => p,
        None => return Ok(None),
    };
    let n = g.n();
    if n == 0 {
        return Ok(Some(ConvexRepresentation::from_point_sets(
            Vec::new(),
            Vec::new(),
            1.0,
            rat_from_i64(1, 101),
        )));
    }
    let cliques: Vec<Vec<usize>> = [&part.x1, &part.x2, &part.x3]
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.to_vec())
        .collect();
    let halves: Vec<Vec<usize>> = [&part.x4a, &part.x4b]
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.to_vec())
        .collect();
    let (s, t) = (cliques.len(), halves.len());

    // the two halves with no clique parts need no packing at all: two
    // distant single-point families
    if s == 0 && t == 2 {
        let mut labels = vec![String::new(); n];
        let mut points = vec![Vec::new(); n];
        for (i, half) in halves.iter().enumerate() {
            let center = QPoint::from_ints(10 * i as i64, 0);
            for (m, &v) in half.iter().enumerate() {
                labels[v] = label(i, m);
                points[v].push(center.clone());
            }
        }
        let rep = ConvexRepresentation::from_point_sets(labels, points, 1.0, rat_from_i64(1, 101));
        let report = verify_representation(&rep, g)?;
        if !report.ok() {
            return Err(ParamError::new(
                "two-halves representation failed exact verification",
            ));
        }
        return Ok(Some(rep));
    }

    // template order: cliques first, halves last; the halves land on the
    // unique nonadjacent template pair when both are present
    let order: Vec<Vec<usize>> = if t == 2 && s == 1 {
        vec![halves[0].clone(), cliques[0].clone(), halves[1].clone()]
    } else {
        let mut o = cliques.clone();
        o.extend(halves.iter().cloned());
        o
    };
    let parts = order.len();
    let (template, packing) = match (parts, t) {
        (1, _) => {
            let e = PlanarEmbedding::path(1).unwrap();
            let p = CirclePacking::from_parts(vec![(0.0, 0.0)], vec![1.0], &[]);
            (e, p)
        }
        (2, _) => (PlanarEmbedding::path(2).unwrap(), CirclePacking::tangent_pair()),
        (3, 0) | (3, 1) => {
            let e = PlanarEmbedding::triangle();
            let p = pack(&e, 1e-10)?;
            (e, p)
        }
        (3, 2) => {
            let e = PlanarEmbedding::path(3).unwrap();
            let p = pack(&e, 1e-10)?;
            (e, p)
        }
        (4, 0) | (4, 1) => {
            let e = PlanarEmbedding::complete4();
            let p = pack(&e, 1e-10)?;
            (e, p)
        }
        (4, 2) => {
            let e = PlanarEmbedding::diamond();
            let p = pack(&e, 1e-10)?;
            (e, p)
        }
        (5, 2) => {
            let e = PlanarEmbedding::k5_minus_edge();
            let p = pack(&e, 1e-10)?;
            (e, p)
        }
        _ => unreachable!("at most three cliques and two halves"),
    };
    debug_assert_eq!(template.graph().n(), parts);

    let sizes: Vec<usize> = order.iter().map(|p| p.len()).collect();
    let mut cross = BTreeMap::new();
    for (i, j) in template.graph().edges() {
        let mat: Vec<Vec<bool>> = order[i]
            .iter()
            .map(|&u| order[j].iter().map(|&v| g.adjacent(u, v)).collect())
            .collect();
        cross.insert((i, j), mat);
    }
    let spec = BlowupSpec::new(template, sizes, cross)?;
    let blown = build_representation(&spec, &packing)?;

    // permute the blown sets into the graph's own vertex order
    let mut labels = vec![String::new(); n];
    let mut points = vec![Vec::new(); n];
    for (i, members) in order.iter().enumerate() {
        for (m, &v) in members.iter().enumerate() {
            let b = spec.index(i, m);
            labels[v] = blown.labels[b].clone();
            points[v] = blown.points[b].clone();
        }
    }
    let rep =
        ConvexRepresentation::from_point_sets(labels, points, blown.epsilon, blown.delta.clone());
    let report = verify_representation(&rep, g)?;
    if !report.ok() {
        return Err(ParamError::new(format!(
            "representation of a great graph failed exact verification ({} pairs)",
            report.mismatches.len()
        )));
    }
    Ok(Some(rep))
}
