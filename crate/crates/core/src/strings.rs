//! Polyline curves recovered from a convex representation.
//!
//! Each vertex curve visits one exact witness point per intersecting hull
//! pair, ordered by increasing x (ties by y). Two such curves meet only
//! near witnesses both of them visit, so the intersection graph of the
//! curves equals the hull intersection graph, and every pair of curves
//! crosses in finitely many points. Both facts are re-checked exactly
//! before a representation is returned.

use num::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeSet;

use crate::convexrep::ConvexRepresentation;
use crate::error::ParamError;
use crate::geom::{intersection_witness, polyline_intersections, segment_intersection, QPoint, Rat, SegIntersection};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct StringRepresentation {
    /// per-vertex polyline, vertices in increasing (x, y) order
    pub curves: Vec<Vec<QPoint>>,
    /// distinct common points for every intersecting pair u < v
    pub crossings: Vec<(usize, usize, usize)>,
}

impl StringRepresentation {
    pub fn n(&self) -> usize {
        self.curves.len()
    }

    pub fn crossing_count(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.crossings
            .iter()
            .find(|&&(a, b, _)| (a, b) == key)
            .map_or(0, |&(_, _, c)| c)
    }

    pub fn max_crossings(&self) -> usize {
        self.crossings.iter().map(|&(_, _, c)| c).max().unwrap_or(0)
    }

    /// Intersection graph of the curves, recomputed from the polylines.
    pub fn intersection_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        for &(u, v, _) in &self.crossings {
            g.add_edge(u, v);
        }
        g
    }

    /// Curves as exact coordinate quadruples plus the crossing counts.
    pub fn to_json(&self) -> Result<String, ParamError> {
        #[derive(Serialize)]
        struct StringsJson {
            curves: Vec<Vec<(i64, i64, i64, i64)>>,
            crossings: Vec<(usize, usize, usize)>,
        }
        let curves = self
            .curves
            .iter()
            .map(|curve| {
                curve
                    .iter()
                    .map(|p| {
                        match (
                            p.x.numer().to_i64(),
                            p.x.denom().to_i64(),
                            p.y.numer().to_i64(),
                            p.y.denom().to_i64(),
                        ) {
                            (Some(a), Some(b), Some(c), Some(d)) => Ok((a, b, c, d)),
                            _ => Err(ParamError::new("coordinate does not fit the json range")),
                        }
                    })
                    .collect::<Result<_, ParamError>>()
            })
            .collect::<Result<_, ParamError>>()?;
        Ok(serde_json::to_string(&StringsJson { curves, crossings: self.crossings.clone() })
            .unwrap())
    }
}

/// Turns hulls into polylines through the lex-least witness points and
/// proves, exactly, that nothing was gained or lost: the curve intersection
/// graph equals the hull intersection graph, no two curves overlap along a
/// segment, and every pair meets in at most 2n points.
///
/// Distinct pairs can be forced to the same witness: the blow-up shares one
/// arc point among every part member with the same trace, and that point is
/// often the whole pairwise intersection. Two curves through two shared
/// witnesses in a row traverse the identical segment, and collinear witness
/// triples can make different segments overlap partially. Every segment
/// that overlaps a segment of an earlier curve detours through a small bend
/// off its midpoint. Bends shrink geometrically until the exact checks
/// accept, which keeps the construction deterministic.
pub fn strings_from_convex(
    rep: &ConvexRepresentation,
) -> Result<StringRepresentation, ParamError> {
    let n = rep.n();
    let mut witness_sets: Vec<BTreeSet<QPoint>> = vec![BTreeSet::new(); n];
    let mut hull_adjacent = vec![false; n * n];
    for u in 0..n {
        for v in u + 1..n {
            if let Some(w) = intersection_witness(&rep.hulls[u], &rep.hulls[v]) {
                witness_sets[u].insert(w.clone());
                witness_sets[v].insert(w);
                hull_adjacent[u * n + v] = true;
            }
        }
    }
    let base: Vec<Vec<QPoint>> = (0..n)
        .map(|v| {
            if witness_sets[v].is_empty() {
                // isolated curve: any single point of the set will do
                let p = rep.points[v]
                    .iter()
                    .min()
                    .ok_or_else(|| ParamError::new(format!("vertex {} has no points", v)))?
                    .clone();
                Ok(vec![p])
            } else {
                // BTreeSet iterates in QPoint order, which is exactly the
                // required x-then-y order
                Ok(witness_sets[v].iter().cloned().collect())
            }
        })
        .collect::<Result<_, ParamError>>()?;

    // exact scan for positive-length overlaps between base segments; each
    // offending pair flags the later curve's segment for a detour, so every
    // overlapping pair has at least one member bent
    let mut flagged: BTreeSet<(usize, usize)> = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            for (j, wv) in base[v].windows(2).enumerate() {
                for wu in base[u].windows(2) {
                    if let SegIntersection::Overlap(..) =
                        segment_intersection(&wu[0], &wu[1], &wv[0], &wv[1])
                    {
                        flagged.insert((v, j));
                    }
                }
            }
        }
    }

    let mut last_err = None;
    for round in 0..=MAX_BEND_ROUNDS {
        let mut curves = base.clone();
        if round > 0 {
            if flagged.is_empty() {
                // nothing a bend could change, the failure is genuine
                break;
            }
            let mut inserts: Vec<Vec<(usize, QPoint)>> = vec![Vec::new(); n];
            for &(u, j) in &flagged {
                let (a, b) = (&base[u][j], &base[u][j + 1]);
                inserts[u].push((j + 1, bend_point(a, b, u, round)));
            }
            for (u, mut ins) in inserts.into_iter().enumerate() {
                ins.sort_by(|x, y| y.0.cmp(&x.0));
                for (pos, p) in ins {
                    curves[u].insert(pos, p);
                }
            }
        }
        match curve_checks(&curves, &hull_adjacent, n) {
            Ok(crossings) => return Ok(StringRepresentation { curves, crossings }),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap())
}

const MAX_BEND_ROUNDS: usize = 40;

/// A point slightly off the midpoint of a..b, perpendicular to it, with a
/// curve-specific magnitude so no two detours coincide. The offset halves
/// every round and alternates side, converging on the open segment itself.
fn bend_point(a: &QPoint, b: &QPoint, curve: usize, round: usize) -> QPoint {
    let two = Rat::from_integer(2.into());
    let mid_x = (&a.x + &b.x) / &two;
    let mid_y = (&a.y + &b.y) / &two;
    let perp_x = &a.y - &b.y;
    let perp_y = &b.x - &a.x;
    let sign: i64 = if round % 2 == 1 { 1 } else { -1 };
    let denom = (curve as i64 + 2) << (round + 4);
    let scale = Rat::new(sign.into(), denom.into());
    QPoint::new(mid_x + perp_x * &scale, mid_y + perp_y * &scale)
}

fn curve_checks(
    curves: &[Vec<QPoint>],
    hull_adjacent: &[bool],
    n: usize,
) -> Result<Vec<(usize, usize, usize)>, ParamError> {
    let mut crossings = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (pts, overlap) = polyline_intersections(&curves[u], &curves[v]);
            if overlap {
                return Err(ParamError::new(format!(
                    "curves {} and {} overlap along a segment",
                    u, v
                )));
            }
            if pts.is_empty() != !hull_adjacent[u * n + v] {
                return Err(ParamError::new(format!(
                    "curve intersection of {} and {} disagrees with the hulls",
                    u, v
                )));
            }
            if pts.len() > 2 * n {
                return Err(ParamError::new(format!(
                    "curves {} and {} cross {} times, above the 2n bound",
                    u,
                    v,
                    pts.len()
                )));
            }
            if !pts.is_empty() {
                crossings.push((u, v, pts.len()));
            }
        }
    }
    Ok(crossings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexrep::{represent_canonical, verify_representation};
    use crate::sample::random_great_graph;

    #[test]
    fn c5_strings_reproduce_the_cycle() {
        let g = Graph::cycle(5);
        let rep = represent_canonical(&g).unwrap().unwrap();
        let s = strings_from_convex(&rep).unwrap();
        assert_eq!(s.intersection_graph(), g);
        assert!(s.max_crossings() <= 2 * g.n());
        for curve in &s.curves {
            assert!(!curve.is_empty());
            assert!(curve.windows(2).all(|w| w[0] < w[1]), "not sorted");
        }
    }

    #[test]
    fn clique_strings_all_pass_through_the_center() {
        let g = Graph::complete(4);
        let rep = represent_canonical(&g).unwrap().unwrap();
        let s = strings_from_convex(&rep).unwrap();
        assert_eq!(s.intersection_graph(), g);
        // every pairwise witness is the shared center, so each curve is a
        // single point
        assert!(s.curves.iter().all(|c| c.len() == 1));
        assert_eq!(s.max_crossings(), 1);
    }

    #[test]
    fn random_great_graphs_round_trip_to_strings() {
        for seed in 40..46 {
            let (g, _) = random_great_graph(&[2, 2, 1, 3], seed);
            let rep = represent_canonical(&g).unwrap().unwrap();
            assert!(verify_representation(&rep, &g).unwrap().ok());
            let s = strings_from_convex(&rep).unwrap();
            assert_eq!(s.intersection_graph(), g, "seed {}", seed);
            assert!(s.max_crossings() <= 2 * g.n());
        }
    }

    #[test]
    fn isolated_vertices_become_point_curves() {
        // the edgeless triple is great (one singleton clique per part)
        let g = Graph::empty(3);
        let rep = represent_canonical(&g).unwrap().unwrap();
        let s = strings_from_convex(&rep).unwrap();
        assert!(s.curves.iter().all(|c| c.len() == 1));
        assert!(s.crossings.is_empty());
        assert_eq!(s.intersection_graph(), g);
    }
}
