//! Exact rational plane geometry for the verification side.
//!
//! Everything downstream of the float packing is rationalized once and then
//! handled with exact predicates; no epsilon comparisons anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, ToPrimitive, Zero};
use std::collections::BTreeSet;

pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoint {
    pub x: Rat,
    pub y: Rat,
}

impl QPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        QPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QPoint::new(Rat::from_integer(x.into()), Rat::from_integer(y.into()))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap(), self.y.to_f64().unwrap())
    }
}

pub fn rat_from_i64(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Best rational approximation of x with denominator at most max_den,
/// by continued-fraction convergents.
pub fn rationalize(x: f64, max_den: u64) -> Rat {
    assert!(x.is_finite(), "cannot rationalize {}", x);
    assert!(max_den >= 1);
    let neg = x < 0.0;
    let mut x = x.abs();
    let bound = BigInt::from(max_den);
    let (mut h0, mut k0) = (BigInt::zero(), BigInt::one());
    let (mut h1, mut k1) = (BigInt::one(), BigInt::zero());
    for _ in 0..64 {
        let af = x.floor();
        let a = BigInt::from(af as i128);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > bound {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = x - af;
        if frac < 1e-18 {
            break;
        }
        x = 1.0 / frac;
    }
    let r = Rat::new(h1, k1);
    if neg {
        -r
    } else {
        r
    }
}

/// x rounded to the dyadic grid with denominator 2^shift. Points built on
/// one grid share that denominator, which keeps hull predicates on the
/// integer route.
pub fn dyadic(x: f64, shift: u32) -> Rat {
    assert!(x.is_finite(), "cannot rationalize {}", x);
    let scaled = (x * (1u64 << shift) as f64).round();
    Rat::new(BigInt::from(scaled as i128), BigInt::one() << shift)
}

/// Sign of the cross product (b - a) x (c - a): 1 for a left turn,
/// -1 for a right turn, 0 for collinear.
pub fn orient(a: &QPoint, b: &QPoint, c: &QPoint) -> i8 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    match v.numer().sign() {
        num::bigint::Sign::Plus => 1,
        num::bigint::Sign::Minus => -1,
        num::bigint::Sign::NoSign => 0,
    }
}

/// p lies on the closed segment [a, b].
pub fn on_segment(p: &QPoint, a: &QPoint, b: &QPoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Convex hull with strictly convex corners, counterclockwise. Degenerate
/// inputs give a single point or the two extreme points of a segment.
pub fn convex_hull(points: &[QPoint]) -> Vec<QPoint> {
    let mut pts: Vec<QPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<QPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<QPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    if lower.len() == 2 && upper.len() == 2 {
        return vec![lower[0].clone(), lower[1].clone()];
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// p inside or on the boundary of a hull as produced by convex_hull.
pub fn point_in_hull(p: &QPoint, hull: &[QPoint]) -> bool {
    match hull.len() {
        0 => false,
        1 => p == &hull[0],
        2 => on_segment(p, &hull[0], &hull[1]),
        n => (0..n).all(|i| orient(&hull[i], &hull[(i + 1) % n], p) >= 0),
    }
}

fn hull_edges(hull: &[QPoint]) -> Vec<(&QPoint, &QPoint)> {
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![(&hull[0], &hull[1])],
        n => (0..n).map(|i| (&hull[i], &hull[(i + 1) % n])).collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SegIntersection {
    Empty,
    Point(QPoint),
    Overlap(QPoint, QPoint),
}

/// Exact intersection of closed segments [a,b] and [c,d], degenerate
/// segments allowed.
pub fn segment_intersection(a: &QPoint, b: &QPoint, c: &QPoint, d: &QPoint) -> SegIntersection {
    if a == b {
        return if on_segment(a, c, d) {
            SegIntersection::Point(a.clone())
        } else {
            SegIntersection::Empty
        };
    }
    if c == d {
        return if on_segment(c, a, b) {
            SegIntersection::Point(c.clone())
        } else {
            SegIntersection::Empty
        };
    }
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if d1 == 0 && d2 == 0 {
        // collinear; lexicographic order is monotone along a line
        let (lo1, hi1) = if a <= b { (a, b) } else { (b, a) };
        let (lo2, hi2) = if c <= d { (c, d) } else { (d, c) };
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(hi) {
            std::cmp::Ordering::Greater => SegIntersection::Empty,
            std::cmp::Ordering::Equal => SegIntersection::Point(lo.clone()),
            std::cmp::Ordering::Less => SegIntersection::Overlap(lo.clone(), hi.clone()),
        };
    }
    if i32::from(d1) * i32::from(d2) < 0 && i32::from(d3) * i32::from(d4) < 0 {
        // proper crossing: a + t*(b-a) with t from the line equations
        let rx = &b.x - &a.x;
        let ry = &b.y - &a.y;
        let sx = &d.x - &c.x;
        let sy = &d.y - &c.y;
        let denom = &rx * &sy - &ry * &sx;
        let t = ((&c.x - &a.x) * &sy - (&c.y - &a.y) * &sx) / denom;
        return SegIntersection::Point(QPoint::new(&a.x + &t * rx, &a.y + t.clone() * ry));
    }
    // touching cases: some endpoint lies on the other segment
    for (p, s, t) in [(a, c, d), (b, c, d), (c, a, b), (d, a, b)] {
        if on_segment(p, s, t) {
            return SegIntersection::Point(p.clone());
        }
    }
    SegIntersection::Empty
}

/// Lexicographically smallest point of the intersection of two hulls, or
/// None when they are disjoint. Every extreme point of the intersection is
/// a vertex of one hull inside the other or an edge-edge crossing, so the
/// minimum over those candidates is the true minimum of the region.
pub fn intersection_witness(a: &[QPoint], b: &[QPoint]) -> Option<QPoint> {
    let mut best: Option<QPoint> = None;
    let mut offer = |p: QPoint| {
        if best.as_ref().map_or(true, |q| p < *q) {
            best = Some(p);
        }
    };
    for p in a {
        if point_in_hull(p, b) {
            offer(p.clone());
        }
    }
    for p in b {
        if point_in_hull(p, a) {
            offer(p.clone());
        }
    }
    for (a1, a2) in hull_edges(a) {
        for (b1, b2) in hull_edges(b) {
            match segment_intersection(a1, a2, b1, b2) {
                SegIntersection::Empty => {}
                SegIntersection::Point(p) => offer(p),
                SegIntersection::Overlap(p, q) => {
                    offer(p);
                    offer(q);
                }
            }
        }
    }
    best
}

/// Do two hulls (in convex_hull's counterclockwise form) share a point.
/// Exact both ways: when every coordinate fits on one small common
/// denominator the predicates run on machine integers, otherwise the
/// rational witness search decides.
pub fn hulls_intersect(a: &[QPoint], b: &[QPoint]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    match scale_hulls(a, b) {
        Some((ia, ib)) => ihulls_intersect(&ia, &ib),
        None => intersection_witness(a, b).is_some(),
    }
}

type IPoint = (i128, i128);

/// Scales both hulls onto a common integer grid when the coordinates allow
/// it: lcm of the denominators at most 2^52 and scaled magnitudes below
/// 2^60, so every cross product below stays far inside i128. Scaling by a
/// positive constant preserves orientation signs and incidence.
fn scale_hulls(a: &[QPoint], b: &[QPoint]) -> Option<(Vec<IPoint>, Vec<IPoint>)> {
    let mut den = BigInt::one();
    for p in a.iter().chain(b.iter()) {
        den = den.lcm(p.x.denom()).lcm(p.y.denom());
        if den.bits() > 52 {
            return None;
        }
    }
    let scale = |h: &[QPoint]| -> Option<Vec<IPoint>> {
        h.iter()
            .map(|p| {
                let x = (p.x.numer() * (&den / p.x.denom())).to_i128()?;
                let y = (p.y.numer() * (&den / p.y.denom())).to_i128()?;
                (x.abs().max(y.abs()) < (1i128 << 60)).then_some((x, y))
            })
            .collect()
    };
    Some((scale(a)?, scale(b)?))
}

fn iorient(a: IPoint, b: IPoint, c: IPoint) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn ion_segment(p: IPoint, a: IPoint, b: IPoint) -> bool {
    iorient(a, b, p) == 0
        && a.0.min(b.0) <= p.0
        && p.0 <= a.0.max(b.0)
        && a.1.min(b.1) <= p.1
        && p.1 <= a.1.max(b.1)
}

fn ipoint_in_hull(p: IPoint, h: &[IPoint]) -> bool {
    match h.len() {
        0 => false,
        1 => p == h[0],
        2 => ion_segment(p, h[0], h[1]),
        n => (0..n).all(|i| iorient(h[i], h[(i + 1) % n], p) >= 0),
    }
}

fn iedges(h: &[IPoint]) -> Vec<(IPoint, IPoint)> {
    match h.len() {
        0 | 1 => Vec::new(),
        2 => vec![(h[0], h[1])],
        n => (0..n).map(|i| (h[i], h[(i + 1) % n])).collect(),
    }
}

fn ihulls_intersect(a: &[IPoint], b: &[IPoint]) -> bool {
    let bbox = |h: &[IPoint]| {
        h.iter().fold(
            ((i128::MAX, i128::MAX), (i128::MIN, i128::MIN)),
            |(lo, hi), &(x, y)| ((lo.0.min(x), lo.1.min(y)), (hi.0.max(x), hi.1.max(y))),
        )
    };
    let (alo, ahi) = bbox(a);
    let (blo, bhi) = bbox(b);
    if ahi.0 < blo.0 || bhi.0 < alo.0 || ahi.1 < blo.1 || bhi.1 < alo.1 {
        return false;
    }
    if a.iter().any(|&p| ipoint_in_hull(p, b)) || b.iter().any(|&p| ipoint_in_hull(p, a)) {
        return true;
    }
    // the remaining possibility is a proper edge crossing: any touching
    // contact puts a vertex of one hull on the other hull and was caught
    // above, as was collinear edge overlap
    let eb = iedges(b);
    for (a1, a2) in iedges(a) {
        for &(b1, b2) in &eb {
            let d1 = iorient(b1, b2, a1).signum();
            let d2 = iorient(b1, b2, a2).signum();
            let d3 = iorient(a1, a2, b1).signum();
            let d4 = iorient(a1, a2, b2).signum();
            if d1 * d2 < 0 && d3 * d4 < 0 {
                return true;
            }
        }
    }
    false
}

/// Distinct intersection points of two polylines plus a flag for collinear
/// segment overlap (which would mean infinitely many common points).
pub fn polyline_intersections(p: &[QPoint], q: &[QPoint]) -> (BTreeSet<QPoint>, bool) {
    let mut points = BTreeSet::new();
    let mut overlap = false;
    let segs = |poly: &[QPoint]| -> Vec<(QPoint, QPoint)> {
        if poly.len() == 1 {
            vec![(poly[0].clone(), poly[0].clone())]
        } else {
            poly.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
        }
    };
    for (a1, a2) in segs(p) {
        for (b1, b2) in segs(q) {
            match segment_intersection(&a1, &a2, &b1, &b2) {
                SegIntersection::Empty => {}
                SegIntersection::Point(x) => {
                    points.insert(x);
                }
                SegIntersection::Overlap(x, y) => {
                    overlap = true;
                    points.insert(x);
                    points.insert(y);
                }
            }
        }
    }
    (points, overlap)
}
