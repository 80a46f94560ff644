//! Deterministic SVG rendering for packings, representations and strings.
//!
//! Output is a pure function of the input: fixed palette, fixed 6-decimal
//! coordinate formatting, layered groups in vertex order. Byte-identical
//! files for identical inputs are part of the contract.

use crate::convexrep::ConvexRepresentation;
use crate::packing::CirclePacking;
use crate::strings::StringRepresentation;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf",
];

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn fmt(x: f64) -> String {
    // normalize negative zero so identical geometry renders identically
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.6}", x)
}

struct Bounds {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
}

impl Bounds {
    fn new() -> Bounds {
        Bounds { min_x: f64::MAX, min_y: f64::MAX, max_x: f64::MIN, max_y: f64::MIN }
    }

    fn add(&mut self, x: f64, y: f64, pad: f64) {
        self.min_x = self.min_x.min(x - pad);
        self.min_y = self.min_y.min(y - pad);
        self.max_x = self.max_x.max(x + pad);
        self.max_y = self.max_y.max(y + pad);
    }

    fn view_box(&self) -> String {
        let (w, h) = (self.max_x - self.min_x, self.max_y - self.min_y);
        let m = 0.05 * w.max(h).max(1e-9);
        format!(
            "{} {} {} {}",
            fmt(self.min_x - m),
            fmt(self.min_y - m),
            fmt(w + 2.0 * m),
            fmt(h + 2.0 * m)
        )
    }
}

fn svg_open(b: &Bounds) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{}\" width=\"640\" height=\"640\">\n",
        b.view_box()
    )
}

pub fn packing_svg(p: &CirclePacking) -> String {
    let mut b = Bounds::new();
    for v in 0..p.n() {
        let (x, y) = p.center(v);
        b.add(x, y, p.radius(v));
    }
    if p.n() == 0 {
        b.add(0.0, 0.0, 1.0);
    }
    let mut out = svg_open(&b);
    out.push_str("<g id=\"circles\" fill=\"none\" stroke-width=\"0.02\">\n");
    for v in 0..p.n() {
        let (x, y) = p.center(v);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"{}\"/>\n",
            fmt(x),
            fmt(y),
            fmt(p.radius(v)),
            color(v)
        ));
    }
    out.push_str("</g>\n<g id=\"tangencies\" fill=\"#000000\">\n");
    for &(i, j, (x, y)) in p.tangencies() {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"0.03\"><title>{}-{}</title></circle>\n",
            fmt(x),
            fmt(y),
            i,
            j
        ));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn representation_svg(rep: &ConvexRepresentation) -> String {
    let mut b = Bounds::new();
    for pts in &rep.points {
        for p in pts {
            let (x, y) = p.to_f64();
            b.add(x, y, 0.0);
        }
    }
    if rep.n() == 0 {
        b.add(0.0, 0.0, 1.0);
    }
    let mut out = svg_open(&b);
    out.push_str("<g id=\"hulls\" stroke-width=\"0.01\" fill-opacity=\"0.25\">\n");
    for (v, hull) in rep.hulls.iter().enumerate() {
        if hull.is_empty() {
            continue;
        }
        let coords: Vec<String> = hull
            .iter()
            .map(|p| {
                let (x, y) = p.to_f64();
                format!("{},{}", fmt(x), fmt(y))
            })
            .collect();
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{}\" stroke=\"{}\"><title>{}</title></polygon>\n",
            coords.join(" "),
            color(v),
            color(v),
            rep.labels[v]
        ));
    }
    out.push_str("</g>\n<g id=\"points\">\n");
    for (v, pts) in rep.points.iter().enumerate() {
        for p in pts {
            let (x, y) = p.to_f64();
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"0.015\" fill=\"{}\"/>\n",
                fmt(x),
                fmt(y),
                color(v)
            ));
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn strings_svg(s: &StringRepresentation) -> String {
    let mut b = Bounds::new();
    for curve in &s.curves {
        for p in curve {
            let (x, y) = p.to_f64();
            b.add(x, y, 0.0);
        }
    }
    if s.n() == 0 {
        b.add(0.0, 0.0, 1.0);
    }
    let mut out = svg_open(&b);
    out.push_str("<g id=\"curves\" fill=\"none\" stroke-width=\"0.01\">\n");
    for (v, curve) in s.curves.iter().enumerate() {
        let coords: Vec<String> = curve
            .iter()
            .map(|p| {
                let (x, y) = p.to_f64();
                format!("{},{}", fmt(x), fmt(y))
            })
            .collect();
        if curve.len() == 1 {
            let (x, y) = curve[0].to_f64();
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"0.02\" fill=\"{}\"/>\n",
                fmt(x),
                fmt(y),
                color(v)
            ));
        } else {
            out.push_str(&format!(
                "<polyline points=\"{}\" stroke=\"{}\"><title>{}</title></polyline>\n",
                coords.join(" "),
                color(v),
                v
            ));
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexrep::represent_canonical;
    use crate::embedding::PlanarEmbedding;
    use crate::graph::Graph;
    use crate::packing::pack;
    use crate::strings::strings_from_convex;

    #[test]
    fn packing_svg_is_deterministic_and_complete() {
        let p = pack(&PlanarEmbedding::k5_minus_edge(), 1e-10).unwrap();
        let a = packing_svg(&p);
        let b = packing_svg(&p);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert_eq!(a.matches("<circle").count(), 5 + p.tangencies().len());
    }

    #[test]
    fn representation_svg_draws_every_hull() {
        let g = Graph::cycle(5);
        let rep = represent_canonical(&g).unwrap().unwrap();
        let svg = representation_svg(&rep);
        assert_eq!(svg.matches("<polygon").count(), rep.hulls.iter().filter(|h| !h.is_empty()).count());
        assert_eq!(svg, representation_svg(&rep));
    }

    #[test]
    fn strings_svg_draws_every_curve() {
        let g = Graph::cycle(5);
        let rep = represent_canonical(&g).unwrap().unwrap();
        let s = strings_from_convex(&rep).unwrap();
        let svg = strings_svg(&s);
        let drawn = svg.matches("<polyline").count()
            + svg[svg.find("curves").unwrap()..].matches("<circle").count();
        assert_eq!(drawn, s.n());
        assert_eq!(svg, strings_svg(&s));
    }
}
