//! SVG drawing of a planar Newton polygon on its lattice grid.

use std::fmt::Write;

use indicatrix::polytope::{RatPoint, RatPolytope};
use num_traits::ToPrimitive;

const CELL: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn to_f64(p: &RatPoint) -> (f64, f64) {
    (p[0].to_f64().unwrap_or(0.0), p[1].to_f64().unwrap_or(0.0))
}

/// Vertices in counter-clockwise order around their centroid.
fn cyclic(vertices: &[RatPoint]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = vertices.iter().map(to_f64).collect();
    let k = pts.len() as f64;
    let (cx, cy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.0 / k, b + p.1 / k));
    pts.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.partial_cmp(&tb).unwrap_or(std::cmp::Ordering::Equal)
    });
    pts
}

/// Renders `theta` (which must be planar) with the generator points marked.
pub fn render(theta: &RatPolytope, generators: &[RatPoint]) -> String {
    assert_eq!(theta.n(), 2, "only planar polygons are drawn");
    let all: Vec<(f64, f64)> = theta
        .vertices()
        .iter()
        .chain(generators)
        .map(to_f64)
        .collect();
    let xmax = all.iter().map(|p| p.0).fold(1.0, f64::max).ceil();
    let ymax = all.iter().map(|p| p.1).fold(1.0, f64::max).ceil();
    let w = xmax * CELL + 2.0 * MARGIN;
    let h = ymax * CELL + 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + x * CELL;
    let sy = |y: f64| h - MARGIN - y * CELL;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r##"<g stroke="#ccc" stroke-width="1">"##);
    for i in 0..=xmax as i64 {
        let x = sx(i as f64);
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            sy(0.0),
            sy(ymax)
        );
    }
    for j in 0..=ymax as i64 {
        let y = sy(j as f64);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            sx(0.0),
            sx(xmax)
        );
    }
    let _ = writeln!(s, "</g>");
    let pts: Vec<String> = cyclic(theta.vertices())
        .iter()
        .map(|(x, y)| format!("{},{}", sx(*x), sy(*y)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#4a90d9" fill-opacity="0.35" stroke="#1f4e79" stroke-width="2"/>"##,
        pts.join(" ")
    );
    for g in generators {
        let (x, y) = to_f64(g);
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="3" fill="#1f4e79"/>"##,
            sx(x),
            sy(y)
        );
    }
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use indicatrix::polytope::hull;
    use num_rational::BigRational;

    fn p(a: i64, b: i64) -> RatPoint {
        vec![
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        ]
    }

    #[test]
    fn one_polygon_with_vertices() {
        let gens = vec![p(0, 0), p(2, 1), p(1, 2)];
        let t = hull(&gens).unwrap();
        let svg = render(&t, &gens);
        assert_eq!(svg.matches("<polygon").count(), 1);
        let line = svg.lines().find(|l| l.starts_with("<polygon")).unwrap();
        let points = line.split('"').nth(1).unwrap();
        assert_eq!(points.split(' ').count(), 3);
    }

    #[test]
    fn cyclic_order_is_convex() {
        let sq = vec![p(0, 0), p(1, 1), p(1, 0), p(0, 1)];
        let c = cyclic(&sq);
        for k in 0..4 {
            let (a, b, d) = (c[k], c[(k + 1) % 4], c[(k + 2) % 4]);
            let cross = (b.0 - a.0) * (d.1 - b.1) - (b.1 - a.1) * (d.0 - b.0);
            assert!(cross > 0.0);
        }
    }
}
