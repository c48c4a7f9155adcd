//! SVG figures. Rank 2 is drawn in the quarter plane with lattice dots,
//! rank 3 as the slice of the fan in the triangle `w_1 + w_2 + w_3 = 1`,
//! and higher ranks as the graph of rays joined by two-dimensional cones.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::dto::{ConeOut, FanOut, JsonInt, Output};
use crate::CliError;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

type P = (f64, f64);

fn f(v: &[JsonInt]) -> Vec<f64> {
    v.iter().map(|x| x.0.to_f64().unwrap_or(f64::NAN)).collect()
}

fn label(v: &[JsonInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
    format!("({})", parts.join(","))
}

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Svg {
        Svg { body: String::new() }
    }

    fn line(&mut self, a: P, b: P, style: &str) {
        let _ = writeln!(
            self.body,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    fn dot(&mut self, p: P, r: f64, fill: &str) {
        let _ = writeln!(self.body, r#"  <circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"/>"#, p.0, p.1);
    }

    fn polygon(&mut self, pts: &[P], style: &str) {
        let s: Vec<String> = pts.iter().map(|p| format!("{:.2},{:.2}", p.0, p.1)).collect();
        let _ = writeln!(self.body, r#"  <polygon points="{}" {style}/>"#, s.join(" "));
    }

    fn text(&mut self, p: P, s: &str) {
        let _ = writeln!(
            self.body,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            p.0,
            p.1,
            s.replace('&', "&amp;").replace('<', "&lt;")
        );
    }

    fn finish(self, title: &str) -> String {
        let total = SIZE + 2.0 * MARGIN;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n  <title>{title}</title>\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Quarter-plane coordinates: lattice point `(x, y)` to SVG, `extent` points per side.
struct Plane {
    extent: f64,
}

impl Plane {
    fn at(&self, x: f64, y: f64) -> P {
        let s = SIZE / self.extent;
        (MARGIN + x * s, MARGIN + SIZE - y * s)
    }

    fn grid(&self, svg: &mut Svg) {
        let n = self.extent as i64;
        svg.line(self.at(0.0, 0.0), self.at(self.extent, 0.0), r#"stroke="black""#);
        svg.line(self.at(0.0, 0.0), self.at(0.0, self.extent), r#"stroke="black""#);
        for x in 0..=n {
            for y in 0..=n {
                svg.dot(self.at(x as f64, y as f64), 1.5, "#999");
            }
        }
    }

    /// Where the ray through `d` leaves the drawing square.
    fn exit(&self, d: P) -> P {
        let t = [d.0, d.1]
            .iter()
            .filter(|c| c.abs() > 0.0)
            .map(|c| self.extent / c.abs())
            .fold(f64::INFINITY, f64::min);
        (d.0 * t, d.1 * t)
    }
}

fn extent_for(points: impl Iterator<Item = f64>) -> f64 {
    points.fold(4.0_f64, |m, x| m.max(x.abs().ceil() + 1.0)).min(40.0)
}

/// 2D convex hull, counter-clockwise (monotone chain).
fn hull(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: P, a: P, b: P| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<P> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polyhedron_svg(p: &crate::dto::PolyhedronOut) -> Result<String, CliError> {
    if p.rank != 2 {
        return Err(CliError::Input(format!("polyhedra are drawn in rank 2 only, got rank {}", p.rank)));
    }
    let verts: Vec<Vec<f64>> = p.vertices.iter().map(|v| f(v)).collect();
    let plane = Plane {
        extent: extent_for(p.support.iter().flat_map(|v| f(v))),
    };
    let mut svg = Svg::new();
    // The recession cone is the dual of the ambient cone: perpendiculars of its facets.
    let amb = &p.ambient;
    let dual_rays: Vec<P> = if amb.rays.len() == 2 {
        let r: Vec<Vec<f64>> = amb.rays.iter().map(|v| f(v)).collect();
        let (a, b) = ((r[0][0], r[0][1]), (r[1][0], r[1][1]));
        let mut perp = vec![(-a.1, a.0), (a.1, -a.0), (-b.1, b.0), (b.1, -b.0)];
        perp.retain(|d| d.0 * a.0 + d.1 * a.1 >= -1e-12 && d.0 * b.0 + d.1 * b.1 >= -1e-12);
        perp
    } else {
        vec![(1.0, 0.0), (0.0, 1.0)]
    };
    let far = 4.0 * plane.extent;
    let mut region: Vec<P> = Vec::new();
    for v in &verts {
        region.push((v[0], v[1]));
        for d in &dual_rays {
            region.push((v[0] + far * d.0, v[1] + far * d.1));
        }
    }
    let shaded: Vec<P> = hull(region).into_iter().map(|q| plane.at(q.0, q.1)).collect();
    let _ = writeln!(
        svg.body,
        "  <clipPath id=\"view\"><rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIZE}\" height=\"{SIZE}\"/></clipPath>"
    );
    svg.body.push_str("  <g clip-path=\"url(#view)\">\n");
    svg.polygon(&shaded, r##"fill="#cfe2f3" stroke="none""##);
    svg.body.push_str("  </g>\n");
    plane.grid(&mut svg);
    for face in p.compact_faces.iter().filter(|c| c.dim == 1) {
        let a = f(&face.vertices[0]);
        let b = f(&face.vertices[1]);
        svg.line(plane.at(a[0], a[1]), plane.at(b[0], b[1]), r##"stroke="#1f4e79" stroke-width="3""##);
    }
    for s in &p.support {
        let c = f(s);
        svg.dot(plane.at(c[0], c[1]), 4.0, "#1f4e79");
    }
    for v in &p.vertices {
        let c = f(v);
        let q = plane.at(c[0], c[1]);
        svg.dot(q, 6.0, "#c00000");
        svg.text((q.0 + 8.0, q.1 - 8.0), &label(v));
    }
    Ok(svg.finish("Newton polygon"))
}

/// The cones of a fan as lists of rays, with dimension.
fn fan_cones(fan: &FanOut) -> Vec<&ConeOut> {
    fan.maximal.iter().collect()
}

fn plane_fan_svg(ambient: &ConeOut, rays: &[Vec<JsonInt>], two_cones: &[&ConeOut], title: &str) -> String {
    let plane = Plane {
        extent: extent_for(rays.iter().flat_map(|v| f(v))),
    };
    let mut svg = Svg::new();
    for (i, c) in two_cones.iter().enumerate() {
        let a = f(&c.rays[0]);
        let b = f(&c.rays[1]);
        let pa = plane.exit((a[0], a[1]));
        let pb = plane.exit((b[0], b[1]));
        let mut pts = vec![plane.at(0.0, 0.0), plane.at(pa.0, pa.1)];
        if (pa.0 - pb.0).abs() > 1e-9 && (pa.1 - pb.1).abs() > 1e-9 {
            pts.push(plane.at(plane.extent, plane.extent));
        }
        pts.push(plane.at(pb.0, pb.1));
        let fill = if i % 2 == 0 { "#e8f0fa" } else { "#d6e4f5" };
        svg.polygon(&pts, &format!(r#"fill="{fill}" stroke="none""#));
    }
    plane.grid(&mut svg);
    for r in &ambient.rays {
        let d = f(r);
        let e = plane.exit((d[0], d[1]));
        svg.line(plane.at(0.0, 0.0), plane.at(e.0, e.1), r#"stroke="black" stroke-dasharray="4 3""#);
    }
    for r in rays {
        let d = f(r);
        let e = plane.exit((d[0], d[1]));
        svg.line(plane.at(0.0, 0.0), plane.at(e.0, e.1), r##"stroke="#c00000" stroke-width="2.5""##);
        let q = plane.at(d[0], d[1]);
        svg.dot(q, 5.0, "#c00000");
        svg.text((q.0 + 8.0, q.1 - 8.0), &label(r));
    }
    svg.finish(title)
}

fn simplex_fan_svg(fan: &FanOut, title: &str) -> Option<String> {
    let corners: [P; 3] = [
        (MARGIN, MARGIN + SIZE * 0.9),
        (MARGIN + SIZE, MARGIN + SIZE * 0.9),
        (MARGIN + SIZE / 2.0, MARGIN + SIZE * 0.9 - SIZE * 0.866),
    ];
    let project = |v: &[JsonInt]| -> Option<P> {
        let c = f(v);
        let s: f64 = c.iter().sum();
        if s <= 0.0 || c.iter().any(|x| *x < 0.0) {
            return None;
        }
        let b: Vec<f64> = c.iter().map(|x| x / s).collect();
        Some((
            b[0] * corners[0].0 + b[1] * corners[1].0 + b[2] * corners[2].0,
            b[0] * corners[0].1 + b[1] * corners[1].1 + b[2] * corners[2].1,
        ))
    };
    let mut svg = Svg::new();
    svg.polygon(&corners, r#"fill="none" stroke="black""#);
    for (i, name) in ["x1", "x2", "x3"].iter().enumerate() {
        let c = corners[i];
        svg.text((c.0 - 6.0, c.1 + if i == 2 { -8.0 } else { 18.0 }), name);
    }
    for c in fan_cones(fan) {
        let pts = c.rays.iter().map(|r| project(r)).collect::<Option<Vec<P>>>()?;
        match pts.len() {
            0 | 1 => {}
            2 => svg.line(pts[0], pts[1], r##"stroke="#c00000" stroke-width="2.5""##),
            _ => svg.polygon(&hull(pts), r##"fill="#e8f0fa" stroke="#c00000" stroke-width="1.5""##),
        }
    }
    for r in &fan.rays {
        let p = project(r)?;
        svg.dot(p, 5.0, "#c00000");
        // Coordinate rays sit at the named corners.
        if r.iter().filter(|x| x.0 != 0.into()).count() > 1 {
            svg.text((p.0 + 8.0, p.1 - 6.0), &label(r));
        }
    }
    Some(svg.finish(title))
}

fn graph_fan_svg(fan: &FanOut, title: &str) -> String {
    let mut svg = Svg::new();
    let n = fan.rays.len().max(1);
    let centre = (MARGIN + SIZE / 2.0, MARGIN + SIZE / 2.0);
    let radius = SIZE * 0.38;
    let pos: Vec<P> = (0..fan.rays.len())
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
            (centre.0 + radius * a.cos(), centre.1 + radius * a.sin())
        })
        .collect();
    let index = |r: &Vec<JsonInt>| fan.rays.iter().position(|x| x == r);
    // Two-dimensional faces of every maximal cone become edges.
    let mut edges = std::collections::BTreeSet::new();
    for c in &fan.maximal {
        let ids: Vec<usize> = c.rays.iter().filter_map(index).collect();
        if c.dim == 2 && ids.len() == 2 {
            edges.insert((ids[0].min(ids[1]), ids[0].max(ids[1])));
        } else if c.dim > 2 {
            for (k, &i) in ids.iter().enumerate() {
                for &j in &ids[k + 1..] {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
    }
    for (i, j) in edges {
        svg.line(pos[i], pos[j], r##"stroke="#1f4e79" stroke-width="2""##);
    }
    for (r, p) in fan.rays.iter().zip(&pos) {
        svg.dot(*p, 6.0, "#c00000");
        svg.text((p.0 + 9.0, p.1 - 6.0), &label(r));
    }
    svg.text((MARGIN, MARGIN / 2.0), &format!("rank {} fan: rays and their two-dimensional cones", fan.rank));
    svg.finish(title)
}

fn fan_svg(ambient: &ConeOut, fan: &FanOut, title: &str) -> Result<String, CliError> {
    match fan.rank {
        2 => {
            let twos: Vec<&ConeOut> = fan.maximal.iter().filter(|c| c.dim == 2).collect();
            Ok(plane_fan_svg(ambient, &fan.rays, &twos, title))
        }
        3 => Ok(simplex_fan_svg(fan, title).unwrap_or_else(|| graph_fan_svg(fan, title))),
        _ => Ok(graph_fan_svg(fan, title)),
    }
}

/// Renders a structured output as an SVG document.
pub fn svg(o: &Output) -> Result<String, CliError> {
    match o {
        Output::Polyhedron(p) => polyhedron_svg(p),
        Output::NewtonFan(n) => fan_svg(&n.ambient, &n.fan, "Newton fan"),
        Output::Tropicalization(t) => fan_svg(&t.ambient, &t.fan, "local tropicalization"),
        Output::PlaneCurve(p) => {
            let amb = ConeOut {
                rank: 2,
                dim: 2,
                rays: vec![vec![JsonInt(1.into()), JsonInt(0.into())], vec![JsonInt(0.into()), JsonInt(1.into())]],
                lineality: Vec::new(),
            };
            Ok(plane_fan_svg(&amb, &p.rays, &[], "local tropicalization"))
        }
        other => Err(CliError::Input(format!("nothing to draw for output kind {}", kind(other)))),
    }
}

fn kind(o: &Output) -> String {
    serde_json::to_value(o)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str().map(String::from)))
        .unwrap_or_default()
}
