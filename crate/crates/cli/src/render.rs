//! Deterministic SVG drawings of plane curves and their dual subdivisions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use tropcount_core::plane::{curve_pieces, Meet};
use tropcount_core::tropical::{EdgeId, Point, TropicalCurve};

use crate::CliError;

const PANEL: f64 = 400.0;

/// Piece of an edge between consecutive nodes; `b` is `None` for the tail of a ray.
#[derive(Clone, Debug)]
struct Arc {
    a: usize,
    b: Option<usize>,
    dir: [i64; 2],
    weight: u64,
}

/// The curve image as a plane graph whose nodes are vertices and crossings.
struct PlaneGraph {
    arcs: Vec<Arc>,
    nodes: usize,
}

fn plane_graph(c: &TropicalCurve) -> Result<PlaneGraph, CliError> {
    let pieces = curve_pieces(c);
    let mut crossings: BTreeMap<Point, usize> = BTreeMap::new();
    let mut cuts: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); pieces.len()];
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            match pieces[i].1.meet(&pieces[j].1) {
                Meet::At(t, s) if pieces[i].1.in_interior(&t) && pieces[j].1.in_interior(&s) => {
                    let p = pieces[i].1.at(&t);
                    let next = c.graph.vertex_count + crossings.len();
                    let id = *crossings.entry(p).or_insert(next);
                    cuts[i].push((t, id));
                    cuts[j].push((s, id));
                }
                Meet::Overlap => return Err(CliError::Input("curve has overlapping edges".into())),
                _ => {}
            }
        }
    }
    let mut arcs = Vec::new();
    for ((e, _), mut cut) in pieces.iter().zip(cuts) {
        cut.sort();
        let (start, end, weight) = match *e {
            EdgeId::Bounded(k) => {
                let b = &c.graph.bounded[k];
                (b.tail, Some(b.head), b.weight)
            }
            EdgeId::Unbounded(k) => (c.graph.unbounded[k].vertex, None, c.graph.unbounded[k].weight),
        };
        let u = c.direction_from(*e, start);
        let dir = [u[0], u[1]];
        let mut a = start;
        for (_, node) in cut {
            arcs.push(Arc { a, b: Some(node), dir, weight });
            a = node;
        }
        arcs.push(Arc { a, b: end, dir, weight });
    }
    Ok(PlaneGraph { arcs, nodes: c.graph.vertex_count + crossings.len() })
}

fn angle_order(u: [i64; 2], v: [i64; 2]) -> Ordering {
    let half = |p: [i64; 2]| if p[1] > 0 || (p[1] == 0 && p[0] > 0) { 0 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&(u[0] * v[1] - u[1] * v[0])))
}

/// Lattice polygons dual to the vertices and crossings of a plane curve,
/// translated so the subdivision sits in the positive quadrant touching both axes.
pub fn dual_subdivision(c: &TropicalCurve) -> Result<Vec<Vec<[i64; 2]>>, CliError> {
    let g = plane_graph(c)?;
    // Per node: outgoing weighted vectors in counterclockwise order, tagged by arc and side.
    let mut stars: Vec<Vec<([i64; 2], usize, bool)>> = vec![Vec::new(); g.nodes];
    for (k, arc) in g.arcs.iter().enumerate() {
        let w = arc.weight as i64;
        stars[arc.a].push(([w * arc.dir[0], w * arc.dir[1]], k, true));
        if let Some(b) = arc.b {
            stars[b].push(([-w * arc.dir[0], -w * arc.dir[1]], k, false));
        }
    }
    // Corner `k` of the local polygon precedes the dual side of the `k`-th star entry.
    let mut local: Vec<Vec<[i64; 2]>> = Vec::with_capacity(g.nodes);
    let mut side_start: BTreeMap<(usize, bool), (usize, usize)> = BTreeMap::new();
    for (v, star) in stars.iter_mut().enumerate() {
        star.sort_by(|x, y| angle_order(x.0, y.0));
        let mut corner = [0i64, 0];
        let mut poly = Vec::with_capacity(star.len());
        for (k, (vec, arc, side)) in star.iter().enumerate() {
            poly.push(corner);
            side_start.insert((*arc, *side), (v, k));
            corner = [corner[0] - vec[1], corner[1] + vec[0]];
        }
        if corner != [0, 0] {
            return Err(CliError::Input(format!("node {v} is not balanced")));
        }
        local.push(poly);
    }
    let mut offset: Vec<Option<[i64; 2]>> = vec![None; g.nodes];
    let mut queue = VecDeque::new();
    if g.nodes > 0 {
        offset[0] = Some([0, 0]);
        queue.push_back(0);
    }
    let add = |p: [i64; 2], q: [i64; 2]| [p[0] + q[0], p[1] + q[1]];
    while let Some(v) = queue.pop_front() {
        let o = offset[v].unwrap();
        for &(vec, arc, side) in &stars[v] {
            let other = if side { g.arcs[arc].b } else { Some(g.arcs[arc].a) };
            let Some(w) = other else { continue };
            if offset[w].is_some() {
                continue;
            }
            let (_, k) = side_start[&(arc, side)];
            let end = add(add(o, local[v][k]), [-vec[1], vec[0]]);
            let (_, kw) = side_start[&(arc, !side)];
            let s = local[w][kw];
            offset[w] = Some([end[0] - s[0], end[1] - s[1]]);
            queue.push_back(w);
        }
    }
    let mut polys: Vec<Vec<[i64; 2]>> = Vec::with_capacity(g.nodes);
    for (v, poly) in local.into_iter().enumerate() {
        let o = offset[v].ok_or_else(|| CliError::Input("curve is not connected".into()))?;
        polys.push(poly.into_iter().map(|p| add(p, o)).collect());
    }
    let min_x = polys.iter().flatten().map(|p| p[0]).min().unwrap_or(0);
    let min_y = polys.iter().flatten().map(|p| p[1]).min().unwrap_or(0);
    for p in polys.iter_mut().flatten() {
        *p = [p[0] - min_x, p[1] - min_y];
    }
    Ok(polys)
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Maps a box in the plane onto a square panel, y pointing up.
struct View {
    x0: f64,
    y1: f64,
    scale: f64,
    dx: f64,
    min: [f64; 2],
    max: [f64; 2],
}

impl View {
    fn fit(points: &[[f64; 2]], dx: f64) -> View {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        if points.is_empty() {
            (min, max) = ([0.0; 2], [0.0; 2]);
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1.0);
        let pad = 0.1 * span;
        let (min, max) = ([min[0] - pad, min[1] - pad], [max[0] + pad, max[1] + pad]);
        let side = (max[0] - min[0]).max(max[1] - min[1]);
        View { x0: min[0], y1: max[1], scale: PANEL / side, dx, min, max }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (self.dx + (p[0] - self.x0) * self.scale, (self.y1 - p[1]) * self.scale)
    }

    /// Where a ray from `p` leaves the box.
    fn clip(&self, p: [f64; 2], d: [i64; 2]) -> [f64; 2] {
        let mut t = f64::INFINITY;
        for k in 0..2 {
            let dk = d[k] as f64;
            if dk > 0.0 {
                t = t.min((self.max[k] - p[k]) / dk);
            } else if dk < 0.0 {
                t = t.min((self.min[k] - p[k]) / dk);
            }
        }
        [p[0] + t * d[0] as f64, p[1] + t * d[1] as f64]
    }
}

fn line(out: &mut String, view: &View, a: [f64; 2], b: [f64; 2], weight: u64) {
    let (x1, y1) = view.map(a);
    let (x2, y2) = view.map(b);
    let _ = writeln!(
        out,
        r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="{}"/>"#,
        weight.min(4)
    );
    if weight > 1 {
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="12">{weight}</text>"#, mx + 4.0, my - 4.0);
    }
}

fn curve_panel(out: &mut String, c: &TropicalCurve, points: &[Point], dy: f64) {
    let pos: Vec<[f64; 2]> = c.positions.iter().map(|p| [f(&p[0]), f(&p[1])]).collect();
    let marks: Vec<[f64; 2]> = points.iter().map(|p| [f(&p[0]), f(&p[1])]).collect();
    let all: Vec<[f64; 2]> = pos.iter().chain(&marks).copied().collect();
    let view = View::fit(&all, 0.0);
    let _ = writeln!(out, r#" <g transform="translate(0,{dy:.0})">"#);
    for b in &c.graph.bounded {
        line(out, &view, pos[b.tail], pos[b.head], b.weight);
    }
    for u in &c.graph.unbounded {
        let p = pos[u.vertex];
        line(out, &view, p, view.clip(p, [u.direction[0], u.direction[1]]), u.weight);
    }
    for m in &marks {
        let (x, y) = view.map(*m);
        let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="red"/>"#);
    }
    out.push_str(" </g>\n");
}

fn dual_panel(out: &mut String, polys: &[Vec<[i64; 2]>], dy: f64) {
    let all: Vec<[f64; 2]> = polys.iter().flatten().map(|p| [p[0] as f64, p[1] as f64]).collect();
    let view = View::fit(&all, PANEL);
    let _ = writeln!(out, r#" <g transform="translate(0,{dy:.0})">"#);
    for poly in polys {
        let pts: Vec<String> = poly
            .iter()
            .map(|p| {
                let (x, y) = view.map([p[0] as f64, p[1] as f64]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"  <polygon points="{}" fill="none" stroke="blue"/>"#, pts.join(" "));
    }
    out.push_str(" </g>\n");
}

/// One row per curve; with `dual`, the dual subdivision sits to the right of each curve.
pub fn render_svg(curves: &[TropicalCurve], points: &[Point], dual: bool) -> Result<String, CliError> {
    if curves.iter().any(|c| c.n != 2) {
        return Err(CliError::Input("only plane curves can be drawn".into()));
    }
    let duals = if dual { curves.iter().map(dual_subdivision).collect::<Result<Vec<_>, _>>()? } else { Vec::new() };
    let width = if dual { 2.0 * PANEL } else { PANEL };
    let height = PANEL * curves.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    for (i, c) in curves.iter().enumerate() {
        let dy = PANEL * i as f64;
        curve_panel(&mut out, c, points, dy);
        if let Some(polys) = duals.get(i) {
            dual_panel(&mut out, polys, dy);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropcount_core::tropical::{point, standard_line};

    fn twice_area(p: &[[i64; 2]]) -> i64 {
        (0..p.len())
            .map(|i| {
                let (a, b) = (p[i], p[(i + 1) % p.len()]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum()
    }

    #[test]
    fn line_is_dual_to_standard_triangle() {
        let polys = dual_subdivision(&standard_line(point(&[2, 5]))).unwrap();
        let mut corners = polys[0].clone();
        corners.sort();
        assert_eq!(corners, vec![[0, 0], [0, 1], [1, 0]]);
    }

    #[test]
    fn line_svg_has_three_rays() {
        let svg = render_svg(&[standard_line(point(&[0, 0]))], &[], false).unwrap();
        assert_eq!(svg.matches("<line").count(), 3);
        assert!(!svg.contains("<polygon"));
        assert!(svg.starts_with("<?xml"));
    }

    #[test]
    fn angle_order_is_counterclockwise() {
        let mut v = vec![[0, -1], [1, 1], [-1, 0], [1, 0], [-1, -1]];
        v.sort_by(|a, b| angle_order(*a, *b));
        assert_eq!(v, vec![[1, 0], [1, 1], [-1, 0], [-1, -1], [0, -1]]);
    }

    #[test]
    fn cubic_subdivisions_tile_the_newton_triangle() {
        use tropcount_core::enumeration::{enumerate_curves, PointConfiguration};
        use tropcount_core::tropical::Degree;
        let pts = PointConfiguration::mikhalkin(8, 7);
        let curves = enumerate_curves(0, &Degree::projective_plane(3), &pts).unwrap();
        for c in &curves {
            let polys = dual_subdivision(&c.curve).unwrap();
            assert_eq!(polys.iter().map(|p| twice_area(p)).sum::<i64>(), 9);
            assert!(polys.iter().all(|p| twice_area(p) > 0));
            for p in polys.iter().flatten() {
                assert!(p[0] >= 0 && p[1] >= 0 && p[0] + p[1] <= 3, "{p:?}");
            }
            // Vertices give triangles, crossings give parallelograms.
            assert_eq!(polys.iter().filter(|p| p.len() == 3).count(), c.curve.graph.vertex_count);
            assert!(polys.iter().all(|p| p.len() == 3 || p.len() == 4));
        }
    }

    #[test]
    fn polygons_are_counterclockwise() {
        let polys = dual_subdivision(&standard_line(point(&[0, 0]))).unwrap();
        assert!(polys.iter().all(|p| twice_area(p) > 0));
    }
}
