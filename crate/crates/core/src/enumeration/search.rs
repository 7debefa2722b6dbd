//! Placing a combinatorial type through a point configuration.
//!
//! Every solution orients the unmarked edges towards a single unmarked leg per
//! component, so each vertex has exactly one "parent" edge and its position is
//! the meet of two lines: one per child edge, coming either from an already
//! placed child vertex or from a marked point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::types::CombinatorialType;
use crate::error::Result;
use crate::incidence::{assemble_t_h, AffineConstraint, BasisTwists, ThData};
use crate::lattice::rational_solve;
use crate::tropical::{BoundedEdge, EdgeId, TropicalCurve, TropicalGraph, UnboundedEdge};

pub type P2 = [BigRational; 2];

/// A placed type: vertex positions and the edge through each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub positions: Vec<P2>,
    /// Edge id (bounded first, then legs) through point `j`.
    pub marks: Vec<usize>,
}

/// Every choice of one parent edge per vertex with no bounded edge chosen
/// from both ends.
pub fn parent_functions(t: &CombinatorialType) -> Vec<Vec<usize>> {
    let stars = t.stars();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(t.vertex_count);
    fn rec(t: &CombinatorialType, stars: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = cur.len();
        if v == stars.len() {
            out.push(cur.clone());
            return;
        }
        for &e in &stars[v] {
            if e < t.bounded.len() {
                let b = &t.bounded[e];
                let other = if b.a == v { b.b } else { b.a };
                if other < v && cur[other] == e {
                    continue;
                }
            }
            cur.push(e);
            rec(t, stars, cur, out);
            cur.pop();
        }
    }
    rec(t, &stars, &mut current, &mut out);
    out
}

enum Child {
    Vertex(usize),
    Marked(usize),
}

struct Plan {
    order: Vec<usize>,
    children: Vec<Vec<(usize, Child)>>,
}

fn plan(t: &CombinatorialType, parent: &[usize]) -> Plan {
    let stars = t.stars();
    let nb = t.bounded.len();
    let mut children: Vec<Vec<(usize, Child)>> = Vec::with_capacity(t.vertex_count);
    for (v, s) in stars.iter().enumerate() {
        let mut c = Vec::with_capacity(2);
        for &e in s {
            if e == parent[v] {
                continue;
            }
            if e < nb {
                let b = &t.bounded[e];
                let w = if b.a == v { b.b } else { b.a };
                if parent[w] == e {
                    c.push((e, Child::Vertex(w)));
                    continue;
                }
            }
            c.push((e, Child::Marked(e)));
        }
        children.push(c);
    }
    // Post-order from the roots, whose parent edge is a leg.
    let mut order = Vec::with_capacity(t.vertex_count);
    fn visit(v: usize, children: &[Vec<(usize, Child)>], order: &mut Vec<usize>) {
        for (_, c) in &children[v] {
            if let Child::Vertex(w) = c {
                visit(*w, children, order);
            }
        }
        order.push(v);
    }
    for v in 0..t.vertex_count {
        if parent[v] >= nb {
            visit(v, &children, &mut order);
        }
    }
    Plan { order, children }
}

fn cross(a: &[BigRational; 2], u: [i64; 2]) -> BigRational {
    &a[0] * BigRational::from_integer(u[1].into()) - &a[1] * BigRational::from_integer(u[0].into())
}

/// Checked arithmetic ran out of room; the caller retries with big rationals.
#[derive(Debug)]
struct Overflow;

type Step<T> = std::result::Result<Option<T>, Overflow>;

/// Exact plane coordinates the search can run on.
trait Coords: Clone {
    /// The meet of `p1 + a1 u1` and `p2 + a2 u2` if `a1` and `a2` are nonzero
    /// with the signs `s1` and `s2`. A vertex on a point or on a child vertex
    /// is never a solution, hence the strictness.
    fn meet(p1: &Self, u1: [i64; 2], s1: i8, p2: &Self, u2: [i64; 2], s2: i8) -> Step<Self>;
}

fn signs_match(a: i32, s: i8) -> bool {
    a != 0 && (a > 0) == (s > 0)
}

impl Coords for P2 {
    fn meet(p1: &Self, u1: [i64; 2], s1: i8, p2: &Self, u2: [i64; 2], s2: i8) -> Step<Self> {
        let det = u1[0] * u2[1] - u1[1] * u2[0];
        debug_assert!(det != 0, "types have no parallel edges at a vertex");
        let d = [&p2[0] - &p1[0], &p2[1] - &p1[1]];
        let det = BigRational::from_integer(det.into());
        let a1 = cross(&d, u2) / &det;
        let a2 = cross(&d, u1) / &det;
        let sign = |a: &BigRational| if a.is_zero() { 0 } else if a.is_positive() { 1 } else { -1 };
        if !signs_match(sign(&a1), s1) || !signs_match(sign(&a2), s2) {
            return Ok(None);
        }
        let q = |x: i64| BigRational::from_integer(x.into());
        Ok(Some([&p1[0] + &a1 * q(u1[0]), &p1[1] + &a1 * q(u1[1])]))
    }
}

/// `(x / w, y / w)` with `w > 0`, reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Hom([i128; 3]);

impl Hom {
    fn from_point(p: &P2) -> Option<Hom> {
        let w = p[0].denom().lcm(p[1].denom());
        let x = p[0].numer() * (&w / p[0].denom());
        let y = p[1].numer() * (&w / p[1].denom());
        Some(Hom([x.to_i128()?, y.to_i128()?, w.to_i128()?]))
    }

    fn to_point(self) -> P2 {
        let [x, y, w] = self.0.map(BigInt::from);
        [BigRational::new(x, w.clone()), BigRational::new(y, w)]
    }
}

impl Coords for Hom {
    fn meet(p1: &Self, u1: [i64; 2], s1: i8, p2: &Self, u2: [i64; 2], s2: i8) -> Step<Self> {
        let [x1, y1, w1] = p1.0;
        let [x2, y2, w2] = p2.0;
        let (u1, u2) = (u1.map(i128::from), u2.map(i128::from));
        let det = u1[0] * u2[1] - u1[1] * u2[0];
        let mul = |a: i128, b: i128| a.checked_mul(b).ok_or(Overflow);
        let sub = |a: i128, b: i128| a.checked_sub(b).ok_or(Overflow);
        let add = |a: i128, b: i128| a.checked_add(b).ok_or(Overflow);
        let dx = sub(mul(x2, w1)?, mul(x1, w2)?)?;
        let dy = sub(mul(y2, w1)?, mul(y1, w2)?)?;
        let c1 = sub(mul(dx, u2[1])?, mul(dy, u2[0])?)?;
        let c2 = sub(mul(dx, u1[1])?, mul(dy, u1[0])?)?;
        let sign = |c: i128| (c.signum() * det.signum()) as i32;
        if !signs_match(sign(c1), s1) || !signs_match(sign(c2), s2) {
            return Ok(None);
        }
        let scale = mul(w2, det)?;
        let mut h = [
            add(mul(x1, scale)?, mul(c1, u1[0])?)?,
            add(mul(y1, scale)?, mul(c1, u1[1])?)?,
            mul(w1, scale)?,
        ];
        if h[2] < 0 {
            h = [h[0].checked_neg().ok_or(Overflow)?, h[1].checked_neg().ok_or(Overflow)?, -h[2]];
        }
        let g = h[0].gcd(&h[1]).gcd(&h[2]);
        Ok(Some(Hom(h.map(|x| x / g))))
    }
}

struct Search<'a, T> {
    t: &'a CombinatorialType,
    plan: Plan,
    points: &'a [T],
    positions: Vec<Option<T>>,
    assigned: Vec<Option<usize>>,
    used: u64,
    out: Vec<(Vec<T>, Vec<usize>)>,
}

impl<T: Coords> Search<'_, T> {
    /// Lines carrying vertex `v` from child `slot`: `(newly used point, anchor, direction, sign)`.
    fn line_options(&self, v: usize, slot: usize) -> Vec<(Option<usize>, &T, [i64; 2], i8)> {
        let (e, child) = &self.plan.children[v][slot];
        match child {
            Child::Vertex(w) => vec![(None, self.positions[*w].as_ref().unwrap(), self.t.direction_from(*e, *w), 1)],
            Child::Marked(e) => {
                // The point is at `v + s u` with `s > 0`, i.e. `v = p - s u`.
                let dir = self.t.direction_from(*e, v);
                match self.assigned[*e] {
                    Some(j) => vec![(None, &self.points[j], dir, -1)],
                    None => (0..self.points.len())
                        .filter(|j| self.used >> j & 1 == 0)
                        .map(|j| (Some(j), &self.points[j], dir, -1))
                        .collect(),
                }
            }
        }
    }

    fn run(&mut self, k: usize) -> std::result::Result<(), Overflow> {
        if k == self.plan.order.len() {
            let mut marks = vec![usize::MAX; self.points.len()];
            for (e, a) in self.assigned.iter().enumerate() {
                if let Some(j) = a {
                    marks[*j] = e;
                }
            }
            self.out.push((self.positions.iter().map(|p| p.clone().unwrap()).collect(), marks));
            return Ok(());
        }
        let v = self.plan.order[k];
        let mut candidates = Vec::new();
        for (j1, p1, u1, s1) in self.line_options(v, 0) {
            for (j2, p2, u2, s2) in self.line_options(v, 1) {
                if j1.is_some() && j1 == j2 {
                    continue;
                }
                if let Some(p) = T::meet(p1, u1, s1, p2, u2, s2)? {
                    candidates.push((j1, j2, p));
                }
            }
        }
        let slots: Vec<Option<usize>> = self.plan.children[v]
            .iter()
            .map(|(_, c)| match c {
                Child::Marked(e) => Some(*e),
                Child::Vertex(_) => None,
            })
            .collect();
        for (j1, j2, p) in candidates {
            let picks = [(slots[0], j1), (slots[1], j2)];
            for (e, j) in picks {
                if let (Some(e), Some(j)) = (e, j) {
                    self.assigned[e] = Some(j);
                    self.used |= 1 << j;
                }
            }
            self.positions[v] = Some(p);
            self.run(k + 1)?;
            self.positions[v] = None;
            for (e, j) in picks {
                if let (Some(e), Some(j)) = (e, j) {
                    self.assigned[e] = None;
                    self.used &= !(1 << j);
                }
            }
        }
        Ok(())
    }
}

type Found<T> = Vec<(Vec<T>, Vec<usize>)>;

fn search_all<T: Coords>(t: &CombinatorialType, points: &[T]) -> std::result::Result<Found<T>, Overflow> {
    let mut out = Vec::new();
    for parent in parent_functions(t) {
        let mut s = Search {
            t,
            plan: plan(t, &parent),
            points,
            positions: vec![None; t.vertex_count],
            assigned: vec![None; t.edge_count()],
            used: 0,
            out: Vec::new(),
        };
        s.run(0)?;
        out.append(&mut s.out);
    }
    Ok(out)
}

/// All placements of `t` through `points` (one point per marked edge).
pub fn place_type(t: &CombinatorialType, points: &[P2]) -> Vec<Placement> {
    if t.edge_count() - t.vertex_count != points.len() {
        return Vec::new();
    }
    assert!(points.len() < 64, "point masks are 64 bits wide");
    // Machine integers first; big rationals only if they overflow.
    let fast: Option<Vec<Hom>> = points.iter().map(Hom::from_point).collect();
    if let Some(Ok(found)) = fast.map(|h| search_all(t, &h)) {
        return found
            .into_iter()
            .map(|(pos, marks)| Placement { positions: pos.into_iter().map(Hom::to_point).collect(), marks })
            .collect();
    }
    search_all(t, points)
        .expect("big rationals do not overflow")
        .into_iter()
        .map(|(positions, marks)| Placement { positions, marks })
        .collect()
}

/// Recovers vertex positions from the marking alone by solving `T_h φ = a`
/// exactly; `None` unless the solution is unique with positive edge lengths
/// and every point interior to its edge.
pub fn solve_positions(t: &CombinatorialType, points: &[P2], marks: &[usize]) -> Result<Option<Vec<P2>>> {
    let nb = t.bounded.len();
    let data = ThData {
        vertex_count: t.vertex_count,
        n: 2,
        bounded: t.bounded.iter().map(|e| (e.a, e.b, e.dir.to_vec())).collect(),
        marks: marks
            .iter()
            .map(|&e| if e < nb { (t.bounded[e].a, t.bounded[e].dir.to_vec()) } else { (t.legs[e - nb].vertex, t.legs[e - nb].dir.to_vec()) })
            .collect(),
    };
    let constraints: Vec<AffineConstraint> = points.iter().map(|p| AffineConstraint::point(p.to_vec())).collect();
    let th = assemble_t_h(&data, &constraints, &BasisTwists::default())?;
    if !th.is_square() || th.matrix.rank() != th.matrix.cols() {
        return Ok(None);
    }
    let a: Vec<Vec<BigRational>> = (0..th.matrix.rows())
        .map(|i| th.matrix.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let Some(phi) = rational_solve(&a, &th.constraint_values(&constraints)) else { return Ok(None) };
    let pos: Vec<P2> = (0..t.vertex_count).map(|v| [phi[2 * v].clone(), phi[2 * v + 1].clone()]).collect();
    // Parameter of `p` on the line through `o` with direction `u`.
    let param = |o: &P2, u: [i64; 2], p: &P2| -> Option<BigRational> {
        let d = [&p[0] - &o[0], &p[1] - &o[1]];
        if !cross(&d, u).is_zero() {
            return None;
        }
        let k = if u[0] != 0 { 0 } else { 1 };
        Some(&d[k] / BigRational::from_integer(u[k].into()))
    };
    let lengths: Vec<BigRational> = t.bounded.iter().map(|e| param(&pos[e.a], e.dir, &pos[e.b]).unwrap_or_default()).collect();
    if lengths.iter().any(|l| !l.is_positive()) {
        return Ok(None);
    }
    for (j, &e) in marks.iter().enumerate() {
        let (o, u) = if e < nb { (&pos[t.bounded[e].a], t.bounded[e].dir) } else { (&pos[t.legs[e - nb].vertex], t.legs[e - nb].dir) };
        let Some(s) = param(o, u, &points[j]) else { return Ok(None) };
        if !s.is_positive() || (e < nb && s >= lengths[e]) {
            return Ok(None);
        }
    }
    Ok(Some(pos))
}

/// The tropical curve of a placement, with marks recorded on the graph.
pub fn placement_curve(t: &CombinatorialType, p: &Placement) -> Result<TropicalCurve> {
    let nb = t.bounded.len();
    let graph = TropicalGraph {
        vertex_count: t.vertex_count,
        bounded: t.bounded.iter().map(|e| BoundedEdge { tail: e.a, head: e.b, weight: e.weight }).collect(),
        unbounded: t
            .legs
            .iter()
            .map(|l| UnboundedEdge { vertex: l.vertex, direction: l.dir.to_vec(), weight: l.weight })
            .collect(),
        marked: p.marks.iter().map(|&e| if e < nb { EdgeId::Bounded(e) } else { EdgeId::Unbounded(e - nb) }).collect(),
    };
    TropicalCurve::new(graph, p.positions.iter().map(|x| x.to_vec()).collect(), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::types::enumerate_types;
    use crate::tropical::{qi, Degree};

    fn pt(x: i64, y: i64) -> P2 {
        [qi(x), qi(y)]
    }

    #[test]
    fn line_through_two_points() {
        let types = enumerate_types(0, &Degree::projective_plane(1)).unwrap();
        let pts = [pt(0, 0), pt(3, 1)];
        let placements = place_type(&types[0], &pts);
        assert_eq!(placements.len(), 1);
        let p = &placements[0];
        assert_eq!(p.positions[0], pt(2, 0));
        let nb = types[0].bounded.len();
        assert_eq!(types[0].legs[p.marks[0] - nb].dir, [-1, 0]);
        assert_eq!(types[0].legs[p.marks[1] - nb].dir, [1, 1]);
    }

    #[test]
    fn parent_functions_avoid_two_cycles() {
        let types = enumerate_types(0, &Degree::projective_plane(2)).unwrap();
        for t in &types {
            for p in parent_functions(t) {
                for (i, e) in t.bounded.iter().enumerate() {
                    assert!(!(p[e.a] == i && p[e.b] == i));
                }
            }
        }
    }

    #[test]
    fn solve_agrees_with_search() {
        let types = enumerate_types(0, &Degree::projective_plane(2)).unwrap();
        let pts = [pt(0, 0), pt(13, 5), pt(-7, 29), pt(41, -17), pt(3, 83)];
        let mut total = 0;
        for t in &types {
            for p in place_type(t, &pts) {
                let solved = solve_positions(t, &pts, &p.marks).unwrap();
                assert_eq!(solved.as_deref(), Some(p.positions.as_slice()));
                total += 1;
            }
        }
        assert!(total > 0);
    }
}
