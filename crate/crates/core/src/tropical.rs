//! Parameterized tropical curves: data model, balancing, degree, genus,
//! deformation dimension and local vertex multiplicities.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::rational_rank;

/// A point of `Q^n`.
pub type Point = Vec<BigRational>;

/// Identifies an edge of a [`TropicalGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeId {
    Bounded(usize),
    Unbounded(usize),
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Bounded(i) => write!(f, "b{i}"),
            EdgeId::Unbounded(i) => write!(f, "u{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundedEdge {
    pub tail: usize,
    pub head: usize,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnboundedEdge {
    pub vertex: usize,
    /// Primitive direction pointing away from `vertex`.
    pub direction: Vec<i64>,
    pub weight: u64,
}

/// Abstract weighted graph with unbounded legs and an ordered list of marked edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalGraph {
    pub vertex_count: usize,
    pub bounded: Vec<BoundedEdge>,
    pub unbounded: Vec<UnboundedEdge>,
    pub marked: Vec<EdgeId>,
}

impl TropicalGraph {
    pub fn weight(&self, e: EdgeId) -> u64 {
        match e {
            EdgeId::Bounded(i) => self.bounded[i].weight,
            EdgeId::Unbounded(i) => self.unbounded[i].weight,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.bounded.len())
            .map(EdgeId::Bounded)
            .chain((0..self.unbounded.len()).map(EdgeId::Unbounded))
    }

    /// Edges incident to `v`, bounded loops listed twice.
    pub fn incident(&self, v: usize) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for (i, e) in self.bounded.iter().enumerate() {
            if e.tail == v {
                out.push(EdgeId::Bounded(i));
            }
            if e.head == v {
                out.push(EdgeId::Bounded(i));
            }
        }
        for (i, e) in self.unbounded.iter().enumerate() {
            if e.vertex == v {
                out.push(EdgeId::Unbounded(i));
            }
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.incident(v).len()
    }

    pub fn is_trivalent(&self) -> bool {
        (0..self.vertex_count).all(|v| self.valence(v) == 3)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.bounded {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// First Betti number of a connected graph.
pub fn genus_of(g: &TropicalGraph) -> usize {
    (g.bounded.len() + 1).saturating_sub(g.vertex_count)
}

/// The degree: multiset of weighted directions `w(E) * u(E)` of the unbounded legs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Degree {
    pub entries: BTreeMap<Vec<i64>, usize>,
}

impl Degree {
    pub fn cardinality(&self) -> usize {
        self.entries.values().sum()
    }

    /// `d` copies each of `(-1,0)`, `(0,-1)` and `(1,1)`.
    pub fn projective_plane(d: usize) -> Degree {
        let mut entries = BTreeMap::new();
        if d > 0 {
            for v in [vec![-1, 0], vec![0, -1], vec![1, 1]] {
                entries.insert(v, d);
            }
        }
        Degree { entries }
    }

    /// Legs as a flat list, each nonzero vector split into weight and primitive direction.
    pub fn legs(&self) -> Vec<(Vec<i64>, u64)> {
        let mut out = Vec::new();
        for (v, &count) in &self.entries {
            let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
            let prim: Vec<i64> = v.iter().map(|x| x / g).collect();
            for _ in 0..count {
                out.push((prim.clone(), g as u64));
            }
        }
        out
    }
}

/// A graph together with rational vertex positions in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalCurve {
    pub graph: TropicalGraph,
    pub positions: Vec<Point>,
    pub n: usize,
}

/// One unbalanced vertex and its weighted direction sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingViolation {
    pub vertex: usize,
    pub sum: Vec<i64>,
}

impl TropicalCurve {
    /// Validates the structural invariants: dimensions, primitive leg
    /// directions, positive weights, connectivity, no divalent vertices and
    /// nondegenerate bounded edges.
    pub fn new(graph: TropicalGraph, positions: Vec<Point>, n: usize) -> Result<Self> {
        if positions.len() != graph.vertex_count {
            return Err(Error::DimensionMismatch(format!(
                "{} positions for {} vertices",
                positions.len(),
                graph.vertex_count
            )));
        }
        if let Some(p) = positions.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch(format!("position of length {} in Q^{n}", p.len())));
        }
        for (i, e) in graph.unbounded.iter().enumerate() {
            if e.direction.len() != n {
                return Err(Error::DimensionMismatch(format!("leg {i} direction not in Z^{n}")));
            }
            if e.direction.iter().fold(0i64, |a, x| a.gcd(x)) != 1 {
                return Err(Error::InvalidCurve(format!("leg {i} direction is not primitive")));
            }
            if e.vertex >= graph.vertex_count {
                return Err(Error::InvalidCurve(format!("leg {i} attached to missing vertex")));
            }
        }
        for (i, e) in graph.bounded.iter().enumerate() {
            if e.tail >= graph.vertex_count || e.head >= graph.vertex_count {
                return Err(Error::InvalidCurve(format!("bounded edge {i} has a missing endpoint")));
            }
            if positions[e.tail] == positions[e.head] {
                return Err(Error::DegenerateEdge(i));
            }
        }
        if graph.edges().any(|e| graph.weight(e) == 0) {
            return Err(Error::InvalidCurve("edge weights must be positive".into()));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidCurve("graph is disconnected".into()));
        }
        if let Some(v) = (0..graph.vertex_count).find(|&v| graph.valence(v) < 3) {
            return Err(Error::NonTrivalent { vertex: v, valence: graph.valence(v) });
        }
        if let Some(&m) = graph.marked.iter().find(|m| match m {
            EdgeId::Bounded(i) => *i >= graph.bounded.len(),
            EdgeId::Unbounded(i) => *i >= graph.unbounded.len(),
        }) {
            return Err(Error::InvalidCurve(format!("marked edge {m} does not exist")));
        }
        Ok(TropicalCurve { graph, positions, n })
    }

    /// Primitive direction and rational lattice length of bounded edge `i`, tail to head.
    pub fn bounded_vector(&self, i: usize) -> (Vec<i64>, BigRational) {
        let e = &self.graph.bounded[i];
        let diff: Vec<BigRational> = self.positions[e.head]
            .iter()
            .zip(&self.positions[e.tail])
            .map(|(a, b)| a - b)
            .collect();
        primitive_with_length(&diff)
    }

    /// Primitive direction of `e` pointing away from its endpoint `v`.
    pub fn direction_from(&self, e: EdgeId, v: usize) -> Vec<i64> {
        match e {
            EdgeId::Unbounded(i) => self.graph.unbounded[i].direction.clone(),
            EdgeId::Bounded(i) => {
                let (u, _) = self.bounded_vector(i);
                if self.graph.bounded[i].tail == v {
                    u
                } else {
                    u.into_iter().map(|x| -x).collect()
                }
            }
        }
    }

    /// `(edge, outgoing primitive direction, weight)` for each edge at `v`.
    pub fn star(&self, v: usize) -> Vec<(EdgeId, Vec<i64>, u64)> {
        let mut out = Vec::new();
        for (i, e) in self.graph.bounded.iter().enumerate() {
            let (u, _) = self.bounded_vector(i);
            if e.tail == v {
                out.push((EdgeId::Bounded(i), u.clone(), e.weight));
            }
            if e.head == v {
                out.push((EdgeId::Bounded(i), u.iter().map(|x| -x).collect(), e.weight));
            }
        }
        for (i, e) in self.graph.unbounded.iter().enumerate() {
            if e.vertex == v {
                out.push((EdgeId::Unbounded(i), e.direction.clone(), e.weight));
            }
        }
        out
    }

    /// Integral affine length of a bounded edge image.
    pub fn lattice_length(&self, i: usize) -> BigRational {
        self.bounded_vector(i).1
    }

    pub fn translated(&self, shift: &[BigRational]) -> TropicalCurve {
        let positions = self
            .positions
            .iter()
            .map(|p| p.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        TropicalCurve { positions, ..self.clone() }
    }

    pub fn scaled(&self, s: &BigRational) -> TropicalCurve {
        let positions = self.positions.iter().map(|p| p.iter().map(|a| a * s).collect()).collect();
        TropicalCurve { positions, ..self.clone() }
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> TropicalCurve {
        assert_eq!(perm.len(), self.graph.vertex_count);
        let mut positions = vec![Vec::new(); perm.len()];
        for (v, p) in self.positions.iter().enumerate() {
            positions[perm[v]] = p.clone();
        }
        let mut graph = self.graph.clone();
        for e in &mut graph.bounded {
            e.tail = perm[e.tail];
            e.head = perm[e.head];
        }
        for e in &mut graph.unbounded {
            e.vertex = perm[e.vertex];
        }
        TropicalCurve { graph, positions, n: self.n }
    }
}

/// Splits a nonzero rational vector as `length * primitive` with `length > 0`.
pub fn primitive_with_length(v: &[BigRational]) -> (Vec<i64>, BigRational) {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    assert!(!g.is_zero(), "zero vector has no primitive direction");
    let prim = ints
        .iter()
        .map(|x| (x / &g).to_i64().expect("edge direction exceeds i64"))
        .collect();
    (prim, BigRational::new(g, lcm))
}

/// Weighted direction sums at every vertex that fails to balance.
pub fn check_balancing(c: &TropicalCurve) -> Result<Vec<BalancingViolation>> {
    for (i, e) in c.graph.bounded.iter().enumerate() {
        if c.positions[e.tail] == c.positions[e.head] {
            return Err(Error::DegenerateEdge(i));
        }
    }
    let mut out = Vec::new();
    for v in 0..c.graph.vertex_count {
        let mut sum = vec![0i64; c.n];
        for (_, u, w) in c.star(v) {
            for (s, x) in sum.iter_mut().zip(&u) {
                *s += w as i64 * x;
            }
        }
        if sum.iter().any(|&x| x != 0) {
            out.push(BalancingViolation { vertex: v, sum });
        }
    }
    Ok(out)
}

pub fn degree_of(c: &TropicalCurve) -> Degree {
    let mut entries = BTreeMap::new();
    for e in &c.graph.unbounded {
        let v: Vec<i64> = e.direction.iter().map(|x| x * e.weight as i64).collect();
        *entries.entry(v).or_insert(0) += 1;
    }
    Degree { entries }
}

/// Dimension of the space of deformations of the curve's combinatorial type:
/// `n` translations plus one length per bounded edge, minus the rank of the
/// cycle-closing conditions.
pub fn moduli_dimension(c: &TropicalCurve) -> usize {
    let g = &c.graph;
    let nb = g.bounded.len();
    // Spanning forest by BFS; every non-tree edge closes one independent cycle.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count];
    let mut seen = vec![false; g.vertex_count];
    let mut tree_edge = vec![false; nb];
    let mut adj = vec![Vec::new(); g.vertex_count];
    for (i, e) in g.bounded.iter().enumerate() {
        adj[e.tail].push((e.head, i));
        adj[e.head].push((e.tail, i));
    }
    for root in 0..g.vertex_count {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, i) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree_edge[i] = true;
                    parent[w] = Some((v, i));
                    queue.push_back(w);
                }
            }
        }
    }
    // Signed edge multiplicities along the tree path from the root to `v`.
    let path = |mut v: usize| {
        let mut coeffs = vec![0i64; nb];
        while let Some((p, i)) = parent[v] {
            coeffs[i] += if g.bounded[i].tail == p { 1 } else { -1 };
            v = p;
        }
        coeffs
    };
    let dirs: Vec<Vec<i64>> = (0..nb).map(|i| c.bounded_vector(i).0).collect();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, e) in g.bounded.iter().enumerate() {
        if tree_edge[i] {
            continue;
        }
        // cycle: root -> tail, edge tail -> head, head -> root
        let mut coeffs = path(e.tail);
        coeffs[i] += 1;
        for (a, b) in coeffs.iter_mut().zip(path(e.head)) {
            *a -= b;
        }
        for k in 0..c.n {
            rows.push(
                (0..nb)
                    .map(|j| BigRational::from(BigInt::from(coeffs[j] * dirs[j][k])))
                    .collect(),
            );
        }
    }
    let rank = rational_rank(&mut rows);
    c.n + nb - rank
}

/// Expected dimension `(n - 3)(1 - g) + |Delta|`.
pub fn expected_dimension(n: usize, genus: usize, degree_size: usize) -> i64 {
    (n as i64 - 3) * (1 - genus as i64) + degree_size as i64
}

/// The triangle dual to a trivalent plane vertex, stored by its side data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTriangle {
    pub sides: [([i64; 2], u64); 3],
    pub twice_area: u64,
    pub boundary_points: u64,
    pub interior_points: u64,
}

impl DualTriangle {
    /// Builds the triangle from the three outgoing `(direction, weight)` pairs.
    /// Balancing is assumed; the twice-area is `w1 w2 |det(u1, u2)|`.
    pub fn from_sides(sides: [([i64; 2], u64); 3]) -> DualTriangle {
        let [(u1, w1), (u2, w2), (_, w3)] = sides;
        let det = (u1[0] * u2[1] - u1[1] * u2[0]).unsigned_abs();
        let twice_area = w1 * w2 * det;
        let boundary_points = w1 + w2 + w3;
        let interior_points = if twice_area == 0 { 0 } else { (twice_area + 2 - boundary_points) / 2 };
        let t = DualTriangle { sides, twice_area, boundary_points, interior_points };
        debug_assert_eq!(t.interior_points, t.interior_points_brute_force());
        t
    }

    /// Lattice vertices of a realization: sides are the weighted directions rotated by 90 degrees.
    pub fn corners(&self) -> [[i64; 2]; 3] {
        let rot = |(u, w): ([i64; 2], u64)| [-u[1] * w as i64, u[0] * w as i64];
        let a = [0, 0];
        let s1 = rot(self.sides[0]);
        let b = [s1[0], s1[1]];
        let s2 = rot(self.sides[1]);
        let c = [b[0] + s2[0], b[1] + s2[1]];
        [a, b, c]
    }

    /// Interior lattice points counted directly over the bounding box.
    pub fn interior_points_brute_force(&self) -> u64 {
        let [a, b, c] = self.corners();
        let cross = |p: [i64; 2], q: [i64; 2], r: [i64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
        let orient = cross(a, b, c).signum();
        if orient == 0 {
            return 0;
        }
        let (x0, x1) = (a[0].min(b[0]).min(c[0]), a[0].max(b[0]).max(c[0]));
        let (y0, y1) = (a[1].min(b[1]).min(c[1]), a[1].max(b[1]).max(c[1]));
        let mut count = 0;
        for x in x0..=x1 {
            for y in y0..=y1 {
                let p = [x, y];
                if cross(a, b, p).signum() == orient
                    && cross(b, c, p).signum() == orient
                    && cross(c, a, p).signum() == orient
                {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Local multiplicities of a trivalent plane vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMultiplicities {
    /// `w1 w2 |det(u1, u2)|`
    pub mult: u64,
    /// `(-1)^I` with `I` the number of interior lattice points of the dual triangle.
    pub mult_r: i64,
    /// `(-1)^((mult - 1) / 2)` for odd `mult`, else 0.
    pub mult_m: i64,
    pub triangle: DualTriangle,
}

pub fn vertex_multiplicities_from_sides(sides: [([i64; 2], u64); 3]) -> VertexMultiplicities {
    let triangle = DualTriangle::from_sides(sides);
    let mult = triangle.twice_area;
    let mult_r = if triangle.interior_points % 2 == 0 { 1 } else { -1 };
    let mult_m = if mult % 2 == 0 {
        0
    } else if ((mult - 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    };
    VertexMultiplicities { mult, mult_r, mult_m, triangle }
}

pub fn vertex_multiplicities(c: &TropicalCurve, v: usize) -> Result<VertexMultiplicities> {
    if c.n != 2 {
        return Err(Error::DimensionMismatch(format!("vertex multiplicities need n = 2, got {}", c.n)));
    }
    let star = c.star(v);
    if star.len() != 3 {
        return Err(Error::NonTrivalent { vertex: v, valence: star.len() });
    }
    let side = |k: usize| ([star[k].1[0], star[k].1[1]], star[k].2);
    Ok(vertex_multiplicities_from_sides([side(0), side(1), side(2)]))
}

/// Tropical Welschinger multiplicity: 0 with an even bounded edge, else the
/// product of the vertex signs.
pub fn curve_welschinger_mult(c: &TropicalCurve) -> Result<i64> {
    if c.graph.bounded.iter().any(|e| e.weight % 2 == 0) {
        return Ok(0);
    }
    let mut sign = 1;
    for v in 0..c.graph.vertex_count {
        sign *= vertex_multiplicities(c, v)?.mult_r;
    }
    Ok(sign)
}

/// `(product of complex vertex multiplicities, product of Mikhalkin real multiplicities)`.
pub fn curve_mikhalkin_mults(c: &TropicalCurve) -> Result<(BigInt, i64)> {
    let mut complex = BigInt::one();
    let mut real = 1i64;
    for v in 0..c.graph.vertex_count {
        let m = vertex_multiplicities(c, v)?;
        complex *= m.mult;
        real *= m.mult_m;
    }
    Ok((complex, real))
}

/// Parses a small rational such as `"3"` or `"-7/2"`; test and fixture helper.
pub fn q(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((a, b)) => BigRational::new(a.trim().parse().expect("numerator"), b.trim().parse().expect("denominator")),
        None => BigRational::from(s.trim().parse::<BigInt>().expect("integer")),
    }
}

pub fn qi(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&x| qi(x)).collect()
}

/// The standard tropical line with vertex at `center`.
pub fn standard_line(center: Point) -> TropicalCurve {
    let graph = TropicalGraph {
        vertex_count: 1,
        bounded: vec![],
        unbounded: vec![
            UnboundedEdge { vertex: 0, direction: vec![-1, 0], weight: 1 },
            UnboundedEdge { vertex: 0, direction: vec![0, -1], weight: 1 },
            UnboundedEdge { vertex: 0, direction: vec![1, 1], weight: 1 },
        ],
        marked: vec![],
    };
    TropicalCurve::new(graph, vec![center], 2).expect("standard line is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_vertex(rays: &[(&[i64], u64)]) -> TropicalCurve {
        let graph = TropicalGraph {
            vertex_count: 1,
            bounded: vec![],
            unbounded: rays
                .iter()
                .map(|(d, w)| UnboundedEdge { vertex: 0, direction: d.to_vec(), weight: *w })
                .collect(),
            marked: vec![],
        };
        TropicalCurve { graph, positions: vec![point(&[0, 0])], n: 2 }
    }

    /// Two vertices joined by a bounded edge: a conic-like tree with four legs.
    fn two_vertex_curve(bounded_weight: u64) -> TropicalCurve {
        let w = bounded_weight as i64;
        let graph = TropicalGraph {
            vertex_count: 2,
            bounded: vec![BoundedEdge { tail: 0, head: 1, weight: bounded_weight }],
            unbounded: vec![
                UnboundedEdge { vertex: 0, direction: vec![-1, 0], weight: bounded_weight },
                UnboundedEdge { vertex: 0, direction: vec![0, -1], weight: bounded_weight },
                UnboundedEdge { vertex: 1, direction: vec![0, 1], weight: bounded_weight },
                UnboundedEdge { vertex: 1, direction: vec![1, 0], weight: bounded_weight },
            ],
            marked: vec![],
        };
        TropicalCurve::new(graph, vec![point(&[0, 0]), point(&[w * 3, w * 3])], 2).unwrap()
    }

    #[test]
    fn balancing_examples() {
        let line = single_vertex(&[(&[-1, 0], 1), (&[0, -1], 1), (&[1, 1], 1)]);
        assert!(check_balancing(&line).unwrap().is_empty());
        let c = single_vertex(&[(&[-1, 0], 3), (&[1, 2], 1), (&[1, -1], 2)]);
        assert!(check_balancing(&c).unwrap().is_empty());
        let c = single_vertex(&[(&[-1, 0], 1), (&[0, -1], 1)]);
        assert_eq!(
            check_balancing(&c).unwrap(),
            vec![BalancingViolation { vertex: 0, sum: vec![-1, -1] }]
        );
    }

    #[test]
    fn degenerate_edge_rejected() {
        let mut c = two_vertex_curve(1);
        c.positions[1] = c.positions[0].clone();
        assert_eq!(check_balancing(&c), Err(Error::DegenerateEdge(0)));
        assert_eq!(
            TropicalCurve::new(c.graph.clone(), c.positions.clone(), 2),
            Err(Error::DegenerateEdge(0))
        );
    }

    #[test]
    fn degree_examples() {
        let line = standard_line(point(&[0, 0]));
        let d = degree_of(&line);
        assert_eq!(d, Degree::projective_plane(1));
        assert_eq!(d.cardinality(), 3);
        let c = single_vertex(&[(&[1, 0], 2), (&[-1, -1], 1), (&[-1, 1], 1)]);
        let d = degree_of(&c);
        assert_eq!(d.entries.get(&vec![2, 0]), Some(&1));
        assert_eq!(d.entries.get(&vec![1, 0]), None);
        let d3 = Degree::projective_plane(3);
        assert_eq!(d3.cardinality(), 9);
        assert_eq!(d3.entries[&vec![1, 1]], 3);
    }

    #[test]
    fn degree_translation_invariant() {
        let c = two_vertex_curve(1);
        assert_eq!(degree_of(&c), degree_of(&c.translated(&[q("7/3"), q("-5")])));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_of(&two_vertex_curve(1).graph), 0);
        let cycle = TropicalGraph {
            vertex_count: 3,
            bounded: vec![
                BoundedEdge { tail: 0, head: 1, weight: 1 },
                BoundedEdge { tail: 1, head: 2, weight: 1 },
                BoundedEdge { tail: 2, head: 0, weight: 1 },
            ],
            unbounded: vec![],
            marked: vec![],
        };
        assert_eq!(genus_of(&cycle), 1);
        let theta = TropicalGraph {
            vertex_count: 2,
            bounded: (0..3).map(|_| BoundedEdge { tail: 0, head: 1, weight: 1 }).collect(),
            unbounded: vec![],
            marked: vec![],
        };
        assert_eq!(genus_of(&theta), 2);
    }

    #[test]
    fn moduli_dimension_trees() {
        let line = standard_line(point(&[0, 0]));
        assert_eq!(moduli_dimension(&line) as i64, expected_dimension(2, 0, 3));
        let c = two_vertex_curve(1);
        assert_eq!(moduli_dimension(&c) as i64, expected_dimension(2, 0, 4));
    }

    #[test]
    fn moduli_dimension_cycle() {
        // A triangle cycle with three legs: a cubic-like genus-one piece.
        let graph = TropicalGraph {
            vertex_count: 3,
            bounded: vec![
                BoundedEdge { tail: 0, head: 1, weight: 1 },
                BoundedEdge { tail: 1, head: 2, weight: 1 },
                BoundedEdge { tail: 2, head: 0, weight: 1 },
            ],
            unbounded: vec![
                UnboundedEdge { vertex: 0, direction: vec![-1, -1], weight: 1 },
                UnboundedEdge { vertex: 1, direction: vec![2, -1], weight: 1 },
                UnboundedEdge { vertex: 2, direction: vec![-1, 2], weight: 1 },
            ],
            marked: vec![],
        };
        let c = TropicalCurve::new(graph, vec![point(&[0, 0]), point(&[1, 0]), point(&[0, 1])], 2).unwrap();
        assert!(check_balancing(&c).unwrap().is_empty());
        // 2 + 3 lengths - 2 closing conditions; the cycle shape is a one-parameter family.
        assert_eq!(moduli_dimension(&c), 3);
        assert_eq!(expected_dimension(2, 1, 3), 3);
    }

    #[test]
    fn vertex_multiplicity_examples() {
        let m = vertex_multiplicities_from_sides([([-1, 0], 1), ([0, -1], 1), ([1, 1], 1)]);
        assert_eq!((m.mult, m.triangle.interior_points, m.mult_r, m.mult_m), (1, 0, 1, 1));
        let m = vertex_multiplicities_from_sides([([-1, 0], 2), ([1, -1], 1), ([1, 1], 1)]);
        assert_eq!((m.mult, m.triangle.interior_points, m.mult_r, m.mult_m), (2, 0, 1, 0));
        let m = vertex_multiplicities_from_sides([([-1, 0], 3), ([1, 2], 1), ([1, -1], 2)]);
        assert_eq!((m.mult, m.triangle.interior_points, m.mult_r, m.mult_m), (6, 1, -1, 0));
        assert_eq!(m.triangle.boundary_points, 6);
    }

    #[test]
    fn vertex_multiplicity_requires_trivalence() {
        let c = two_vertex_curve(1);
        let mut g = c.graph.clone();
        g.unbounded.push(UnboundedEdge { vertex: 0, direction: vec![1, 1], weight: 1 });
        let bad = TropicalCurve { graph: g, ..c };
        assert_eq!(
            vertex_multiplicities(&bad, 0),
            Err(Error::NonTrivalent { vertex: 0, valence: 4 })
        );
    }

    #[test]
    fn curve_level_multiplicities() {
        let line = standard_line(point(&[2, -1]));
        assert_eq!(curve_welschinger_mult(&line).unwrap(), 1);
        assert_eq!(curve_mikhalkin_mults(&line).unwrap(), (BigInt::one(), 1));
        let even = two_vertex_curve(2);
        assert!(check_balancing(&even).unwrap().is_empty());
        assert_eq!(curve_welschinger_mult(&even).unwrap(), 0);
        // Each vertex has multiplicity 4, so the Mikhalkin real multiplicity vanishes.
        let (complex, real) = curve_mikhalkin_mults(&even).unwrap();
        assert_eq!(complex, BigInt::from(16));
        assert_eq!(real, 0);
    }

    #[test]
    fn mult_three_vertices_give_alternating_sign() {
        let m = vertex_multiplicities_from_sides([([-1, -1], 1), ([2, -1], 1), ([-1, 2], 1)]);
        assert_eq!(m.mult, 3);
        assert_eq!(m.mult_m, -1);
        assert_eq!(m.triangle.interior_points, 1);
        assert_eq!(m.mult_r, -1);
    }

    #[test]
    fn primitive_split() {
        let (u, l) = primitive_with_length(&[q("3/2"), q("-9/4")]);
        assert_eq!(u, vec![2, -3]);
        assert_eq!(l, q("3/4"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn primitive_dir() -> impl Strategy<Value = [i64; 2]> {
            (-5i64..=5, -5i64..=5).prop_filter("primitive", |(a, b)| a.gcd(b) == 1).prop_map(|(a, b)| [a, b])
        }

        proptest! {
            #[test]
            fn pick_matches_brute_force(u1 in primitive_dir(), u2 in primitive_dir(), w1 in 1u64..=4, w2 in 1u64..=4) {
                let s = [u1[0] * w1 as i64 + u2[0] * w2 as i64, u1[1] * w1 as i64 + u2[1] * w2 as i64];
                prop_assume!(s != [0, 0]);
                let w3 = s[0].gcd(&s[1]) as u64;
                prop_assume!(w3 <= 4);
                let u3 = [-s[0] / w3 as i64, -s[1] / w3 as i64];
                let t = DualTriangle::from_sides([(u1, w1), (u2, w2), (u3, w3)]);
                prop_assert_eq!(t.interior_points, t.interior_points_brute_force());
            }

            #[test]
            fn degree_translation(dx in -50i64..50, dy in -50i64..50, den in 1i64..7) {
                let line = standard_line(point(&[1, 2]));
                let shift = [BigRational::new(dx.into(), den.into()), BigRational::new(dy.into(), den.into())];
                prop_assert_eq!(degree_of(&line.translated(&shift)), degree_of(&line));
            }
        }
    }
}
