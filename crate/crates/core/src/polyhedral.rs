//! Rational polyhedral decompositions: cones over cells, asymptotic fans,
//! goodness with respect to curves and constraints, rescaling, and a planar
//! overlay constructor.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::incidence::AffineConstraint;
use crate::lattice::{apply_rational, quotient_basis, rational_rank, rational_solve};
use crate::plane::{cross, curve_pieces, sub, Meet, Piece};
use crate::tropical::{primitive_with_length, qi, EdgeId, Point, TropicalCurve};

/// `conv(vertices) + cone(rays)` with rational vertices and integral rays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Polyhedron {
    pub vertices: Vec<Point>,
    pub rays: Vec<Vec<i64>>,
}

impl Polyhedron {
    pub fn point(p: Point) -> Self {
        Polyhedron { vertices: vec![p], rays: Vec::new() }
    }

    pub fn segment(a: Point, b: Point) -> Self {
        Polyhedron { vertices: vec![a, b], rays: Vec::new() }
    }

    pub fn ray(a: Point, dir: Vec<i64>) -> Self {
        Polyhedron { vertices: vec![a], rays: vec![dir] }
    }

    pub fn ambient_rank(&self) -> usize {
        self.vertices.first().map_or(0, Vec::len)
    }

    pub fn dim(&self) -> usize {
        let Some(v0) = self.vertices.first() else { return 0 };
        let mut rows: Vec<Vec<BigRational>> = self.vertices[1..].iter().map(|v| sub(v, v0)).collect();
        rows.extend(self.rays.iter().map(|r| r.iter().map(|&x| qi(x)).collect()));
        rational_rank(&mut rows)
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

/// A rational polyhedral cone, stored as its sorted primitive generators
/// with redundant ones removed; the zero cone has none.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    pub rays: Vec<Vec<BigInt>>,
}

fn primitive(v: &[BigRational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Whether `v` is a nonnegative combination of `gens` (Carathéodory: try
/// every linearly independent subset).
fn in_cone(v: &[BigRational], gens: &[Vec<BigRational>]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let n = v.len();
    let k = gens.len();
    for mask in 1u32..1 << k {
        let subset: Vec<&Vec<BigRational>> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        if subset.len() > n {
            continue;
        }
        let mut rows: Vec<Vec<BigRational>> = subset.iter().map(|g| g.to_vec()).collect();
        if rational_rank(&mut rows) != subset.len() {
            continue;
        }
        let a: Vec<Vec<BigRational>> = (0..n).map(|i| subset.iter().map(|g| g[i].clone()).collect()).collect();
        if let Some(lambda) = rational_solve(&a, v) {
            if lambda.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

impl Cone {
    pub fn new(generators: &[Vec<BigRational>]) -> Cone {
        let mut rays: Vec<Vec<BigInt>> = generators.iter().filter_map(|g| primitive(g)).collect();
        rays.sort();
        rays.dedup();
        let mut i = 0;
        while i < rays.len() {
            let others: Vec<Vec<BigRational>> =
                rays.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| to_q(r)).collect();
            if in_cone(&to_q(&rays[i]), &others) {
                rays.remove(i);
            } else {
                i += 1;
            }
        }
        Cone { rays }
    }

    pub fn zero() -> Cone {
        Cone { rays: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        let mut rows: Vec<Vec<BigRational>> = self.rays.iter().map(|r| to_q(r)).collect();
        rational_rank(&mut rows)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let gens: Vec<Vec<BigRational>> = self.rays.iter().map(|r| to_q(r)).collect();
        in_cone(v, &gens)
    }
}

/// A finite set of cones through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub cones: Vec<Cone>,
}

impl Fan {
    /// Generators of the one-dimensional cones.
    pub fn rays(&self) -> Vec<Vec<BigInt>> {
        self.cones.iter().filter(|c| c.dim() == 1 && c.rays.len() == 1).map(|c| c.rays[0].clone()).collect()
    }
}

/// The closed cone over `cell × {1}` in one dimension more.
pub fn cone_over(cell: &Polyhedron) -> Cone {
    let mut gens: Vec<Vec<BigRational>> = cell
        .vertices
        .iter()
        .map(|p| p.iter().cloned().chain(std::iter::once(qi(1))).collect())
        .collect();
    gens.extend(cell.rays.iter().map(|r| r.iter().map(|&x| qi(x)).chain(std::iter::once(qi(0))).collect()));
    Cone::new(&gens)
}

/// Far end of a 1-cell: a second vertex or a ray direction.
#[derive(Clone, Copy)]
enum End<'a> {
    At(&'a Point),
    Towards(&'a [i64]),
}

/// A decomposition of `Q^n` into polyhedral cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralDecomposition {
    pub n: usize,
    pub cells: Vec<Polyhedron>,
    /// Codimension-one faces of each cell, as indices into `cells`.
    pub facets: Vec<Vec<usize>>,
}

impl PolyhedralDecomposition {
    /// The decomposition with the single cell `Q^n`.
    pub fn trivial(n: usize) -> Self {
        let mut rays = Vec::new();
        for i in 0..n {
            for s in [1, -1] {
                let mut r = vec![0; n];
                r[i] = s;
                rays.push(r);
            }
        }
        PolyhedralDecomposition { n, cells: vec![Polyhedron { vertices: vec![vec![qi(0); n]], rays }], facets: vec![Vec::new()] }
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = (usize, &Polyhedron)> + '_ {
        self.cells.iter().enumerate().filter(move |(_, c)| c.dim() == k)
    }

    pub fn is_zero_cell(&self, p: &[BigRational]) -> bool {
        self.cells.iter().any(|c| c.is_bounded() && c.vertices.len() == 1 && c.vertices[0] == p)
    }

    fn is_one_cell(&self, a: &Point, end: End) -> bool {
        self.cells.iter().any(|c| match end {
            End::At(b) => c.rays.is_empty() && c.vertices.len() == 2 && c.vertices.contains(a) && c.vertices.contains(b),
            End::Towards(dir) => c.vertices.len() == 1 && c.vertices[0] == *a && c.rays.len() == 1 && c.rays[0] == dir,
        })
    }
}

/// Recession cones of all cells, without repetition.
pub fn asymptotic_fan(p: &PolyhedralDecomposition) -> Fan {
    let cones: BTreeSet<Cone> = p
        .cells
        .iter()
        .map(|c| Cone::new(&c.rays.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect::<Vec<_>>()))
        .collect();
    Fan { cones: cones.into_iter().collect() }
}

/// A failure of one of the three goodness conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodnessViolation {
    /// (i) a vertex image is not a 0-cell.
    VertexNotZeroCell { curve: usize, vertex: usize },
    /// (i) an edge image is not a union of 1-cells.
    EdgeNotInSkeleton { curve: usize, edge: EdgeId },
    /// (ii) an edge meets a constraint outside the 0-cells.
    ConstraintOffZeroCells { curve: usize, constraint: usize, edge: EdgeId },
    /// (iii) the weight does not divide the integral length.
    LengthNotDivisible { curve: usize, edge: usize, length: BigRational, weight: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoodnessReport {
    pub violations: Vec<GoodnessViolation>,
}

impl GoodnessReport {
    pub fn is_good(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `(start, direction, is_ray)` of an edge image; bounded edges run over `[0, 1]`.
fn edge_image(c: &TropicalCurve, e: EdgeId) -> (Point, Point, bool) {
    match e {
        EdgeId::Bounded(i) => {
            let b = &c.graph.bounded[i];
            (c.positions[b.tail].clone(), sub(&c.positions[b.head], &c.positions[b.tail]), false)
        }
        EdgeId::Unbounded(i) => {
            let l = &c.graph.unbounded[i];
            (c.positions[l.vertex].clone(), l.direction.iter().map(|&x| qi(x)).collect(), true)
        }
    }
}

/// Parameter of `p` on `start + t dir`, if it lies on that line.
fn line_param(start: &[BigRational], dir: &[BigRational], p: &[BigRational]) -> Option<BigRational> {
    let d = sub(p, start);
    let k = dir.iter().position(|x| !x.is_zero())?;
    let t = &d[k] / &dir[k];
    d.iter().zip(dir).all(|(a, b)| *a == &t * b).then_some(t)
}

fn at(start: &[BigRational], dir: &[BigRational], t: &BigRational) -> Point {
    start.iter().zip(dir).map(|(s, d)| s + d * t).collect()
}

fn in_range(t: &BigRational, ray: bool) -> bool {
    !t.is_negative() && (ray || *t <= qi(1))
}

/// Checks goodness conditions (i)–(iii) for every curve and constraint.
pub fn validate_good(
    p: &PolyhedralDecomposition,
    curves: &[TropicalCurve],
    constraints: &[AffineConstraint],
) -> Result<GoodnessReport> {
    let zero_cells: Vec<&Point> =
        p.cells.iter().filter(|c| c.is_bounded() && c.vertices.len() == 1).map(|c| &c.vertices[0]).collect();
    let mut report = GoodnessReport::default();
    let quotients = constraints
        .iter()
        .map(|a| quotient_basis(&a.directions, a.ambient_rank()).map(|q| q.projection))
        .collect::<Result<Vec<_>>>()?;
    for (ci, c) in curves.iter().enumerate() {
        for (v, pos) in c.positions.iter().enumerate() {
            if !p.is_zero_cell(pos) {
                report.violations.push(GoodnessViolation::VertexNotZeroCell { curve: ci, vertex: v });
            }
        }
        for e in c.graph.edges() {
            let (start, dir, ray) = edge_image(c, e);
            let mut params: BTreeSet<BigRational> = zero_cells
                .iter()
                .filter_map(|z| line_param(&start, &dir, z))
                .filter(|t| in_range(t, ray))
                .collect();
            params.insert(qi(0));
            if !ray {
                params.insert(qi(1));
            }
            let pts: Vec<Point> = params.iter().map(|t| at(&start, &dir, t)).collect();
            let mut covered = pts.windows(2).all(|w| p.is_one_cell(&w[0], End::At(&w[1])));
            if ray {
                let (u, _) = primitive_with_length(&dir);
                covered &= p.is_one_cell(pts.last().unwrap(), End::Towards(&u));
            }
            if !covered {
                report.violations.push(GoodnessViolation::EdgeNotInSkeleton { curve: ci, edge: e });
            }
            for (j, (a, proj)) in constraints.iter().zip(&quotients).enumerate() {
                let r0 = apply_rational(proj, &sub(&start, &a.base));
                let rd = apply_rational(proj, &dir);
                let hit = match rd.iter().position(|x| !x.is_zero()) {
                    // Parallel to the constraint: either disjoint or a whole segment inside it.
                    None => r0.iter().all(Zero::is_zero).then_some(None),
                    Some(k) => {
                        let t = -&r0[k] / &rd[k];
                        let on = r0.iter().zip(&rd).all(|(x, y)| (x + &t * y).is_zero());
                        (on && in_range(&t, ray)).then(|| Some(at(&start, &dir, &t)))
                    }
                };
                let bad = match hit {
                    None => false,
                    Some(None) => true,
                    Some(Some(q)) => !p.is_zero_cell(&q),
                };
                if bad {
                    report.violations.push(GoodnessViolation::ConstraintOffZeroCells { curve: ci, constraint: j, edge: e });
                }
            }
        }
        for (i, b) in c.graph.bounded.iter().enumerate() {
            let length = c.lattice_length(i);
            if !(&length / BigRational::from_integer(b.weight.into())).is_integer() {
                report.violations.push(GoodnessViolation::LengthNotDivisible { curve: ci, edge: i, length, weight: b.weight });
            }
        }
    }
    Ok(report)
}

/// The least positive integer `s` making every vertex position and base
/// point integral and every bounded length divisible by its weight after
/// scaling by `s`.
pub fn rescale_for_goodness(curves: &[TropicalCurve], constraints: &[AffineConstraint]) -> BigInt {
    let mut s = BigInt::one();
    for c in curves {
        for x in c.positions.iter().flatten() {
            s = s.lcm(x.denom());
        }
        for (i, b) in c.graph.bounded.iter().enumerate() {
            let q = c.lattice_length(i) / BigRational::from_integer(b.weight.into());
            s = s.lcm(q.denom());
        }
    }
    for x in constraints.iter().flat_map(|a| &a.base) {
        s = s.lcm(x.denom());
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Segment(usize),
    Ray(usize),
    Box,
}

fn angle_half(d: &[BigRational]) -> u8 {
    if d[1].is_positive() || (d[1].is_zero() && d[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Overlay of all curve images in the plane, with every vertex and every
/// point where an edge meets a constraint as a 0-cell, completed by the
/// complementary regions.
pub fn build_decomposition_2d(curves: &[TropicalCurve], constraints: &[AffineConstraint]) -> Result<PolyhedralDecomposition> {
    if curves.iter().any(|c| c.n != 2) || constraints.iter().any(|a| a.ambient_rank() != 2) {
        return Err(Error::DimensionMismatch("planar decomposition needs plane data".into()));
    }
    let pieces: Vec<(usize, Piece)> =
        curves.iter().enumerate().flat_map(|(i, c)| curve_pieces(c).into_iter().map(move |(_, p)| (i, p))).collect();
    if pieces.is_empty() {
        return Ok(PolyhedralDecomposition::trivial(2));
    }
    let mut params: Vec<BTreeSet<BigRational>> = pieces
        .iter()
        .map(|(_, p)| if p.ray { BTreeSet::from([qi(0)]) } else { BTreeSet::from([qi(0), qi(1)]) })
        .collect();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (a, b) = (&pieces[i].1, &pieces[j].1);
            match a.meet(b) {
                Meet::Disjoint => {}
                Meet::At(t, s) => {
                    params[i].insert(t);
                    params[j].insert(s);
                }
                Meet::Overlap => {
                    if pieces[i].0 == pieces[j].0 {
                        return Err(Error::NonGenericInput(format!("curve {} overlaps itself", pieces[i].0)));
                    }
                    for (x, y, k) in [(a, b, i), (b, a, j)] {
                        for end in std::iter::once(y.start.clone()).chain(y.end()) {
                            if let Some(t) = x.locate(&end) {
                                params[k].insert(t);
                            }
                        }
                    }
                }
            }
        }
    }
    for a in constraints {
        let lines: Vec<Piece> = match a.directions.rank() {
            0 => Vec::new(),
            1 => {
                let d: Vec<i64> = (0..2).map(|i| a.directions.get(i, 0).to_i64().expect("small direction")).collect();
                let back: Vec<i64> = d.iter().map(|x| -x).collect();
                vec![Piece::ray(&a.base, &d), Piece::ray(&a.base, &back)]
            }
            _ => continue,
        };
        for (k, (_, p)) in pieces.iter().enumerate() {
            if lines.is_empty() {
                if let Some(t) = p.locate(&a.base) {
                    params[k].insert(t);
                }
            }
            for l in &lines {
                if let Meet::At(t, _) = p.meet(l) {
                    params[k].insert(t);
                }
            }
        }
    }

    // Split every piece at its parameters and merge shared sub-pieces.
    let mut vertex_ids: BTreeMap<Point, usize> = BTreeMap::new();
    let mut segments: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut rays: BTreeSet<(usize, Vec<i64>)> = BTreeSet::new();
    let mut pts_of: Vec<Vec<Point>> = Vec::new();
    for (k, (_, p)) in pieces.iter().enumerate() {
        let pts: Vec<Point> = params[k].iter().map(|t| p.at(t)).collect();
        for q in &pts {
            let next = vertex_ids.len();
            vertex_ids.entry(q.clone()).or_insert(next);
        }
        pts_of.push(pts);
    }
    // Renumber vertices in coordinate order.
    let vertices: Vec<Point> = vertex_ids.keys().cloned().collect();
    let id = |q: &Point| vertices.binary_search(q).expect("vertex was recorded");
    for (k, (_, p)) in pieces.iter().enumerate() {
        let pts = &pts_of[k];
        for w in pts.windows(2) {
            let (a, b) = (id(&w[0]), id(&w[1]));
            segments.insert((a.min(b), a.max(b)));
        }
        if p.ray {
            rays.insert((id(pts.last().unwrap()), primitive_with_length(&p.dir).0));
        }
    }
    let segments: Vec<(usize, usize)> = segments.into_iter().collect();
    let rays: Vec<(usize, Vec<i64>)> = rays.into_iter().collect();

    // Clip rays to a box around all vertices and close it up.
    let nv = vertices.len();
    let lo: Vec<BigRational> = (0..2).map(|i| vertices.iter().map(|v| &v[i]).min().unwrap() - qi(1)).collect();
    let hi: Vec<BigRational> = (0..2).map(|i| vertices.iter().map(|v| &v[i]).max().unwrap() + qi(1)).collect();
    let mut nodes: Vec<Point> = vertices.clone();
    let mut edges: Vec<(usize, usize, Kind)> = segments.iter().enumerate().map(|(i, &(a, b))| (a, b, Kind::Segment(i))).collect();
    let mut boundary: Vec<usize> = Vec::new();
    for (i, (v, u)) in rays.iter().enumerate() {
        let p = &vertices[*v];
        let t = (0..2)
            .filter(|&k| u[k] != 0)
            .map(|k| (if u[k] > 0 { &hi[k] } else { &lo[k] } - &p[k]) / qi(u[k]))
            .min()
            .unwrap();
        nodes.push(p.iter().zip(u).map(|(x, &d)| x + &t * qi(d)).collect());
        edges.push((*v, nodes.len() - 1, Kind::Ray(i)));
        boundary.push(nodes.len() - 1);
    }
    for corner in [[&lo[0], &lo[1]], [&hi[0], &lo[1]], [&hi[0], &hi[1]], [&lo[0], &hi[1]]] {
        let c: Point = corner.iter().map(|x| (*x).clone()).collect();
        if !boundary.iter().any(|&b| nodes[b] == c) {
            nodes.push(c);
            boundary.push(nodes.len() - 1);
        }
    }
    let (w, h) = (&hi[0] - &lo[0], &hi[1] - &lo[1]);
    let perimeter = |p: &Point| -> BigRational {
        if p[1] == lo[1] && p[0] < hi[0] {
            &p[0] - &lo[0]
        } else if p[0] == hi[0] && p[1] < hi[1] {
            &w + &p[1] - &lo[1]
        } else if p[1] == hi[1] && p[0] > lo[0] {
            &w + &h + &hi[0] - &p[0]
        } else {
            &w + &w + &h + &hi[1] - &p[1]
        }
    };
    boundary.sort_by_key(|&b| perimeter(&nodes[b]));
    for k in 0..boundary.len() {
        edges.push((boundary[k], boundary[(k + 1) % boundary.len()], Kind::Box));
    }

    // Trace faces with the face on the left of each half-edge.
    let half = |hid: usize| -> (usize, usize) {
        let (a, b, _) = edges[hid / 2];
        if hid % 2 == 0 { (a, b) } else { (b, a) }
    };
    let dir = |hid: usize| -> Point {
        let (a, b) = half(hid);
        sub(&nodes[b], &nodes[a])
    };
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for hid in 0..2 * edges.len() {
        outgoing[half(hid).0].push(hid);
    }
    for out in outgoing.iter_mut() {
        out.sort_by(|&x, &y| {
            let (dx, dy) = (dir(x), dir(y));
            angle_half(&dx).cmp(&angle_half(&dy)).then_with(|| qi(0).cmp(&cross(&dx, &dy)))
        });
    }
    let next = |hid: usize| -> usize {
        let twin = hid ^ 1;
        let v = half(twin).0;
        let out = &outgoing[v];
        let i = out.iter().position(|&x| x == twin).unwrap();
        out[(i + out.len() - 1) % out.len()]
    };
    let mut seen = vec![false; 2 * edges.len()];
    let mut two_cells: Vec<(Polyhedron, Vec<usize>)> = Vec::new();
    let (n0, n1) = (nv, nv + segments.len());
    for start in 0..2 * edges.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut hid = start;
        while !seen[hid] {
            seen[hid] = true;
            cycle.push(hid);
            hid = next(hid);
        }
        let area: BigRational = cycle.iter().map(|&x| cross(&nodes[half(x).0], &nodes[half(x).1])).sum();
        if !area.is_positive() {
            continue;
        }
        let mut cell_vertices = Vec::new();
        let mut facets = Vec::new();
        let (mut out_dir, mut in_dir) = (None, None);
        for (k, &x) in cycle.iter().enumerate() {
            let y = cycle[(k + 1) % cycle.len()];
            let v = half(x).1;
            if v < nv {
                let turn = cross(&dir(x), &dir(y));
                if turn.is_zero() && angle_half(&dir(x)) != angle_half(&dir(y)) {
                    return Err(Error::NonGenericInput("an edge ends inside a region".into()));
                }
                if !turn.is_zero() {
                    cell_vertices.push(nodes[v].clone());
                }
            }
            match edges[x / 2].2 {
                Kind::Segment(i) => facets.push(n0 + i),
                Kind::Ray(i) => {
                    facets.push(n1 + i);
                    let slot = if half(x).0 < nv { &mut out_dir } else { &mut in_dir };
                    if slot.replace(rays[i].1.clone()).is_some() {
                        return Err(Error::NonGenericInput("a region is not convex".into()));
                    }
                }
                Kind::Box => {}
            }
        }
        let recession = match (out_dir, in_dir) {
            (None, None) => Vec::new(),
            (Some(a), Some(b)) => {
                let c = a[0] * b[1] - a[1] * b[0];
                if c > 0 {
                    vec![a, b]
                } else if c == 0 && a == b {
                    vec![a]
                } else if c == 0 {
                    let perp = vec![-a[1], a[0]];
                    vec![a, perp, b]
                } else {
                    return Err(Error::NonGenericInput("a region is not convex".into()));
                }
            }
            _ => return Err(Error::NonGenericInput("a region is not convex".into())),
        };
        facets.sort_unstable();
        facets.dedup();
        two_cells.push((Polyhedron { vertices: cell_vertices, rays: recession }, facets));
    }

    let mut cells: Vec<Polyhedron> = vertices.iter().map(|v| Polyhedron::point(v.clone())).collect();
    let mut facets: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &(a, b) in &segments {
        cells.push(Polyhedron::segment(vertices[a].clone(), vertices[b].clone()));
        facets.push(vec![a, b]);
    }
    for (v, u) in &rays {
        cells.push(Polyhedron::ray(vertices[*v].clone(), u.clone()));
        facets.push(vec![*v]);
    }
    for (c, f) in two_cells {
        cells.push(c);
        facets.push(f);
    }
    Ok(PolyhedralDecomposition { n: 2, cells, facets })
}
