//! Affine constraints, marked-edge matching, the lattice map `T_h` and sign
//! classes of real constraint data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{apply_rational, quotient_basis, saturate, IntMatrix, QuotientBasis};
use crate::tropical::{expected_dimension, EdgeId, Point, TropicalCurve};

/// An affine subspace `base + L` with `L` spanned by saturated integral directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConstraint {
    pub base: Point,
    /// `n x k`, columns span `L ∩ Z^n`.
    pub directions: IntMatrix,
}

impl AffineConstraint {
    /// A point constraint.
    pub fn point(base: Point) -> Self {
        let n = base.len();
        AffineConstraint { base, directions: IntMatrix::zeros(n, 0) }
    }

    /// `base + span(directions)`; the directions are saturated here.
    pub fn new(base: Point, directions: &IntMatrix) -> Self {
        let n = base.len();
        AffineConstraint { base, directions: saturate(directions, n) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.base.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_rank() - self.directions.rank()
    }

    /// Number of conditions this constraint imposes on a curve (`codim - 1`).
    pub fn conditions(&self) -> usize {
        self.codim() - 1
    }

    fn quotient(&self) -> QuotientBasis {
        quotient_basis(&self.directions, self.ambient_rank()).expect("directions are saturated")
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        let diff: Vec<BigRational> = p.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        apply_rational(&self.quotient().projection, &diff).iter().all(Zero::is_zero)
    }
}

/// Signs of real constraint points, one sign vector per constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPointConfig {
    /// `signs[j][i]` is the sign of coordinate `i` of `P_j`; entries are `1` or `-1`.
    pub signs: Vec<Vec<i8>>,
}

impl RealPointConfig {
    pub fn all_positive(constraints: usize, n: usize) -> Self {
        RealPointConfig { signs: vec![vec![1; n]; constraints] }
    }
}

/// Whether the dimension count matches and no translation preserves the union of the constraints.
pub fn check_generality_dims(n: usize, genus: usize, degree_size: usize, constraints: &[AffineConstraint]) -> bool {
    let total: i64 = constraints.iter().map(|a| a.conditions() as i64).sum();
    if total != expected_dimension(n, genus, degree_size) {
        return false;
    }
    if constraints.is_empty() {
        return n == 0;
    }
    // Translations preserving every A_j form the intersection of the L(A_j).
    let mut stacked = IntMatrix::zeros(0, n);
    for a in constraints {
        stacked = stacked.vstack(&a.quotient().projection);
    }
    stacked.rank() == n
}

/// For each constraint, the unique edge whose image meets it.
pub fn match_marked_edges(c: &TropicalCurve, constraints: &[AffineConstraint]) -> Result<Vec<EdgeId>> {
    let mut out = Vec::with_capacity(constraints.len());
    for (j, a) in constraints.iter().enumerate() {
        let proj = a.quotient().projection;
        let rel = |p: &Point| {
            let d: Vec<BigRational> = p.iter().zip(&a.base).map(|(x, y)| x - y).collect();
            apply_rational(&proj, &d)
        };
        if c.positions.iter().any(|p| rel(p).iter().all(Zero::is_zero)) {
            return Err(Error::ConstraintOnVertex(j));
        }
        let mut hits = Vec::new();
        for e in c.graph.edges() {
            let (start, dir, len) = match e {
                EdgeId::Bounded(i) => {
                    let (u, l) = c.bounded_vector(i);
                    (&c.positions[c.graph.bounded[i].tail], u, Some(l))
                }
                EdgeId::Unbounded(i) => {
                    let leg = &c.graph.unbounded[i];
                    (&c.positions[leg.vertex], leg.direction.clone(), None)
                }
            };
            let r0 = rel(start);
            let du: Vec<BigRational> = dir.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
            let ru = apply_rational(&proj, &du);
            // Solve r0 + t ru = 0 for the edge parameter t.
            let Some(k) = ru.iter().position(|x| !x.is_zero()) else {
                if r0.iter().all(Zero::is_zero) {
                    return Err(Error::AmbiguousMark(j));
                }
                continue;
            };
            let t = -&r0[k] / &ru[k];
            if r0.iter().zip(&ru).any(|(x, y)| !(x + &t * y).is_zero()) {
                continue;
            }
            let inside = t.is_positive() && len.as_ref().is_none_or(|l| &t < l);
            if inside {
                hits.push(e);
            }
        }
        match hits.as_slice() {
            [] => return Err(Error::ConstraintMissed(j)),
            [e] => out.push(*e),
            _ => return Err(Error::AmbiguousMark(j)),
        }
    }
    Ok(out)
}

/// Which block of `T_h` a row belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowLabel {
    Edge { edge: usize, coord: usize },
    Constraint { index: usize, coord: usize },
}

/// The lattice map `T_h` from vertex positions to edge and constraint quotients.
#[derive(Clone, Debug)]
pub struct LatticeMapTh {
    pub matrix: IntMatrix,
    pub row_labels: Vec<RowLabel>,
    /// `(vertex, ambient coordinate)` per column.
    pub col_labels: Vec<(usize, usize)>,
    /// Quotient by `Z u` for each bounded edge.
    pub edge_bases: Vec<QuotientBasis>,
    /// Quotient by the saturation of `Z u + L(A_j)` for each constraint.
    pub constraint_bases: Vec<QuotientBasis>,
    /// `(∂⁻, ∂⁺)` used for each bounded edge.
    pub orientation: Vec<(usize, usize)>,
    /// `∂⁻` vertex of each marked edge.
    pub anchors: Vec<usize>,
}

impl LatticeMapTh {
    pub fn is_square(&self) -> bool {
        self.matrix.is_square()
    }

    /// The rows belonging to constraint `j`.
    pub fn constraint_rows(&self, j: usize) -> Vec<usize> {
        self.row_labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, RowLabel::Constraint { index, .. } if *index == j))
            .map(|(i, _)| i)
            .collect()
    }

    /// Right-hand side of `T_h(φ) = (0, [a_j])`: zero on edge rows, the
    /// projected base points on constraint rows.
    pub fn constraint_values(&self, constraints: &[AffineConstraint]) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.matrix.rows());
        for l in &self.row_labels {
            match *l {
                RowLabel::Edge { .. } => out.push(BigRational::zero()),
                RowLabel::Constraint { index, coord } => {
                    let p = &self.constraint_bases[index].projection;
                    let row = IntMatrix::new(1, p.cols(), p.row(coord));
                    out.push(apply_rational(&row, &constraints[index].base).remove(0));
                }
            }
        }
        out
    }

    /// `T_h` applied to a position vector.
    pub fn evaluate(&self, positions: &[Point]) -> Vec<BigRational> {
        let flat: Vec<BigRational> = self.col_labels.iter().map(|&(v, i)| positions[v][i].clone()).collect();
        apply_rational(&self.matrix, &flat)
    }
}

/// Combinatorial input for assembling `T_h` without vertex positions.
#[derive(Clone, Debug)]
pub struct ThData {
    pub vertex_count: usize,
    pub n: usize,
    /// `(∂⁻, ∂⁺, primitive direction from ∂⁻ to ∂⁺)` per bounded edge.
    pub bounded: Vec<(usize, usize, Vec<i64>)>,
    /// `(∂⁻, primitive direction of the marked edge leaving ∂⁻)` per constraint.
    pub marks: Vec<(usize, Vec<i64>)>,
}

/// Changes of quotient basis applied per row block; used to exercise invariance.
#[derive(Clone, Debug, Default)]
pub struct BasisTwists {
    pub edges: Vec<Option<IntMatrix>>,
    pub constraints: Vec<Option<IntMatrix>>,
}

fn col_vec(v: &[i64]) -> IntMatrix {
    IntMatrix::from_columns(v.len(), &[v])
}

pub fn assemble_t_h(data: &ThData, constraints: &[AffineConstraint], twists: &BasisTwists) -> Result<LatticeMapTh> {
    let n = data.n;
    if data.marks.len() != constraints.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} marks for {} constraints",
            data.marks.len(),
            constraints.len()
        )));
    }
    let cols = n * data.vertex_count;
    let col_labels = (0..data.vertex_count).flat_map(|v| (0..n).map(move |i| (v, i))).collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut row_labels = Vec::new();
    let twist = |t: Option<&Option<IntMatrix>>, p: IntMatrix| match t {
        Some(Some(m)) => m * &p,
        _ => p,
    };
    let mut edge_bases = Vec::new();
    for (k, (minus, plus, u)) in data.bounded.iter().enumerate() {
        let mut qb = quotient_basis(&col_vec(u), n)?;
        qb.projection = twist(twists.edges.get(k), qb.projection);
        for r in 0..qb.quotient_rank {
            let mut row = vec![BigInt::zero(); cols];
            for i in 0..n {
                let x = qb.projection.get(r, i);
                row[plus * n + i] += x;
                row[minus * n + i] -= x;
            }
            rows.push(row);
            row_labels.push(RowLabel::Edge { edge: k, coord: r });
        }
        edge_bases.push(qb);
    }
    let mut constraint_bases = Vec::new();
    for (j, ((anchor, u), a)) in data.marks.iter().zip(constraints).enumerate() {
        let gens = col_vec(u).hstack(&a.directions);
        let target = saturate(&gens, n);
        let mut qb = quotient_basis(&target, n)?;
        qb.projection = twist(twists.constraints.get(j), qb.projection);
        for r in 0..qb.quotient_rank {
            let mut row = vec![BigInt::zero(); cols];
            for i in 0..n {
                row[anchor * n + i] += qb.projection.get(r, i);
            }
            rows.push(row);
            row_labels.push(RowLabel::Constraint { index: j, coord: r });
        }
        constraint_bases.push(qb);
    }
    let matrix = IntMatrix::new(rows.len(), cols, rows.into_iter().flatten().collect());
    Ok(LatticeMapTh {
        matrix,
        row_labels,
        col_labels,
        edge_bases,
        constraint_bases,
        orientation: data.bounded.iter().map(|(a, b, _)| (*a, *b)).collect(),
        anchors: data.marks.iter().map(|(a, _)| *a).collect(),
    })
}

/// Combinatorial data of a positioned curve. `flip[i]` reverses the default
/// orientation of bounded edge `i` (lexicographically smaller endpoint first).
pub fn th_data(c: &TropicalCurve, marks: &[EdgeId], flip: &[bool]) -> ThData {
    let mut bounded = Vec::with_capacity(c.graph.bounded.len());
    let lex_minus = |i: usize| {
        let e = &c.graph.bounded[i];
        if c.positions[e.tail] <= c.positions[e.head] {
            (e.tail, e.head)
        } else {
            (e.head, e.tail)
        }
    };
    for i in 0..c.graph.bounded.len() {
        let (mut a, mut b) = lex_minus(i);
        if flip.get(i).copied().unwrap_or(false) {
            std::mem::swap(&mut a, &mut b);
        }
        bounded.push((a, b, c.direction_from(EdgeId::Bounded(i), a)));
    }
    let marks = marks
        .iter()
        .map(|&e| match e {
            EdgeId::Unbounded(i) => {
                let leg = &c.graph.unbounded[i];
                (leg.vertex, leg.direction.clone())
            }
            EdgeId::Bounded(i) => {
                let (a, _) = lex_minus(i);
                (a, c.direction_from(e, a))
            }
        })
        .collect();
    ThData { vertex_count: c.graph.vertex_count, n: c.n, bounded, marks }
}

/// `T_h` for a curve with the given marked edges, under the default orientation convention.
pub fn build_t_h(c: &TropicalCurve, constraints: &[AffineConstraint], marks: &[EdgeId]) -> Result<LatticeMapTh> {
    assemble_t_h(&th_data(c, marks, &[]), constraints, &BasisTwists::default())
}

/// The inclusion `Z u + L(A) ⊂ saturate(Z u + L(A))`, written in a basis of the target.
pub fn build_constraint_inclusion(u: &[i64], a: &AffineConstraint) -> IntMatrix {
    let n = u.len();
    let gens = col_vec(u).hstack(&a.directions);
    let target = saturate(&gens, n);
    let to_q = |m: &IntMatrix| -> Vec<Vec<BigRational>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| BigRational::from(m.get(i, j).clone())).collect())
            .collect()
    };
    let t = to_q(&target);
    let mut out = IntMatrix::zeros(target.cols(), gens.cols());
    for j in 0..gens.cols() {
        let g: Vec<BigRational> = gens.column(j).into_iter().map(BigRational::from).collect();
        let x = crate::lattice::rational_solve(&t, &g).expect("generator lies in its saturation");
        for (i, v) in x.into_iter().enumerate() {
            assert!(v.is_integer(), "saturation contains the generators integrally");
            out.set(i, j, v.to_integer());
        }
    }
    out
}

/// A vector over F2 in the coordinates of the row blocks of a [`LatticeMapTh`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignClass {
    pub bits: Vec<bool>,
}

impl SignClass {
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }
}

/// The class `σ`: zero on edge rows; on the rows of constraint `j`, the
/// projection mod 2 of the sign exponents of `P_j` twisted by `sign_t^{a_j}`.
pub fn sigma_sign_class(
    t: &LatticeMapTh,
    constraints: &[AffineConstraint],
    config: &RealPointConfig,
    sign_t: i8,
) -> Result<SignClass> {
    if config.signs.len() != constraints.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} sign vectors for {} constraints",
            config.signs.len(),
            constraints.len()
        )));
    }
    let mut exps = Vec::with_capacity(constraints.len());
    for (j, (a, s)) in constraints.iter().zip(&config.signs).enumerate() {
        if s.len() != a.ambient_rank() || s.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::DimensionMismatch(format!("sign vector {j} must have {} entries of ±1", a.ambient_rank())));
        }
        let mut e = Vec::with_capacity(s.len());
        for (i, &sign) in s.iter().enumerate() {
            let b = &a.base[i];
            if !b.is_integer() {
                return Err(Error::NonIntegralBase(j));
            }
            let twist = sign_t < 0 && b.to_integer().is_odd();
            e.push((sign < 0) ^ twist);
        }
        exps.push(e);
    }
    let bits = t
        .row_labels
        .iter()
        .map(|l| match *l {
            RowLabel::Edge { .. } => false,
            RowLabel::Constraint { index, coord } => {
                let p = &t.constraint_bases[index].projection;
                (0..p.cols()).fold(false, |acc, i| acc ^ (exps[index][i] && p.get(coord, i).is_odd()))
            }
        })
        .collect();
    Ok(SignClass { bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::smith_normal_form;
    use crate::tropical::{point, q, qi, standard_line, BoundedEdge, TropicalGraph, UnboundedEdge};
    use num_traits::One;

    fn pt(a: &str, b: &str) -> Point {
        vec![q(a), q(b)]
    }

    fn points(ps: &[[i64; 2]]) -> Vec<AffineConstraint> {
        ps.iter().map(|p| AffineConstraint::point(point(p))).collect()
    }

    /// A conic-degree curve through five points.
    fn conic() -> (TropicalCurve, Vec<AffineConstraint>) {
        let graph = TropicalGraph {
            vertex_count: 4,
            bounded: vec![
                BoundedEdge { tail: 0, head: 1, weight: 1 },
                BoundedEdge { tail: 1, head: 2, weight: 1 },
                BoundedEdge { tail: 2, head: 3, weight: 1 },
            ],
            unbounded: vec![
                UnboundedEdge { vertex: 0, direction: vec![-1, 0], weight: 1 },
                UnboundedEdge { vertex: 0, direction: vec![0, -1], weight: 1 },
                UnboundedEdge { vertex: 1, direction: vec![0, -1], weight: 1 },
                UnboundedEdge { vertex: 2, direction: vec![1, 1], weight: 1 },
                UnboundedEdge { vertex: 3, direction: vec![-1, 0], weight: 1 },
                UnboundedEdge { vertex: 3, direction: vec![1, 1], weight: 1 },
            ],
            marked: vec![],
        };
        let positions = vec![point(&[0, 0]), point(&[1, 1]), point(&[2, 3]), point(&[2, 5])];
        let c = TropicalCurve::new(graph, positions, 2).unwrap();
        assert!(crate::tropical::check_balancing(&c).unwrap().is_empty());
        let cons = vec![
            AffineConstraint::point(pt("-3", "0")),
            AffineConstraint::point(pt("0", "-2")),
            AffineConstraint::point(pt("1", "-7")),
            AffineConstraint::point(pt("5", "6")),
            AffineConstraint::point(pt("-5", "5")),
        ];
        (c, cons)
    }

    #[test]
    fn generality_dimension_count() {
        let two = points(&[[0, 0], [1, 5]]);
        assert!(check_generality_dims(2, 0, 3, &two));
        let three = points(&[[0, 0], [1, 5], [3, 2]]);
        assert!(!check_generality_dims(2, 0, 3, &three));
        let dir = IntMatrix::from_columns(2, &[[1, 0]]);
        let lines = vec![
            AffineConstraint::new(point(&[0, 0]), &dir),
            AffineConstraint::new(point(&[0, 1]), &dir),
        ];
        // Lines impose no conditions on a curve in the plane; even with a matching count they are invariant.
        assert!(!check_generality_dims(2, 0, 0, &lines));
        assert!(!check_generality_dims(2, 0, 3, &lines));
    }

    #[test]
    fn matching_on_line() {
        let line = standard_line(point(&[0, 0]));
        let cons = points(&[[-3, 0], [0, -5]]);
        let marks = match_marked_edges(&line, &cons).unwrap();
        assert_eq!(marks, vec![EdgeId::Unbounded(0), EdgeId::Unbounded(1)]);
        assert_eq!(match_marked_edges(&line, &points(&[[1, 1]])).unwrap(), vec![EdgeId::Unbounded(2)]);
        assert_eq!(match_marked_edges(&line, &points(&[[5, 7]])), Err(Error::ConstraintMissed(0)));
        assert_eq!(match_marked_edges(&line, &points(&[[0, 0]])), Err(Error::ConstraintOnVertex(0)));
    }

    #[test]
    fn t_h_of_line() {
        let line = standard_line(point(&[0, 0]));
        let cons = points(&[[-3, 0], [0, -5]]);
        let marks = match_marked_edges(&line, &cons).unwrap();
        let t = build_t_h(&line, &cons, &marks).unwrap();
        assert!(t.is_square());
        assert_eq!(t.matrix.determinant().abs(), BigInt::one());
        assert_eq!(t.evaluate(&line.positions), t.constraint_values(&cons));
    }

    #[test]
    fn t_h_of_conic() {
        let (c, cons) = conic();
        let marks = match_marked_edges(&c, &cons).unwrap();
        assert_eq!(
            marks,
            vec![
                EdgeId::Unbounded(0),
                EdgeId::Unbounded(1),
                EdgeId::Unbounded(2),
                EdgeId::Unbounded(3),
                EdgeId::Unbounded(4),
            ]
        );
        let t = build_t_h(&c, &cons, &marks).unwrap();
        assert!(t.is_square());
        assert!(!t.matrix.determinant().is_zero());
        assert_eq!(t.evaluate(&c.positions), t.constraint_values(&cons));
        // Translating by a lattice vector leaves the edge rows untouched.
        let shifted = c.translated(&[qi(3), qi(-4)]);
        let t2 = build_t_h(&shifted, &cons, &marks).unwrap();
        for (i, l) in t.row_labels.iter().enumerate() {
            if matches!(l, RowLabel::Edge { .. }) {
                assert_eq!(t.matrix.row(i), t2.matrix.row(i));
            }
        }
    }

    #[test]
    fn orientation_flip_keeps_cokernel() {
        let (c, cons) = conic();
        let marks = match_marked_edges(&c, &cons).unwrap();
        let base = smith_normal_form(&build_t_h(&c, &cons, &marks).unwrap().matrix).invariant_factors;
        let flipped = assemble_t_h(&th_data(&c, &marks, &[true, false, true]), &cons, &BasisTwists::default()).unwrap();
        assert_eq!(smith_normal_form(&flipped.matrix).invariant_factors, base);
    }

    #[test]
    fn constraint_inclusion_examples() {
        let a = AffineConstraint::point(point(&[0, 0]));
        let m = build_constraint_inclusion(&[-1, 0], &a);
        assert_eq!(m.determinant().abs(), BigInt::one());
        let a = AffineConstraint::new(point(&[0, 0, 0]), &IntMatrix::from_columns(3, &[[0, 0, 1]]));
        let m = build_constraint_inclusion(&[1, 1, 0], &a);
        assert_eq!(m.determinant().abs(), BigInt::one());
        let a = AffineConstraint::new(point(&[0, 0]), &IntMatrix::from_columns(2, &[[1, -1]]));
        let m = build_constraint_inclusion(&[1, 1], &a);
        assert_eq!(m.determinant().abs(), BigInt::from(2));
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariant_factors, vec![BigInt::one(), BigInt::from(2)]);
    }

    #[test]
    fn sign_class_examples() {
        let line = standard_line(point(&[0, 1]));
        let cons = points(&[[-3, 1], [0, -5]]);
        let marks = match_marked_edges(&line, &cons).unwrap();
        let t = build_t_h(&line, &cons, &marks).unwrap();
        let s = sigma_sign_class(&t, &cons, &RealPointConfig::all_positive(2, 2), 1).unwrap();
        assert!(s.is_zero());
        // The first constraint sits on the (-1,0) leg, so only the y sign survives.
        let cfg = RealPointConfig { signs: vec![vec![-1, 1], vec![1, 1]] };
        assert_eq!(sigma_sign_class(&t, &cons, &cfg, 1).unwrap().bits, vec![false, false]);
        let cfg = RealPointConfig { signs: vec![vec![1, -1], vec![1, 1]] };
        assert_eq!(sigma_sign_class(&t, &cons, &cfg, 1).unwrap().bits, vec![true, false]);
        // A negative parameter flips coordinates with odd base values; x = 0 on the second leg is even.
        let cfg = RealPointConfig::all_positive(2, 2);
        assert_eq!(sigma_sign_class(&t, &cons, &cfg, -1).unwrap().bits, vec![true, false]);
        let half = vec![AffineConstraint::point(pt("1/2", "0")), cons[1].clone()];
        assert_eq!(
            sigma_sign_class(&t, &half, &RealPointConfig::all_positive(2, 2), 1),
            Err(Error::NonIntegralBase(0))
        );
    }

    #[test]
    fn sign_class_ignores_subtorus_signs() {
        // Flipping the sign along the marked direction does not change the class.
        let (c, cons) = conic();
        let marks = match_marked_edges(&c, &cons).unwrap();
        let t = build_t_h(&c, &cons, &marks).unwrap();
        let base = RealPointConfig::all_positive(5, 2);
        let mut flipped = base.clone();
        flipped.signs[0] = vec![-1, 1]; // leg (-1,0): x sign lives in the quotiented subtorus
        flipped.signs[3] = vec![-1, -1]; // leg with direction (1,1)
        assert_eq!(
            sigma_sign_class(&t, &cons, &base, 1).unwrap(),
            sigma_sign_class(&t, &cons, &flipped, 1).unwrap()
        );
    }
}
