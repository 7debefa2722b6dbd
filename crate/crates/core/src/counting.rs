//! Lattice indices and the global count formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::incidence::{
    build_constraint_inclusion, build_t_h, sigma_sign_class, th_data, AffineConstraint, LatticeMapTh, RealPointConfig,
    SignClass,
};
use crate::lattice::{f2_solve, smith_normal_form, IntMatrix};
use crate::tropical::{curve_mikhalkin_mults, curve_welschinger_mult, EdgeId, TropicalCurve};

/// Complex, real and (optionally) twisted real index of a finite-index lattice map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBundle {
    /// Order of the cokernel.
    pub complex_index: BigInt,
    /// `2^(number of even invariant factors)`.
    pub real_index: BigInt,
    /// Either `real_index` or zero once a sign class has been tested.
    pub twisted_real: Option<BigInt>,
    pub factors: Vec<BigInt>,
}

/// Indices of a square nonsingular integer matrix.
pub fn real_index(m: &IntMatrix) -> Result<IndexBundle> {
    real_index_with(m, smith_normal_form)
}

/// [`real_index`] with an explicit normal-form routine, so a faulty one can be substituted in tests.
pub fn real_index_with(m: &IntMatrix, snf: impl Fn(&IntMatrix) -> crate::lattice::SnfResult) -> Result<IndexBundle> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("lattice map is {}x{}", m.rows(), m.cols())));
    }
    let s = snf(m);
    if s.rank < m.rows() {
        return Err(Error::InfiniteCokernel);
    }
    let complex_index: BigInt = s.invariant_factors.iter().product();
    let even = s.invariant_factors.iter().filter(|d| d.is_even()).count();
    Ok(IndexBundle {
        complex_index,
        real_index: BigInt::one() << even,
        twisted_real: None,
        factors: s.invariant_factors,
    })
}

/// Real index of `T_h` twisted by `σ`: the full real index when `σ` lies in the
/// image of `T_h` mod 2, else zero.
pub fn twisted_real_index(t: &LatticeMapTh, sigma: &SignClass) -> Result<IndexBundle> {
    let mut b = real_index(&t.matrix)?;
    debug_assert_eq!(b.complex_index, t.matrix.determinant().abs(), "SNF disagrees with the determinant");
    if sigma.bits.len() != t.matrix.rows() {
        return Err(Error::DimensionMismatch("sign class length differs from row count".into()));
    }
    let hit = f2_solve(&t.matrix, &sigma.bits).is_some();
    b.twisted_real = Some(if hit { b.real_index.clone() } else { BigInt::zero() });
    Ok(b)
}

/// `Π_bounded w^R(E) · Π_j w(E_j)` with `w^R(E) = 2` for even and 1 for odd weights.
pub fn total_real_weight(c: &TropicalCurve, marks: &[EdgeId]) -> BigInt {
    let bounded: BigInt = c
        .graph
        .bounded
        .iter()
        .map(|e| BigInt::from(if e.weight % 2 == 0 { 2 } else { 1 }))
        .product();
    bounded * marked_weight(c, marks)
}

/// `Π_bounded w(E) · Π_j w(E_j)`.
pub fn total_complex_weight(c: &TropicalCurve, marks: &[EdgeId]) -> BigInt {
    let bounded: BigInt = c.graph.bounded.iter().map(|e| BigInt::from(e.weight)).product();
    bounded * marked_weight(c, marks)
}

fn marked_weight(c: &TropicalCurve, marks: &[EdgeId]) -> BigInt {
    marks.iter().map(|&e| BigInt::from(c.graph.weight(e))).product()
}

/// A curve together with its marked edges, one per constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCurve {
    pub curve: TropicalCurve,
    pub marks: Vec<EdgeId>,
}

impl MarkedCurve {
    pub fn new(curve: TropicalCurve) -> Self {
        let marks = curve.graph.marked.clone();
        MarkedCurve { curve, marks }
    }
}

/// Real-count input: signs of the constraint points and the sign of `t`.
#[derive(Clone, Debug)]
pub struct RealData<'a> {
    pub config: &'a RealPointConfig,
    pub sign_t: i8,
}

/// One curve's contribution to the counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRow {
    pub curve: usize,
    pub complex_weight: BigInt,
    pub th: IndexBundle,
    pub constraint_complex: BigInt,
    pub constraint_real: BigInt,
    pub complex_contribution: BigInt,
    pub real_weight: BigInt,
    pub sigma: Option<SignClass>,
    /// `twisted_real(T_h) · real weight · Π D^R(A_j)` when a real count was requested.
    pub real_contribution: Option<BigInt>,
    /// `Π_V Mult(V)` for plane curves.
    pub vertex_product: Option<BigInt>,
    pub welschinger: Option<i64>,
}

impl CurveRow {
    /// Whether the assembled complex contribution equals the product of vertex multiplicities.
    pub fn vertex_identity_holds(&self) -> Option<bool> {
        self.vertex_product.as_ref().map(|v| *v == self.complex_contribution)
    }
}

/// Per-curve rows and totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub rows: Vec<CurveRow>,
    pub n_complex: BigInt,
    pub n_real: Option<BigInt>,
    pub welschinger: Option<i64>,
}

impl CountReport {
    /// `N^R ≡ N (mod 2)`.
    pub fn parity_holds(&self) -> Option<bool> {
        self.n_real.as_ref().map(|r| (r - &self.n_complex).is_even())
    }
}

fn constraint_indices(c: &MarkedCurve, constraints: &[AffineConstraint], t: &LatticeMapTh) -> Result<(BigInt, BigInt)> {
    let mut complex = BigInt::one();
    let mut real = BigInt::one();
    for (j, (&e, a)) in c.marks.iter().zip(constraints).enumerate() {
        let u = c.curve.direction_from(e, t.anchors[j]);
        let inc = build_constraint_inclusion(&u, a);
        let b = real_index(&inc)?;
        complex *= b.complex_index;
        real *= b.real_index;
    }
    Ok((complex, real))
}

fn curve_row(idx: usize, c: &MarkedCurve, constraints: &[AffineConstraint], real: Option<&RealData>) -> Result<CurveRow> {
    let t = build_t_h(&c.curve, constraints, &c.marks)?;
    let (constraint_complex, constraint_real) = constraint_indices(c, constraints, &t)?;
    let complex_weight = total_complex_weight(&c.curve, &c.marks);
    let real_weight = total_real_weight(&c.curve, &c.marks);
    let (th, sigma, real_contribution) = match real {
        Some(r) => {
            let sigma = sigma_sign_class(&t, constraints, r.config, r.sign_t)?;
            let th = twisted_real_index(&t, &sigma)?;
            let contribution = th.twisted_real.clone().unwrap() * &real_weight * &constraint_real;
            (th, Some(sigma), Some(contribution))
        }
        None => (real_index(&t.matrix)?, None, None),
    };
    let complex_contribution = &complex_weight * &th.complex_index * &constraint_complex;
    let (vertex_product, welschinger) = if c.curve.n == 2 && c.curve.graph.is_trivalent() {
        (Some(curve_mikhalkin_mults(&c.curve)?.0), Some(curve_welschinger_mult(&c.curve)?))
    } else {
        (None, None)
    };
    Ok(CurveRow {
        curve: idx,
        complex_weight,
        th,
        constraint_complex,
        constraint_real,
        complex_contribution,
        real_weight,
        sigma,
        real_contribution,
        vertex_product,
        welschinger,
    })
}

/// Evaluates every curve (in parallel) and folds the totals in curve order.
pub fn count(curves: &[MarkedCurve], constraints: &[AffineConstraint], real: Option<RealData>) -> Result<CountReport> {
    let rows: Vec<CurveRow> = curves
        .par_iter()
        .enumerate()
        .map(|(i, c)| curve_row(i, c, constraints, real.as_ref()))
        .collect::<Result<_>>()?;
    let n_complex = rows.iter().map(|r| &r.complex_contribution).sum();
    let n_real = real.as_ref().map(|_| rows.iter().map(|r| r.real_contribution.clone().unwrap()).sum());
    let welschinger = rows.iter().map(|r| r.welschinger).sum::<Option<i64>>();
    Ok(CountReport { rows, n_complex, n_real, welschinger })
}

pub fn count_complex(curves: &[MarkedCurve], constraints: &[AffineConstraint]) -> Result<CountReport> {
    count(curves, constraints, None)
}

pub fn count_real(
    curves: &[MarkedCurve],
    constraints: &[AffineConstraint],
    config: &RealPointConfig,
    sign_t: i8,
) -> Result<CountReport> {
    count(curves, constraints, Some(RealData { config, sign_t }))
}

/// The cokernel invariant factors of `T_h` for an arbitrary orientation choice.
pub fn t_h_factors_with_orientation(
    c: &MarkedCurve,
    constraints: &[AffineConstraint],
    flip: &[bool],
) -> Result<Vec<BigInt>> {
    let t = crate::incidence::assemble_t_h(&th_data(&c.curve, &c.marks, flip), constraints, &Default::default())?;
    Ok(smith_normal_form(&t.matrix).invariant_factors)
}
