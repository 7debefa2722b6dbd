//! Welschinger signs: the node census of real lifts and the tropical aggregation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::plane::{curve_pieces, Meet};
use crate::tropical::{curve_welschinger_mult, vertex_multiplicities, EdgeId, TropicalCurve};

/// Real nodes hidden in one edge of weight `μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeCensus {
    pub elliptic: u64,
    pub hyperbolic: u64,
    pub imaginary_pairs: u64,
}

impl NodeCensus {
    pub fn total(&self) -> u64 {
        self.elliptic + self.hyperbolic + 2 * self.imaginary_pairs
    }
}

/// Root-of-unity sign `ζ_E` for each even-weight bounded edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftAssignment {
    pub zeta: BTreeMap<usize, i8>,
}

/// Node types over an edge of weight `mu`, given `ζ` and the sign of `t^{e/μ}`.
pub fn edge_census(mu: u64, zeta: i8, sign_t_pow: i8) -> Result<NodeCensus> {
    assert!(mu >= 1, "edge weights are positive");
    if mu % 2 == 1 {
        if zeta != 1 {
            return Err(Error::InvalidZeta(mu));
        }
        return Ok(NodeCensus { elliptic: mu - 1, hyperbolic: 0, imaginary_pairs: 0 });
    }
    if zeta * sign_t_pow > 0 {
        Ok(NodeCensus { elliptic: mu - 1, hyperbolic: 0, imaginary_pairs: 0 })
    } else {
        Ok(NodeCensus { elliptic: 0, hyperbolic: 1, imaginary_pairs: (mu - 2) / 2 })
    }
}

fn edge_index(c: &TropicalCurve, e: EdgeId) -> usize {
    match e {
        EdgeId::Bounded(i) => i,
        EdgeId::Unbounded(i) => c.graph.bounded.len() + i,
    }
}

/// Transverse crossings between images of non-adjacent edges, as
/// `(crossing points, Σ w1 w2 |det(u1, u2)|)`.
pub fn crossings(c: &TropicalCurve) -> Result<(usize, u64)> {
    let pieces = curve_pieces(c);
    let ends = |e: EdgeId| -> Vec<usize> {
        match e {
            EdgeId::Bounded(i) => vec![c.graph.bounded[i].tail, c.graph.bounded[i].head],
            EdgeId::Unbounded(i) => vec![c.graph.unbounded[i].vertex],
        }
    };
    for (e, p) in &pieces {
        let own = ends(*e);
        for (v, pos) in c.positions.iter().enumerate() {
            if !own.contains(&v) && p.locate(pos).is_some() {
                return Err(Error::NonGenericCrossing { edge: edge_index(c, *e), vertex: v });
            }
        }
    }
    let mut points = 0;
    let mut weighted = 0;
    for (a, (ea, pa)) in pieces.iter().enumerate() {
        for (eb, pb) in &pieces[a + 1..] {
            let (va, vb) = (ends(*ea), ends(*eb));
            if va.iter().any(|v| vb.contains(v)) {
                continue;
            }
            match pa.meet(pb) {
                Meet::Disjoint => {}
                Meet::Overlap => {
                    return Err(Error::NonGenericCrossing { edge: edge_index(c, *ea), vertex: vb[0] });
                }
                Meet::At(..) => {
                    let ua = c.direction_from(*ea, va[0]);
                    let ub = c.direction_from(*eb, vb[0]);
                    let det = (ua[0] * ub[1] - ua[1] * ub[0]).unsigned_abs();
                    points += 1;
                    weighted += c.graph.weight(*ea) * c.graph.weight(*eb) * det;
                }
            }
        }
    }
    Ok((points, weighted))
}

/// Number of transverse crossing points between images of non-adjacent edges.
pub fn crossing_count(c: &TropicalCurve) -> Result<usize> {
    crossings(c).map(|(points, _)| points)
}

/// Integral length over weight `e/μ` of a bounded edge, which must be an integer.
fn length_quotient(c: &TropicalCurve, i: usize) -> Result<BigInt> {
    let len = c.lattice_length(i);
    let w = c.graph.bounded[i].weight;
    let q = &len / BigInt::from(w);
    if !q.is_integer() {
        return Err(Error::NonIntegralLength { edge: i, length: len.to_string(), weight: w });
    }
    Ok(q.to_integer())
}

/// Parity of the number of interior lattice points over all dual triangles.
fn interior_parity(c: &TropicalCurve) -> Result<u64> {
    let mut total = 0;
    for v in 0..c.graph.vertex_count {
        total += vertex_multiplicities(c, v)?.triangle.interior_points;
    }
    Ok(total % 2)
}

fn lift_sign_with(c: &TropicalCurve, lift: &LiftAssignment, sign_t: i8, parity: u64) -> Result<i64> {
    let mut elliptic = parity;
    for (i, e) in c.graph.bounded.iter().enumerate() {
        let zeta = match lift.zeta.get(&i) {
            Some(&z) => z,
            None if e.weight % 2 == 0 => {
                return Err(Error::InvalidCurve(format!("lift has no root-of-unity sign for even edge {i}")));
            }
            None => 1,
        };
        let k = length_quotient(c, i)?;
        let pow = if sign_t < 0 && k.is_odd() { -1 } else { 1 };
        elliptic += edge_census(e.weight, zeta, pow)?.elliptic;
    }
    Ok(if elliptic % 2 == 0 { 1 } else { -1 })
}

/// `(-1)` to the number of elliptic nodes of the real lift: vertex-interior
/// nodes counted by parity, edge nodes by the census, crossings hyperbolic.
pub fn lift_sign(c: &TropicalCurve, lift: &LiftAssignment, sign_t: i8) -> Result<i64> {
    lift_sign_with(c, lift, sign_t, interior_parity(c)?)
}

/// Sum of [`lift_sign`] over every choice of `ζ` on the even bounded edges.
pub fn census_sum(c: &TropicalCurve, sign_t: i8) -> Result<i64> {
    let parity = interior_parity(c)?;
    let even: Vec<usize> = (0..c.graph.bounded.len()).filter(|&i| c.graph.bounded[i].weight % 2 == 0).collect();
    let mut total = 0;
    for mask in 0..1u64 << even.len() {
        let zeta = even
            .iter()
            .enumerate()
            .map(|(k, &i)| (i, if mask >> k & 1 == 1 { -1 } else { 1 }))
            .collect();
        total += lift_sign_with(c, &LiftAssignment { zeta }, sign_t, parity)?;
    }
    Ok(total)
}

/// `W = Σ_h Mult_R(h)`.
pub fn welschinger_total<'a>(curves: impl IntoIterator<Item = &'a TropicalCurve>) -> Result<i64> {
    let mut total = 0;
    for c in curves {
        total += curve_welschinger_mult(c)?;
    }
    Ok(total)
}

/// Total node count `Σ_V I_V + Σ_bounded (w - 1) + Σ_crossings w1 w2 |det|`.
pub fn node_total(c: &TropicalCurve) -> Result<u64> {
    let mut total = 0;
    for v in 0..c.graph.vertex_count {
        total += vertex_multiplicities(c, v)?.triangle.interior_points;
    }
    total += c.graph.bounded.iter().map(|e| e.weight - 1).sum::<u64>();
    total += crossings(c)?.1;
    Ok(total)
}

/// Whether `e/μ` is integral for every bounded edge.
pub fn lengths_divisible(c: &TropicalCurve) -> bool {
    (0..c.graph.bounded.len()).all(|i| length_quotient(c, i).is_ok())
}
