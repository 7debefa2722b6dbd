//! Enumeration of rational plane tropical curves through point constraints.

pub mod oracle;
pub mod search;
pub mod types;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::counting::MarkedCurve;
use crate::error::{Error, Result};
use crate::incidence::{match_marked_edges, AffineConstraint};
use crate::tropical::{check_balancing, moduli_dimension, Degree, Point, TropicalCurve};
use crate::welschinger::crossings;

pub use search::{place_type, placement_curve, solve_positions, Placement, P2};
pub use types::{enumerate_types, CombinatorialType};

/// Rational points in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub points: Vec<P2>,
}

impl PointConfiguration {
    pub fn explicit(points: Vec<P2>) -> Result<Self> {
        for i in 0..points.len() {
            if points[..i].contains(&points[i]) {
                return Err(Error::NonGenericInput(format!("point {i} is repeated")));
            }
        }
        Ok(PointConfiguration { points })
    }

    /// `count` points near a line of slope `F/G` (coprime, both in `1000..2000`),
    /// with abscissae `i * B^i` and small offsets, all drawn from `seed`.
    pub fn mikhalkin(count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = loop {
            let f: i64 = rng.gen_range(1000..2000);
            let g: i64 = rng.gen_range(1000..2000);
            if f.gcd(&g) == 1 {
                break (f, g);
            }
        };
        let b = BigInt::from(rng.gen_range(20i64..40));
        let slope = BigRational::new(f.into(), g.into());
        let mut points = Vec::with_capacity(count);
        let mut scale = BigInt::from(1);
        for i in 1..=count {
            scale *= &b;
            let x = BigRational::from_integer(&scale * BigInt::from(i));
            let c = BigRational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=13).into());
            let y = &slope * &x + c;
            points.push([x, y]);
        }
        PointConfiguration { points }
    }

    pub fn constraints(&self) -> Vec<AffineConstraint> {
        self.points.iter().map(|p| AffineConstraint::point(p.to_vec())).collect()
    }
}

/// Geometric identity of a marked curve, independent of vertex labels.
fn geometric_key(c: &TropicalCurve) -> String {
    let show = |p: &Point| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let edge = |e| match e {
        crate::tropical::EdgeId::Bounded(i) => {
            let b = &c.graph.bounded[i];
            let (a, z) = (show(&c.positions[b.tail]), show(&c.positions[b.head]));
            let (a, z) = if a <= z { (a, z) } else { (z, a) };
            format!("[{a};{z};{}]", b.weight)
        }
        crate::tropical::EdgeId::Unbounded(i) => {
            let l = &c.graph.unbounded[i];
            format!("<{};{:?};{}>", show(&c.positions[l.vertex]), l.direction, l.weight)
        }
    };
    let mut edges: Vec<String> = c.graph.edges().map(edge).collect();
    edges.sort();
    let marks: Vec<String> = c.graph.marked.iter().map(|&e| edge(e)).collect();
    format!("{}|{}", edges.concat(), marks.join(""))
}

/// Checks an enumerated curve against the general-position requirements.
fn check_solution(c: &TropicalCurve, constraints: &[AffineConstraint], degree_size: usize) -> Result<()> {
    let fail = |m: String| Err(Error::GenericityFailure(m));
    match match_marked_edges(c, constraints) {
        Ok(m) if m == c.graph.marked => {}
        Ok(_) => return fail("a point meets an unexpected edge".into()),
        Err(e) => return fail(format!("point matching failed: {e}")),
    }
    if let Err(e) = crossings(c) {
        return fail(format!("crossing check failed: {e}"));
    }
    if !check_balancing(c)?.is_empty() {
        return Err(Error::InvalidCurve("enumerated curve is unbalanced".into()));
    }
    if moduli_dimension(c) != degree_size - 1 {
        return fail("enumerated curve is superabundant".into());
    }
    Ok(())
}

/// Rational curves of degree `degree` through the points, each marked on the
/// edges through the points, sorted by type and then geometrically.
pub fn enumerate_curves(genus: usize, degree: &Degree, points: &PointConfiguration) -> Result<Vec<MarkedCurve>> {
    let types = enumerate_types(genus, degree)?;
    let size = degree.cardinality();
    if points.points.len() + 1 != size {
        return Err(Error::DimensionMismatch(format!(
            "{} points for a degree with {size} legs",
            points.points.len()
        )));
    }
    let constraints = points.constraints();
    let found: Vec<Vec<(String, TropicalCurve)>> = types
        .par_iter()
        .map(|t| {
            let mut out = Vec::new();
            for p in place_type(t, &points.points) {
                if solve_positions(t, &points.points, &p.marks)?.as_ref() != Some(&p.positions) {
                    return Err(Error::InvalidCurve(format!("linear solve disagrees with search for {}", t.canonical)));
                }
                let c = placement_curve(t, &p)?;
                check_solution(&c, &constraints, size)?;
                out.push((format!("{}#{}", t.canonical, geometric_key(&c)), c));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let unique: BTreeMap<String, TropicalCurve> = found.into_iter().flatten().collect();
    Ok(unique.into_values().map(MarkedCurve::new).collect())
}

/// Attempts made by [`enumerate_mikhalkin`] before giving up.
pub const RESEED_ATTEMPTS: u64 = 16;

/// Enumerates through a Mikhalkin configuration, moving on to the next seed
/// whenever the drawn points turn out not to be generic.
pub fn enumerate_mikhalkin(genus: usize, degree: &Degree, seed: u64) -> Result<(u64, PointConfiguration, Vec<MarkedCurve>)> {
    let count = degree.cardinality().saturating_sub(1);
    let mut last = None;
    for s in seed..seed.saturating_add(RESEED_ATTEMPTS) {
        let points = PointConfiguration::mikhalkin(count, s);
        match enumerate_curves(genus, degree, &points) {
            Ok(curves) => return Ok((s, points, curves)),
            Err(Error::GenericityFailure(m)) => last = Some(m),
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure(format!(
        "no generic configuration in {RESEED_ATTEMPTS} seeds from {seed}: {}",
        last.unwrap_or_default()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_complex;
    use crate::tropical::{curve_mikhalkin_mults, curve_welschinger_mult, qi};
    use num_traits::ToPrimitive;

    fn totals(d: usize, seed: u64) -> (i64, i64) {
        let deg = Degree::projective_plane(d);
        let pts = PointConfiguration::mikhalkin(3 * d - 1, seed);
        let curves = enumerate_curves(0, &deg, &pts).unwrap();
        let n: BigInt = curves.iter().map(|c| curve_mikhalkin_mults(&c.curve).unwrap().0).sum();
        let w: i64 = curves.iter().map(|c| curve_welschinger_mult(&c.curve).unwrap()).sum();
        (n.to_i64().unwrap(), w)
    }

    #[test]
    fn line_and_conic_totals() {
        assert_eq!(totals(1, 7), (1, 1));
        assert_eq!(totals(2, 7), (1, 1));
        assert_eq!(totals(2, 11), (1, 1));
    }

    #[test]
    fn explicit_line() {
        let pts = PointConfiguration::explicit(vec![[qi(-3), qi(0)], [qi(0), qi(-5)]]).unwrap();
        let curves = enumerate_curves(0, &Degree::projective_plane(1), &pts).unwrap();
        assert_eq!(curves.len(), 1);
        assert_eq!(curves[0].curve.positions[0], vec![qi(0), qi(0)]);
    }

    #[test]
    fn repeated_points_rejected() {
        let p = [qi(1), qi(2)];
        assert!(PointConfiguration::explicit(vec![p.clone(), p]).is_err());
    }

    #[test]
    fn wrong_point_count() {
        let pts = PointConfiguration::mikhalkin(3, 1);
        assert!(matches!(
            enumerate_curves(0, &Degree::projective_plane(1), &pts),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn conic_count_matches_assembly() {
        let pts = PointConfiguration::mikhalkin(5, 3);
        let curves = enumerate_curves(0, &Degree::projective_plane(2), &pts).unwrap();
        let report = count_complex(&curves, &pts.constraints()).unwrap();
        assert_eq!(report.n_complex, BigInt::from(1));
    }

    #[test]
    fn reseeding_keeps_the_first_good_seed() {
        let (s, pts, curves) = enumerate_mikhalkin(0, &Degree::projective_plane(2), 5).unwrap();
        assert_eq!(s, 5);
        assert_eq!(pts, PointConfiguration::mikhalkin(5, 5));
        assert_eq!(curves.len(), 1);
        assert_eq!(enumerate_mikhalkin(1, &Degree::projective_plane(2), 5).unwrap_err(), Error::UnsupportedGenus(1));
    }

    #[test]
    fn mikhalkin_is_deterministic() {
        assert_eq!(PointConfiguration::mikhalkin(8, 42), PointConfiguration::mikhalkin(8, 42));
        assert_ne!(PointConfiguration::mikhalkin(8, 42), PointConfiguration::mikhalkin(8, 43));
    }
}
