use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use tropcount_core::counting::{count_complex, MarkedCurve};
use tropcount_core::enumeration::oracle::{kontsevich, lattice_path_oracle};
use tropcount_core::enumeration::{enumerate_curves, enumerate_mikhalkin, PointConfiguration};
use tropcount_core::incidence::AffineConstraint;
use tropcount_core::polyhedral::{build_decomposition_2d, rescale_for_goodness, validate_good};
use tropcount_core::tropical::{curve_mikhalkin_mults, curve_welschinger_mult, moduli_dimension, Degree, TropicalCurve};

fn totals(curves: &[MarkedCurve]) -> (BigInt, i64) {
    let n = curves.iter().map(|c| curve_mikhalkin_mults(&c.curve).unwrap().0).sum();
    let w = curves.iter().map(|c| curve_welschinger_mult(&c.curve).unwrap()).sum();
    (n, w)
}

fn check_shape(curves: &[MarkedCurve], d: usize) {
    let legs = 3 * d;
    for c in curves {
        assert_eq!(c.curve.graph.bounded.len(), legs - 3);
        assert_eq!(moduli_dimension(&c.curve), legs - 1);
        assert_eq!(c.marks.len(), legs - 1);
        let (mult, _) = curve_mikhalkin_mults(&c.curve).unwrap();
        assert!(mult >= BigInt::one());
        assert!((-1..=1).contains(&curve_welschinger_mult(&c.curve).unwrap()));
    }
}

#[test]
fn cubics_are_stable_under_reseeding() {
    let kont = kontsevich(3);
    let (n, w) = lattice_path_oracle(3);
    for seed in [7, 11, 23] {
        let (used, _, curves) = enumerate_mikhalkin(0, &Degree::projective_plane(3), seed).unwrap();
        assert_eq!(used, seed);
        check_shape(&curves, 3);
        let (cn, cw) = totals(&curves);
        assert_eq!(cn, kont[3]);
        assert_eq!((cn.to_i64().unwrap(), cw), (n, w));
        let report = count_complex(&curves, &PointConfiguration::mikhalkin(8, seed).constraints()).unwrap();
        assert_eq!(report.n_complex, kont[3]);
    }
}

fn scaled(curves: &[MarkedCurve], constraints: &[AffineConstraint]) -> (Vec<TropicalCurve>, Vec<AffineConstraint>) {
    let plain: Vec<TropicalCurve> = curves.iter().map(|c| c.curve.clone()).collect();
    let s = BigRational::from_integer(rescale_for_goodness(&plain, constraints));
    let cons = constraints
        .iter()
        .map(|a| AffineConstraint { base: a.base.iter().map(|x| x * &s).collect(), directions: a.directions.clone() })
        .collect();
    (plain.iter().map(|c| c.scaled(&s)).collect(), cons)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conics_through_any_mikhalkin_configuration(seed in 0u64..10_000) {
        let pts = PointConfiguration::mikhalkin(5, seed);
        let curves = enumerate_curves(0, &Degree::projective_plane(2), &pts).unwrap();
        check_shape(&curves, 2);
        prop_assert_eq!(totals(&curves), (BigInt::one(), 1));
        let (cs, cons) = scaled(&curves, &pts.constraints());
        let d = build_decomposition_2d(&cs, &cons).unwrap();
        prop_assert!(validate_good(&d, &cs, &cons).unwrap().is_good());
    }

    #[test]
    fn lines_through_two_points(x in -50i64..50, y in -50i64..50, dx in 1i64..20, dy in -20i64..20) {
        prop_assume!(dy != 0 && dx != dy);
        let p = |a: i64, b: i64| [BigRational::from_integer(a.into()), BigRational::from_integer(b.into())];
        let pts = PointConfiguration::explicit(vec![p(x, y), p(x + dx, y + dy)]).unwrap();
        let curves = enumerate_curves(0, &Degree::projective_plane(1), &pts).unwrap();
        prop_assert_eq!(curves.len(), 1);
        check_shape(&curves, 1);
    }
}
