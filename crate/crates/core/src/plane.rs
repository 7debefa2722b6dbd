//! Exact planar geometry of segments and rays.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::tropical::{qi, EdgeId, Point, TropicalCurve};

/// `start + t * dir` for `t` in `[0, 1]` (segment) or `[0, ∞)` (ray).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub start: Point,
    pub dir: Point,
    pub ray: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Disjoint,
    /// Parameters on the first and second piece.
    At(BigRational, BigRational),
    /// Collinear pieces sharing more than a point.
    Overlap,
}

pub fn cross(a: &[BigRational], b: &[BigRational]) -> BigRational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Piece {
    pub fn segment(a: &Point, b: &Point) -> Piece {
        Piece { start: a.clone(), dir: sub(b, a), ray: false }
    }

    pub fn ray(a: &Point, dir: &[i64]) -> Piece {
        Piece { start: a.clone(), dir: dir.iter().map(|&x| qi(x)).collect(), ray: true }
    }

    pub fn at(&self, t: &BigRational) -> Point {
        self.start.iter().zip(&self.dir).map(|(s, d)| s + d * t).collect()
    }

    pub fn end(&self) -> Option<Point> {
        (!self.ray).then(|| self.at(&qi(1)))
    }

    pub fn in_range(&self, t: &BigRational) -> bool {
        !t.is_negative() && (self.ray || *t <= qi(1))
    }

    pub fn in_interior(&self, t: &BigRational) -> bool {
        t.is_positive() && (self.ray || *t < qi(1))
    }

    /// Parameter of `p` if it lies on the supporting line within range.
    pub fn locate(&self, p: &[BigRational]) -> Option<BigRational> {
        let d = sub(p, &self.start);
        if !cross(&self.dir, &d).is_zero() {
            return None;
        }
        let k = if self.dir[0].is_zero() { 1 } else { 0 };
        let t = &d[k] / &self.dir[k];
        self.in_range(&t).then_some(t)
    }

    pub fn meet(&self, other: &Piece) -> Meet {
        let det = cross(&self.dir, &other.dir);
        let d = sub(&other.start, &self.start);
        if det.is_zero() {
            if !cross(&self.dir, &d).is_zero() {
                return Meet::Disjoint;
            }
            // Collinear: compare parameter intervals on self's line.
            let k = if self.dir[0].is_zero() { 1 } else { 0 };
            let param = |p: &[BigRational]| (&p[k] - &self.start[k]) / &self.dir[k];
            let a0 = param(&other.start);
            let same_way = (&other.dir[k] / &self.dir[k]).is_positive();
            let (lo, hi) = match (other.end(), other.ray, same_way) {
                (Some(e), _, _) => {
                    let a1 = param(&e);
                    if a0 <= a1 { (Some(a0), Some(a1)) } else { (Some(a1), Some(a0)) }
                }
                (None, _, true) => (Some(a0), None),
                (None, _, false) => (None, Some(a0)),
            };
            let self_hi = if self.ray { None } else { Some(qi(1)) };
            let lo = match lo {
                Some(l) if l > qi(0) => l,
                _ => qi(0),
            };
            let hi = match (hi, self_hi) {
                (Some(a), Some(b)) => Some(if a < b { a } else { b }),
                (a, b) => a.or(b),
            };
            return match hi {
                Some(h) if h < lo => Meet::Disjoint,
                Some(h) if h == lo => {
                    let p = self.at(&lo);
                    Meet::At(lo, other.locate(&p).expect("shared point lies on both"))
                }
                _ => Meet::Overlap,
            };
        }
        let t = cross(&d, &other.dir) / &det;
        let s = cross(&d, &self.dir) / &det;
        if self.in_range(&t) && other.in_range(&s) {
            Meet::At(t, s)
        } else {
            Meet::Disjoint
        }
    }
}

/// Images of all edges of a plane curve, bounded edges first (tail to head).
pub fn curve_pieces(c: &TropicalCurve) -> Vec<(EdgeId, Piece)> {
    let mut out = Vec::new();
    for (i, e) in c.graph.bounded.iter().enumerate() {
        out.push((EdgeId::Bounded(i), Piece::segment(&c.positions[e.tail], &c.positions[e.head])));
    }
    for (i, e) in c.graph.unbounded.iter().enumerate() {
        out.push((EdgeId::Unbounded(i), Piece::ray(&c.positions[e.vertex], &e.direction)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::point;

    #[test]
    fn crossing_segments() {
        let a = Piece::segment(&point(&[0, 0]), &point(&[2, 2]));
        let b = Piece::segment(&point(&[0, 2]), &point(&[2, 0]));
        assert_eq!(a.meet(&b), Meet::At(crate::tropical::q("1/2"), crate::tropical::q("1/2")));
        let c = Piece::segment(&point(&[3, 0]), &point(&[3, 5]));
        assert_eq!(a.meet(&c), Meet::Disjoint);
    }

    #[test]
    fn collinear_cases() {
        let a = Piece::segment(&point(&[0, 0]), &point(&[2, 0]));
        let b = Piece::ray(&point(&[1, 0]), &[1, 0]);
        assert_eq!(a.meet(&b), Meet::Overlap);
        let c = Piece::ray(&point(&[2, 0]), &[1, 0]);
        assert_eq!(a.meet(&c), Meet::At(qi(1), qi(0)));
        let d = Piece::ray(&point(&[3, 0]), &[1, 0]);
        assert_eq!(a.meet(&d), Meet::Disjoint);
        let e = Piece::ray(&point(&[-1, 0]), &[-1, 0]);
        assert_eq!(a.meet(&e), Meet::Disjoint);
        let f = Piece::ray(&point(&[5, 0]), &[-1, 0]);
        assert_eq!(a.meet(&f), Meet::Overlap);
    }

    #[test]
    fn locate_points() {
        let r = Piece::ray(&point(&[1, 1]), &[0, -1]);
        assert_eq!(r.locate(&point(&[1, -4])), Some(qi(5)));
        assert_eq!(r.locate(&point(&[1, 4])), None);
        assert_eq!(r.locate(&point(&[2, 0])), None);
    }
}
