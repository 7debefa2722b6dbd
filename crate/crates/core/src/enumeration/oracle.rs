//! Independent reference counts: Kontsevich's recursion and Mikhalkin's
//! lattice-path algorithm for the degree-`d` triangle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `N_d` for `d = 0..=max_d` (`N_0` is unused and set to zero).
pub fn kontsevich(max_d: usize) -> Vec<BigInt> {
    let mut n = vec![BigInt::zero(); max_d + 1];
    if max_d >= 1 {
        n[1] = BigInt::one();
    }
    for d in 2..=max_d {
        let mut acc = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let (a, b) = (d1 as u64, d2 as u64);
            let term = BigInt::from(a * a * b * b) * binomial(3 * d - 4, 3 * d1 - 2)
                - BigInt::from(a * a * a * b) * binomial(3 * d - 4, 3 * d1 - 1);
            acc += &n[d1] * &n[d2] * term;
        }
        n[d] = acc;
    }
    n
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

type P = (i64, i64);

fn cross(a: P, b: P, c: P) -> i64 {
    (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0)
}

struct Triangle {
    d: i64,
}

impl Triangle {
    fn contains(&self, p: P) -> bool {
        p.0 >= 0 && p.1 >= 0 && p.0 + p.1 <= self.d
    }

    /// Lattice points sorted by `x - εy` for infinitesimal `ε > 0`.
    fn ordered_points(&self) -> Vec<P> {
        let mut pts: Vec<P> = (0..=self.d)
            .flat_map(|x| (0..=self.d - x).map(move |y| (x, y)))
            .collect();
        pts.sort_by_key(|&(x, y)| (x, -y));
        pts
    }

    /// Boundary path from `(0,d)` to `(d,0)` along the hypotenuse.
    fn upper(&self) -> Vec<P> {
        (0..=self.d).map(|i| (i, self.d - i)).collect()
    }

    /// Boundary path from `(0,d)` to `(d,0)` through the origin.
    fn lower(&self) -> Vec<P> {
        let mut v: Vec<P> = (0..=self.d).rev().map(|y| (0, y)).collect();
        v.extend((1..=self.d).map(|x| (x, 0)));
        v
    }
}

/// Vertex weights used by the path recursion.
#[derive(Clone, Copy)]
enum Weights {
    Complex,
    /// `(-1)^((m-1)/2)` for odd twice-area `m`, else 0.
    Real,
}

impl Weights {
    fn triangle(self, twice_area: i64) -> i64 {
        match self {
            Weights::Complex => twice_area,
            Weights::Real if twice_area % 2 == 0 => 0,
            Weights::Real if ((twice_area - 1) / 2) % 2 == 0 => 1,
            Weights::Real => -1,
        }
    }
}

/// Number of subdivisions of the region between `path` and `target`, weighted.
/// `turn` selects whether corners turning left (+1) or right (-1) are cut.
fn path_mult(tri: &Triangle, path: &[P], target: &[P], turn: i64, w: Weights) -> i64 {
    if path == target {
        return 1;
    }
    let Some(j) = (1..path.len().saturating_sub(1)).find(|&j| turn * cross(path[j - 1], path[j], path[j + 1]) > 0) else {
        return 0;
    };
    let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
    let mut total = 0;
    let factor = w.triangle(cross(a, b, c).abs());
    if factor != 0 {
        let mut cut = path.to_vec();
        cut.remove(j);
        total += factor * path_mult(tri, &cut, target, turn, w);
    }
    let opposite = (a.0 + c.0 - b.0, a.1 + c.1 - b.1);
    if tri.contains(opposite) {
        let mut flipped = path.to_vec();
        flipped[j] = opposite;
        total += path_mult(tri, &flipped, target, turn, w);
    }
    total
}

/// `(complex count, Welschinger count)` of degree-`d` plane curves with the
/// maximal number of nodes, via lattice paths. For `d <= 3` every such curve
/// through `3d - 1` generic points is irreducible, so these are the rational counts.
pub fn lattice_path_oracle(d: usize) -> (i64, i64) {
    if d == 0 {
        return (0, 0);
    }
    let tri = Triangle { d: d as i64 };
    let pts = tri.ordered_points();
    let (first, last) = (pts[0], *pts.last().unwrap());
    let inner = &pts[1..pts.len() - 1];
    let steps = 3 * d - 1;
    let (upper, lower) = (tri.upper(), tri.lower());
    let mut complex = 0;
    let mut real = 0;
    // Choose `steps - 1` intermediate points in λ-order.
    let k = steps - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    if k > inner.len() {
        return (0, 0);
    }
    loop {
        let mut path = Vec::with_capacity(k + 2);
        path.push(first);
        path.extend(idx.iter().map(|&i| inner[i]));
        path.push(last);
        for (w, acc) in [(Weights::Complex, &mut complex), (Weights::Real, &mut real)] {
            let up = path_mult(&tri, &path, &upper, 1, w);
            if up != 0 {
                *acc += up * path_mult(&tri, &path, &lower, -1, w);
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return (complex, real);
            }
            i -= 1;
            if idx[i] != i + inner.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kontsevich_values() {
        let n = kontsevich(5);
        let expect = [1, 1, 12, 620, 87304];
        for (d, e) in expect.iter().enumerate() {
            assert_eq!(n[d + 1], BigInt::from(*e));
        }
    }

    #[test]
    fn lattice_paths_low_degree() {
        assert_eq!(lattice_path_oracle(1), (1, 1));
        assert_eq!(lattice_path_oracle(2), (1, 1));
        assert_eq!(lattice_path_oracle(3), (12, 8));
    }

    /// For quartics the paths also count the C(11, 2) = 55 unions of a line
    /// through two points with the cubic through the other nine.
    #[test]
    fn lattice_paths_quartic() {
        let (complex, real) = lattice_path_oracle(4);
        assert_eq!(BigInt::from(complex - 55), kontsevich(4)[4]);
        assert_eq!(real - 55, 240);
    }
}
