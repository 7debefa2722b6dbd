//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Hermite and Smith
//! normal forms with unimodular witnesses, saturation of sublattices, bases of
//! torsion-free quotients, and linear algebra over F2 obtained by reducing an
//! integer matrix mod 2.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries must fill a {rows}x{cols} matrix");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[i64]>>(n: usize, columns: &[C]) -> Self {
        let mut m = Self::zeros(n, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), n, "column length must equal the ambient rank");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn from_big_columns(n: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(n, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), n);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        IntMatrix { rows: range.len(), cols: self.cols, data }
    }

    /// Columns `range` as a new matrix.
    pub fn select_columns(&self, range: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            if !s.is_zero() {
                self.data[target * self.cols + j] += factor * s;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            if !s.is_zero() {
                self.data[i * self.cols + target] += factor * s;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| BigRational::from(self.get(i, j).clone())).collect())
            .collect();
        rational_rank(&mut a)
    }

    /// Inverse of a unimodular matrix. Returns `None` if `|det| != 1`.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..n).map(|j| BigRational::from(self.get(i, j).clone())).collect();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..2 * n {
                        let sub = &f * &a[c][k];
                        a[r][k] -= sub;
                    }
                }
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                if !v.is_integer() {
                    return None;
                }
                out.set(i, j, v.to_integer());
            }
        }
        Some(out)
    }
}

/// Rank of a rational matrix; the input is consumed as scratch space.
pub(crate) fn rational_rank(a: &mut [Vec<BigRational>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let sub = &f * &a[rank][k];
                    a[r][k] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Solves `a x = b` over Q. Returns `None` when inconsistent; free variables are set to zero.
pub fn rational_solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let sub = &f * &m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m.iter().skip(r).any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Applies an integer matrix to a rational vector.
pub fn apply_rational(m: &IntMatrix, v: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(v.len(), m.cols());
    (0..m.rows())
        .map(|i| {
            let mut acc = BigRational::zero();
            for (j, x) in v.iter().enumerate() {
                let a = m.get(i, j);
                if !a.is_zero() && !x.is_zero() {
                    acc += x * a;
                }
            }
            acc
        })
        .collect()
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form with unimodular witnesses:
/// `left_transform * input * right_transform` is diagonal with the
/// invariant factors on the leading diagonal.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub left_transform: IntMatrix,
    pub right_transform: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The diagonal matrix `left * input * right` this result claims.
    pub fn diagonal(&self) -> IntMatrix {
        let r = self.left_transform.rows();
        let c = self.right_transform.cols();
        let mut d = IntMatrix::zeros(r, c);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// Invariant factors different from one (the cokernel's cyclic factors).
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Column-style Hermite normal form: returns `(hnf, transform)` with
/// `m * transform == hnf`, `transform` unimodular and `hnf` lower triangular in
/// column echelon form. Pivots are positive and entries left of a pivot lie in
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut k = 0;
    for i in 0..h.rows() {
        if k == h.cols() {
            break;
        }
        // Euclid on row i across columns k.., collecting the gcd in column k.
        loop {
            let nonzero: Vec<usize> = (k..h.cols()).filter(|&j| !h.get(i, j).is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&j| h.get(i, j).abs()).unwrap();
            h.swap_cols(k, piv);
            u.swap_cols(k, piv);
            let mut finished = true;
            for j in k + 1..h.cols() {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let q = -h.get(i, j).div_floor(h.get(i, k));
                h.add_col_multiple(j, k, &q);
                u.add_col_multiple(j, k, &q);
                if !h.get(i, j).is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_col(k);
            u.negate_col(k);
        }
        let pivot = h.get(i, k).clone();
        for j in 0..k {
            let q = -h.get(i, j).div_floor(&pivot);
            h.add_col_multiple(j, k, &q);
            u.add_col_multiple(j, k, &q);
        }
        k += 1;
    }
    (h, u)
}

/// Smith normal form by gcd elimination with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; move it to the pivot.
                let best_row = (t + 1..r)
                    .filter(|&i| !a.get(i, t).is_zero())
                    .min_by_key(|&i| a.get(i, t).abs());
                let best_col = (t + 1..c)
                    .filter(|&j| !a.get(t, j).is_zero())
                    .min_by_key(|&j| a.get(t, j).abs());
                let row_val = best_row.map(|i| a.get(i, t).abs());
                let col_val = best_col.map(|j| a.get(t, j).abs());
                match (row_val, col_val) {
                    (Some(rv), Some(cv)) if cv < rv => {
                        let j = best_col.unwrap();
                        a.swap_cols(t, j);
                        right.swap_cols(t, j);
                    }
                    (Some(_), _) => {
                        let i = best_row.unwrap();
                        a.swap_rows(t, i);
                        left.swap_rows(t, i);
                    }
                    (None, Some(_)) => {
                        let j = best_col.unwrap();
                        a.swap_cols(t, j);
                        right.swap_cols(t, j);
                    }
                    (None, None) => unreachable!(),
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..t).map(|i| a.get(i, i).clone()).collect();
    SnfResult { invariant_factors, left_transform: left, right_transform: right, rank: t }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Generators (as columns) of the saturation `Q-span(sublattice) ∩ Z^ambient_rank`.
///
/// The generators are returned in column Hermite normal form, so equal
/// saturations produce equal matrices.
pub fn saturate(sublattice: &IntMatrix, ambient_rank: usize) -> IntMatrix {
    assert_eq!(sublattice.rows(), ambient_rank, "generators must live in Z^ambient_rank");
    if sublattice.cols() == 0 || sublattice.is_zero() {
        return IntMatrix::zeros(ambient_rank, 0);
    }
    let snf = smith_normal_form(sublattice);
    let inv = snf
        .left_transform
        .unimodular_inverse()
        .expect("SNF left transform is unimodular");
    let gens = inv.select_columns(0..snf.rank);
    let (h, _) = hermite_normal_form(&gens);
    h
}

/// A basis of the quotient `Z^n / L` for a saturated sublattice `L`.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub ambient_rank: usize,
    pub sublattice_generators: IntMatrix,
    /// `quotient_rank x ambient_rank`; surjective onto `Z^quotient_rank` with kernel `L`.
    pub projection: IntMatrix,
    pub quotient_rank: usize,
}

impl QuotientBasis {
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.projection.apply(v)
    }
}

/// Quotient basis of `Z^ambient_rank` modulo the span of `sublattice`.
pub fn quotient_basis(sublattice: &IntMatrix, ambient_rank: usize) -> Result<QuotientBasis> {
    if sublattice.rows() != ambient_rank {
        return Err(Error::DimensionMismatch(format!(
            "sublattice generators have {} rows, ambient rank is {ambient_rank}",
            sublattice.rows()
        )));
    }
    let snf = smith_normal_form(sublattice);
    if snf.invariant_factors.iter().any(|d| !d.is_one()) {
        return Err(Error::NotSaturated);
    }
    let projection = snf.left_transform.select_rows(snf.rank..ambient_rank);
    Ok(QuotientBasis {
        ambient_rank,
        sublattice_generators: sublattice.clone(),
        projection,
        quotient_rank: ambient_rank - snf.rank,
    })
}

fn mod2_rows(m: &IntMatrix) -> Vec<Vec<bool>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).is_odd()).collect())
        .collect()
}

/// Row-reduces an F2 system in place; returns pivot columns.
fn f2_eliminate(a: &mut [Vec<bool>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c]) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] {
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d ^= *s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}

/// Rank of `m mod 2` over F2.
pub fn f2_rank(m: &IntMatrix) -> usize {
    let mut a = mod2_rows(m);
    f2_eliminate(&mut a, m.cols()).len()
}

/// Solves `(m mod 2) x = rhs` over F2.
pub fn f2_solve(m: &IntMatrix, rhs: &[bool]) -> Option<Vec<bool>> {
    assert_eq!(rhs.len(), m.rows(), "right-hand side length must equal row count");
    let cols = m.cols();
    let mut a: Vec<Vec<bool>> = mod2_rows(m)
        .into_iter()
        .zip(rhs)
        .map(|(mut row, &b)| {
            row.push(b);
            row
        })
        .collect();
    let pivots = f2_eliminate(&mut a, cols);
    // Rows below the pivots must have a zero right-hand side.
    if a.iter().skip(pivots.len()).any(|row| row[cols]) {
        return None;
    }
    let mut x = vec![false; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn check_snf(m: &IntMatrix, snf: &SnfResult) {
        let prod = &(&snf.left_transform * m) * &snf.right_transform;
        assert_eq!(prod, snf.diagonal(), "witnesses must reproduce the diagonal form");
        assert_eq!(snf.left_transform.determinant().abs(), big(1));
        assert_eq!(snf.right_transform.determinant().abs(), big(1));
        for w in snf.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {:?}", snf.invariant_factors);
        }
    }

    #[test]
    fn hnf_identity() {
        let m = IntMatrix::from_rows(&[[1, 0], [0, 1]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, m);
        assert_eq!(&m * &u, h);
    }

    #[test]
    fn hnf_upper_triangular_input() {
        let m = IntMatrix::from_rows(&[[2, 4], [0, 2]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(&m * &u, h);
        assert_eq!(u.determinant().abs(), big(1));
        assert_eq!(h, IntMatrix::from_rows(&[[2, 0], [0, 2]]));
        assert_eq!(h.determinant().abs(), m.determinant().abs());
    }

    #[test]
    fn hnf_zero_matrix() {
        let m = IntMatrix::zeros(2, 2);
        let (h, u) = hermite_normal_form(&m);
        assert!(h.is_zero());
        assert_eq!(h.rank(), 0);
        assert_eq!(u.determinant().abs(), big(1));
    }

    #[test]
    fn hnf_off_diagonal_reduction() {
        let m = IntMatrix::from_rows(&[[3, 5, 7], [1, 4, 2], [6, 0, 5]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(&m * &u, h);
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(h.get(i, j).is_zero());
            }
            assert!(h.get(i, i).is_positive());
            for j in 0..i {
                assert!(!h.get(i, j).is_negative() && h.get(i, j) < h.get(i, i));
            }
        }
    }

    #[test]
    fn snf_coprime_diagonal() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.invariant_factors, vec![big(1), big(6)]);
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.invariant_factors, vec![big(1); 3]);
    }

    #[test]
    fn snf_scalar_two() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 2]]);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.invariant_factors, vec![big(2), big(2)]);
    }

    #[test]
    fn snf_rectangular_and_singular() {
        let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.invariant_factors, vec![big(2), big(6), big(12)]);
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.rank, 1);
    }

    #[test]
    fn determinant_matches_known_values() {
        assert_eq!(IntMatrix::from_rows(&[[2, 0], [0, 3]]).determinant(), big(6));
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).determinant(), big(-1));
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).determinant(), big(0));
        let m = IntMatrix::from_rows(&[[0, 2, 1], [3, 0, 0], [1, 1, 5]]);
        assert_eq!(m.determinant(), big(-27));
    }

    #[test]
    fn saturate_examples() {
        let s = saturate(&IntMatrix::from_columns(2, &[[2, 0]]), 2);
        assert_eq!(s, IntMatrix::from_columns(2, &[[1, 0]]));
        let s = saturate(&IntMatrix::from_columns(2, &[[2, 2]]), 2);
        assert_eq!(s, IntMatrix::from_columns(2, &[[1, 1]]));
        let s = saturate(&IntMatrix::from_columns(2, &[[1, 0], [0, 2]]), 2);
        assert_eq!(s.cols(), 2);
        assert_eq!(s.determinant().abs(), big(1));
    }

    #[test]
    fn saturate_is_idempotent() {
        let m = IntMatrix::from_columns(3, &[[2, 4, 6], [0, 3, 3]]);
        let s = saturate(&m, 3);
        assert_eq!(saturate(&s, 3), s);
    }

    #[test]
    fn quotient_basis_kills_sublattice() {
        let sub = IntMatrix::from_columns(2, &[[-1, 0]]);
        let q = quotient_basis(&sub, 2).unwrap();
        assert_eq!(q.quotient_rank, 1);
        assert!(q.project(&[big(-1), big(0)]).iter().all(Zero::is_zero));
        // (x, y) -> ±y
        assert_eq!(q.project(&[big(0), big(1)])[0].abs(), big(1));
        assert_eq!(q.project(&[big(5), big(0)])[0], big(0));
    }

    #[test]
    fn quotient_basis_trivial_cases() {
        let q = quotient_basis(&IntMatrix::zeros(2, 0), 2).unwrap();
        assert_eq!(q.quotient_rank, 2);
        assert_eq!(q.projection.determinant().abs(), big(1));
        let q = quotient_basis(&IntMatrix::identity(2), 2).unwrap();
        assert_eq!(q.quotient_rank, 0);
    }

    #[test]
    fn quotient_basis_rejects_torsion() {
        let sub = IntMatrix::from_columns(2, &[[2, 0]]);
        assert_eq!(quotient_basis(&sub, 2).unwrap_err(), Error::NotSaturated);
    }

    #[test]
    fn f2_solve_examples() {
        assert_eq!(f2_solve(&IntMatrix::from_rows(&[[2]]), &[true]), None);
        assert_eq!(
            f2_solve(&IntMatrix::identity(2), &[true, true]),
            Some(vec![true, true])
        );
        assert_eq!(f2_solve(&IntMatrix::from_rows(&[[1, 1], [1, 1]]), &[true, false]), None);
        let m = IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]);
        let x = f2_solve(&m, &[true, false]).unwrap();
        assert_eq!(x[0] ^ x[1], true);
        assert_eq!(x[1] ^ x[2], false);
    }

    #[test]
    fn f2_rank_examples() {
        assert_eq!(f2_rank(&IntMatrix::from_rows(&[[2, 0], [0, 3]])), 1);
        assert_eq!(f2_rank(&IntMatrix::identity(5)), 5);
        assert_eq!(f2_rank(&IntMatrix::from_rows(&[[2, 4], [6, -8]])), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
            (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
                prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                    IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect())
                })
            })
        }

        fn square(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
            (1..=max_dim).prop_flat_map(|n| {
                prop::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
                    IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect())
                })
            })
        }

        proptest! {
            #[test]
            fn snf_witnesses_reproduce_diagonal(m in matrix(5)) {
                let snf = smith_normal_form(&m);
                check_snf(&m, &snf);
                prop_assert_eq!(snf.rank, m.rank());
            }

            #[test]
            fn snf_product_is_abs_det(m in square(5)) {
                let det = m.determinant();
                prop_assume!(!det.is_zero());
                let snf = smith_normal_form(&m);
                let prod: BigInt = snf.invariant_factors.iter().product();
                prop_assert_eq!(prod, det.abs());
            }

            #[test]
            fn even_factors_count_f2_nullity(m in square(6)) {
                prop_assume!(!m.determinant().is_zero());
                let snf = smith_normal_form(&m);
                let even = snf.invariant_factors.iter().filter(|d| d.is_even()).count();
                prop_assert_eq!(even, m.rows() - f2_rank(&m));
            }

            #[test]
            fn hnf_is_reduced_column_echelon(m in matrix(4)) {
                let (h, u) = hermite_normal_form(&m);
                prop_assert_eq!(&m * &u, h.clone());
                prop_assert_eq!(u.determinant().abs(), BigInt::one());
                // Pivot rows strictly increase, pivots positive, left entries reduced.
                let mut last: Option<usize> = None;
                for j in 0..h.cols() {
                    let Some(p) = (0..h.rows()).find(|&i| !h.get(i, j).is_zero()) else {
                        for jj in j..h.cols() {
                            prop_assert!(h.column(jj).iter().all(Zero::is_zero));
                        }
                        break;
                    };
                    prop_assert!(last.is_none_or(|l| p > l));
                    prop_assert!(h.get(p, j).is_positive());
                    for jj in 0..j {
                        prop_assert!(!h.get(p, jj).is_negative() && h.get(p, jj) < h.get(p, j));
                    }
                    last = Some(p);
                }
            }

            #[test]
            fn saturation_idempotent_and_quotient_kernel(m in matrix(4)) {
                let n = m.rows();
                let s = saturate(&m, n);
                prop_assert_eq!(saturate(&s, n), s.clone());
                let q = quotient_basis(&s, n).unwrap();
                prop_assert_eq!(q.quotient_rank, n - m.rank());
                for j in 0..m.cols() {
                    prop_assert!(q.project(&m.column(j)).iter().all(Zero::is_zero));
                }
                prop_assert_eq!(q.projection.rank(), q.quotient_rank);
            }

            #[test]
            fn f2_solve_returns_solutions(m in matrix(5), bits in prop::collection::vec(any::<bool>(), 5)) {
                let x: Vec<bool> = bits[..m.cols()].to_vec();
                let rhs: Vec<bool> = (0..m.rows())
                    .map(|i| (0..m.cols()).fold(false, |acc, j| acc ^ (x[j] && m.get(i, j).is_odd())))
                    .collect();
                let sol = f2_solve(&m, &rhs).expect("rhs is in the image by construction");
                for i in 0..m.rows() {
                    let v = (0..m.cols()).fold(false, |acc, j| acc ^ (sol[j] && m.get(i, j).is_odd()));
                    prop_assert_eq!(v, rhs[i]);
                }
            }
        }
    }
}
