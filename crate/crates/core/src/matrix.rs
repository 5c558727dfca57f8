//! Dense matrices over a [`Scalar`] field and the elimination kernel.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Numerical thresholds for the float backend. The exact backend ignores them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative pivot threshold for rank decisions, scaled by `‖M‖₁`.
    pub zero: f64,
    /// Radius within which numerically computed eigenvalues are merged.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero: 1e-10,
            cluster: 1e-7,
        }
    }
}

/// Row-major dense matrix. Immutable once built.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols].iter().map(|v| format!("{v:?}")).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_i64(v)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn diagonal(values: &[S]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { S::zero() })
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

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn column_block(&self, range: Range<usize>) -> Self {
        Self::from_fn(self.rows, range.len(), |i, j| self.get(i, range.start + j).clone())
    }

    pub fn row_block(&self, range: Range<usize>) -> Self {
        Self::from_fn(range.len(), self.cols, |i, j| self.get(range.start + i, j).clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn map_into<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        )
    }

    /// `self − c·I`.
    pub fn shifted(&self, c: &S) -> Self {
        assert!(self.is_square());
        let mut data = self.data.clone();
        for i in 0..self.rows {
            let k = i * self.cols + i;
            data[k] = data[k].clone() - c.clone();
        }
        Self::new(self.rows, self.cols, data)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut data = vec![S::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(other.row(k)) {
                    o.add_product(a, b);
                }
            }
        }
        Self::new(self.rows, other.cols, data)
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, p: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..p {
            out = out.matmul(self);
        }
        out
    }

    /// Induced 1-norm: the maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Rank-revealing reduction to reduced row echelon form.
    ///
    /// Columns are scanned left to right so the lowest-index columns become
    /// pivots. Exact scalars pivot on the first nonzero entry; floats pivot on
    /// the largest entry and treat anything at or below `eps_zero·‖M‖₁` as zero.
    pub fn rref(&self, eps_zero: f64) -> Echelon<S> {
        let threshold = if S::EXACT { 0.0 } else { eps_zero * self.one_norm() };
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = select_pivot(&a, cols, r..rows, c, threshold) else {
                if !S::EXACT {
                    for i in r..rows {
                        a[i * cols + c] = S::zero();
                    }
                }
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = S::one() / a[r * cols + c].clone();
            for j in c..cols {
                a[r * cols + j] = a[r * cols + j].clone() * inv.clone();
            }
            let pivot_row: Vec<S> = a[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                let neg = -f;
                for j in c..cols {
                    a[i * cols + j].add_product(&neg, &pivot_row[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: Matrix::new(rows, cols, a),
            pivots,
        }
    }

    pub fn rank(&self, eps_zero: f64) -> usize {
        self.rref(eps_zero).pivots.len()
    }

    /// Basis of the kernel. Float vectors are scaled to unit 2-norm.
    pub fn nullspace(&self, eps_zero: f64) -> Vec<Vec<S>> {
        let ech = self.rref(eps_zero);
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (row, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.reduced.get(row, f).clone();
                }
                if S::EXACT {
                    v
                } else {
                    normalize2(&v)
                }
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination on `[M | I]`.
    pub fn inverse(&self, eps_zero: f64) -> Result<Self> {
        let n = self.ensure_square()?;
        let threshold = if S::EXACT { 0.0 } else { eps_zero * self.one_norm() };
        let aug = self.hstack(&Self::identity(n));
        let w = 2 * n;
        let mut a = aug.data;
        for c in 0..n {
            let p = select_pivot(&a, w, c..n, c, threshold).ok_or(Error::SingularMatrix)?;
            if p != c {
                for j in 0..w {
                    a.swap(p * w + j, c * w + j);
                }
            }
            let inv = S::one() / a[c * w + c].clone();
            for j in c..w {
                a[c * w + j] = a[c * w + j].clone() * inv.clone();
            }
            let pivot_row: Vec<S> = a[c * w..(c + 1) * w].to_vec();
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a[i * w + c].clone();
                if f.is_zero() {
                    continue;
                }
                let neg = -f;
                for j in c..w {
                    a[i * w + j].add_product(&neg, &pivot_row[j]);
                }
            }
        }
        Ok(Self::from_fn(n, n, |i, j| a[i * w + n + j].clone()))
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[S], eps_zero: f64) -> Result<Vec<S>> {
        Ok(self.inverse(eps_zero)?.mul_vec(b))
    }
}

fn select_pivot<S: Scalar>(
    a: &[S],
    cols: usize,
    rows: Range<usize>,
    c: usize,
    threshold: f64,
) -> Option<usize> {
    if S::EXACT {
        rows.into_iter().find(|&i| !a[i * cols + c].is_zero())
    } else {
        let (best, mag) = rows
            .map(|i| (i, a[i * cols + c].abs()))
            .fold((usize::MAX, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        (best != usize::MAX && mag > threshold).then_some(best)
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pub reduced: Matrix<S>,
    pub pivots: Vec<usize>,
}

/// `⟨x, y⟩ = yᴴx`.
pub fn inner<S: Scalar>(x: &[S], y: &[S]) -> S {
    assert_eq!(x.len(), y.len(), "vector length mismatch");
    let mut acc = S::zero();
    for (a, b) in x.iter().zip(y) {
        acc.add_product(a, &b.conj());
    }
    acc
}

pub fn norm1<S: Scalar>(x: &[S]) -> f64 {
    x.iter().map(Scalar::abs).sum()
}

pub fn norm2<S: Scalar>(x: &[S]) -> f64 {
    x.iter().map(|v| v.to_c64().norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize2<S: Scalar>(x: &[S]) -> Vec<S> {
    let n = norm2(x);
    if n == 0.0 {
        return x.to_vec();
    }
    let inv = S::from_f64(1.0 / n);
    scale_vec(x, &inv)
}

pub fn scale_vec<S: Scalar>(x: &[S], c: &S) -> Vec<S> {
    x.iter().map(|v| v.clone() * c.clone()).collect()
}

pub fn add_vec<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn sub_vec<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

/// Residual of `x` after removing its components along `basis`.
///
/// Uses classical Gram–Schmidt against an orthogonal (not normalized) basis so
/// the computation stays inside the field. Floats take a second pass.
pub fn project_out<S: Scalar>(x: &[S], orthogonal_basis: &[Vec<S>]) -> Vec<S> {
    let passes = if S::EXACT { 1 } else { 2 };
    let mut r = x.to_vec();
    for _ in 0..passes {
        for q in orthogonal_basis {
            let qq = inner(q, q);
            if qq.is_zero() {
                continue;
            }
            let coef = inner(&r, q) / qq;
            r = sub_vec(&r, &scale_vec(q, &coef));
        }
    }
    r
}

/// Column rank of a set of vectors of length `n`.
pub fn span_rank<S: Scalar>(n: usize, vectors: &[Vec<S>], eps_zero: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(n, vectors).rank(eps_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Complex64, GaussRational};

    type Q = GaussRational;

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn nullspace_of_nilpotent_block() {
        let ns = q(&[&[0, 1], &[0, 0]]).nullspace(0.0);
        assert_eq!(ns, vec![vec![Q::one(), Q::zero()]]);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(Matrix::<Q>::identity(2).nullspace(0.0).is_empty());
        assert!(Matrix::<Complex64>::identity(2).nullspace(1e-10).is_empty());
    }

    #[test]
    fn nullspace_of_rank_one() {
        // row reduction: [[1,1],[0,0]] leaves x2 free, x1 = -x2
        let ns = q(&[&[1, 1], &[1, 1]]).nullspace(0.0);
        assert_eq!(ns, vec![vec![Q::from_i64(-1), Q::one()]]);
        let f = Matrix::<Complex64>::from_i64_rows(&[&[1, 1], &[1, 1]]).nullspace(1e-10);
        assert_eq!(f.len(), 1);
        let ratio = f[0][0] / f[0][1];
        assert!((ratio + 1.0).norm() < 1e-14);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Matrix::<Q>::identity(3).inverse(0.0).unwrap(), Matrix::identity(3));
        assert_eq!(q(&[&[1, 1], &[0, 1]]).inverse(0.0).unwrap(), q(&[&[1, -1], &[0, 1]]));
        assert!(matches!(q(&[&[1, 1], &[1, 1]]).inverse(0.0), Err(Error::SingularMatrix)));
        let f = Matrix::<Complex64>::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(matches!(f.inverse(1e-10), Err(Error::SingularMatrix)));
    }

    #[test]
    fn one_norm_examples() {
        assert_eq!(q(&[&[1, -2], &[3, 4]]).one_norm(), 6.0);
        assert_eq!(Matrix::<Q>::zeros(3, 2).one_norm(), 0.0);
        assert_eq!(q(&[&[1, 0, 0], &[0, 1, -1], &[0, 0, 1]]).one_norm(), 2.0);
    }

    #[test]
    fn rectangular_nullspace_count() {
        let m = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        let ns = m.nullspace(0.0);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn project_out_is_orthogonal() {
        let basis = vec![vec![Q::one(), Q::one(), Q::zero()]];
        let r = project_out(&[Q::one(), Q::zero(), Q::from_i64(2)], &basis);
        assert!(inner(&r, &basis[0]).is_zero());
    }
}
