//! Dense matrices over a generic ring, with determinant routines matched to
//! the coefficient domain: fraction-free elimination for exact fields,
//! partially pivoted LU for floats, and a division-free subset expansion for
//! rings (polynomial entries).

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    /// Submatrix on the given (0-based) row and column indices, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<R> {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
            }
            acc
        })
    }

    /// Kronecker product: `(A kron B)[(i1,i2),(j1,j2)] = A[i1,j1] B[i2,j2]`.
    pub fn kron(&self, rhs: &Matrix<R>) -> Matrix<R> {
        Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            let (i1, i2) = (i / rhs.rows, i % rhs.rows);
            let (j1, j2) = (j / rhs.cols, j % rhs.cols);
            self.at(i1, j1).mul(rhs.at(i2, j2))
        })
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mul(c))
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).add(rhs.at(i, j)))
    }

    pub fn sub(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(rhs.at(i, j)))
    }

    /// Largest entry magnitude as `f64` (for residual scales).
    pub fn max_abs(&self) -> f64
    where
        R: Field,
    {
        self.data.iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }
}

/// Determinant over a field: fraction-free Bareiss elimination when the
/// field is exact, partially pivoted LU otherwise.
pub fn det<F: Field>(m: &Matrix<F>) -> F {
    assert_eq!(m.rows, m.cols, "determinant needs a square matrix");
    if F::EXACT {
        det_bareiss(m)
    } else {
        det_lu(m)
    }
}

fn det_bareiss<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows;
    if n == 0 {
        return F::one();
    }
    let mut a: Vec<Vec<F>> =
        (0..n).map(|i| (0..n).map(|j| m.at(i, j).clone()).collect()).collect();
    let mut sign = false;
    let mut prev = F::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return F::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

fn det_lu<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows;
    if n == 0 {
        return F::one();
    }
    let mut a: Vec<Vec<F>> =
        (0..n).map(|i| (0..n).map(|j| m.at(i, j).clone()).collect()).collect();
    let mut detv = F::one();
    for k in 0..n {
        let (pivot_row, pivot_mag) = (k..n)
            .map(|r| (r, a[r][k].abs_f64()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_mag == 0.0 {
            return F::zero();
        }
        if pivot_row != k {
            a.swap(k, pivot_row);
            detv = detv.neg();
        }
        detv = detv.mul(&a[k][k]);
        let inv_pivot = a[k][k].inv();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].mul(&inv_pivot);
            for j in k + 1..n {
                let delta = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&delta);
            }
        }
    }
    detv
}

/// Solves `self * x = rhs` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot vanishes (singular within the domain).
pub fn solve_linear<F: Field>(m: &Matrix<F>, rhs: &[F]) -> Option<Vec<F>> {
    let n = m.rows();
    assert_eq!(m.cols(), n, "solver needs a square matrix");
    assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = (0..n).map(|j| m.at(i, j).clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let (pivot_row, pivot_mag) = (k..n)
            .map(|r| (r, a[r][k].abs_f64()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pivot_mag == 0.0 {
            return None;
        }
        a.swap(k, pivot_row);
        let inv_pivot = a[k][k].inv();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].mul(&inv_pivot);
            for j in k..=n {
                let delta = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&delta);
            }
        }
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut acc = a[i][n].clone();
        for j in i + 1..n {
            acc = acc.sub(&a[i][j].mul(&x[j]));
        }
        x[i] = acc.div(&a[i][i]);
    }
    Some(x)
}

/// Division-free determinant over a commutative ring, by dynamic programming
/// over column subsets (Laplace expansion shared across rows). Cost is
/// `O(2^n n)` ring operations, so `n` is capped.
pub fn det_ring<R: Ring>(m: &Matrix<R>) -> Result<R> {
    assert_eq!(m.rows, m.cols, "determinant needs a square matrix");
    let n = m.rows;
    if n == 0 {
        return Ok(R::one());
    }
    if n > 16 {
        return Err(Error::SizeLimit(format!(
            "division-free determinant limited to 16 rows, got {n}"
        )));
    }
    // f[S] = det of the submatrix on rows 0..|S| and column set S; expand
    // along the bottom row of each submatrix.
    let full: usize = (1usize << n) - 1;
    let mut f: Vec<Option<R>> = vec![None; full + 1];
    f[0] = Some(R::one());
    for s in 1..=full {
        let k = (s as u32).count_ones() as usize; // submatrix size
        let mut acc = R::zero();
        let mut pos = 0; // index of column j within S, ascending
        for j in 0..n {
            if s & (1 << j) == 0 {
                continue;
            }
            let sub = f[s & !(1 << j)].as_ref().expect("smaller subsets first").clone();
            let term = m.at(k - 1, j).mul(&sub);
            // Sign of entry (k-1, pos) in the Laplace expansion.
            if (k - 1 + pos) % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
            pos += 1;
        }
        f[s] = Some(acc);
    }
    Ok(f[full].take().expect("full subset computed"))
}
