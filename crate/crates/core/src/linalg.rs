//! Exact dense linear algebra over the rationals.
//!
//! Everything here is small and dense — the crate works at "desk scale"
//! (dimensions in the tens, not thousands) — so clarity and exactness win
//! over asymptotics.  Determinants use fraction-free Bareiss elimination on
//! denominator-cleared integer matrices, inverses and solves use exact
//! Gauss-Jordan, and integer row spans are canonicalized through the Hermite
//! normal form.
//!
//! Shape mismatches are programming errors and panic; singularity and
//! inconsistency are data and are reported through return values.

use std::ops::{Index, IndexMut};

use num::integer::ExtendedGcd;
use num::{BigInt, Integer, One, Signed, Zero};

use crate::rat::{denominator_lcm, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Self {
        assert!(!columns.is_empty(), "matrix needs at least one column");
        let rows = columns[0].len();
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * k)
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "inner dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    /// Integer rows of an integer matrix, or `None` if any entry is
    /// fractional.
    pub fn to_bigint_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_integer() {
            return None;
        }
        Some((0..self.rows).map(|i| self.row(i).iter().map(|x| x.numer().clone()).collect()).collect())
    }

    /// Exact determinant.  Clears denominators row by row, runs fraction-free
    /// Bareiss elimination in integers, and divides the scale factors back out.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let l = denominator_lcm(self.row(i));
            let row = self
                .row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect();
            scale *= l;
            int_rows.push(row);
        }
        Rational::new(bigint_det(int_rows), scale)
    }

    /// Exact inverse, or `None` when the matrix is singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(col, pivot);
                inv.swap_rows(col, pivot);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let av = &a[(col, j)] * &f;
                    a[(i, j)] -= av;
                    let iv = &inv[(col, j)] * &f;
                    inv[(i, j)] -= iv;
                }
            }
        }
        Some(inv)
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        self.reduced_echelon().1.len()
    }

    /// Solves `self * x = rhs` for a matrix with full column rank.  Returns
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, rhs.len(), "right-hand side length mismatch");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let (reduced, pivots) = aug.reduced_echelon_owned();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        assert_eq!(
            pivots.len(),
            self.cols,
            "solve requires full column rank"
        );
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            let a = i * self.cols + c;
            let b = j * self.cols + c;
            self.data.swap(a, b);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    fn reduced_echelon(&self) -> (Matrix, Vec<usize>) {
        self.clone().reduced_echelon_owned()
    }

    fn reduced_echelon_owned(mut self) -> (Matrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] /= &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(r, j)] * &f;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (self, pivots)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", crate::rat::format_rational(&self[(i, j)]))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Exact determinant of an integer matrix via fraction-free Bareiss
/// elimination: every division is exact, so intermediate growth stays
/// polynomial instead of exponential.
pub fn bigint_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Row-style Hermite normal form of an integer matrix.
///
/// Returns the nonzero rows of the unique canonical form: row echelon with
/// positive pivots and every entry above a pivot reduced into `[0, pivot)`.
/// The returned rows generate the same integer row span as the input, so two
/// inputs span the same module exactly when their forms are equal.
pub fn row_hnf_bigint(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return m;
    }
    let rows = m.len();
    let cols = m[0].len();
    assert!(m.iter().all(|r| r.len() == cols), "ragged rows");
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let ExtendedGcd { gcd, x, y } = a.extended_gcd(&b);
            let (au, bu) = (&a / &gcd, &b / &gcd);
            for j in 0..cols {
                let top = &x * &m[r][j] + &y * &m[i][j];
                let bot = &au * &m[i][j] - &bu * &m[r][j];
                m[r][j] = top;
                m[i][j] = bot;
            }
        }
        if m[r][c].is_negative() {
            for j in 0..cols {
                m[r][j] = -std::mem::take(&mut m[r][j]);
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..cols {
                let v = &m[r][j] * &q;
                m[i][j] -= v;
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Dot product of two equal-length rational vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot of unequal lengths");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Squared Euclidean norm of a rational vector.
pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}
