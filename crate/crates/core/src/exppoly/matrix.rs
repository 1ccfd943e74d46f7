//! Dense matrices over the exact scalar types of this crate, with
//! exact Gauss-Jordan inversion for Gaussian-rational entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::element::ExpElement;
use super::gauss::GaussRat;
use crate::Error;

/// Entry types usable in a `Matrix`.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Embeds a Gaussian rational into the scalar type.
    fn from_gauss(c: GaussRat) -> Self;
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn one() -> Self {
        GaussRat::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
    fn from_gauss(c: GaussRat) -> Self {
        c
    }
}

impl Scalar for ExpElement {
    fn zero() -> Self {
        ExpElement::zero()
    }
    fn one() -> Self {
        ExpElement::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        ExpElement::is_zero(self)
    }
    fn from_gauss(c: GaussRat) -> Self {
        ExpElement::from_gauss(c)
    }
}

/// A rectangular matrix with exact entries.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ExpMatrix = Matrix<ExpElement>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = T::one();
        }
        m
    }

    /// Builds from a row-major nested vector; rows must be rectangular.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "no rows");
        let c = rows[0].len();
        assert!(c > 0 && rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self[(r, k)].mul(&rhs[(k, c)]));
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.sub(b);
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(c);
        }
        out
    }

    /// Row vector times matrix: `v^T M` as a Vec.
    pub fn row_vec_mul(v: &[T], m: &Self) -> Vec<T> {
        assert_eq!(v.len(), m.rows);
        (0..m.cols)
            .map(|c| {
                let mut acc = T::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc.add(&vk.mul(&m[(k, c)]));
                }
                acc
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_col_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc.add(&self[(r, k)].mul(vk));
                }
                acc
            })
            .collect()
    }

    /// `v^T M w` for vectors of matching length.
    pub fn bilinear(&self, v: &[T], w: &[T]) -> T {
        let mw = self.mul_col_vec(w);
        let mut acc = T::zero();
        for (a, b) in v.iter().zip(&mw) {
            acc = acc.add(&a.mul(b));
        }
        acc
    }
}

impl Matrix<GaussRat> {
    /// Exact inverse by Gauss-Jordan elimination.
    /// Fails with `SingularMatrix` when the determinant vanishes.
    pub fn inverse(&self) -> Result<Self, Error> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for c in 0..n {
                    let tmp = a[(pivot, c)].clone();
                    a[(pivot, c)] = a[(col, c)].clone();
                    a[(col, c)] = tmp;
                    let tmp = inv[(pivot, c)].clone();
                    inv[(pivot, c)] = inv[(col, c)].clone();
                    inv[(col, c)] = tmp;
                }
            }
            let scale = a[(col, col)].inverse()?;
            for c in 0..n {
                a[(col, c)] = &a[(col, c)] * &scale;
                inv[(col, c)] = &inv[(col, c)] * &scale;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..n {
                    a[(r, c)] = &a[(r, c)] - &(&factor * &a[(col, c)]);
                    inv[(r, c)] = &inv[(r, c)] - &(&factor * &inv[(col, c)]);
                }
            }
        }
        Ok(inv)
    }

    /// Exact determinant by fraction-preserving elimination.
    pub fn det(&self) -> GaussRat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = GaussRat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a[(r, col)].is_zero()) {
                Some(p) => p,
                None => return GaussRat::zero(),
            };
            if pivot != col {
                for c in 0..n {
                    let tmp = a[(pivot, c)].clone();
                    a[(pivot, c)] = a[(col, c)].clone();
                    a[(col, c)] = tmp;
                }
                det = -det;
            }
            det = &det * &a[(col, col)];
            let scale = a[(col, col)].inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] * &scale;
                for c in col..n {
                    a[(r, c)] = &a[(r, c)] - &(&factor * &a[(col, c)]);
                }
            }
        }
        det
    }

    pub fn lift(&self) -> Matrix<ExpElement> {
        let mut out = Matrix::<ExpElement>::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = ExpElement::from_gauss(self[(r, c)].clone());
            }
        }
        out
    }

    /// Builds a matrix of rationals from integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| GaussRat::from_int(n)).collect())
                .collect(),
        )
    }
}

impl Matrix<ExpElement> {
    /// Demotes to a Gaussian-rational matrix when every entry is
    /// constant; fails with `NonConstantMatrix` otherwise.
    pub fn to_const(&self) -> Result<Matrix<GaussRat>, Error> {
        let mut out = Matrix::<GaussRat>::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)]
                    .constant_value()
                    .ok_or(Error::NonConstantMatrix)?;
            }
        }
        Ok(out)
    }

    /// Sets one variable to zero in every entry.
    pub fn subst_zero(&self, var: &super::element::Var) -> Self {
        let mut out = self.clone();
        for e in out.data.iter_mut() {
            *e = e.subst_zero(var);
        }
        out
    }
}

/// Exact inverse of a constant matrix given with `ExpElement` entries;
/// this is the shape the series pipeline produces.
pub fn mat_inv(m: &ExpMatrix) -> Result<ExpMatrix, Error> {
    Ok(m.to_const()?.inverse()?.lift())
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
