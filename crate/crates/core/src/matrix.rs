//! Dense matrices over a [`Scalar`].

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Places `block` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Evaluates a polynomial at a square matrix.
    pub fn eval_poly(&self, p: &Poly<T>) -> Self {
        let n = self.rows;
        p.coeffs().iter().rev().fold(Self::zeros(n, n), |acc, c| {
            &(&acc * self) + &Self::identity(n).scale(c)
        })
    }

    /// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free recursion.
    pub fn charpoly(&self) -> Poly<T> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        // highest degree first
        let mut p: Vec<T> = vec![T::one()];
        for r in 0..n {
            // leading (r+1)x(r+1) block: [[A, C], [R, a]]
            let a = self[(r, r)].clone();
            let mut w = Vec::with_capacity(r);
            let mut v: Vec<T> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for _ in 0..r {
                let rv = (0..r).fold(T::zero(), |acc, j| {
                    acc + self[(r, j)].clone() * v[j].clone()
                });
                w.push(rv);
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(T::zero(), |acc, j| {
                            acc + self[(i, j)].clone() * v[j].clone()
                        })
                    })
                    .collect();
            }
            let mut q = vec![T::zero(); r + 2];
            for (i, c) in p.iter().enumerate() {
                q[i] = q[i].clone() + c.clone();
                q[i + 1] = q[i + 1].clone() - a.clone() * c.clone();
            }
            // subtract R adj(xI - A) C
            for j in 0..r {
                let s = (0..=j).fold(T::zero(), |acc, i| acc + p[i].clone() * w[j - i].clone());
                q[j + 2] = q[j + 2].clone() - s;
            }
            p = q;
        }
        p.reverse();
        Poly::new(p)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return T::zero();
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = -det;
            }
            let pv = m[(col, col)].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                let f = m[(r, col)].clone() / pv.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m[(col, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                }
            }
        }
        det
    }

    /// Solves `A x = b` for each column of `b`; `None` if `A` is singular.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert!(self.is_square() && b.rows == self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(piv, col);
            x.swap_rows(piv, col);
            let inv = T::one() / a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] = a[(col, c)].clone() * inv.clone();
            }
            for c in 0..x.cols {
                x[(col, c)] = x[(col, c)].clone() * inv.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let v = a[(col, c)].clone();
                    a[(r, c)] = a[(r, c)].clone() - f.clone() * v;
                }
                for c in 0..x.cols {
                    let v = x[(col, c)].clone();
                    x[(r, c)] = x[(r, c)].clone() - f.clone() * v;
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        self.solve(&Self::identity(self.rows))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}
