//! Fixed-size vectors and matrices for the one- and two-dimensional models.

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// A vector of length 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector<T> {
    dim: usize,
    c: [T; 2],
}

impl<T: Real> Vector<T> {
    pub fn new1(x: T) -> Self {
        Self { dim: 1, c: [x, T::zero()] }
    }

    pub fn new2(x: T, y: T) -> Self {
        Self { dim: 2, c: [x, y] }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 1 || dim == 2, "dimension must be 1 or 2");
        Self { dim, c: [T::zero(); 2] }
    }

    pub fn from_slice(v: &[T]) -> Result<Self> {
        match v {
            [x] => Ok(Self::new1(*x)),
            [x, y] => Ok(Self::new2(*x, *y)),
            _ => Err(Error::UnsupportedDimension(v.len())),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[T] {
        &self.c[..self.dim]
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice().iter().zip(other.as_slice()).map(|(a, b)| *a * *b).sum()
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, k: T) -> Self {
        let mut out = *self;
        out.c[0] = out.c[0] * k;
        out.c[1] = out.c[1] * k;
        out
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        &self.c[i]
    }
}

impl<T: Real> Add for Vector<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        Self { dim: self.dim, c: [self.c[0] + rhs.c[0], self.c[1] + rhs.c[1]] }
    }
}

impl<T: Real> Sub for Vector<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        Self { dim: self.dim, c: [self.c[0] - rhs.c[0], self.c[1] - rhs.c[1]] }
    }
}

impl<T: Real> Neg for Vector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// A square matrix of size 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    m: [[T; 2]; 2],
}

impl<T: Real> Matrix<T> {
    pub fn new1(a: T) -> Self {
        let z = T::zero();
        Self { dim: 1, m: [[a, z], [z, z]] }
    }

    pub fn new2(a11: T, a12: T, a21: T, a22: T) -> Self {
        Self { dim: 2, m: [[a11, a12], [a21, a22]] }
    }

    pub fn diag2(a11: T, a22: T) -> Self {
        Self::new2(a11, T::zero(), T::zero(), a22)
    }

    /// `d` times the identity of the given dimension.
    pub fn scalar(dim: usize, d: T) -> Self {
        match dim {
            1 => Self::new1(d),
            2 => Self::diag2(d, d),
            _ => panic!("dimension must be 1 or 2"),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::scalar(dim, T::zero())
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        match rows.len() {
            1 if rows[0].len() == 1 => Ok(Self::new1(rows[0][0])),
            2 if rows.iter().all(|r| r.len() == 2) => {
                Ok(Self::new2(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
            }
            n => Err(Error::UnsupportedDimension(n)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.dim && j < self.dim);
        self.m[i][j]
    }

    pub fn det(&self) -> T {
        match self.dim {
            1 => self.m[0][0],
            _ => self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0],
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == T::zero() || !det.is_finite() {
            return None;
        }
        Some(match self.dim {
            1 => Self::new1(T::one() / det),
            _ => Self::new2(
                self.m[1][1] / det,
                -self.m[0][1] / det,
                -self.m[1][0] / det,
                self.m[0][0] / det,
            ),
        })
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.dim, v.dim());
        match self.dim {
            1 => Vector::new1(self.m[0][0] * v[0]),
            _ => Vector::new2(
                self.m[0][0] * v[0] + self.m[0][1] * v[1],
                self.m[1][0] * v[0] + self.m[1][1] * v[1],
            ),
        }
    }

    /// The quadratic form `<M v, v>`.
    pub fn quad(&self, v: &Vector<T>) -> T {
        self.mul_vec(v).dot(v)
    }

    pub fn scale(&self, k: T) -> Self {
        let mut out = *self;
        for row in out.m.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * k;
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.m[i][i]).sum()
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        self.dim == 1 || (self.m[0][1] - self.m[1][0]).abs() <= tol
    }

    pub fn is_finite(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.m[i][j].is_finite()))
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn sym_eigenvalues(&self) -> Vec<T> {
        match self.dim {
            1 => vec![self.m[0][0]],
            _ => {
                let off = (self.m[0][1] + self.m[1][0]) * lit(0.5);
                let mean = self.trace() * lit(0.5);
                let half_gap = (((self.m[0][0] - self.m[1][1]) * lit(0.5)).powi(2) + off * off).sqrt();
                vec![mean - half_gap, mean + half_gap]
            }
        }
    }

    pub fn max_eigenvalue(&self) -> T {
        *self.sym_eigenvalues().last().expect("nonempty")
    }

    /// Symmetric with strictly positive eigenvalues.
    pub fn is_spd(&self, sym_tol: T) -> bool {
        self.is_symmetric(sym_tol) && self.sym_eigenvalues()[0] > T::zero()
    }

    /// `Some(d)` when the matrix equals `d I`.
    pub fn as_scalar(&self, tol: T) -> Option<T> {
        let d = self.m[0][0];
        if self.dim == 1 {
            return Some(d);
        }
        let scale = tol * d.abs().max(T::one());
        let ok = self.m[0][1].abs() <= scale
            && self.m[1][0].abs() <= scale
            && (self.m[1][1] - d).abs() <= scale;
        ok.then_some(d)
    }

    pub fn is_diagonal(&self) -> bool {
        self.dim == 1 || (self.m[0][1] == T::zero() && self.m[1][0] == T::zero())
    }
}

impl<T: Real> Add for Matrix<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][j] + rhs.m[i][j];
            }
        }
        out
    }
}

impl<T: Real> Mul<T> for Matrix<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::new2(4.0, 1.0, 1.0, 3.0);
        let inv = a.inverse().unwrap();
        let v = Vector::new2(0.3, -1.2);
        let back = a.mul_vec(&inv.mul_vec(&v));
        assert!((back - v).norm() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_symmetric_matrix() {
        let a = Matrix::new2(2.0f64, 1.0, 1.0, 2.0);
        let ev = a.sym_eigenvalues();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
        assert!(a.is_spd(1e-12));
        assert!(!Matrix::new2(1.0, 2.0, 2.0, 1.0).is_spd(1e-12));
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(Matrix::scalar(2, 1.5).as_scalar(1e-12), Some(1.5));
        assert_eq!(Matrix::diag2(1.5, 1.0).as_scalar(1e-12), None);
    }
}
