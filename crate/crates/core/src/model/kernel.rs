use crate::linalg::{Matrix, Vector};
use crate::scalar::{lit, Real};

/// Dispersal kernel for the nonlocal generation map.
///
/// The Gaussian is parametrized as
/// `K(x) = (4 pi)^{-n/2} det(B)^{-1/2} exp(-<B^{-1}(x - mean), x - mean> / 4)`,
/// so its statistical covariance is `2 B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelSpec<T> {
    Gaussian { mean: Vector<T>, b: Matrix<T> },
    PointMass,
}

impl<T: Real> KernelSpec<T> {
    pub fn gaussian(mean: Vector<T>, b: Matrix<T>) -> Self {
        Self::Gaussian { mean, b }
    }

    /// Density at `x`; `None` for the point mass.
    pub fn density(&self, x: &Vector<T>) -> Option<T> {
        match self {
            Self::Gaussian { mean, b } => {
                let n = x.dim() as i32;
                let inv = b.inverse()?;
                let d = *x - *mean;
                let four_pi: T = lit(4.0 * std::f64::consts::PI);
                let norm = four_pi.powi(n).sqrt() * b.det().sqrt();
                Some((-inv.quad(&d) * lit(0.25)).exp() / norm)
            }
            Self::PointMass => None,
        }
    }

    /// `k(s) = int K(x) e^{-s x.e} dx = exp(-s mean.e + s^2 <B e, e>)`.
    pub fn mgf(&self, e: &Vector<T>, s: T) -> T {
        match self {
            Self::Gaussian { mean, b } => (-s * mean.dot(e) + s * s * b.quad(e)).exp(),
            Self::PointMass => T::one(),
        }
    }

    /// Statistical covariance (`2 B`), zero for the point mass.
    pub fn covariance(&self, dim: usize) -> Matrix<T> {
        match self {
            Self::Gaussian { b, .. } => b.scale(lit(2.0)),
            Self::PointMass => Matrix::zeros(dim),
        }
    }

    /// Mean displacement parameter `mean`, zero for the point mass.
    pub fn mean(&self, dim: usize) -> Vector<T> {
        match self {
            Self::Gaussian { mean, .. } => *mean,
            Self::PointMass => Vector::zeros(dim),
        }
    }

    /// The `B` matrix of the Gaussian, zero for the point mass.
    pub fn b(&self, dim: usize) -> Matrix<T> {
        match self {
            Self::Gaussian { b, .. } => *b,
            Self::PointMass => Matrix::zeros(dim),
        }
    }
}
