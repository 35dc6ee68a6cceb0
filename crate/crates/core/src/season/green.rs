use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::model::{Field, ModelParams};
use crate::scalar::{lit, to_f64, Real};

/// Explicit solution kernel of `u_t = div(A grad u - q u) + f'(0) u`:
///
/// `k(x,t) = e^{t f'(0)} (2 pi)^{-n} t^{-n/2} pi^{n/2} det(A)^{-1/2}
///           exp(-<A^{-1}(x - tq), x - tq> / (4t))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenKernel<T> {
    rate: T,
    a_inv: Matrix<T>,
    det_a: T,
    q: Vector<T>,
}

impl<T: Real> GreenKernel<T> {
    pub fn new(params: &ModelParams<T>) -> Result<Self> {
        let a_inv = params
            .diffusion
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("diffusion matrix is singular".into()))?;
        Ok(Self { rate: params.growth.fp0(), a_inv, det_a: params.diffusion.det(), q: params.advection })
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn eval(&self, x: &Vector<T>, t: T) -> Result<T> {
        if !(t > T::zero()) {
            return Err(Error::InvalidArgument(format!("time must be positive, got {}", to_f64(t))));
        }
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.dim() });
        }
        let half_n: T = lit(self.dim() as f64 * 0.5);
        let two_pi = lit::<T>(2.0) * T::PI();
        let z = *x - self.q.scale(t);
        let norm = (self.rate * t).exp() * two_pi.powi(-(self.dim() as i32)) * t.powf(-half_n) * T::PI().powf(half_n)
            / self.det_a.sqrt();
        Ok(norm * (-self.a_inv.quad(&z) / (lit::<T>(4.0) * t)).exp())
    }

    /// `int k(x - y, t) u(y) dy` by direct summation over the grid.
    ///
    /// Quadratic in the number of grid points; meant for verification.
    pub fn convolve(&self, field: &Field<T>, t: T) -> Result<Field<T>> {
        let grid = *field.grid();
        if grid.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: grid.dim() });
        }
        let vol = grid.cell_volume();
        let support: Vec<(Vector<T>, T)> = (0..grid.len())
            .filter(|k| field.values()[*k] > T::zero())
            .map(|k| (point(&grid, k), field.values()[k]))
            .collect();
        let mut out = Vec::with_capacity(grid.len());
        for k in 0..grid.len() {
            let x = point(&grid, k);
            let mut acc = T::zero();
            for (y, u) in &support {
                acc = acc + self.eval(&(x - *y), t)? * *u;
            }
            out.push(acc * vol);
        }
        Field::new(grid, out)
    }
}

fn point<T: Real>(grid: &crate::model::Grid<T>, k: usize) -> Vector<T> {
    let p = grid.point(k);
    if grid.dim() == 1 {
        Vector::new1(p[0])
    } else {
        Vector::new2(p[0], p[1])
    }
}

/// Evaluates the explicit kernel at `(x, t)`.
pub fn green_eval<T: Real>(params: &ModelParams<T>, x: &Vector<T>, t: T) -> Result<T> {
    GreenKernel::new(params)?.eval(x, t)
}
