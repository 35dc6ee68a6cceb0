use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::model::Grid;
use crate::scalar::{from_usize, lit, Real};

/// Forward/inverse FFT over a 1D or 2D grid with periodic wrap-around.
/// Forward/inverse plan pair along one axis.
type Plans<T> = (Arc<dyn Fft<T>>, Arc<dyn Fft<T>>);

pub(crate) struct GridFft<T: Real> {
    nx: usize,
    ny: usize,
    fx: Arc<dyn Fft<T>>,
    ix: Arc<dyn Fft<T>>,
    fy: Option<Plans<T>>,
    column: Vec<Complex<T>>,
}

impl<T: Real> GridFft<T> {
    pub fn new(grid: &Grid<T>) -> Self {
        let mut planner = FftPlanner::new();
        let nx = grid.count(0);
        let ny = if grid.dim() == 2 { grid.count(1) } else { 1 };
        let fy = (grid.dim() == 2).then(|| (planner.plan_fft_forward(ny), planner.plan_fft_inverse(ny)));
        Self {
            nx,
            ny,
            fx: planner.plan_fft_forward(nx),
            ix: planner.plan_fft_inverse(nx),
            fy,
            column: vec![Complex::default(); ny],
        }
    }

    pub fn forward(&mut self, data: &mut [Complex<T>]) {
        self.fx.process(data);
        if let Some((fy, _)) = self.fy.clone() {
            self.columns(data, fy.as_ref());
        }
    }

    /// Inverse transform including the `1 / N` normalization.
    pub fn inverse(&mut self, data: &mut [Complex<T>]) {
        self.ix.process(data);
        if let Some((_, iy)) = self.fy.clone() {
            self.columns(data, iy.as_ref());
        }
        let scale = T::one() / from_usize::<T>(self.nx * self.ny);
        for v in data.iter_mut() {
            *v = *v * scale;
        }
    }

    fn columns(&mut self, data: &mut [Complex<T>], plan: &dyn Fft<T>) {
        for i in 0..self.nx {
            for j in 0..self.ny {
                self.column[j] = data[j * self.nx + i];
            }
            plan.process(&mut self.column);
            for j in 0..self.ny {
                data[j * self.nx + i] = self.column[j];
            }
        }
    }
}

/// Angular wavenumbers `2 pi k / (n h)` in FFT order.
pub(crate) fn wavenumbers<T: Real>(n: usize, h: T) -> Vec<T> {
    let scale = lit::<T>(2.0) * T::PI() / (from_usize::<T>(n) * h);
    (0..n)
        .map(|k| {
            let signed = if k <= n / 2 { from_usize::<T>(k) } else { -from_usize::<T>(n - k) };
            signed * scale
        })
        .collect()
}

pub(crate) fn to_complex<T: Real>(values: &[T]) -> Vec<Complex<T>> {
    values.iter().map(|v| Complex::new(*v, T::zero())).collect()
}
