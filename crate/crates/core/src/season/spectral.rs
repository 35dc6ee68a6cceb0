use rustfft::num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{Field, Grid, GrowthSpec, ModelParams};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::season::{to_complex, wavenumbers, GridFft, SeasonConfig};

/// Values below this fraction of the maximum are treated as transform noise.
pub const NOISE_FLOOR: f64 = 1e-15;

/// Precomputed spectral step for a fixed grid and parameter set.
///
/// Owns its transform workspace, so one propagator per thread.
pub struct SpectralPropagator<T: Real> {
    grid: Grid<T>,
    growth: GrowthSpec<T>,
    dt: T,
    substeps: usize,
    multiplier: Vec<Complex<T>>,
    fft: GridFft<T>,
    buffer: Vec<Complex<T>>,
    guard_boundary: bool,
}

impl<T: Real> SpectralPropagator<T> {
    pub fn new(params: &ModelParams<T>, grid: &Grid<T>, config: &SeasonConfig<T>) -> Result<Self> {
        if grid.dim() != params.dim() {
            return Err(Error::DimensionMismatch { expected: params.dim(), found: grid.dim() });
        }
        if config.substeps == 0 {
            return Err(Error::InvalidArgument("substeps must be at least 1".into()));
        }
        let dt = T::one() / from_usize::<T>(config.substeps);
        let multiplier = free_multiplier(params, grid, dt);
        // Nyquist damping per substep. Weakly damped ripple is rectified by
        // the negative clamp and then grows, showing up far from the data.
        let eig = params.diffusion.sym_eigenvalues().into_iter().fold(T::infinity(), T::min);
        let h = (0..grid.dim()).map(|k| grid.spacing(k)).fold(T::zero(), T::max);
        let damping = eig * dt * (T::PI() / h).powi(2);
        if damping < lit(37.0) {
            log::warn!(
                "spectral grid under-resolved: Nyquist damping per substep is e^-{:.1}; refine spacing or add substeps",
                to_f64(damping)
            );
        }
        Ok(Self {
            grid: *grid,
            growth: params.growth,
            dt,
            substeps: config.substeps,
            multiplier,
            fft: GridFft::new(grid),
            buffer: Vec::with_capacity(grid.len()),
            guard_boundary: config.guard_boundary,
        })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    /// Advances `field` by one season.
    pub fn advance(&mut self, field: &Field<T>) -> Result<Field<T>> {
        if field.grid() != &self.grid {
            return Err(Error::InvalidArgument("field grid differs from propagator grid".into()));
        }
        let mut values = field.values().to_vec();
        for _ in 0..self.substeps {
            self.react(&mut values);
            self.buffer.clear();
            self.buffer.extend(to_complex(&values));
            self.fft.forward(&mut self.buffer);
            for (b, m) in self.buffer.iter_mut().zip(&self.multiplier) {
                *b = *b * *m;
            }
            self.fft.inverse(&mut self.buffer);
            let floor = self.buffer.iter().fold(T::zero(), |m, b| m.max(b.re)) * lit(NOISE_FLOOR);
            for (v, b) in values.iter_mut().zip(&self.buffer) {
                // Transform round-off would otherwise be amplified by growth
                // ahead of the front.
                *v = if b.re > floor { b.re } else { T::zero() };
            }
            self.react(&mut values);
        }
        let out = Field::from_raw(self.grid, values);
        if self.guard_boundary {
            check_boundary(&out, 0)?;
        }
        Ok(out)
    }

    fn react(&self, values: &mut [T]) {
        for v in values.iter_mut() {
            *v = self.growth.half_flow(*v, self.dt);
        }
    }
}

/// `exp(-dt (i q.z + <A z, z>))` on the FFT wavenumber lattice.
pub(crate) fn free_multiplier<T: Real>(params: &ModelParams<T>, grid: &Grid<T>, dt: T) -> Vec<Complex<T>> {
    let kx = wavenumbers(grid.count(0), grid.spacing(0));
    let ky = if grid.dim() == 2 { wavenumbers(grid.count(1), grid.spacing(1)) } else { vec![T::zero()] };
    let a = &params.diffusion;
    let q = &params.advection;
    let mut out = Vec::with_capacity(grid.len());
    for &y in &ky {
        for &x in &kx {
            let (quad, drift) = if grid.dim() == 1 {
                (a.get(0, 0) * x * x, q[0] * x)
            } else {
                let cross = (a.get(0, 1) + a.get(1, 0)) * x * y;
                (a.get(0, 0) * x * x + cross + a.get(1, 1) * y * y, q[0] * x + q[1] * y)
            };
            let decay = (-dt * quad).exp();
            let phase = -dt * drift;
            out.push(Complex::new(decay * phase.cos(), decay * phase.sin()));
        }
    }
    out
}

/// Fails when any value in the outer 10% band exceeds `1e-8` of the maximum.
pub(crate) fn check_boundary<T: Real>(field: &Field<T>, generation: usize) -> Result<()> {
    let max = field.max();
    if max <= T::zero() {
        return Ok(());
    }
    let grid = field.grid();
    let limit = max * lit(1e-8);
    let band = |axis: usize, i: usize| {
        let n = grid.count(axis);
        let w = (n / 10).max(1);
        i < w || i >= n - w
    };
    for (k, v) in field.values().iter().enumerate() {
        let i = k % grid.count(0);
        let j = k / grid.count(0);
        let edge = band(0, i) || (grid.dim() == 2 && band(1, j));
        if edge && *v > limit {
            return Err(Error::BoundaryContamination { generation, level: to_f64(*v / max) });
        }
    }
    Ok(())
}

/// One free-space season on the field's own grid.
pub fn advance_free<T: Real>(params: &ModelParams<T>, field: &Field<T>, config: &SeasonConfig<T>) -> Result<Field<T>> {
    SpectralPropagator::new(params, field.grid(), config)?.advance(field)
}
