use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// Uniform rectilinear grid in one or two dimensions.
///
/// Values are stored row-major with the first axis varying fastest.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid<T> {
    dim: usize,
    origin: [T; 2],
    spacing: [T; 2],
    count: [usize; 2],
}

impl<T: Real> Grid<T> {
    pub fn line(origin: T, spacing: T, count: usize) -> Result<Self> {
        Self::check_axis(spacing, count)?;
        Ok(Self { dim: 1, origin: [origin, T::zero()], spacing: [spacing, T::one()], count: [count, 1] })
    }

    pub fn plane(origin: [T; 2], spacing: [T; 2], count: [usize; 2]) -> Result<Self> {
        Self::check_axis(spacing[0], count[0])?;
        Self::check_axis(spacing[1], count[1])?;
        Ok(Self { dim: 2, origin, spacing, count })
    }

    /// Grid of `dim` axes symmetric about zero with an even point count per axis.
    pub fn centered(dim: usize, half_width: T, spacing: T) -> Result<Self> {
        let n = (half_width * lit(2.0) / spacing).ceil().to_usize().unwrap_or(0).max(2);
        let n = n + n % 2;
        let origin = -spacing * from_usize::<T>(n / 2);
        match dim {
            1 => Self::line(origin, spacing, n),
            2 => Self::plane([origin; 2], [spacing; 2], [n; 2]),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    fn check_axis(spacing: T, count: usize) -> Result<()> {
        if !(spacing > T::zero() && spacing.is_finite()) {
            return Err(Error::InvalidArgument("grid spacing must be positive and finite".into()));
        }
        if count < 2 {
            return Err(Error::InvalidArgument("grid needs at least two points per axis".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.count[0] * self.count[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count(&self, axis: usize) -> usize {
        self.count[axis]
    }

    pub fn spacing(&self, axis: usize) -> T {
        self.spacing[axis]
    }

    pub fn origin(&self, axis: usize) -> T {
        self.origin[axis]
    }

    /// Coordinate of index `i` along `axis`.
    pub fn coord(&self, axis: usize, i: usize) -> T {
        self.origin[axis] + self.spacing[axis] * from_usize::<T>(i)
    }

    /// Physical length covered along `axis` (first to last point).
    pub fn extent(&self, axis: usize) -> T {
        self.spacing[axis] * from_usize::<T>(self.count[axis] - 1)
    }

    pub fn center(&self, axis: usize) -> T {
        self.origin[axis] + self.extent(axis) * lit(0.5)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.count[0] + i
    }

    /// Coordinates of the flat index `k`.
    pub fn point(&self, k: usize) -> [T; 2] {
        let i = k % self.count[0];
        let j = k / self.count[0];
        [self.coord(0, i), if self.dim == 2 { self.coord(1, j) } else { T::zero() }]
    }

    pub fn cell_volume(&self) -> T {
        match self.dim {
            1 => self.spacing[0],
            _ => self.spacing[0] * self.spacing[1],
        }
    }
}

/// Nonnegative density sampled on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T> {
    grid: Grid<T>,
    values: Vec<T>,
}

impl<T: Real> Field<T> {
    pub fn new(grid: Grid<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), found: values.len() });
        }
        if let Some(v) = values.iter().find(|v| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::NegativeDensity { value: crate::scalar::to_f64(*v) });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid<T>) -> Self {
        Self { grid, values: vec![T::zero(); grid.len()] }
    }

    pub fn constant(grid: Grid<T>, value: T) -> Self {
        Self { grid, values: vec![value; grid.len()] }
    }

    /// Samples `f(x, y)` at every grid point (`y = 0` in one dimension).
    pub fn from_fn(grid: Grid<T>, f: impl Fn(T, T) -> T) -> Result<Self> {
        let values = (0..grid.len()).map(|k| {
            let p = grid.point(k);
            f(p[0], p[1])
        });
        Self::new(grid, values.collect())
    }

    pub(crate) fn from_raw(grid: Grid<T>, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::zero(), T::max)
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    /// Riemann sum of the density.
    pub fn mass(&self) -> T {
        self.values.iter().copied().sum::<T>() * self.grid.cell_volume()
    }

    /// Applies `f` pointwise.
    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| f(*v)).collect() }
    }

    /// Checks `0 <= values <= pi_plus`.
    pub fn within_bounds(&self, pi_plus: T) -> bool {
        self.values.iter().all(|v| *v >= T::zero() && *v <= pi_plus)
    }

    /// Bilinear (or linear) interpolation; zero outside the grid.
    pub fn sample(&self, x: T, y: T) -> T {
        let locate = |axis: usize, x: T| -> Option<(usize, T)> {
            let n = self.grid.count(axis);
            let t = (x - self.grid.origin(axis)) / self.grid.spacing(axis);
            if !(t >= T::zero()) || t > from_usize::<T>(n - 1) {
                return None;
            }
            let i = t.floor().to_usize()?.min(n - 2);
            Some((i, t - from_usize::<T>(i)))
        };
        let Some((i, fx)) = locate(0, x) else { return T::zero() };
        let one = T::one();
        if self.grid.dim() == 1 {
            return self.values[i] * (one - fx) + self.values[i + 1] * fx;
        }
        let Some((j, fy)) = locate(1, y) else { return T::zero() };
        let v = |i, j| self.values[self.grid.index(i, j)];
        (v(i, j) * (one - fx) + v(i + 1, j) * fx) * (one - fy) + (v(i, j + 1) * (one - fx) + v(i + 1, j + 1) * fx) * fy
    }
}
