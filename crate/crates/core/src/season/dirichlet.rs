use crate::error::{Error, Result};
use crate::model::{Field, Grid, GrowthSpec, ModelParams};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::season::SeasonConfig;

/// Box `prod [0, L_i]` with zero density on its boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirichletBox<T> {
    dim: usize,
    lengths: [T; 2],
}

impl<T: Real> DirichletBox<T> {
    pub fn interval(length: T) -> Result<Self> {
        Self::new(&[length])
    }

    pub fn rectangle(l1: T, l2: T) -> Result<Self> {
        Self::new(&[l1, l2])
    }

    pub fn new(lengths: &[T]) -> Result<Self> {
        if lengths.is_empty() || lengths.len() > 2 {
            return Err(Error::UnsupportedDimension(lengths.len()));
        }
        if lengths.iter().any(|l| !(*l > T::zero() && l.is_finite())) {
            return Err(Error::InvalidArgument("box lengths must be positive and finite".into()));
        }
        let mut l = [T::one(); 2];
        l[..lengths.len()].copy_from_slice(lengths);
        Ok(Self { dim: lengths.len(), lengths: l })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths[..self.dim]
    }

    /// Node grid including both boundary points, spacing at most `h`.
    pub fn grid(&self, h: T) -> Result<Grid<T>> {
        let axis = |l: T| {
            let cells = (l / h).ceil().to_usize().unwrap_or(0).max(2);
            (cells + 1, l / from_usize::<T>(cells))
        };
        let (nx, hx) = axis(self.lengths[0]);
        if self.dim == 1 {
            return Grid::line(T::zero(), hx, nx);
        }
        let (ny, hy) = axis(self.lengths[1]);
        Grid::plane([T::zero(); 2], [hx, hy], [nx, ny])
    }

    /// Principal Dirichlet mode `prod sin(pi x_i / L_i)` scaled to `amplitude`.
    pub fn principal_mode(&self, h: T, amplitude: T) -> Result<Field<T>> {
        let grid = self.grid(h)?;
        let (l1, l2) = (self.lengths[0], self.lengths[1]);
        let dim = self.dim;
        let mut f = Field::from_fn(grid, |x, y| {
            let sx = (T::PI() * x / l1).sin().max(T::zero());
            let sy = if dim == 2 { (T::PI() * y / l2).sin().max(T::zero()) } else { T::one() };
            amplitude * sx * sy
        })?;
        pin_boundary(&mut f);
        Ok(f)
    }
}

fn pin_boundary<T: Real>(field: &mut Field<T>) {
    let grid = *field.grid();
    let (nx, ny) = (grid.count(0), if grid.dim() == 2 { grid.count(1) } else { 1 });
    let v = field.values_mut();
    for j in 0..ny {
        for i in 0..nx {
            let edge = i == 0 || i == nx - 1 || (grid.dim() == 2 && (j == 0 || j == ny - 1));
            if edge {
                v[j * nx + i] = T::zero();
            }
        }
    }
}

/// Constant-coefficient central-difference operator `a u'' - q u'` along one axis.
#[derive(Clone, Copy)]
struct Stencil<T> {
    lower: T,
    diag: T,
    upper: T,
}

impl<T: Real> Stencil<T> {
    fn new(a: T, q: T, h: T) -> Self {
        let d = a / (h * h);
        let c = q / (lit::<T>(2.0) * h);
        Self { lower: d + c, diag: -d * lit(2.0), upper: d - c }
    }

    fn scaled(self, k: T) -> Self {
        Self { lower: self.lower * k, diag: self.diag * k, upper: self.upper * k }
    }

    /// `(I + L) u` on interior nodes of a line with zero ends.
    fn apply_explicit(&self, u: &[T], out: &mut [T]) {
        let n = u.len();
        out[0] = T::zero();
        out[n - 1] = T::zero();
        for i in 1..n - 1 {
            out[i] = u[i] + self.lower * u[i - 1] + self.diag * u[i] + self.upper * u[i + 1];
        }
    }

    /// Solves `(I - L) x = rhs` on interior nodes (Thomas algorithm), in place.
    fn solve_implicit(&self, rhs: &mut [T], scratch: &mut Vec<T>) {
        let n = rhs.len();
        if n < 3 {
            rhs.iter_mut().for_each(|v| *v = T::zero());
            return;
        }
        let (a, b, c) = (-self.lower, T::one() - self.diag, -self.upper);
        let m = n - 2;
        scratch.clear();
        scratch.resize(m, T::zero());
        let x = &mut rhs[1..n - 1];
        scratch[0] = c / b;
        x[0] = x[0] / b;
        for i in 1..m {
            let denom = b - a * scratch[i - 1];
            scratch[i] = c / denom;
            x[i] = (x[i] - a * x[i - 1]) / denom;
        }
        for i in (0..m - 1).rev() {
            x[i] = x[i] - scratch[i] * x[i + 1];
        }
        rhs[0] = T::zero();
        rhs[n - 1] = T::zero();
    }
}

/// One season on a box with hostile boundary.
///
/// Strang splitting per step: half reaction (exact flow), Crank–Nicolson (1D)
/// or Peaceman–Rachford ADI (2D, diagonal `A` only), half reaction.
pub fn advance_dirichlet<T: Real>(
    params: &ModelParams<T>,
    field: &Field<T>,
    domain: &DirichletBox<T>,
    config: &SeasonConfig<T>,
) -> Result<Field<T>> {
    let grid = *field.grid();
    if grid.dim() != params.dim() || domain.dim() != params.dim() {
        return Err(Error::DimensionMismatch { expected: params.dim(), found: grid.dim() });
    }
    for (axis, l) in domain.lengths().iter().enumerate() {
        let rel = (grid.extent(axis) - *l).abs() / *l;
        if grid.origin(axis) != T::zero() || rel > lit(1e-9) {
            return Err(Error::InvalidArgument("field grid does not span the box".into()));
        }
    }
    if params.dim() == 2 && !params.diffusion.is_diagonal() {
        return Err(Error::AnisotropyUnsupported);
    }
    if config.dirichlet_steps == 0 {
        return Err(Error::InvalidArgument("dirichlet_steps must be at least 1".into()));
    }
    for axis in 0..params.dim() {
        let a = params.diffusion.get(axis, axis);
        let peclet = params.advection[axis].abs() * grid.spacing(axis) / (lit::<T>(2.0) * a);
        if peclet > T::one() {
            log::warn!("cell Peclet number {} exceeds 1 on axis {axis}; central differences may oscillate", to_f64(peclet));
        }
    }

    let dt = T::one() / from_usize::<T>(config.dirichlet_steps);
    let half: T = lit(0.5);
    let growth = params.growth;
    let mut u = field.values().to_vec();
    let nx = grid.count(0);
    let sx = Stencil::new(params.diffusion.get(0, 0), params.advection[0], grid.spacing(0)).scaled(dt * half);
    let mut scratch = Vec::new();
    let mut line = vec![T::zero(); nx.max(grid.count(1))];
    let mut tmp = line.clone();

    if grid.dim() == 1 {
        for _ in 0..config.dirichlet_steps {
            react(&growth, &mut u, dt);
            sx.apply_explicit(&u, &mut tmp[..nx]);
            u.copy_from_slice(&tmp[..nx]);
            sx.solve_implicit(&mut u, &mut scratch);
            clamp(&mut u);
            react(&growth, &mut u, dt);
        }
    } else {
        let ny = grid.count(1);
        let sy = Stencil::new(params.diffusion.get(1, 1), params.advection[1], grid.spacing(1)).scaled(dt * half);
        let mut star = vec![T::zero(); u.len()];
        for _ in 0..config.dirichlet_steps {
            react(&growth, &mut u, dt);
            // Implicit in x, explicit in y.
            for i in 0..nx {
                (0..ny).for_each(|j| line[j] = u[j * nx + i]);
                sy.apply_explicit(&line[..ny], &mut tmp[..ny]);
                (0..ny).for_each(|j| star[j * nx + i] = tmp[j]);
            }
            for j in 0..ny {
                sx.solve_implicit(&mut star[j * nx..(j + 1) * nx], &mut scratch);
            }
            // Implicit in y, explicit in x.
            for j in 0..ny {
                sx.apply_explicit(&star[j * nx..(j + 1) * nx], &mut u[j * nx..(j + 1) * nx]);
            }
            for i in 0..nx {
                (0..ny).for_each(|j| line[j] = u[j * nx + i]);
                sy.solve_implicit(&mut line[..ny], &mut scratch);
                (0..ny).for_each(|j| u[j * nx + i] = line[j]);
            }
            clamp(&mut u);
            react(&growth, &mut u, dt);
        }
    }
    let mut out = Field::from_raw(grid, u);
    pin_boundary(&mut out);
    Ok(out)
}

fn react<T: Real>(growth: &GrowthSpec<T>, u: &mut [T], dt: T) {
    for v in u.iter_mut() {
        *v = growth.half_flow(*v, dt);
    }
}

fn clamp<T: Real>(u: &mut [T]) {
    for v in u.iter_mut() {
        if *v < T::zero() {
            *v = T::zero();
        }
    }
}
