//! Generation operators of the impulsive model, multi-generation runs, front
//! tracking and persistence classification.
//!
//! The local operator `Q` applies the stage map and then one season; the
//! nonlocal operator `P` runs the season, redistributes with the dispersal
//! kernel and then applies the stage map.

mod front;
mod persistence;

pub use front::{estimate_speed, front_position, profile_defect, FitKind, SpeedReport};
pub use persistence::{classify_persistence, critical_length_search, CriticalLengthEstimate, PersistenceVerdict};

use rustfft::num_complex::Complex;

use crate::analytic::{equilibrium_nonspatial, Direction};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::model::{Field, Grid, KernelSpec, ModelParams, StageMapSpec};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::season::{
    advance_dirichlet, to_complex, DirichletBox, GridFft, SeasonConfig, SpectralPropagator, NOISE_FLOOR,
};

/// Sequence of fields `N_0, N_1, ...`; index `m` holds generation `m`.
#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    pub fields: Vec<Field<T>>,
    pub params: ModelParams<T>,
    /// Set when the run stopped early on a numerical guard.
    pub abort: Option<Error>,
}

impl<T: Real> Trajectory<T> {
    /// Generations completed after the initial field.
    pub fn generations(&self) -> usize {
        self.fields.len().saturating_sub(1)
    }

    pub fn last(&self) -> &Field<T> {
        self.fields.last().expect("trajectory holds the initial field")
    }
}

#[allow(clippy::large_enum_variant)] // one per model
enum Stepper<T: Real> {
    Free { propagator: SpectralPropagator<T>, kernel: Option<KernelFft<T>> },
    Boxed { domain: DirichletBox<T> },
}

struct KernelFft<T: Real> {
    hat: Vec<Complex<T>>,
    fft: GridFft<T>,
    buffer: Vec<Complex<T>>,
}

/// A configured generation operator on a fixed grid.
pub struct HybridModel<T: Real> {
    params: ModelParams<T>,
    season: SeasonConfig<T>,
    grid: Grid<T>,
    stepper: Stepper<T>,
}

impl<T: Real> HybridModel<T> {
    /// Free-space model on a periodic grid.
    pub fn free(params: ModelParams<T>, grid: Grid<T>, season: SeasonConfig<T>) -> Result<Self> {
        warn_monotone_range(&params);
        let propagator = SpectralPropagator::new(&params, &grid, &season)?;
        let kernel = match params.kernel {
            Some(k) => Some(KernelFft::new(&k, &grid)?),
            None => None,
        };
        Ok(Self { params, season, grid, stepper: Stepper::Free { propagator, kernel } })
    }

    /// Local model on a box with hostile boundary.
    pub fn boxed(params: ModelParams<T>, domain: DirichletBox<T>, season: SeasonConfig<T>) -> Result<Self> {
        if params.kernel.is_some() {
            return Err(Error::InvalidArgument("the nonlocal map is only supported on free space".into()));
        }
        warn_monotone_range(&params);
        let grid = domain.grid(season.dirichlet_spacing)?;
        Ok(Self { params, season, grid, stepper: Stepper::Boxed { domain } })
    }

    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    /// One generation: `Q` for the local map, `P` with a kernel.
    pub fn generation(&mut self, field: &Field<T>) -> Result<Field<T>> {
        if field.grid() != &self.grid {
            return Err(Error::InvalidArgument("field grid differs from model grid".into()));
        }
        let map = self.params.map;
        match &mut self.stepper {
            Stepper::Boxed { domain } => {
                let seeded = apply_map(&map, field);
                advance_dirichlet(&self.params, &seeded, domain, &self.season)
            }
            Stepper::Free { propagator, kernel: None } => propagator.advance(&apply_map(&map, field)),
            Stepper::Free { propagator, kernel: Some(k) } => {
                let after = propagator.advance(field)?;
                Ok(apply_map(&map, &k.redistribute(&after)))
            }
        }
    }

    /// Iterates `generations` times; stops early (keeping the partial
    /// trajectory) if the free-space boundary guard trips.
    pub fn run(&mut self, initial: Field<T>, generations: usize) -> Result<Trajectory<T>> {
        if generations == 0 {
            return Err(Error::InvalidArgument("at least one generation is required".into()));
        }
        let mut fields = Vec::with_capacity(generations + 1);
        fields.push(initial);
        let mut abort = None;
        for m in 1..=generations {
            match self.generation(fields.last().expect("nonempty")) {
                Ok(next) => fields.push(next),
                Err(Error::BoundaryContamination { level, .. }) => {
                    log::warn!("run stopped at generation {m}: mass reached the truncation boundary");
                    abort = Some(Error::BoundaryContamination { generation: m, level });
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(Trajectory { fields, params: self.params.clone(), abort })
    }
}

fn apply_map<T: Real>(map: &StageMapSpec<T>, field: &Field<T>) -> Field<T> {
    field.map(|v| map.eval_unchecked(v))
}

fn warn_monotone_range<T: Real>(params: &ModelParams<T>) {
    if let (StageMapSpec::Ricker { beta }, Some(pi1)) = (params.map, params.pi1_request) {
        if pi1 > beta.recip() {
            log::warn!(
                "requested equilibrium {} exceeds the monotone range 1/beta = {}; clamping",
                to_f64(pi1),
                to_f64(beta.recip())
            );
        }
    }
}

impl<T: Real> KernelFft<T> {
    /// Discretizes `x -> K(-x)` on the periodic lattice so that the FFT
    /// convolution computes `int K(y - x) u(y) dy`, renormalized to unit sum.
    fn new(kernel: &KernelSpec<T>, grid: &Grid<T>) -> Result<Self> {
        let n = grid.len();
        let mut weights = vec![T::zero(); n];
        match kernel {
            KernelSpec::PointMass => weights[0] = T::one(),
            KernelSpec::Gaussian { mean, b } => {
                let cov = b.scale(lit(2.0));
                let support: Vec<T> = (0..grid.dim())
                    .map(|i| mean[i].abs() + lit::<T>(8.0) * cov.get(i, i).sqrt())
                    .collect();
                for (axis, s) in support.iter().enumerate() {
                    let extent = grid.spacing(axis) * from_usize::<T>(grid.count(axis));
                    if *s > extent * lit(0.5) {
                        return Err(Error::KernelGridMismatch { support: to_f64(*s), extent: to_f64(extent) });
                    }
                }
                let offset = |axis: usize, i: usize| {
                    let n = grid.count(axis);
                    let k = if i <= n / 2 { from_usize::<T>(i) } else { -from_usize::<T>(n - i) };
                    k * grid.spacing(axis)
                };
                for (k, w) in weights.iter_mut().enumerate() {
                    let i = k % grid.count(0);
                    let j = k / grid.count(0);
                    let x = if grid.dim() == 1 {
                        Vector::new1(-offset(0, i))
                    } else {
                        Vector::new2(-offset(0, i), -offset(1, j))
                    };
                    *w = kernel.density(&x).ok_or(Error::KernelUnsupported)?;
                }
                let total: T = weights.iter().copied().sum();
                if !(total > T::zero()) {
                    return Err(Error::KernelGridMismatch { support: 0.0, extent: to_f64(grid.extent(0)) });
                }
                weights.iter_mut().for_each(|w| *w = *w / total);
            }
        }
        let mut fft = GridFft::new(grid);
        let mut hat = to_complex(&weights);
        fft.forward(&mut hat);
        Ok(Self { hat, fft, buffer: Vec::with_capacity(n) })
    }

    fn redistribute(&mut self, field: &Field<T>) -> Field<T> {
        self.buffer.clear();
        self.buffer.extend(to_complex(field.values()));
        self.fft.forward(&mut self.buffer);
        for (b, k) in self.buffer.iter_mut().zip(&self.hat) {
            *b = *b * *k;
        }
        self.fft.inverse(&mut self.buffer);
        let floor = self.buffer.iter().fold(T::zero(), |m, c| m.max(c.re)) * lit(NOISE_FLOOR);
        let values = self.buffer.iter().map(|c| if c.re > floor { c.re } else { T::zero() }).collect();
        Field::from_raw(*field.grid(), values)
    }
}

/// One application of the local operator `Q` on the field's own grid.
pub fn generation_q<T: Real>(params: &ModelParams<T>, field: &Field<T>, season: &SeasonConfig<T>) -> Result<Field<T>> {
    if params.kernel.is_some() {
        return Err(Error::InvalidArgument("generation_q needs the local map (no kernel)".into()));
    }
    HybridModel::free(params.clone(), *field.grid(), *season)?.generation(field)
}

/// One application of the nonlocal operator `P` on the field's own grid.
pub fn generation_p<T: Real>(params: &ModelParams<T>, field: &Field<T>, season: &SeasonConfig<T>) -> Result<Field<T>> {
    if params.kernel.is_none() {
        return Err(Error::KernelUnsupported);
    }
    HybridModel::free(params.clone(), *field.grid(), *season)?.generation(field)
}

/// Positive constant equilibrium used for thresholds and initial data.
///
/// A requested value wins (clamped to `1/beta` for Ricker). Otherwise the
/// nonspatial equilibrium of the generation map is computed; with a kernel
/// the map acts last, so the level is `g(N*)`.
pub fn simulation_pi1<T: Real>(params: &ModelParams<T>) -> Result<T> {
    let bound = params.map.monotone_bound();
    if let Some(p) = params.pi1_request {
        return Ok(p.min(bound));
    }
    let n = equilibrium_nonspatial(params)?.pi1;
    let level = if params.kernel.is_some() { params.map.eval(n)? } else { n };
    Ok(level.min(bound))
}

/// Upper bound on the spreading speed over all directions.
pub fn max_speed_bound<T: Real>(params: &ModelParams<T>) -> T {
    let n = params.dim();
    let (mean, b) = params.kernel.map(|k| (k.mean(n), k.b(n))).unwrap_or((Vector::zeros(n), crate::linalg::Matrix::zeros(n)));
    let rho = params.net_growth().rho.max(T::zero());
    lit::<T>(2.0) * ((params.diffusion + b).max_eigenvalue() * rho).sqrt() + (params.advection - mean).norm()
}

/// Distance over which the leading edge `exp(-s* x)` of a pulled front
/// falls by about `e^-24`, using the slowest decay rate over directions.
fn tail_length<T: Real>(params: &ModelParams<T>) -> T {
    let n = params.dim();
    let b = params.kernel.map(|k| k.b(n)).unwrap_or_else(|| crate::linalg::Matrix::zeros(n));
    let rho = params.net_growth().rho;
    if rho <= T::zero() {
        return T::zero();
    }
    lit::<T>(24.0) * ((params.diffusion + b).max_eigenvalue() / rho).sqrt()
}

/// Free-space grid centered at the origin, wide enough for `generations`.
///
/// Half-width `max(50 sqrt(2 max eig A), 1.5 (R0 + c_max M) + tail)`, with
/// `R0` the default initial radius and `tail` the leading-edge decay length,
/// widened further for the kernel reach.
pub fn auto_grid<T: Real>(params: &ModelParams<T>, spacing: T, generations: usize) -> Result<Grid<T>> {
    let a_max = params.diffusion.max_eigenvalue();
    let r0 = spacing * lit(6.0);
    let travel = (r0 + max_speed_bound(params) * from_usize::<T>(generations)) * lit(1.5);
    let mut half_width = (lit::<T>(50.0) * (lit::<T>(2.0) * a_max).sqrt()).max(travel + tail_length(params));
    if let Some(k) = params.kernel {
        let n = params.dim();
        let reach = k.mean(n).norm() + lit::<T>(8.0) * k.covariance(n).max_eigenvalue().sqrt();
        half_width = half_width.max(reach * lit(2.5));
    }
    Grid::centered(params.dim(), half_width, spacing)
}

/// Ball of radius `5h` at `center`, height `level`, with a linear ramp over
/// two cells at its edge.
pub fn ball_initial<T: Real>(grid: &Grid<T>, center: [T; 2], level: T) -> Result<Field<T>> {
    let h = grid.spacing(0);
    let radius = h * lit(5.0);
    let dim = grid.dim();
    Field::from_fn(*grid, |x, y| {
        let dx = x - center[0];
        let dy = if dim == 2 { y - center[1] } else { T::zero() };
        let r = (dx * dx + dy * dy).sqrt();
        let ramp = ((radius + h - r) / (h * lit(2.0))).max(T::zero()).min(T::one());
        level * ramp
    })
}

/// Default initial data: ball at the origin at half the equilibrium level.
pub fn default_initial<T: Real>(params: &ModelParams<T>, grid: &Grid<T>) -> Result<Field<T>> {
    let pi1 = simulation_pi1(params)?;
    ball_initial(grid, [T::zero(); 2], pi1 * lit(0.5))
}

/// Runs a free-space simulation from the default initial data on an
/// automatically sized grid.
pub fn simulate_default<T: Real>(
    params: &ModelParams<T>,
    spacing: T,
    generations: usize,
    season: &SeasonConfig<T>,
) -> Result<Trajectory<T>> {
    let grid = match season.half_width {
        Some(w) => Grid::centered(params.dim(), w, spacing)?,
        None => auto_grid(params, spacing, generations)?,
    };
    let initial = default_initial(params, &grid)?;
    HybridModel::free(params.clone(), grid, *season)?.run(initial, generations)
}

/// Measured speed of the default simulation along `e` at threshold `pi1/2`.
pub fn measured_speed<T: Real>(
    params: &ModelParams<T>,
    e: &Direction<T>,
    spacing: T,
    generations: usize,
    season: &SeasonConfig<T>,
) -> Result<SpeedReport<T>> {
    let traj = simulate_default(params, spacing, generations, season)?;
    if let Some(err) = traj.abort.clone() {
        return Err(err);
    }
    let threshold = simulation_pi1(params)? * lit(0.5);
    estimate_speed(&traj, e, threshold, lit(0.4), FitKind::LogCorrected)
}
