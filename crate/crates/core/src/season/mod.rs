//! One season `t in (0, 1]` of `u_t = div(A grad u - q u) + f(u)`.
//!
//! Free space is approximated by a periodic box integrated spectrally with
//! Strang splitting; boxes with hostile boundary use Crank–Nicolson (1D) or
//! Peaceman–Rachford ADI (2D). [`GreenKernel`] is the exact solution operator
//! of the linearized equation.

mod dirichlet;
mod fft;
mod green;
mod spectral;

pub use dirichlet::{advance_dirichlet, DirichletBox};
pub use green::{green_eval, GreenKernel};
pub use spectral::{advance_free, SpectralPropagator, NOISE_FLOOR};

pub(crate) use fft::{to_complex, wavenumbers, GridFft};

use crate::scalar::{lit, Real};

/// Numerical settings for one season.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeasonConfig<T> {
    /// Strang substeps per season on free space.
    pub substeps: usize,
    /// Free-space truncation half-width; `None` sizes it automatically.
    pub half_width: Option<T>,
    /// Grid spacing for boxes with hostile boundary.
    pub dirichlet_spacing: T,
    /// Crank–Nicolson (or ADI) steps per season.
    pub dirichlet_steps: usize,
    /// Fail with `BoundaryContamination` when mass reaches the outer 10% band.
    pub guard_boundary: bool,
}

impl<T: Real> Default for SeasonConfig<T> {
    fn default() -> Self {
        Self {
            substeps: 16,
            half_width: None,
            dirichlet_spacing: lit(0.05),
            dirichlet_steps: 40,
            guard_boundary: true,
        }
    }
}
