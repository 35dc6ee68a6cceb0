//! Simulation and analysis of impulsive reaction–advection–diffusion models:
//! a continuous growth and dispersal season `u_t = div(A grad u - q u) + f(u)`
//! composed once per generation with a reproduction map `g`, optionally
//! followed by a dispersal kernel.
//!
//! Modules:
//! - [`model`]: parameters, growth/stage maps, kernels, fields, validation.
//! - [`analytic`]: closed-form spreading speeds, ray speeds, critical domains,
//!   measure moment generating functions, nonspatial equilibria.
//! - [`season`]: one season of the continuous dynamics (spectral free space,
//!   Crank–Nicolson on hostile boxes) and the explicit Green's function.
//! - [`hybrid`]: the generation operators, multi-generation runs, front
//!   tracking, persistence classification.
//! - [`oracle`]: independent speed estimates from the obstacle recursion and
//!   quadrature cross-checks.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod hybrid;
pub mod linalg;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod quadrature;
pub mod scalar;
pub mod season;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use scalar::{lit, Real};

pub type ModelParams64 = model::ModelParams<f64>;
pub type Field64 = model::Field<f64>;
pub type Grid64 = model::Grid<f64>;
pub type Vector64 = Vector<f64>;
pub type Matrix64 = Matrix<f64>;
pub type Direction64 = analytic::Direction<f64>;
pub type GaussianMeasure64 = analytic::GaussianMeasure<f64>;
pub type SpeedReport64 = hybrid::SpeedReport<f64>;
pub type Trajectory64 = hybrid::Trajectory<f64>;

pub type ModelParams32 = model::ModelParams<f32>;
pub type Field32 = model::Field<f32>;
