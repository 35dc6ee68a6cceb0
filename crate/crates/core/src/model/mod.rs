//! Model parameters, growth and stage maps, dispersal kernels, grids and
//! validation of the standing assumptions.

mod field;
mod growth;
mod kernel;
mod map;
mod params;
mod validate;

pub use field::{Field, Grid};
pub use growth::GrowthSpec;
pub use kernel::KernelSpec;
pub use map::StageMapSpec;
pub use params::{net_growth, ModelParams, NetGrowth};
pub use validate::{validate, Violation};


use crate::error::Result;
use crate::scalar::Real;

/// Pointwise `g(s)`; rejects negative densities.
pub fn eval_map<T: Real>(map: &StageMapSpec<T>, s: T) -> Result<T> {
    map.eval(s)
}

/// Pointwise `f(s)`; rejects negative densities.
pub fn eval_growth<T: Real>(growth: &GrowthSpec<T>, s: T) -> Result<T> {
    growth.eval(s)
}
