//! Closed-form quantities: spreading and ray speeds, critical domain sizes,
//! moment generating functions of the linearized measures, and nonspatial
//! equilibria.

mod critical;
mod equilibrium;
mod measure;
mod ray;
mod scenario;
mod speed;

pub use critical::{
    critical_size, dirichlet_growth_exponent, fisher_critical_length, CriticalDomainReport, DomainRegime, DomainShape,
};
pub use equilibrium::{equilibrium_nonspatial, logistic_survival_equilibrium, nonspatial_iterate, nstar_residual, EquilibriumInfo};
pub use measure::{kernel_mgf, mgf_measure, GaussianMeasure};
pub use ray::{ray_speed, ray_speed_closed_form, RAY_COARSE_ANGLES};
pub use scenario::{
    climate_bounds, savannah_bounds, scenario_bounds, stream_bounds, ClimateInputs, ClimateReport, SavannahInputs,
    SavannahReport, SavannahRow, ScenarioInputs, ScenarioReport, StreamInputs, StreamReport,
};
pub use speed::{speed, speed_local, speed_nonlocal, speed_profile, speed_profile_nonlocal, SpeedProfile};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::model::ModelParams;
use crate::scalar::{lit, Real};

/// Unit direction of propagation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction<T>(Vector<T>);

impl<T: Real> Direction<T> {
    /// Accepts `v` only if it already has unit length (to 1e-12).
    pub fn unit(v: Vector<T>) -> Result<Self> {
        let tol: T = lit(1e-12);
        if ((v.norm() - T::one()).abs()) > tol.max(T::epsilon() * lit(8.0)) {
            return Err(Error::InvalidArgument("direction must have unit length".into()));
        }
        Ok(Self(v))
    }

    /// Normalizes a nonzero vector.
    pub fn normalize(v: Vector<T>) -> Result<Self> {
        let n = v.norm();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::InvalidArgument("direction vector must be nonzero".into()));
        }
        Ok(Self(v.scale(n.recip())))
    }

    /// `(cos theta, sin theta)`.
    pub fn from_angle(theta: T) -> Self {
        Self(Vector::new2(theta.cos(), theta.sin()))
    }

    /// `+1` or `-1` on the line.
    pub fn along_line(sign: T) -> Self {
        Self(Vector::new1(if sign < T::zero() { -T::one() } else { T::one() }))
    }

    pub fn vector(&self) -> &Vector<T> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Angle in the plane (`0` or `pi` on the line).
    pub fn angle(&self) -> T {
        if self.dim() == 1 {
            return if self.0[0] < T::zero() { T::PI() } else { T::zero() };
        }
        self.0[1].atan2(self.0[0])
    }
}

pub(crate) fn positive_rate<T: Real>(params: &ModelParams<T>) -> Result<T> {
    let ng = params.net_growth();
    if ng.extinct {
        return Err(Error::ExtinctionRegime { rho: crate::scalar::to_f64(ng.rho) });
    }
    Ok(ng.rho)
}

pub(crate) fn check_dir<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<()> {
    if e.dim() != params.dim() {
        return Err(Error::DimensionMismatch { expected: params.dim(), found: e.dim() });
    }
    Ok(())
}
