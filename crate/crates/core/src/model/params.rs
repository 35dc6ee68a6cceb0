use crate::linalg::{Matrix, Vector};
use crate::model::{GrowthSpec, KernelSpec, StageMapSpec};
use crate::scalar::Real;

/// Full parameter set of an impulsive reaction–advection–diffusion model.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams<T> {
    /// Symmetric positive-definite diffusivity (length^2 / season).
    pub diffusion: Matrix<T>,
    /// Advection velocity (length / season).
    pub advection: Vector<T>,
    pub growth: GrowthSpec<T>,
    pub map: StageMapSpec<T>,
    /// `None` selects the local map (reproduce, then disperse through the season).
    pub kernel: Option<KernelSpec<T>>,
    /// Requested positive equilibrium level, checked against the monotone range of `g`.
    pub pi1_request: Option<T>,
}

impl<T: Real> ModelParams<T> {
    pub fn new(diffusion: Matrix<T>, advection: Vector<T>, growth: GrowthSpec<T>, map: StageMapSpec<T>) -> Self {
        Self { diffusion, advection, growth, map, kernel: None, pi1_request: None }
    }

    /// Isotropic diffusion `d I` in `dim` dimensions.
    pub fn isotropic(dim: usize, d: T, advection: Vector<T>, growth: GrowthSpec<T>, map: StageMapSpec<T>) -> Self {
        Self::new(Matrix::scalar(dim, d), advection, growth, map)
    }

    pub fn with_kernel(mut self, kernel: KernelSpec<T>) -> Self {
        self.kernel = Some(kernel);
        self
    }

    pub fn with_pi1(mut self, pi1: T) -> Self {
        self.pi1_request = Some(pi1);
        self
    }

    pub fn dim(&self) -> usize {
        self.diffusion.dim()
    }

    /// `g'(0) e^{f'(0)}`: the mass of the linearized one-generation measure.
    pub fn linear_mass(&self) -> T {
        self.map.gp0() * self.growth.fp0().exp()
    }

    /// Net per-generation growth rate at low density.
    pub fn net_growth(&self) -> NetGrowth<T> {
        net_growth(self)
    }

    pub fn pi_plus(&self) -> T {
        self.map.default_pi_plus()
    }
}

/// `rho = f'(0) + ln g'(0)` and the extinction flag `rho <= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetGrowth<T> {
    pub rho: T,
    pub extinct: bool,
}

pub fn net_growth<T: Real>(params: &ModelParams<T>) -> NetGrowth<T> {
    let rho = params.growth.fp0() + params.map.gp0().ln();
    NetGrowth { rho, extinct: rho <= T::zero() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(growth: GrowthSpec<f64>, map: StageMapSpec<f64>) -> ModelParams<f64> {
        ModelParams::isotropic(1, 1.0, Vector::new1(0.0), growth, map)
    }

    #[test]
    fn unit_rates() {
        let ng = net_growth(&p(GrowthSpec::Linear { rate: 1.0 }, StageMapSpec::Linear { alpha: 1.0 }));
        assert_eq!(ng.rho, 1.0);
        assert!(!ng.extinct);
    }

    #[test]
    fn stream_mortality_with_beverton_holt() {
        let lambda = 1.1f64.exp() - 1.0;
        let ng = net_growth(&p(GrowthSpec::Linear { rate: -0.1 }, StageMapSpec::BevertonHolt { lambda }));
        assert!((ng.rho - 1.0).abs() < 1e-14);
    }

    #[test]
    fn subcritical_map() {
        let ng = net_growth(&p(GrowthSpec::Linear { rate: 0.2 }, StageMapSpec::Linear { alpha: 0.5 }));
        assert!((ng.rho - (0.2 + 0.5f64.ln())).abs() < 1e-15);
        assert!((ng.rho + 0.493_147_180_559_945_3).abs() < 1e-12);
        assert!(ng.extinct);
    }
}
