use crate::analytic::{check_dir, positive_rate, Direction};
use crate::error::{Error, Result};
use crate::model::{KernelSpec, ModelParams};
use crate::scalar::{lit, Real};

/// `c*_L(e) = 2 sqrt(<A e, e>) sqrt(f'(0) + ln g'(0)) + e.q` for the local map.
pub fn speed_local<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<T> {
    Ok(speed_profile(params, e)?.value)
}

/// `c*_K(e) = 2 sqrt(<(A + B) e, e>) sqrt(f'(0) + ln g'(0)) + e.(q - mu)` for a Gaussian kernel.
///
/// A point-mass kernel reduces to [`speed_local`].
pub fn speed_nonlocal<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<T> {
    Ok(speed_profile_nonlocal(params, e)?.value)
}

/// Spreading speed of the model's own generation map.
pub fn speed<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<T> {
    if params.kernel.is_some() {
        speed_nonlocal(params, e)
    } else {
        speed_local(params, e)
    }
}

/// `W(s) = rho / s + drift + s * spread`, whose infimum over `s > 0` is the speed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeedProfile<T> {
    pub rho: T,
    pub drift: T,
    pub spread: T,
    /// `s* = sqrt(rho / spread)`.
    pub minimizer: T,
    /// `c* = W(s*)`.
    pub value: T,
}

impl<T: Real> SpeedProfile<T> {
    fn new(rho: T, drift: T, spread: T) -> Self {
        let minimizer = (rho / spread).sqrt();
        let mut p = Self { rho, drift, spread, minimizer, value: T::zero() };
        p.value = p.eval(minimizer);
        p
    }

    pub fn eval(&self, s: T) -> T {
        self.rho / s + self.drift + s * self.spread
    }

    /// Closed-form minimum `2 sqrt(rho * spread) + drift`.
    pub fn closed_form(&self) -> T {
        lit::<T>(2.0) * (self.rho * self.spread).sqrt() + self.drift
    }
}

/// Speed profile of the local linearization in direction `e`.
pub fn speed_profile<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<SpeedProfile<T>> {
    check_dir(params, e)?;
    let rho = positive_rate(params)?;
    let v = e.vector();
    Ok(SpeedProfile::new(rho, params.advection.dot(v), params.diffusion.quad(v)))
}

/// Speed profile of the nonlocal linearization in direction `e`.
pub fn speed_profile_nonlocal<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<SpeedProfile<T>> {
    check_dir(params, e)?;
    let kernel = params.kernel.ok_or(Error::KernelUnsupported)?;
    let rho = positive_rate(params)?;
    let n = params.dim();
    let v = e.vector();
    let (mean, b) = match kernel {
        KernelSpec::Gaussian { mean, b } => (mean, b),
        KernelSpec::PointMass => (crate::linalg::Vector::zeros(n), crate::linalg::Matrix::zeros(n)),
    };
    Ok(SpeedProfile::new(rho, (params.advection - mean).dot(v), (params.diffusion + b).quad(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, Vector};
    use crate::model::{GrowthSpec, StageMapSpec};
    use crate::optimize::golden_section;

    fn fisher(d: f64, q: f64) -> ModelParams<f64> {
        ModelParams::isotropic(1, d, Vector::new1(q), GrowthSpec::Linear { rate: 1.0 }, StageMapSpec::Linear { alpha: 1.0 })
    }

    fn stream() -> ModelParams<f64> {
        let lambda = 1.1f64.exp() - 1.0;
        ModelParams::isotropic(1, 0.5, Vector::new1(1.0), GrowthSpec::Linear { rate: -0.1 }, StageMapSpec::BevertonHolt { lambda })
            .with_kernel(KernelSpec::gaussian(Vector::new1(0.5), Matrix::new1(0.5)))
    }

    #[test]
    fn fisher_speed_is_two() {
        assert!((speed_local(&fisher(1.0, 0.0), &Direction::along_line(1.0)).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn planar_advected_speed() {
        let p = ModelParams::isotropic(
            2,
            1.0,
            Vector::new2(0.5, 0.0),
            GrowthSpec::Linear { rate: 1.0 },
            StageMapSpec::Linear { alpha: 1f64.exp() },
        );
        let c = speed_local(&p, &Direction::from_angle(0.0)).unwrap();
        assert!((c - (2.0 * 2f64.sqrt() + 0.5)).abs() < 1e-14);
        assert!((c - 3.3284).abs() < 1e-4);
    }

    #[test]
    fn extinction_regime_rejected() {
        let mut p = fisher(1.0, 0.0);
        p.growth = GrowthSpec::Linear { rate: 0.2 };
        p.map = StageMapSpec::Linear { alpha: 0.5 };
        assert!(matches!(speed_local(&p, &Direction::along_line(1.0)), Err(Error::ExtinctionRegime { .. })));
    }

    #[test]
    fn degenerate_kernel_is_local() {
        let p = fisher(1.0, 0.0).with_kernel(KernelSpec::gaussian(Vector::new1(0.0), Matrix::new1(1e-12)));
        let c = speed_nonlocal(&p, &Direction::along_line(1.0)).unwrap();
        assert!((c - 2.0).abs() < 1e-5);
    }

    #[test]
    fn stream_speeds() {
        let p = stream();
        assert!((speed_nonlocal(&p, &Direction::along_line(1.0)).unwrap() - 2.5).abs() < 1e-12);
        assert!((speed_nonlocal(&p, &Direction::along_line(-1.0)).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn missing_kernel() {
        assert_eq!(speed_nonlocal(&fisher(1.0, 0.0), &Direction::along_line(1.0)), Err(Error::KernelUnsupported));
    }

    #[test]
    fn profile_minimizers() {
        let e = Direction::along_line(1.0);
        let p1 = speed_profile(&fisher(1.0, 0.0), &e).unwrap();
        assert!((p1.minimizer - 1.0).abs() < 1e-15 && (p1.value - 2.0).abs() < 1e-15);
        let p4 = speed_profile(&fisher(4.0, 0.0), &e).unwrap();
        assert!((p4.minimizer - 0.5).abs() < 1e-15 && (p4.value - 4.0).abs() < 1e-15);
        for i in 0..100 {
            let s = 0.01 + (10.0 - 0.01) * i as f64 / 99.0;
            assert!(p1.eval(s) >= p1.value - 1e-15);
        }
    }

    #[test]
    fn golden_section_matches_closed_form() {
        let p = speed_profile(&fisher(0.7, -0.3), &Direction::along_line(1.0)).unwrap();
        let (_, min) = golden_section(|s| p.eval(s), 1e-3, 50.0, 1e-12);
        assert!((min - p.closed_form()).abs() < 1e-10);
        assert!((p.value - p.closed_form()).abs() < 1e-14);
    }
}
