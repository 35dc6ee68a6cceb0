use crate::analytic::Direction;
use crate::linalg::{Matrix, Vector};
use crate::model::{KernelSpec, ModelParams};
use crate::scalar::{lit, Real};

/// Scaled Gaussian measure `mass * N(mean, spread)` representing one
/// linearized generation (`spread` is the statistical covariance).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianMeasure<T> {
    pub mass: T,
    pub mean: Vector<T>,
    pub spread: Matrix<T>,
}

impl<T: Real> GaussianMeasure<T> {
    /// Measure of the local linearization: mass `g'(0)e^{f'(0)}`, mean `q`, covariance `2A`.
    pub fn local(params: &ModelParams<T>) -> Self {
        Self { mass: params.linear_mass(), mean: params.advection, spread: params.diffusion.scale(lit(2.0)) }
    }

    /// Measure of the nonlocal linearization: mean `q - mu`, covariance `2(A + B)`.
    ///
    /// Falls back to the local measure when there is no kernel.
    pub fn nonlocal(params: &ModelParams<T>) -> Self {
        let n = params.dim();
        let kernel = params.kernel.unwrap_or(KernelSpec::PointMass);
        Self {
            mass: params.linear_mass(),
            mean: params.advection - kernel.mean(n),
            spread: (params.diffusion + kernel.b(n)).scale(lit(2.0)),
        }
    }

    /// Measure matching the model's generation map.
    pub fn for_model(params: &ModelParams<T>) -> Self {
        if params.kernel.is_some() {
            Self::nonlocal(params)
        } else {
            Self::local(params)
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.dim()
    }

    /// Density with respect to Lebesgue measure.
    pub fn density(&self, x: &Vector<T>) -> T {
        let inv = self.spread.inverse().expect("spread is positive definite");
        let d = *x - self.mean;
        let two_pi: T = lit(2.0 * std::f64::consts::PI);
        let norm = (two_pi.powi(self.dim() as i32) * self.spread.det()).sqrt();
        self.mass * (-inv.quad(&d) * lit(0.5)).exp() / norm
    }

    /// Mean and variance of `x . e` under the normalized measure.
    pub fn projected(&self, e: &Direction<T>) -> (T, T) {
        (self.mean.dot(e.vector()), self.spread.quad(e.vector()))
    }
}

/// `int e^{s x.e} m(dx) = mass * exp(s mean.e + s^2 <spread e, e> / 2)`.
pub fn mgf_measure<T: Real>(meas: &GaussianMeasure<T>, e: &Direction<T>, s: T) -> T {
    let (mean, var) = meas.projected(e);
    meas.mass * (s * mean + s * s * var * lit(0.5)).exp()
}

/// `k(s) = int K(x) e^{-s x.e} dx`.
pub fn kernel_mgf<T: Real>(kernel: &KernelSpec<T>, e: &Direction<T>, s: T) -> T {
    kernel.mgf(e.vector(), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GrowthSpec, StageMapSpec};

    #[test]
    fn zero_argument_gives_mass() {
        let p = ModelParams::isotropic(1, 1.0, Vector::new1(0.3), GrowthSpec::Linear { rate: 1.0 }, StageMapSpec::Linear { alpha: 2.0 });
        let m = GaussianMeasure::local(&p);
        let e = Direction::along_line(1.0);
        assert!((mgf_measure(&m, &e, 0.0) - 2.0 * 1f64.exp()).abs() < 1e-14);
        // 2 e^{1} e^{0.5*0.3 + 0.25*1} = 2 e^{1.4}
        assert!((mgf_measure(&m, &e, 0.5) - 2.0 * 1.4f64.exp()).abs() < 1e-12);
        assert!((mgf_measure(&m, &e, 0.5) - 8.110_399_933_689).abs() < 1e-9);
    }

    #[test]
    fn gaussian_kernel_mgf() {
        let k = KernelSpec::gaussian(Vector::new1(0.5), Matrix::new1(0.25));
        assert!((kernel_mgf(&k, &Direction::along_line(1.0), 2.0f64) - 1.0).abs() < 1e-15);
    }
}
