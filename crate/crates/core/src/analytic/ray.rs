use crate::analytic::{check_dir, positive_rate, speed, Direction};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::optimize::golden_section;
use crate::scalar::{from_usize, lit, Real};

/// Number of angles in the coarse scan preceding golden-section refinement.
pub const RAY_COARSE_ANGLES: usize = 720;

/// Ray speed `C(e) = min_{e.e' > 0} c*(e') / (e.e')`.
///
/// On the line the only admissible direction is `e` itself. In the plane the
/// admissible half circle is scanned at [`RAY_COARSE_ANGLES`] angles and the
/// best bracket refined by golden section to 1e-10 in angle.
pub fn ray_speed<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<T> {
    check_dir(params, e)?;
    positive_rate(params)?;
    if e.dim() == 1 {
        return speed(params, e);
    }
    let theta = e.angle();
    let half_pi = T::FRAC_PI_2();
    let step = T::PI() / from_usize::<T>(RAY_COARSE_ANGLES);
    let ratio = |psi: T| -> Result<T> {
        let c = speed(params, &Direction::from_angle(theta + psi))?;
        Ok(c / psi.cos())
    };
    let mut best = (0usize, T::infinity());
    for k in 0..RAY_COARSE_ANGLES {
        let psi = -half_pi + step * (from_usize::<T>(k) + lit(0.5));
        let c = speed(params, &Direction::from_angle(theta + psi))?;
        if c <= T::zero() {
            return Err(Error::RayUnbounded);
        }
        let r = c / psi.cos();
        if r < best.1 {
            best = (k, r);
        }
    }
    let center = -half_pi + step * (from_usize::<T>(best.0) + lit(0.5));
    let lo = (center - step).max(-half_pi + step * lit(0.01));
    let hi = (center + step).min(half_pi - step * lit(0.01));
    let (_, min) = golden_section(|psi| ratio(psi).unwrap_or(T::infinity()), lo, hi, lit(1e-10));
    Ok(min.min(best.1))
}

/// Closed-form ray speed for `A = diag(a11^2, a22^2)`, `q = 0`:
/// `C = 2 sqrt(a11^2 a22^2 / (a11^2 sin^2 t + a22^2 cos^2 t)) sqrt(rho)`.
pub fn ray_speed_closed_form<T: Real>(params: &ModelParams<T>, e: &Direction<T>) -> Result<T> {
    check_dir(params, e)?;
    let rho = positive_rate(params)?;
    if params.dim() != 2 || !params.diffusion.is_diagonal() || params.kernel.is_some() {
        return Err(Error::InvalidArgument("closed-form ray speed needs 2D diagonal diffusion and a local map".into()));
    }
    if params.advection.norm() != T::zero() {
        return Err(Error::InvalidArgument("closed-form ray speed needs zero advection".into()));
    }
    let a11_sq = params.diffusion.get(0, 0);
    let a22_sq = params.diffusion.get(1, 1);
    let (s, c) = e.angle().sin_cos();
    let denom = a11_sq * s * s + a22_sq * c * c;
    Ok(lit::<T>(2.0) * (a11_sq * a22_sq / denom).sqrt() * rho.sqrt())
}
