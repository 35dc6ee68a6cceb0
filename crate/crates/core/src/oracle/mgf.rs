use crate::analytic::{mgf_measure, Direction, GaussianMeasure};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::model::{KernelSpec, ModelParams};
use crate::optimize::golden_section;
use crate::quadrature::Quadrature;
use crate::scalar::{lit, Real};
use crate::season::GreenKernel;

fn quad() -> Quadrature {
    Quadrature::with_tol(1e-14, 1e-12)
}

/// `int f(x) dx` over the line or the plane.
fn integrate_space<T: Real, F: FnMut(&Vector<T>) -> T>(dim: usize, mut f: F) -> Result<T> {
    let q = quad();
    match dim {
        1 => q.integrate_real_line(|x| f(&Vector::new1(x))),
        2 => q.integrate_plane(|x, y| f(&Vector::new2(x, y))),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn max_rel_error<T: Real>(pairs: impl IntoIterator<Item = Result<(T, T)>>) -> Result<T> {
    let mut worst = T::zero();
    for p in pairs {
        let (num, exact) = p?;
        worst = worst.max(((num - exact) / exact).abs());
    }
    Ok(worst)
}

/// Largest relative error of the quadrature of `int e^{s x.e} m(dx)` against
/// the closed form, over `s_list`.
pub fn crosscheck_mgf<T: Real>(measure: &GaussianMeasure<T>, e: &Direction<T>, s_list: &[T]) -> Result<T> {
    if e.dim() != measure.dim() {
        return Err(Error::DimensionMismatch { expected: measure.dim(), found: e.dim() });
    }
    max_rel_error(s_list.iter().map(|&s| {
        let num = integrate_space(measure.dim(), |x| measure.density(x) * (s * x.dot(e.vector())).exp())?;
        Ok((num, mgf_measure(measure, e, s)))
    }))
}

/// Same check starting from the model itself: the measure density is
/// `g'(0) k(x, 1)` with the heat kernel `k`, and with a dispersal kernel the
/// MGF factors as `g'(0) int k(u,1) e^{s u.e} du * int K(t) e^{-s t.e} dt`.
/// Each factor is integrated separately.
pub fn crosscheck_model_mgf<T: Real>(params: &ModelParams<T>, e: &Direction<T>, s_list: &[T]) -> Result<T> {
    let n = params.dim();
    if e.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: e.dim() });
    }
    let green = GreenKernel::new(params)?;
    let gp0 = params.map.gp0();
    let closed = GaussianMeasure::for_model(params);
    max_rel_error(s_list.iter().map(|&s| {
        let season = integrate_space(n, |x| {
            green.eval(x, T::one()).unwrap_or(T::zero()) * (s * x.dot(e.vector())).exp()
        })?;
        let kernel = match params.kernel {
            Some(k @ KernelSpec::Gaussian { .. }) => {
                integrate_space(n, |t| k.density(t).unwrap_or(T::zero()) * (-s * t.dot(e.vector())).exp())?
            }
            _ => T::one(),
        };
        Ok((gp0 * season * kernel, mgf_measure(&closed, e, s)))
    }))
}

/// `ln int e^{s x.e} m(dx)` without overflowing for large `s`.
fn ln_mgf<T: Real>(measure: &GaussianMeasure<T>, e: &Direction<T>, s: T) -> T {
    let v = mgf_measure(measure, e, s);
    if v.is_finite() {
        return v.ln();
    }
    let (mean, var) = measure.projected(e);
    measure.mass.ln() + s * mean + s * s * var * lit(0.5)
}

/// `inf_{s>0} (1/s) ln int e^{s x.e} m(dx)` by golden section on the MGF.
pub fn mgf_speed_bound<T: Real>(measure: &GaussianMeasure<T>, e: &Direction<T>) -> Result<T> {
    if measure.mass <= T::one() {
        return Err(Error::ExtinctionRegime { rho: crate::scalar::to_f64(measure.mass.ln()) });
    }
    let (_, var) = measure.projected(e);
    let top = lit::<T>(50.0) / var.sqrt().max(lit(1e-6));
    let w = |s: T| ln_mgf(measure, e, s) / s;
    Ok(golden_section(w, lit(1e-8), top, lit(1e-12)).1)
}

/// `min` of `(1/s) ln MGF(s)` over the given positive `s`.
pub fn sampled_mgf_bound<T: Real>(measure: &GaussianMeasure<T>, e: &Direction<T>, samples: &[T]) -> T {
    samples
        .iter()
        .filter(|s| **s > T::zero())
        .map(|&s| ln_mgf(measure, e, s) / s)
        .fold(T::infinity(), T::min)
}
