use crate::analytic::positive_rate;
use crate::error::{Error, Result};
use crate::model::{GrowthSpec, ModelParams, StageMapSpec};
use crate::quadrature::Quadrature;
use crate::scalar::{lit, to_f64, Real};

/// Constant states of the nonspatial generation map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumInfo<T> {
    pub pi0: T,
    /// Positive equilibrium `N*`.
    pub pi1: T,
    pub pi_plus: T,
    pub extinct: bool,
}

/// `int_{g(N)}^{N} dw / f(w) - 1`, zero at a positive equilibrium of
/// `N -> flow(g(N), 1)`.
pub fn nstar_residual<T: Real>(params: &ModelParams<T>, n: T) -> Result<T> {
    let growth = params.growth;
    let gn = params.map.eval(n)?;
    if gn == n {
        return Ok(-T::one());
    }
    let (lo, hi) = if gn < n { (gn, n) } else { (n, gn) };
    if let Some(k) = growth.positive_zero() {
        if lo < k && k < hi {
            return Err(Error::QuadratureSingularity { at: to_f64(k) });
        }
    }
    if lo <= T::zero() {
        return Err(Error::QuadratureSingularity { at: 0.0 });
    }
    let quad = Quadrature::with_tol(1e-13, 1e-12);
    let integral = quad.integrate(|w: T| growth.eval_unchecked(w).recip(), gn, n)?;
    Ok(integral - T::one())
}

/// Positive equilibrium of the local model with spatially constant data.
///
/// Brackets a sign change of [`nstar_residual`] starting from `N = 1e-12` and
/// doubling upward (capped below `pi_+` and below the zero of `f`), then
/// bisects.
pub fn equilibrium_nonspatial<T: Real>(params: &ModelParams<T>) -> Result<EquilibriumInfo<T>> {
    positive_rate(params)?;
    let pi_plus = params.pi_plus();
    let info = |pi1| EquilibriumInfo { pi0: T::zero(), pi1, pi_plus, extinct: false };

    // Identity map: the season flow alone decides, and its fixed point is the
    // zero of f.
    if let StageMapSpec::Linear { alpha } = params.map {
        if alpha == T::one() {
            return params
                .growth
                .positive_zero()
                .map(info)
                .ok_or_else(|| Error::NoEquilibrium("identity map with linear growth".into()));
        }
        if matches!(params.growth, GrowthSpec::Linear { .. }) {
            return Err(Error::NoEquilibrium("linear map with linear growth grows without bound".into()));
        }
    }

    let mut cap = pi_plus;
    if let Some(k) = params.growth.positive_zero() {
        cap = cap.min(k);
    }
    let eps: T = lit(1e-12);
    let lo = eps;
    let r_lo = nstar_residual(params, lo)?;
    if r_lo == T::zero() {
        return Ok(info(lo));
    }
    let mut hi = lo;
    let mut found = None;
    for _ in 0..200 {
        let next = hi * lit(2.0);
        let capped = cap.is_finite() && next >= cap;
        hi = if capped { cap * (T::one() - lit::<T>(1e-6)) } else { next };
        match nstar_residual(params, hi) {
            Ok(r) if r.signum() != r_lo.signum() || r == T::zero() => {
                found = Some(hi);
                break;
            }
            Ok(_) => {}
            Err(Error::QuadratureSingularity { .. }) => break,
            Err(e) => return Err(e),
        }
        if capped {
            break;
        }
    }
    let hi = found.ok_or_else(|| Error::NoEquilibrium("no sign change of the equilibrium residual".into()))?;
    let lo = (hi * lit(0.5)).max(lo);
    let root = crate::optimize::bisect(|n| nstar_residual(params, n), lo, hi, lit(1e-15))?;
    Ok(info(root))
}

/// Closed-form equilibrium for logistic growth `r` followed by survival
/// `1 - s`: `((1-s)e^r - 1) / ((1-s)(e^r - 1))`.
pub fn logistic_survival_equilibrium<T: Real>(r: T, s: T) -> Result<T> {
    let keep = T::one() - s;
    let er = r.exp();
    if keep * er <= T::one() {
        return Err(Error::ExtinctionRegime { rho: to_f64(r + keep.ln()) });
    }
    Ok((keep * er - T::one()) / (keep * (er - T::one())))
}

/// `U_1, ..., U_m` for spatially constant data: map `g`, then one season.
pub fn nonspatial_iterate<T: Real>(params: &ModelParams<T>, u0: T, m: usize) -> Result<Vec<T>> {
    if !(u0 >= T::zero()) {
        return Err(Error::NegativeDensity { value: to_f64(u0) });
    }
    let mut out = Vec::with_capacity(m);
    let mut u = u0;
    for _ in 0..m {
        let g = params.map.eval(u)?;
        u = match params.growth {
            GrowthSpec::Quadratic { rate, gamma } if rate != T::zero() => {
                let decay = (-rate).exp();
                rate * g / ((decay - T::one()) * gamma * g + rate * decay)
            }
            growth => growth.flow(g, T::one()),
        };
        out.push(u);
    }
    Ok(out)
}
