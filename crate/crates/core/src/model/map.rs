use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};

/// Discrete reproduction map `g` applied once per generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StageMapSpec<T> {
    /// `g(s) = alpha s`.
    Linear { alpha: T },
    /// `g(s) = s e^{beta (1 - s)}`.
    Ricker { beta: T },
    /// `g(s) = (1 + lambda) s / (1 + lambda s)`.
    BevertonHolt { lambda: T },
    /// `g(s) = alpha (1 - e^{-beta s})`.
    Skellam { alpha: T, beta: T },
}

impl<T: Real> StageMapSpec<T> {
    /// `g'(0)`.
    pub fn gp0(&self) -> T {
        match *self {
            Self::Linear { alpha } => alpha,
            Self::Ricker { beta } => beta.exp(),
            Self::BevertonHolt { lambda } => T::one() + lambda,
            Self::Skellam { alpha, beta } => alpha * beta,
        }
    }

    /// Upper end `s*` of the range on which `g` is nondecreasing.
    pub fn monotone_bound(&self) -> T {
        match *self {
            Self::Ricker { beta } => beta.recip(),
            _ => T::infinity(),
        }
    }

    /// Default invariant upper bound `pi_+` for densities.
    pub fn default_pi_plus(&self) -> T {
        match *self {
            Self::Linear { .. } => T::infinity(),
            Self::Ricker { beta } => (beta - T::one()).exp() / beta,
            Self::BevertonHolt { lambda } => (T::one() + lambda) / lambda,
            Self::Skellam { alpha, .. } => alpha,
        }
    }

    pub fn eval(&self, s: T) -> Result<T> {
        if s < T::zero() {
            return Err(Error::NegativeDensity { value: to_f64(s) });
        }
        Ok(self.eval_unchecked(s))
    }

    pub(crate) fn eval_unchecked(&self, s: T) -> T {
        let one = T::one();
        match *self {
            Self::Linear { alpha } => alpha * s,
            Self::Ricker { beta } => s * (beta * (one - s)).exp(),
            Self::BevertonHolt { lambda } => (one + lambda) * s / (one + lambda * s),
            Self::Skellam { alpha, beta } => -alpha * (-beta * s).exp_m1(),
        }
    }

    pub(crate) fn parameters_valid(&self) -> bool {
        let pos = |x: T| x > T::zero() && x.is_finite();
        match *self {
            Self::Linear { alpha } => pos(alpha),
            Self::Ricker { beta } => pos(beta),
            Self::BevertonHolt { lambda } => pos(lambda),
            Self::Skellam { alpha, beta } => pos(alpha) && pos(beta),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_values() {
        assert!((StageMapSpec::Ricker { beta: 1.0 }.eval(1.0f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((StageMapSpec::BevertonHolt { lambda: 1.0 }.eval(1.0f64).unwrap() - 1.0).abs() < 1e-15);
        assert!(StageMapSpec::Linear { alpha: 2.0 }.eval(-1.0f64).is_err());
    }

    #[test]
    fn skellam_slope_at_zero() {
        let g = StageMapSpec::Skellam { alpha: 2.0f64, beta: 1.5 };
        let h = 1e-7;
        let slope = g.eval(h).unwrap() / h;
        assert!((slope - 3.0).abs() < 1e-5);
        assert_eq!(g.gp0(), 3.0);
    }

    #[test]
    fn ricker_default_bound_is_peak_value() {
        let g = StageMapSpec::Ricker { beta: 2.0f64 };
        let peak = g.eval(g.monotone_bound()).unwrap();
        assert!((peak - g.default_pi_plus()).abs() < 1e-14);
    }
}
