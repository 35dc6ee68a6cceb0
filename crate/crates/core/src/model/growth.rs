use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Within-season growth `f(s) = f'(0) s + f1(s)` with `f1(s) = gamma s^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthSpec<T> {
    /// `f(s) = rate * s`.
    Linear { rate: T },
    /// `f(s) = rate * s + gamma * s^2`, `gamma <= 0`.
    Quadratic { rate: T, gamma: T },
    /// `f(s) = r s (1 - s)`.
    Logistic { r: T },
}

impl<T: Real> GrowthSpec<T> {
    /// `f'(0)`.
    pub fn fp0(&self) -> T {
        match *self {
            Self::Linear { rate } | Self::Quadratic { rate, .. } => rate,
            Self::Logistic { r } => r,
        }
    }

    /// Coefficient of `s^2`.
    pub fn gamma(&self) -> T {
        match *self {
            Self::Linear { .. } => T::zero(),
            Self::Quadratic { gamma, .. } => gamma,
            Self::Logistic { r } => -r,
        }
    }

    pub fn eval(&self, s: T) -> Result<T> {
        if s < T::zero() {
            return Err(Error::NegativeDensity { value: to_f64(s) });
        }
        Ok(self.eval_unchecked(s))
    }

    pub(crate) fn eval_unchecked(&self, s: T) -> T {
        self.fp0() * s + self.gamma() * s * s
    }

    /// The nonlinear remainder `f1(s) = f(s) - f'(0) s`.
    pub fn nonlinear_part(&self, s: T) -> T {
        self.gamma() * s * s
    }

    /// Smallest positive zero of `f`, if any.
    pub fn positive_zero(&self) -> Option<T> {
        let (a, g) = (self.fp0(), self.gamma());
        (a > T::zero() && g < T::zero()).then(|| -a / g)
    }

    /// Exact solution of `u' = f(u)` after time `t` from `u0 >= 0`.
    ///
    /// `u(t) = u0 e^{at} / (1 - gamma u0 (e^{at} - 1)/a)`, with the bracket
    /// replaced by `t` when `a = 0`.
    pub fn flow(&self, u0: T, t: T) -> T {
        let a = self.fp0();
        let g = self.gamma();
        let growth = (a * t).exp();
        if g == T::zero() {
            return u0 * growth;
        }
        let phi = if a == T::zero() { t } else { (a * t).exp_m1() / a };
        u0 * growth / (T::one() - g * u0 * phi)
    }

    /// Same as [`flow`](Self::flow) but evaluated for a half step.
    pub(crate) fn half_flow(&self, u0: T, t: T) -> T {
        self.flow(u0, t * lit(0.5))
    }
}
