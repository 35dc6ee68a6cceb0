use crate::analytic::{
    logistic_survival_equilibrium, ray_speed, ray_speed_closed_form, speed_local, Direction,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::model::{GrowthSpec, ModelParams, StageMapSpec};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Habitat rectangle `[0, L1] x [0, L2]` shifting at speed `c`, mortality
/// `gamma`, Beverton–Holt reproduction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClimateInputs<T> {
    pub d: T,
    pub lambda: T,
    pub gamma: T,
    pub l1: T,
    pub l2: T,
    /// Climate shift speed; `None` reports only the bound.
    pub shift: Option<T>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClimateReport<T> {
    /// Largest shift speed compatible with persistence on the rectangle.
    pub c_max: T,
    /// Whether the given shift satisfies the rectangle persistence condition.
    pub persists: Option<bool>,
    /// Spreading speeds along `+x` and `-x` on the unbounded line.
    pub speed_with: Option<T>,
    pub speed_against: Option<T>,
}

impl<T: Real> ClimateInputs<T> {
    pub fn rho(&self) -> T {
        self.lambda.ln_1p() - self.gamma
    }

    /// Model on the plane with `q = (c, 0)`.
    pub fn params(&self) -> ModelParams<T> {
        let c = self.shift.unwrap_or_else(T::zero);
        ModelParams::isotropic(
            2,
            self.d,
            Vector::new2(c, T::zero()),
            GrowthSpec::Linear { rate: -self.gamma },
            StageMapSpec::BevertonHolt { lambda: self.lambda },
        )
    }
}

/// `c_max = sqrt(4 d rho - (2 d pi)^2 (L1^2 + L2^2) / (L1^2 L2^2))`.
pub fn climate_bounds<T: Real>(inp: &ClimateInputs<T>) -> Result<ClimateReport<T>> {
    let four: T = lit(4.0);
    let two_d_pi = lit::<T>(2.0) * inp.d * T::PI();
    let (l1s, l2s) = (inp.l1 * inp.l1, inp.l2 * inp.l2);
    let radicand = four * inp.d * inp.rho() - two_d_pi * two_d_pi * (l1s + l2s) / (l1s * l2s);
    if !(radicand > T::zero()) {
        return Err(Error::NoPersistenceWindow { radicand: to_f64(radicand) });
    }
    let c_max = radicand.sqrt();
    let (persists, speed_with, speed_against) = match inp.shift {
        Some(c) => {
            let base = lit::<T>(2.0) * (inp.d * inp.rho()).sqrt();
            (Some(c.abs() < c_max), Some(base + c), Some(base - c))
        }
        None => (None, None, None),
    };
    Ok(ClimateReport { c_max, persists, speed_with, speed_against })
}

/// Stream insects: larval mortality `r`, drift `q`, adult Gaussian dispersal
/// with mean `mu` and `B = sigma2`, Beverton–Holt reproduction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StreamInputs<T> {
    pub d: T,
    pub sigma2: T,
    pub r: T,
    pub q: T,
    pub mu: T,
    pub lambda: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StreamReport<T> {
    /// `(1 + lambda) e^{-r} > 1`.
    pub persists: bool,
    /// `lambda + 1 > e^{r + (q - mu)^2 / (4 (d + sigma2))}`.
    pub spreads_both_ways: bool,
    pub threshold: T,
    /// Speeds along `+x` (downstream) and `-x`; `None` when extinct.
    pub speed_down: Option<T>,
    pub speed_up: Option<T>,
}

impl<T: Real> StreamInputs<T> {
    pub fn params(&self) -> ModelParams<T> {
        ModelParams::isotropic(
            1,
            self.d,
            Vector::new1(self.q),
            GrowthSpec::Linear { rate: -self.r },
            StageMapSpec::BevertonHolt { lambda: self.lambda },
        )
        .with_kernel(crate::model::KernelSpec::gaussian(Vector::new1(self.mu), Matrix::new1(self.sigma2)))
    }
}

pub fn stream_bounds<T: Real>(inp: &StreamInputs<T>) -> Result<StreamReport<T>> {
    let one = T::one();
    let persists = (one + inp.lambda) * (-inp.r).exp() > one;
    let drift = inp.q - inp.mu;
    let threshold = (inp.r + drift * drift / (lit::<T>(4.0) * (inp.d + inp.sigma2))).exp();
    let spreads_both_ways = inp.lambda + one > threshold;
    let (speed_down, speed_up) = if persists {
        let p = inp.params();
        (
            Some(crate::analytic::speed(&p, &Direction::along_line(one))?),
            Some(crate::analytic::speed(&p, &Direction::along_line(-one))?),
        )
    } else {
        (None, None)
    };
    Ok(StreamReport { persists, spreads_both_ways, threshold, speed_down, speed_up })
}

/// Logistic grass (`r`), fire survival `1 - s`, diffusion `diag(a11^2, a22^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SavannahInputs<T> {
    pub r: T,
    pub s: T,
    pub a11: T,
    pub a22: T,
    pub q1: T,
    pub q2: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SavannahRow<T> {
    pub theta: T,
    pub speed: T,
    pub ray_speed: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SavannahReport<T> {
    pub nstar: T,
    /// One row per degree over `[0, pi/2]`.
    pub rows: Vec<SavannahRow<T>>,
}

impl<T: Real> SavannahInputs<T> {
    pub fn params(&self) -> ModelParams<T> {
        ModelParams::new(
            Matrix::diag2(self.a11 * self.a11, self.a22 * self.a22),
            Vector::new2(self.q1, self.q2),
            GrowthSpec::Logistic { r: self.r },
            StageMapSpec::Linear { alpha: T::one() - self.s },
        )
    }
}

pub fn savannah_bounds<T: Real>(inp: &SavannahInputs<T>) -> Result<SavannahReport<T>> {
    let nstar = logistic_survival_equilibrium(inp.r, inp.s)?;
    let p = inp.params();
    let zero_drift = inp.q1 == T::zero() && inp.q2 == T::zero();
    let step = T::PI() / lit(180.0);
    let mut rows = Vec::with_capacity(91);
    for k in 0..=90 {
        let theta = step * from_usize(k);
        let e = Direction::from_angle(theta);
        let speed = speed_local(&p, &e)?;
        let ray = if zero_drift { ray_speed_closed_form(&p, &e)? } else { ray_speed(&p, &e)? };
        rows.push(SavannahRow { theta, speed, ray_speed: ray });
    }
    Ok(SavannahReport { nstar, rows })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScenarioInputs<T> {
    Climate(ClimateInputs<T>),
    Stream(StreamInputs<T>),
    Savannah(SavannahInputs<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioReport<T> {
    Climate(ClimateReport<T>),
    Stream(StreamReport<T>),
    Savannah(SavannahReport<T>),
}

pub fn scenario_bounds<T: Real>(inputs: &ScenarioInputs<T>) -> Result<ScenarioReport<T>> {
    Ok(match inputs {
        ScenarioInputs::Climate(c) => ScenarioReport::Climate(climate_bounds(c)?),
        ScenarioInputs::Stream(s) => ScenarioReport::Stream(stream_bounds(s)?),
        ScenarioInputs::Savannah(s) => ScenarioReport::Savannah(savannah_bounds(s)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn climate(shift: Option<f64>) -> ClimateInputs<f64> {
        ClimateInputs { d: 1.0, lambda: 2f64.exp_m1(), gamma: 0.5, l1: 2.0 * PI, l2: 2.0 * PI, shift }
    }

    #[test]
    fn climate_bound() {
        let r = climate_bounds(&climate(None)).unwrap();
        assert!((r.c_max - 2.0).abs() < 1e-12);
        let r = climate_bounds(&climate(Some(1.0))).unwrap();
        assert_eq!(r.persists, Some(true));
        // Persistence on the rectangle implies positive speed against the shift.
        assert!(r.speed_against.unwrap() > 0.0);
        assert!((r.speed_with.unwrap() - (2.0 * 1.5f64.sqrt() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn climate_without_window() {
        let mut inp = climate(None);
        inp.l1 = 1.0;
        assert!(matches!(climate_bounds(&inp), Err(Error::NoPersistenceWindow { .. })));
    }

    #[test]
    fn stream_spreads_both_ways() {
        let inp = StreamInputs { d: 0.5, sigma2: 0.5, r: 0.1, q: 1.0, mu: 0.5, lambda: 1.2f64.exp_m1() };
        let rep = stream_bounds(&inp).unwrap();
        assert!(rep.persists && rep.spreads_both_ways);
        assert!((rep.threshold - 0.1625f64.exp()).abs() < 1e-12);
        let down = rep.speed_down.unwrap();
        let up = rep.speed_up.unwrap();
        assert!((down - up - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stream_extinction_verdict() {
        let inp = StreamInputs { d: 0.5, sigma2: 0.5, r: 1.0, q: 1.0, mu: 0.5, lambda: 0.5 };
        let rep = stream_bounds(&inp).unwrap();
        assert!(!rep.persists);
        assert!(rep.speed_down.is_none());
    }

    #[test]
    fn savannah_table() {
        let inp = SavannahInputs { r: 1.0f64, s: 0.1, a11: 2.0, a22: 1.0, q1: 0.0, q2: 0.0 };
        let rep = savannah_bounds(&inp).unwrap();
        assert!((rep.nstar - 0.935_335_921_458_963_8).abs() < 1e-15);
        assert_eq!(rep.rows.len(), 91);
        let row = rep.rows[45];
        let expected = 2.0 * 1.6f64.sqrt() * (1.0 + 0.9f64.ln()).sqrt();
        assert!((row.ray_speed - expected).abs() < 1e-12);
        assert!(rep.rows.iter().all(|r| r.ray_speed <= r.speed + 1e-12));
    }
}
