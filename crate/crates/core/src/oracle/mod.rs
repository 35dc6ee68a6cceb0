//! Independent speed estimates from the obstacle recursion on the linearized
//! generation operator, and quadrature checks of the measure formulas.
//!
//! The recursion is run on `Gamma[u](x) = int u(x - y) m(dy)` projected onto
//! the direction `e`:
//! `a_{m+1}(s) = max{phi(s), int a_m(s + c - y) m_e(dy)}`
//! where `m_e` is the law of `y . e`. Because the operator is linear its
//! profile grows without bound behind the front; the state keeps a
//! normalized profile and a log scale.

mod mgf;

pub use mgf::{crosscheck_mgf, crosscheck_model_mgf, mgf_speed_bound, sampled_mgf_bound};

use crate::analytic::{Direction, GaussianMeasure};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Settings of the obstacle recursion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig<T> {
    pub direction: Direction<T>,
    /// `pi_1`; the obstacle is `phi(s) = pi1/2 * clamp(-s, 0, 1)`.
    pub pi1: T,
    /// Profile grid spacing; `None` means `min(0.05, sigma/10)`.
    pub spacing: Option<T>,
    /// Iteration cap `M`.
    pub iterations: usize,
    /// Bisection stops once the bracket on `c` is narrower than this.
    pub tolerance: T,
    /// Quadrature truncation in standard deviations of the projected measure.
    pub radius: T,
}

impl<T: Real> OracleConfig<T> {
    pub fn new(direction: Direction<T>) -> Self {
        Self { direction, pi1: T::one(), spacing: None, iterations: 600, tolerance: lit(1e-3), radius: lit(8.0) }
    }

    /// `phi(-inf)`.
    pub fn phi_limit(&self) -> T {
        self.pi1 * lit(0.5)
    }

    pub fn phi(&self, s: T) -> T {
        self.phi_limit() * (-s).max(T::zero()).min(T::one())
    }
}

/// Profile `a_m` after `m` steps at candidate speed `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleState<T> {
    pub c: T,
    pub m: usize,
    /// Leftmost grid point.
    pub origin: T,
    pub spacing: T,
    /// `a_m / exp(log_scale)`, with maximum 1.
    pub profile: Vec<T>,
    pub log_scale: T,
    /// Probe point `s_0 = 5 sigma`, snapped up to the grid.
    pub probe: T,
}

impl<T: Real> OracleState<T> {
    pub fn s(&self, i: usize) -> T {
        self.origin + from_usize::<T>(i) * self.spacing
    }

    fn index_of(&self, s: T) -> usize {
        let k = ((s - self.origin) / self.spacing).ceil();
        to_f64(k).max(0.0).min((self.profile.len() - 1) as f64) as usize
    }

    /// `ln a_m(s)` at the first grid point at or right of `s`.
    pub fn ln_value(&self, s: T) -> T {
        self.profile[self.index_of(s)].ln() + self.log_scale
    }

    /// `a_m(s)`; may overflow to infinity far behind a spreading profile.
    pub fn value(&self, s: T) -> T {
        self.ln_value(s).exp()
    }

    /// Whether `a_m(s_0)` exceeds `phi(-inf)(1 + 1e-6)`.
    pub fn spreads(&self, config: &OracleConfig<T>) -> bool {
        self.ln_value(self.probe) > (config.phi_limit() * lit(1.0 + 1e-6)).ln()
    }
}

/// Projected measure, quadrature weights and grid layout for one `c`.
struct Setup<T> {
    weights: Vec<T>,
    /// Offset of `weights[0]` in grid cells.
    first: isize,
    origin: T,
    spacing: T,
    len: usize,
    probe_index: usize,
}

fn projected<T: Real>(measure: &GaussianMeasure<T>, config: &OracleConfig<T>) -> Result<(T, T, T)> {
    let e = &config.direction;
    if e.dim() != measure.dim() {
        return Err(Error::DimensionMismatch { expected: measure.dim(), found: e.dim() });
    }
    let (mean, var) = measure.projected(e);
    if !(measure.mass.is_finite() && measure.mass > T::zero()) {
        return Err(Error::InvalidArgument("measure mass must be finite and positive".into()));
    }
    if !(var > T::zero()) {
        return Err(Error::InvalidArgument("projected measure is degenerate".into()));
    }
    Ok((measure.mass, mean, var))
}

/// Grid extent beyond the probe and behind the obstacle: far enough that the
/// exponential tail `e^{-lambda s}` of a pinned profile falls below `e^{-28}`.
fn tail_margin<T: Real>(mass: T, var: T) -> T {
    let sigma = var.sqrt();
    let floor = sigma * lit(20.0);
    if mass <= T::one() {
        return floor;
    }
    let lambda = (lit::<T>(2.0) * mass.ln() / var).sqrt();
    (lit::<T>(28.0) / lambda).max(floor)
}

const MAX_GRID: usize = 2_000_000;

fn setup<T: Real>(measure: &GaussianMeasure<T>, config: &OracleConfig<T>, c: T, drift: T) -> Result<Setup<T>> {
    let (mass, mean, var) = projected(measure, config)?;
    let sigma = var.sqrt();
    let h = config.spacing.unwrap_or_else(|| (sigma * lit(0.1)).min(lit(0.05)));
    if !(h > T::zero()) {
        return Err(Error::InvalidArgument("oracle spacing must be positive".into()));
    }
    let margin = tail_margin(mass, var);
    let probe = sigma * lit(5.0);
    let left = -(margin + T::one());
    let right = probe + margin + drift.max(T::zero());
    let cells = to_f64(((right - left) / h).ceil());
    if !(cells.is_finite()) || cells as usize + 1 > MAX_GRID {
        return Err(Error::InvalidArgument(format!("oracle grid would need {cells} points")));
    }
    // Snap the grid so that s = 0 is a node.
    let below = to_f64((-left / h).ceil()) as usize;
    let origin = -from_usize::<T>(below) * h;
    let len = cells as usize + 1;
    let probe_index = below + to_f64((probe / h).ceil()) as usize;

    // Node j of the sum samples the density at c - j h.
    let reach = config.radius * sigma;
    let lo = to_f64(((c - mean - reach) / h).floor()) as isize;
    let hi = to_f64(((c - mean + reach) / h).ceil()) as isize;
    let norm = mass * h / (lit::<T>(2.0 * std::f64::consts::PI) * var).sqrt();
    let weights = (lo..=hi)
        .map(|j| {
            let y = c - T::from_isize(j).expect("tap index") * h - mean;
            if y.abs() > reach {
                T::zero()
            } else {
                norm * (-y * y / (var * lit(2.0))).exp()
            }
        })
        .collect();
    Ok(Setup { weights, first: lo, origin, spacing: h, len, probe_index })
}

/// Dot product with four independent partial sums.
fn dot<T: Real>(w: &[T], x: &[T]) -> T {
    let mut acc = [T::zero(); 4];
    let mut wc = w.chunks_exact(4);
    let mut xc = x.chunks_exact(4);
    for (a, b) in (&mut wc).zip(&mut xc) {
        for k in 0..4 {
            acc[k] = acc[k] + a[k] * b[k];
        }
    }
    let tail: T = wc.remainder().iter().zip(xc.remainder()).map(|(a, b)| *a * *b).sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Runs up to `config.iterations` steps; with `stop_on_spread` it returns as
/// soon as the probe exceeds the threshold.
fn run<T: Real>(
    measure: &GaussianMeasure<T>,
    config: &OracleConfig<T>,
    c: T,
    drift: T,
    stop_on_spread: bool,
) -> Result<OracleState<T>> {
    let st = setup(measure, config, c, drift)?;
    let phi: Vec<T> = (0..st.len).map(|i| config.phi(st.origin + from_usize::<T>(i) * st.spacing)).collect();
    let phi_max = config.phi_limit();
    let mut state = OracleState {
        c,
        m: 0,
        origin: st.origin,
        spacing: st.spacing,
        profile: phi.iter().map(|&p| p / phi_max).collect(),
        log_scale: phi_max.ln(),
        probe: st.origin + from_usize::<T>(st.probe_index) * st.spacing,
    };
    let edge_tol = (phi_max * lit(1e-6)).ln();
    let slack: T = lit(1e-9);
    let taps = st.weights.len();
    // Profile padded with its left value behind the grid and zeros ahead.
    let pad_left = (-st.first).max(0) as usize;
    let pad_right = (st.first + taps as isize).max(0) as usize;
    let mut padded = vec![T::zero(); pad_left + st.len + pad_right];
    let shift = (st.first + pad_left as isize) as usize;
    let mut next = vec![T::zero(); st.len];
    for m in 0..config.iterations {
        if stop_on_spread && state.spreads(config) {
            return Ok(state);
        }
        let scale = state.log_scale.exp();
        let b = &state.profile;
        padded[..pad_left].fill(b[0]);
        padded[pad_left..pad_left + st.len].copy_from_slice(b);
        for (i, out) in next.iter_mut().enumerate() {
            *out = dot(&st.weights, &padded[i + shift..i + shift + taps]).max(phi[i] / scale);
        }
        for i in 0..st.len {
            if next[i] < b[i] * (T::one() - slack) {
                return Err(Error::InvariantViolation(format!("a_m decreased in m at s = {}", to_f64(state.s(i)))));
            }
        }
        let top = next.iter().copied().fold(T::zero(), T::max);
        for i in 1..st.len {
            if next[i] > next[i - 1] + top * slack {
                return Err(Error::InvariantViolation(format!("a_m increased in s at s = {}", to_f64(state.s(i)))));
            }
        }
        for (dst, &v) in state.profile.iter_mut().zip(&next) {
            *dst = v / top;
        }
        state.log_scale = state.log_scale + top.ln();
        state.m = m + 1;
        if state.profile[st.len - 1].ln() + state.log_scale > edge_tol {
            return Err(Error::GridExhausted);
        }
    }
    Ok(state)
}

/// Profile after `config.iterations` steps at speed `c`.
///
/// The grid extends past the probe by the distance a front moving at the MGF
/// bound covers in `M` steps, so spreading profiles fit.
pub fn weinberger_iterate<T: Real>(measure: &GaussianMeasure<T>, config: &OracleConfig<T>, c: T) -> Result<OracleState<T>> {
    let drift = if measure.mass > T::one() {
        let bound = mgf_speed_bound(measure, &config.direction)?;
        (bound - c) * from_usize::<T>(config.iterations)
    } else {
        T::zero()
    };
    run(measure, config, c, drift, false)
}

/// Whether speed `c` spreads past the probe within `M` steps.
pub fn classify_speed<T: Real>(measure: &GaussianMeasure<T>, config: &OracleConfig<T>, c: T) -> Result<bool> {
    Ok(run(measure, config, c, T::zero(), true)?.spreads(config))
}

/// Estimate of `c*(e)` as the largest speed at which the recursion spreads.
///
/// Each round probes up to three interior speeds concurrently (one per
/// available core) and keeps the piece of the bracket containing the
/// transition.
pub fn weinberger_speed<T: Real>(measure: &GaussianMeasure<T>, config: &OracleConfig<T>) -> Result<T> {
    if measure.mass <= T::one() {
        return Err(Error::ExtinctionRegime { rho: to_f64(measure.mass.ln()) });
    }
    let bound = mgf_speed_bound(measure, &config.direction)?;
    let width = bound.abs().max(T::one());
    let mut hi = if bound > T::zero() { bound * lit(2.0) } else { bound + width };
    let mut lo = T::zero().min(bound - width);
    let mut tries = 0;
    while !classify_speed(measure, config, lo)? {
        tries += 1;
        if tries > 20 {
            return Err(Error::InvalidArgument("no spreading speed found below the MGF bound".into()));
        }
        hi = lo;
        lo = lo - width * from_usize::<T>(1 << tries);
    }
    let lanes = std::thread::available_parallelism().map_or(1, |n| n.get()).clamp(1, 3);
    while hi - lo > config.tolerance {
        let step = (hi - lo) / from_usize::<T>(lanes + 1);
        let probes: Vec<T> = (1..=lanes).map(|k| lo + step * from_usize::<T>(k)).collect();
        let verdicts: Vec<Result<bool>> = if lanes == 1 {
            vec![classify_speed(measure, config, probes[0])]
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> =
                    probes.iter().map(|&c| scope.spawn(move || classify_speed(measure, config, c))).collect();
                handles.into_iter().map(|h| h.join().expect("oracle probe panicked")).collect()
            })
        };
        let mut next_lo = lo;
        let mut next_hi = hi;
        for (&c, v) in probes.iter().zip(verdicts) {
            if v? {
                next_lo = c;
            } else {
                next_hi = c;
                break;
            }
        }
        lo = next_lo;
        hi = next_hi;
    }
    Ok((lo + hi) * lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, Vector};

    fn fisher(q: f64) -> GaussianMeasure<f64> {
        // d = 1, rho = 1: covariance 2, mass e.
        GaussianMeasure { mass: 1f64.exp(), mean: Vector::new1(q), spread: Matrix::new1(2.0) }
    }

    fn config() -> OracleConfig<f64> {
        OracleConfig::new(Direction::along_line(1.0))
    }

    #[test]
    fn fisher_speed() {
        let c = weinberger_speed(&fisher(0.0), &config()).unwrap();
        assert!((c - 2.0).abs() < 0.04, "{c}");
        assert!(c <= 2.0 + 1e-3);
    }

    #[test]
    fn drift_shifts_estimate() {
        let c = weinberger_speed(&fisher(0.5), &config()).unwrap();
        assert!((c - 2.5).abs() < 0.05, "{c}");
        let mut back = config();
        back.direction = Direction::along_line(-1.0);
        let c = weinberger_speed(&fisher(0.5), &back).unwrap();
        assert!((c - 1.5).abs() < 0.03, "{c}");
    }

    #[test]
    fn subcritical_mass_is_extinction() {
        let mut m = fisher(0.0);
        m.mass = 0.9;
        assert!(matches!(weinberger_speed(&m, &config()), Err(Error::ExtinctionRegime { .. })));
        let st = weinberger_iterate(&m, &config(), 0.5).unwrap();
        assert!(st.value(st.probe) < 0.01 * config().phi_limit());
        assert!(st.value(st.probe * 3.0) < 1e-6);
        assert!(st.value(0.0) < config().phi_limit());
    }

    #[test]
    fn zero_speed_spreads_quickly() {
        let mut cfg = config();
        cfg.iterations = 50;
        let st = weinberger_iterate(&fisher(0.0), &cfg, 0.0).unwrap();
        assert!(st.value(0.0) > cfg.phi_limit());
        assert!(st.spreads(&cfg));
    }

    #[test]
    fn fast_speed_stays_pinned() {
        let cfg = config();
        let st = weinberger_iterate(&fisher(0.0), &cfg, 4.0).unwrap();
        assert_eq!(st.m, cfg.iterations);
        assert!(st.value(st.probe) <= cfg.phi_limit());
        assert!(!st.spreads(&cfg));
    }

    #[test]
    fn mgf_bound_is_closed_form() {
        let b = mgf_speed_bound(&fisher(0.3), &Direction::along_line(1.0)).unwrap();
        assert!((b - 2.3).abs() < 1e-9);
    }

    #[test]
    fn mgf_quadrature_matches() {
        let e = Direction::along_line(1.0);
        let err = crosscheck_mgf(&fisher(0.3), &e, &[0.0, 0.5, 1.0, 2.0, 3.0]).unwrap();
        assert!(err < 1e-8, "{err}");
    }
}
