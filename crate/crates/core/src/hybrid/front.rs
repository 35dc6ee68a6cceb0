use crate::analytic::{speed, speed_profile, speed_profile_nonlocal, Direction};
use crate::error::{Error, Result};
use crate::hybrid::Trajectory;
use crate::model::Field;
use crate::scalar::{from_usize, lit, Real};

/// Regression model for front positions `p_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitKind {
    /// `p_m = c m + b`.
    Linear,
    /// `p_m = c m + b - 3 / (2 s*) ln m`, removing the logarithmic delay of
    /// pulled fronts (`s*` is the decay rate at the minimal speed).
    LogCorrected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpeedReport<T> {
    pub direction: Direction<T>,
    /// Closed-form speed, when the regime admits one.
    pub analytic: Option<T>,
    /// Fitted slope in length per generation.
    pub slope: T,
    /// Root-mean-square residual of the fit.
    pub residual: T,
    pub generations_used: usize,
    pub threshold: T,
    pub fit: FitKind,
}

/// Outermost threshold crossing along `e`, measured as distance along `e`.
///
/// In 1D the crossing is located between grid points by linear interpolation
/// and returned as `x e`. In 2D the field is sampled bilinearly along the ray
/// from the origin at quarter-cell steps.
pub fn front_position<T: Real>(field: &Field<T>, threshold: T, e: &Direction<T>) -> Result<T> {
    let grid = field.grid();
    if grid.dim() != e.dim() {
        return Err(Error::DimensionMismatch { expected: grid.dim(), found: e.dim() });
    }
    if grid.dim() == 1 {
        let v = field.values();
        let n = v.len();
        let forward = e.vector()[0] > T::zero();
        let idx: Box<dyn Iterator<Item = usize>> = if forward { Box::new((0..n - 1).rev()) } else { Box::new(1..n) };
        for i in idx {
            let j = if forward { i + 1 } else { i - 1 };
            if v[i] >= threshold && v[j] < threshold {
                let frac = (v[i] - threshold) / (v[i] - v[j]);
                let x = grid.coord(0, i) + (grid.coord(0, j) - grid.coord(0, i)) * frac;
                return Ok(x * e.vector()[0]);
            }
        }
        return Err(Error::FrontNotFound);
    }
    let step = grid.spacing(0).min(grid.spacing(1)) * lit(0.25);
    let reach = (grid.extent(0) * grid.extent(0) + grid.extent(1) * grid.extent(1)).sqrt();
    let steps = (reach / step).ceil().to_usize().unwrap_or(0);
    let at = |r: T| field.sample(e.vector()[0] * r, e.vector()[1] * r);
    let mut last = None;
    let mut prev = at(T::zero());
    for k in 1..=steps {
        let r = step * from_usize::<T>(k);
        let cur = at(r);
        if prev >= threshold && cur < threshold {
            let frac = (prev - threshold) / (prev - cur);
            last = Some(r - step + step * frac);
        }
        prev = cur;
    }
    last.ok_or(Error::FrontNotFound)
}

/// Least-squares front speed over the generations after `burn_in_fraction`.
pub fn estimate_speed<T: Real>(
    traj: &Trajectory<T>,
    e: &Direction<T>,
    threshold: T,
    burn_in_fraction: T,
    fit: FitKind,
) -> Result<SpeedReport<T>> {
    let total = traj.generations();
    let start = (burn_in_fraction * from_usize::<T>(total)).floor().to_usize().unwrap_or(0).max(1);
    let available = (total + 1).saturating_sub(start);
    if available < 5 {
        return Err(Error::InsufficientGenerations { needed: start + 5, available: total + 1 });
    }
    let decay = match fit {
        FitKind::Linear => T::zero(),
        FitKind::LogCorrected => {
            let profile = if traj.params.kernel.is_some() {
                speed_profile_nonlocal(&traj.params, e)
            } else {
                speed_profile(&traj.params, e)
            };
            profile.map(|p| p.minimizer).unwrap_or_else(|_| T::infinity())
        }
    };
    let correction = |m: T| {
        if decay.is_finite() && decay > T::zero() {
            lit::<T>(1.5) / decay * m.ln()
        } else {
            T::zero()
        }
    };
    let mut xs = Vec::with_capacity(available);
    let mut ys = Vec::with_capacity(available);
    for m in start..=total {
        let mt = from_usize::<T>(m);
        xs.push(mt);
        ys.push(front_position(&traj.fields[m], threshold, e)? + correction(mt));
    }
    let (slope, residual) = least_squares(&xs, &ys);
    Ok(SpeedReport {
        direction: *e,
        analytic: speed(&traj.params, e).ok(),
        slope,
        residual,
        generations_used: available,
        threshold,
        fit,
    })
}

/// Slope and RMS residual of the least-squares line through `(x, y)`.
pub(crate) fn least_squares<T: Real>(x: &[T], y: &[T]) -> (T, T) {
    let n = from_usize::<T>(x.len());
    let mx = x.iter().copied().sum::<T>() / n;
    let my = y.iter().copied().sum::<T>() / n;
    let sxy: T = x.iter().zip(y).map(|(a, b)| (*a - mx) * (*b - my)).sum();
    let sxx: T = x.iter().map(|a| (*a - mx) * (*a - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: T = x.iter().zip(y).map(|(a, b)| (*b - intercept - slope * *a).powi(2)).sum();
    (slope, (ss / n).sqrt())
}

/// `max |u_{m+1}(x + shift e) - u_m(x)| / max u_m` over grid points with
/// `x.e >= 0`, i.e. on the side of the front moving along `e`.
pub fn profile_defect<T: Real>(traj: &Trajectory<T>, m: usize, shift: T, e: &Direction<T>) -> Result<T> {
    if m + 1 >= traj.fields.len() {
        return Err(Error::InsufficientGenerations { needed: m + 2, available: traj.fields.len() });
    }
    let (cur, next) = (&traj.fields[m], &traj.fields[m + 1]);
    let grid = cur.grid();
    let v = e.vector();
    let (sx, sy) = if grid.dim() == 1 { (v[0] * shift, T::zero()) } else { (v[0] * shift, v[1] * shift) };
    let mut worst = T::zero();
    for (k, u) in cur.values().iter().enumerate() {
        let p = grid.point(k);
        if p[0] * v[0] + if grid.dim() == 2 { p[1] * v[1] } else { T::zero() } < T::zero() {
            continue;
        }
        let w = next.sample(p[0] + sx, p[1] + sy);
        worst = worst.max((w - *u).abs());
    }
    Ok(worst / cur.max())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;
    use crate::model::{Grid, GrowthSpec, ModelParams, StageMapSpec};

    fn params() -> ModelParams<f64> {
        ModelParams::isotropic(1, 1.0, Vector::new1(0.0), GrowthSpec::Logistic { r: 1.0 }, StageMapSpec::Linear { alpha: 1.0 })
    }

    fn ramp(grid: Grid<f64>, at: f64) -> Field<f64> {
        Field::from_fn(grid, |x, _| (0.5 - (x - at) / 4.0).clamp(0.0, 1.0)).unwrap()
    }

    #[test]
    fn step_profile_crossing() {
        let g = Grid::line(0.0f64, 0.5, 20).unwrap();
        let f = Field::from_fn(g, |x, _| if x <= 3.0 { 1.0 } else { 0.0 }).unwrap();
        // Crossing halfway between 3.0 and 3.5.
        let x = front_position(&f, 0.5, &Direction::along_line(1.0)).unwrap();
        assert!((x - 3.25).abs() < 1e-15);
    }

    #[test]
    fn zero_field_has_no_front() {
        let g = Grid::line(0.0, 0.5, 20).unwrap();
        let e = Direction::along_line(1.0);
        assert_eq!(front_position(&Field::zeros(g), 0.5, &e), Err(Error::FrontNotFound));
    }

    #[test]
    fn translation_shifts_position() {
        let h = 0.1;
        let g = Grid::line(-10.0, h, 200).unwrap();
        let e = Direction::along_line(1.0);
        let a = front_position(&ramp(g, 1.0), 0.5, &e).unwrap();
        let b = front_position(&ramp(g, 1.0 + 1.7 * h), 0.5, &e).unwrap();
        assert!((b - a - 1.7 * h).abs() < 1e-9);
    }

    #[test]
    fn left_front_reported_as_distance() {
        let g = Grid::line(-10.0, 0.1, 200).unwrap();
        let f = Field::from_fn(g, |x: f64, _| if x.abs() <= 3.0 { 1.0 } else { 0.0 }).unwrap();
        let x = front_position(&f, 0.5, &Direction::along_line(-1.0)).unwrap();
        assert!((x - 3.05).abs() < 1e-9);
    }

    #[test]
    fn synthetic_translation_slope() {
        let g = Grid::line(-10.0, 0.1, 1000).unwrap();
        let fields = (0..20).map(|m| ramp(g, 2.0 * m as f64)).collect();
        let traj = Trajectory { fields, params: params(), abort: None };
        let e = Direction::along_line(1.0);
        let rep = estimate_speed(&traj, &e, 0.5, 0.4, FitKind::Linear).unwrap();
        assert!((rep.slope - 2.0).abs() < 1e-12);
        assert!(rep.residual < 1e-12);
        assert_eq!(rep.analytic, Some(2.0));
    }

    #[test]
    fn too_short_trajectory() {
        let g = Grid::line(-10.0, 0.1, 200).unwrap();
        let traj = Trajectory { fields: vec![ramp(g, 0.0); 4], params: params(), abort: None };
        let e = Direction::along_line(1.0);
        assert!(matches!(
            estimate_speed(&traj, &e, 0.5, 0.4, FitKind::Linear),
            Err(Error::InsufficientGenerations { .. })
        ));
    }

    #[test]
    fn planar_ray_crossing() {
        let g = Grid::centered(2, 5.0, 0.1).unwrap();
        let f = Field::from_fn(g, |x: f64, y: f64| if x * x + y * y <= 4.0 { 1.0 } else { 0.0 }).unwrap();
        let r = front_position(&f, 0.5, &Direction::from_angle(0.3)).unwrap();
        assert!((r - 2.0).abs() < 0.1);
    }
}
