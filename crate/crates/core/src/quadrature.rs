//! Adaptive Gauss–Kronrod quadrature (7-point Gauss / 15-point Kronrod pair).
//!
//! Intervals are bisected globally, always splitting the subinterval with the
//! largest error estimate, until the summed estimate drops below
//! `max(abs_tol, rel_tol * |I|)`.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and limits for [`Quadrature::integrate`].
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

struct Piece<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn gauss_kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = (b - a) * lit(0.5);
    let mid = (a + b) * lit(0.5);
    let fc = f(mid);
    let mut kronrod = fc * lit(WGK[7]);
    let mut gauss = fc * lit(WG[3]);
    for (i, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * lit(x);
        let pair = f(mid - dx) + f(mid + dx);
        kronrod = kronrod + pair * lit(w);
        if i % 2 == 1 {
            gauss = gauss + pair * lit(WG[i / 2]);
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

impl Quadrature {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Self::default() }
    }

    /// Integral of `f` over `[a, b]`.
    pub fn integrate<T: Real, F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> Result<T> {
        if a == b {
            return Ok(T::zero());
        }
        let (value, error) = gauss_kronrod(&mut f, a, b);
        let mut pieces = vec![Piece { a, b, value, error }];
        let abs_tol: T = lit(self.abs_tol);
        let rel_tol: T = lit(self.rel_tol);
        loop {
            let total: T = pieces.iter().map(|p| p.value).sum();
            let err: T = pieces.iter().map(|p| p.error).sum();
            if err <= abs_tol.max(rel_tol * total.abs()) {
                return Ok(total);
            }
            if pieces.len() >= self.max_intervals {
                return Err(Error::QuadratureDiverged { error: to_f64(err), intervals: pieces.len() });
            }
            let worst = pieces
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(i, _)| i)
                .expect("at least one piece");
            let p = pieces.swap_remove(worst);
            let mid = (p.a + p.b) * lit(0.5);
            if mid <= p.a || mid >= p.b {
                // Interval below machine resolution; accept what we have.
                pieces.push(p);
                let total: T = pieces.iter().map(|p| p.value).sum();
                return Ok(total);
            }
            let (v1, e1) = gauss_kronrod(&mut f, p.a, mid);
            let (v2, e2) = gauss_kronrod(&mut f, mid, p.b);
            pieces.push(Piece { a: p.a, b: mid, value: v1, error: e1 });
            pieces.push(Piece { a: mid, b: p.b, value: v2, error: e2 });
        }
    }

    /// Integral over the whole real line via `x = t / (1 - t^2)`.
    pub fn integrate_real_line<T: Real, F: FnMut(T) -> T>(&self, mut f: F) -> Result<T> {
        let one = T::one();
        self.integrate(
            |t: T| {
                let d = one - t * t;
                if d <= T::zero() {
                    return T::zero();
                }
                let x = t / d;
                let jac = (one + t * t) / (d * d);
                let v = f(x) * jac;
                if v.is_finite() {
                    v
                } else {
                    T::zero()
                }
            },
            -one,
            one,
        )
    }

    /// Iterated integral over the rectangle `[ax, bx] x [ay, by]`.
    pub fn integrate_2d<T: Real, F: FnMut(T, T) -> T>(&self, mut f: F, x: (T, T), y: (T, T)) -> Result<T> {
        let mut inner_err = None;
        let outer = self.integrate(
            |xv: T| match self.integrate(|yv: T| f(xv, yv), y.0, y.1) {
                Ok(v) => v,
                Err(e) => {
                    inner_err.get_or_insert(e);
                    T::zero()
                }
            },
            x.0,
            x.1,
        )?;
        match inner_err {
            Some(e) => Err(e),
            None => Ok(outer),
        }
    }

    /// Iterated integral over the whole plane.
    pub fn integrate_plane<T: Real, F: FnMut(T, T) -> T>(&self, mut f: F) -> Result<T> {
        let mut inner_err = None;
        let outer = self.integrate_real_line(|xv: T| match self.integrate_real_line(|yv: T| f(xv, yv)) {
            Ok(v) => v,
            Err(e) => {
                inner_err.get_or_insert(e);
                T::zero()
            }
        })?;
        match inner_err {
            Some(e) => Err(e),
            None => Ok(outer),
        }
    }
}
