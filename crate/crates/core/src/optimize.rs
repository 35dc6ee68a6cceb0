//! One-dimensional minimization and root bracketing.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmin, min)`. Stops when the bracket is narrower than `tol`.
pub fn golden_section<T: Real, F: FnMut(T) -> T>(mut f: F, mut a: T, mut b: T, tol: T) -> (T, T) {
    let inv_phi: T = lit(0.618_033_988_749_894_8);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..500 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Bisection for a sign change of `f` on `[a, b]`.
pub fn bisect<T: Real, F: FnMut(T) -> Result<T>>(mut f: F, mut a: T, mut b: T, tol: T) -> Result<T> {
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidArgument(format!(
            "no sign change on [{}, {}]",
            to_f64(a),
            to_f64(b)
        )));
    }
    for _ in 0..200 {
        let mid = (a + b) * lit(0.5);
        if (b - a).abs() <= tol || mid <= a.min(b) || mid >= a.max(b) {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok((a + b) * lit(0.5))
}
