use std::fmt;

use crate::linalg::Vector;
use crate::model::{GrowthSpec, KernelSpec, ModelParams};
use crate::quadrature::Quadrature;
use crate::scalar::{from_usize, lit, to_f64, Real};

/// A failed standing assumption on the model parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    NonFinite { what: &'static str },
    AsymmetricDiffusion { a12: f64, a21: f64 },
    DiffusionNotPositive { min_eigenvalue: f64 },
    /// `f'(0) = 0` is excluded.
    ZeroLinearGrowth,
    /// `f1(s) = f(s) - f'(0) s` must be nonpositive.
    NonlinearPartPositive { at: f64, value: f64 },
    InvalidMapParameter,
    MapSlopeNotPositive { gp0: f64 },
    /// `g` decreases inside its claimed monotone range.
    MapNotMonotone { at: f64 },
    /// `g(s)/s` increases somewhere.
    MapQuotientIncreasing { at: f64 },
    /// Requested equilibrium lies beyond the range where `g` is nondecreasing.
    MonotoneRange { pi1: f64, bound: f64 },
    KernelNotPositiveDefinite,
    KernelNotNormalized { mass: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { what, expected, found } => {
                write!(f, "dimension: {what} has length {found}, expected {expected}")
            }
            Self::NonFinite { what } => write!(f, "finiteness: {what} has a non-finite component"),
            Self::AsymmetricDiffusion { a12, a21 } => {
                write!(f, "diffusion symmetry: a12 = {a12} but a21 = {a21}")
            }
            Self::DiffusionNotPositive { min_eigenvalue } => {
                write!(f, "diffusion positivity: smallest eigenvalue {min_eigenvalue} <= 0")
            }
            Self::ZeroLinearGrowth => write!(f, "growth: f'(0) must be nonzero"),
            Self::NonlinearPartPositive { at, value } => {
                write!(f, "growth: nonlinear part f1({at}) = {value} > 0")
            }
            Self::InvalidMapParameter => write!(f, "stage map: parameters must be positive and finite"),
            Self::MapSlopeNotPositive { gp0 } => write!(f, "stage map: g'(0) = {gp0} must be positive"),
            Self::MapNotMonotone { at } => write!(f, "stage map monotonicity: g decreases near s = {at}"),
            Self::MapQuotientIncreasing { at } => {
                write!(f, "stage map quotient: g(s)/s increases near s = {at}")
            }
            Self::MonotoneRange { pi1, bound } => {
                write!(f, "monotone range: requested pi1 = {pi1} exceeds s* = {bound}")
            }
            Self::KernelNotPositiveDefinite => write!(f, "kernel: B must be symmetric positive definite"),
            Self::KernelNotNormalized { mass } => write!(f, "kernel normalization: integral = {mass}"),
        }
    }
}

const SAMPLES: usize = 1000;

fn log_grid<T: Real>(lo: T, hi: T) -> impl Iterator<Item = T> {
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / from_usize::<T>(SAMPLES - 1);
    (0..SAMPLES).map(move |i| (a + step * from_usize::<T>(i)).exp())
}

/// Checks every standing assumption; an empty list means the parameters are usable.
pub fn validate<T: Real>(params: &ModelParams<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = params.dim();
    let sym_tol: T = lit(1e-12);

    if params.advection.dim() != n {
        out.push(Violation::DimensionMismatch { what: "advection", expected: n, found: params.advection.dim() });
    }
    if !params.diffusion.is_finite() {
        out.push(Violation::NonFinite { what: "diffusion" });
    }
    if !params.advection.is_finite() {
        out.push(Violation::NonFinite { what: "advection" });
    }
    let a = &params.diffusion;
    if !a.is_symmetric(sym_tol) {
        out.push(Violation::AsymmetricDiffusion { a12: to_f64(a.get(0, 1)), a21: to_f64(a.get(1, 0)) });
    } else if a.is_finite() {
        let min_ev = a.sym_eigenvalues()[0];
        if !(min_ev > T::zero()) {
            out.push(Violation::DiffusionNotPositive { min_eigenvalue: to_f64(min_ev) });
        }
    }

    check_growth(&params.growth, params.pi_plus(), &mut out);
    check_map(params, &mut out);
    if let Some(kernel) = &params.kernel {
        check_kernel(kernel, n, &mut out);
    }
    out
}

fn check_growth<T: Real>(growth: &GrowthSpec<T>, pi_plus: T, out: &mut Vec<Violation>) {
    let (fp0, gamma) = (growth.fp0(), growth.gamma());
    if !fp0.is_finite() || !gamma.is_finite() {
        out.push(Violation::NonFinite { what: "growth" });
        return;
    }
    if fp0 == T::zero() {
        out.push(Violation::ZeroLinearGrowth);
    }
    let top = if pi_plus.is_finite() { pi_plus.max(lit(2.0)) } else { lit(2.0) };
    let step = top / from_usize::<T>(SAMPLES);
    for i in 0..=SAMPLES {
        let s = step * from_usize::<T>(i);
        let f1 = growth.nonlinear_part(s);
        if f1 > T::zero() {
            out.push(Violation::NonlinearPartPositive { at: to_f64(s), value: to_f64(f1) });
            break;
        }
    }
}

fn check_map<T: Real>(params: &ModelParams<T>, out: &mut Vec<Violation>) {
    let g = &params.map;
    if !g.parameters_valid() {
        out.push(Violation::InvalidMapParameter);
        return;
    }
    let gp0 = g.gp0();
    if !(gp0 > T::zero()) {
        out.push(Violation::MapSlopeNotPositive { gp0: to_f64(gp0) });
    }
    let s_star = g.monotone_bound();
    let lo: T = lit(1e-6);
    let mono_hi = if s_star.is_finite() { s_star } else { lit(1e3) };
    let slack: T = lit(1e-12);

    let mut prev: Option<T> = None;
    for s in log_grid(lo, mono_hi) {
        let v = g.eval_unchecked(s);
        if let Some(p) = prev {
            if v < p - slack * p.abs().max(T::one()) {
                out.push(Violation::MapNotMonotone { at: to_f64(s) });
                break;
            }
        }
        prev = Some(v);
    }

    let mut prev: Option<T> = None;
    for s in log_grid(lo, mono_hi.max(lit(1e3))) {
        let q = g.eval_unchecked(s) / s;
        if let Some(p) = prev {
            if q > p + slack * p.abs().max(T::one()) {
                out.push(Violation::MapQuotientIncreasing { at: to_f64(s) });
                break;
            }
        }
        prev = Some(q);
    }

    if let Some(pi1) = params.pi1_request {
        if pi1 > s_star {
            out.push(Violation::MonotoneRange { pi1: to_f64(pi1), bound: to_f64(s_star) });
        }
    }
}

fn check_kernel<T: Real>(kernel: &KernelSpec<T>, n: usize, out: &mut Vec<Violation>) {
    let KernelSpec::Gaussian { mean, b } = kernel else { return };
    if mean.dim() != n {
        out.push(Violation::DimensionMismatch { what: "kernel mean", expected: n, found: mean.dim() });
        return;
    }
    if b.dim() != n {
        out.push(Violation::DimensionMismatch { what: "kernel B", expected: n, found: b.dim() });
        return;
    }
    if !mean.is_finite() || !b.is_finite() {
        out.push(Violation::NonFinite { what: "kernel" });
        return;
    }
    if !b.is_spd(lit(1e-12)) {
        out.push(Violation::KernelNotPositiveDefinite);
        return;
    }
    if let Some(mass) = kernel_mass(kernel) {
        if (to_f64(mass) - 1.0).abs() > 1e-10 {
            out.push(Violation::KernelNotNormalized { mass: to_f64(mass) });
        }
    }
}

/// Quadrature of the kernel density over its mean plus or minus ten standard deviations.
pub(crate) fn kernel_mass<T: Real>(kernel: &KernelSpec<T>) -> Option<T> {
    let KernelSpec::Gaussian { mean, b } = kernel else { return Some(T::one()) };
    let quad = Quadrature::with_tol(1e-13, 1e-13);
    let half = |i: usize| (b.get(i, i) * lit(2.0)).sqrt() * lit(10.0);
    match mean.dim() {
        1 => quad
            .integrate(|x: T| kernel.density(&Vector::new1(x)).unwrap_or(T::zero()), mean[0] - half(0), mean[0] + half(0))
            .ok(),
        _ => quad
            .integrate_2d(
                |x: T, y: T| kernel.density(&Vector::new2(x, y)).unwrap_or(T::zero()),
                (mean[0] - half(0), mean[0] + half(0)),
                (mean[1] - half(1), mean[1] + half(1)),
            )
            .ok(),
    }
}
