use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Bounded habitat with hostile boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainShape {
    Interval,
    /// `n`-dimensional cube with equal side lengths.
    Hypercube(usize),
}

impl DomainShape {
    pub fn dim(&self) -> usize {
        match self {
            Self::Interval => 1,
            Self::Hypercube(n) => *n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainRegime {
    Finite,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalDomainReport<T> {
    /// Minimal side length for persistence, `+inf` when none exists.
    pub size: T,
    pub regime: DomainRegime,
    /// `|q|` at which the size diverges: `2 sqrt(d rho)`.
    pub blowup_advection: T,
}

/// Critical side length `2 pi d sqrt(n / (4 d rho - |q|^2))` of a hypercube.
///
/// Requires isotropic diffusion `A = d I`. The equality case
/// `4 d rho = |q|^2` is reported as infinite.
pub fn critical_size<T: Real>(params: &ModelParams<T>, shape: DomainShape) -> Result<CriticalDomainReport<T>> {
    if shape.dim() != params.dim() {
        return Err(Error::DimensionMismatch { expected: params.dim(), found: shape.dim() });
    }
    let d = params.diffusion.as_scalar(lit(1e-12)).ok_or(Error::AnisotropyUnsupported)?;
    let rho = params.net_growth().rho;
    let q2 = params.advection.dot(&params.advection);
    let four: T = lit(4.0);
    let window = four * d * rho - q2;
    let blowup_advection = if rho > T::zero() { lit::<T>(2.0) * (d * rho).sqrt() } else { T::zero() };
    if window > T::zero() {
        let n = from_usize::<T>(shape.dim());
        let size = lit::<T>(2.0) * T::PI() * d * (n / window).sqrt();
        Ok(CriticalDomainReport { size, regime: DomainRegime::Finite, blowup_advection })
    } else {
        Ok(CriticalDomainReport { size: T::infinity(), regime: DomainRegime::Infinite, blowup_advection })
    }
}

/// Critical length `2 pi d / sqrt(4 d f'(0) - q^2)` of the classical
/// advective Fisher equation on an interval (no reproduction map).
pub fn fisher_critical_length<T: Real>(d: T, fp0: T, q: T) -> T {
    let window = lit::<T>(4.0) * d * fp0 - q * q;
    if window > T::zero() {
        lit::<T>(2.0) * T::PI() * d / window.sqrt()
    } else {
        T::infinity()
    }
}

/// Per-generation log growth of the principal mode on the box
/// `prod [0, L_i]` with hostile boundary:
/// `rho - sum_i a_ii pi^2 / L_i^2 - sum_i q_i^2 / (4 a_ii)`.
///
/// Positive means small populations persist. Requires diagonal diffusion.
pub fn dirichlet_growth_exponent<T: Real>(params: &ModelParams<T>, lengths: &[T]) -> Result<T> {
    let n = params.dim();
    if lengths.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: lengths.len() });
    }
    if !params.diffusion.is_diagonal() {
        return Err(Error::AnisotropyUnsupported);
    }
    if let Some(l) = lengths.iter().find(|l| !(**l > T::zero())) {
        return Err(Error::InvalidArgument(format!("box length {} must be positive", to_f64(*l))));
    }
    let pi2 = T::PI() * T::PI();
    let mut exponent = params.net_growth().rho;
    for (i, l) in lengths.iter().enumerate() {
        let a = params.diffusion.get(i, i);
        let q = params.advection[i];
        exponent = exponent - a * pi2 / (*l * *l) - q * q / (lit::<T>(4.0) * a);
    }
    Ok(exponent)
}
