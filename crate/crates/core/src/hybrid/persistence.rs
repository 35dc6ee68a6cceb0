use crate::analytic::DomainShape;
use crate::error::{Error, Result};
use crate::hybrid::{simulation_pi1, HybridModel};
use crate::model::ModelParams;
use crate::scalar::{lit, to_f64, Real};
use crate::season::{DirichletBox, SeasonConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PersistenceVerdict {
    Persistent,
    Extinct,
    Undecided,
}

/// Result of [`critical_length_search`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalLengthEstimate<T> {
    /// Midpoint of the final bracket.
    pub length: T,
    pub lo: T,
    pub hi: T,
    pub probes: usize,
}

struct Outcome<T> {
    verdict: PersistenceVerdict,
    growing: bool,
    last_max: T,
}

fn observe<T: Real>(
    params: &ModelParams<T>,
    domain: DirichletBox<T>,
    generations: usize,
    tol: T,
    season: &SeasonConfig<T>,
) -> Result<Outcome<T>> {
    if generations < 11 {
        return Err(Error::InsufficientGenerations { needed: 11, available: generations });
    }
    let level = simulation_pi1(params).unwrap_or_else(|_| T::one());
    let mut model = HybridModel::boxed(params.clone(), domain, *season)?;
    let mut field = domain.principal_mode(season.dirichlet_spacing, level * lit(1e-3))?;
    let mut maxima = vec![field.max()];
    for _ in 0..generations {
        field = model.generation(&field)?;
        let m = field.max();
        maxima.push(m);
        if m < tol {
            return Ok(Outcome { verdict: PersistenceVerdict::Extinct, growing: false, last_max: m });
        }
    }
    let tail = &maxima[maxima.len() - 11..];
    let slack = lit::<T>(1e-10);
    let nondecreasing = tail.windows(2).all(|w| w[1] >= w[0] * (T::one() - slack));
    let last = *tail.last().expect("nonempty");
    let growing = tail[10] > tail[9];
    let verdict = if nondecreasing && last >= tol { PersistenceVerdict::Persistent } else { PersistenceVerdict::Undecided };
    Ok(Outcome { verdict, growing, last_max: last })
}

/// Runs `generations` generations on `domain` from a small multiple
/// (`1e-3 pi1`) of the principal Dirichlet mode.
///
/// Extinct once the maximum drops below `tol`; persistent if the maximum is
/// nondecreasing over the last 10 generations and at least `tol`.
pub fn classify_persistence<T: Real>(
    params: &ModelParams<T>,
    domain: &DirichletBox<T>,
    generations: usize,
    tol: T,
    season: &SeasonConfig<T>,
) -> Result<PersistenceVerdict> {
    Ok(observe(params, *domain, generations, tol, season)?.verdict)
}

/// Bisection on the side length of an interval or square until the bracket
/// is narrower than 2% of its midpoint.
///
/// Undecided probes are assigned by the trend of the maximum in the final
/// generation. Tolerance is `1e-6 pi1`.
pub fn critical_length_search<T: Real>(
    params: &ModelParams<T>,
    shape: DomainShape,
    bracket: (T, T),
    generations: usize,
    season: &SeasonConfig<T>,
) -> Result<CriticalLengthEstimate<T>> {
    if shape.dim() != params.dim() {
        return Err(Error::DimensionMismatch { expected: params.dim(), found: shape.dim() });
    }
    let tol = simulation_pi1(params).unwrap_or_else(|_| T::one()) * lit(1e-6);
    let mut probes = 0;
    let mut persists = |l: T| -> Result<(bool, PersistenceVerdict)> {
        probes += 1;
        let domain = DirichletBox::new(&vec![l; shape.dim()])?;
        let o = observe(params, domain, generations, tol, season)?;
        log::debug!("length {} -> {:?} (max {})", to_f64(l), o.verdict, to_f64(o.last_max));
        let side = match o.verdict {
            PersistenceVerdict::Persistent => true,
            PersistenceVerdict::Extinct => false,
            PersistenceVerdict::Undecided => o.growing,
        };
        Ok((side, o.verdict))
    };
    let (mut lo, mut hi) = bracket;
    let (lo_side, lo_verdict) = persists(lo)?;
    let (hi_side, _) = persists(hi)?;
    if lo_side == hi_side || lo_side {
        return Err(Error::BracketInvalid { lo: to_f64(lo), hi: to_f64(hi), verdict: format!("{lo_verdict:?}") });
    }
    while hi - lo >= lit::<T>(0.02) * (lo + hi) * lit(0.5) {
        let mid = (lo + hi) * lit(0.5);
        if persists(mid)?.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(CriticalLengthEstimate { length: (lo + hi) * lit(0.5), lo, hi, probes })
}
