#![allow(dead_code)]

use impulse_front::analytic::Direction;
use impulse_front::model::{GrowthSpec, KernelSpec, ModelParams, StageMapSpec};
use impulse_front::{Matrix, Vector};

pub fn fisher(q: f64) -> ModelParams<f64> {
    ModelParams::isotropic(1, 1.0, Vector::new1(q), GrowthSpec::Logistic { r: 1.0 }, StageMapSpec::Linear { alpha: 1.0 })
}

/// Larval stream model: d = sigma^2 = 0.5, r = 0.1, ln(1 + lambda) = 1.1,
/// q = 1, mu = 0.5.
pub fn stream() -> ModelParams<f64> {
    ModelParams::isotropic(
        1,
        0.5,
        Vector::new1(1.0),
        GrowthSpec::Linear { rate: -0.1 },
        StageMapSpec::BevertonHolt { lambda: 1.1f64.exp() - 1.0 },
    )
    .with_kernel(KernelSpec::gaussian(Vector::new1(0.5), Matrix::new1(0.5)))
}

/// `A = diag(4, 1)`, logistic growth, identity map.
pub fn anisotropic() -> ModelParams<f64> {
    ModelParams::new(
        Matrix::diag2(4.0, 1.0),
        Vector::new2(0.0, 0.0),
        GrowthSpec::Logistic { r: 1.0 },
        StageMapSpec::Linear { alpha: 1.0 },
    )
}

pub fn right() -> Direction<f64> {
    Direction::along_line(1.0)
}

pub fn left() -> Direction<f64> {
    Direction::along_line(-1.0)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
