mod common;

use common::*;
use impulse_front::model::*;
use impulse_front::season::*;
use impulse_front::{Matrix, Vector};

#[test]
fn spectral_step_matches_green_convolution() {
    for (dim, q) in [(1usize, 0.4), (2, 0.3)] {
        let (a, adv) = if dim == 1 {
            (Matrix::new1(0.7), Vector::new1(q))
        } else {
            (Matrix::diag2(0.7, 0.4), Vector::new2(q, -q))
        };
        let p = ModelParams::new(a, adv, GrowthSpec::Linear { rate: 0.3 }, StageMapSpec::Linear { alpha: 1.0 });
        let h = if dim == 1 { 0.05 } else { 0.4 };
        let grid = Grid::centered(dim, 16.0, h).unwrap();
        let u = Field::from_fn(grid, |x: f64, y: f64| (-(x * x + y * y) / 2.0).exp()).unwrap();
        let spectral = advance_free(&p, &u, &SeasonConfig::default()).unwrap();
        let green = GreenKernel::new(&p).unwrap().convolve(&u, 1.0).unwrap();
        let err = spectral.values().iter().zip(green.values()).map(|(a, b): (&f64, &f64)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-6, "dim {dim}: {err}");
    }
}

#[test]
fn mass_conserved_without_growth() {
    let mut p = fisher(0.8);
    p.growth = GrowthSpec::Linear { rate: 0.0 };
    let grid = Grid::centered(1, 20.0, 0.05).unwrap();
    let u = Field::from_fn(grid, |x: f64, _| (-(x * x)).exp()).unwrap();
    let v = advance_free(&p, &u, &SeasonConfig::default()).unwrap();
    assert!(rel(v.mass(), u.mass()) < 1e-12);
}

#[test]
fn dirichlet_mode_factor() {
    let p = ModelParams::isotropic(1, 1.0, Vector::new1(0.0), GrowthSpec::Linear { rate: 1.0 }, StageMapSpec::Linear { alpha: 1.0 });
    let l = 4.0;
    let domain = DirichletBox::interval(l).unwrap();
    let cfg = SeasonConfig { dirichlet_spacing: 0.02, dirichlet_steps: 100, ..SeasonConfig::default() };
    let u = domain.principal_mode(0.02, 1.0).unwrap();
    let v = advance_dirichlet(&p, &u, &domain, &cfg).unwrap();
    let factor = (1.0 - std::f64::consts::PI.powi(2) / (l * l)).exp();
    assert!((v.max() / u.max() - factor).abs() < 1e-4);
}

#[test]
fn green_moments() {
    let p = fisher(0.6);
    let k = GreenKernel::new(&p).unwrap();
    let q = impulse_front::quadrature::Quadrature::default();
    let mass = q.integrate_real_line(|x: f64| k.eval(&Vector::new1(x), 1.0).unwrap()).unwrap();
    assert!(rel(mass, 1f64.exp()) < 1e-8);
    let second = q.integrate_real_line(|x: f64| (x - 0.6).powi(2) * k.eval(&Vector::new1(x), 1.0).unwrap()).unwrap() / mass;
    assert!((second - 2.0).abs() < 1e-8);
}
