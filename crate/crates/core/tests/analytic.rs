mod common;

use common::*;
use impulse_front::analytic::*;
use impulse_front::model::{GrowthSpec, ModelParams, StageMapSpec};
use impulse_front::quadrature::Quadrature;
use impulse_front::{Matrix, Vector};
use proptest::prelude::*;

#[test]
fn remark_and_example_values() {
    assert_eq!(speed_local(&fisher(0.0), &right()).unwrap(), 2.0);
    let p = ModelParams::new(
        Matrix::scalar(2, 1.0),
        Vector::new2(0.5, 0.0),
        GrowthSpec::Linear { rate: 1.0 },
        StageMapSpec::Linear { alpha: 1f64.exp() },
    );
    let c = speed_local(&p, &Direction::from_angle(0.0)).unwrap();
    assert!((c - (2.0 * 2f64.sqrt() + 0.5)).abs() < 1e-12);
    assert!((speed(&stream(), &right()).unwrap() - 2.5).abs() < 1e-12);
    assert!((speed(&stream(), &left()).unwrap() - 1.5).abs() < 1e-12);
}

proptest! {
    #[test]
    fn linear_in_advection(delta in -3.0f64..3.0, theta in 0.0f64..std::f64::consts::TAU) {
        let e = Direction::from_angle(theta);
        let base = anisotropic();
        let mut shifted = base.clone();
        shifted.advection = base.advection + e.vector().scale(delta);
        let diff = speed_local(&shifted, &e).unwrap() - speed_local(&base, &e).unwrap();
        prop_assert!((diff - delta).abs() < 1e-12);
    }
}

#[test]
fn root_and_blowup_coincide() {
    for d in [0.5, 1.0, 2.0] {
        let p = ModelParams::isotropic(1, d, Vector::new1(0.0), GrowthSpec::Logistic { r: 1.0 }, StageMapSpec::Linear { alpha: 1.0 });
        let blowup = critical_size(&p, DomainShape::Interval).unwrap().blowup_advection;
        // Zero of c*(-q/|q|) as a function of |q|.
        let c_at = |q: f64| {
            let mut p = p.clone();
            p.advection = Vector::new1(q);
            speed_local(&p, &left()).unwrap()
        };
        let root = impulse_front::optimize::bisect(|q| Ok(c_at(q)), 0.0, 10.0, 1e-15).unwrap();
        assert!((root - blowup).abs() < 1e-12, "{root} vs {blowup}");
    }
}

#[test]
fn ray_speed_below_speed() {
    let p = anisotropic();
    for k in 0..64 {
        let e = Direction::from_angle(k as f64 * std::f64::consts::TAU / 64.0);
        let c = speed_local(&p, &e).unwrap();
        let r = ray_speed(&p, &e).unwrap();
        assert!(r <= c + 1e-9);
        let on_axis = k % 16 == 0;
        assert_eq!((c - r).abs() < 1e-9, on_axis, "k = {k}: {r} vs {c}");
    }
    let iso = ModelParams::new(Matrix::scalar(2, 1.0), Vector::new2(0.0, 0.0), GrowthSpec::Logistic { r: 1.0 }, StageMapSpec::Linear { alpha: 1.0 });
    for k in 0..16 {
        let e = Direction::from_angle(k as f64 * 0.37);
        assert!((ray_speed(&iso, &e).unwrap() - speed_local(&iso, &e).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn profile_minimum_is_closed_form() {
    let prof = speed_profile(&anisotropic(), &Direction::from_angle(0.4)).unwrap();
    let (_, min) = impulse_front::optimize::golden_section(|s| prof.eval(s), 1e-3, 20.0, 1e-12);
    assert!((min - prof.value).abs() < 1e-10);
    assert!((0..100).all(|k| prof.eval(0.01 + k as f64 * 0.1) >= prof.value - 1e-12));
}

fn spd(a: f64, b: f64, c: f64) -> Matrix<f64> {
    // L L^T with L = [[a, 0], [b, c]].
    Matrix::new2(a * a, a * b, a * b, b * b + c * c)
}

#[test]
fn gaussian_integral_identities() {
    let q = Quadrature::with_tol(1e-13, 1e-11);
    let cases = [
        (spd(1.0, 0.3, 0.8), Vector::new2(0.4, -0.7)),
        (spd(1.7, -0.5, 0.6), Vector::new2(-1.1, 0.2)),
        (spd(0.6, 0.1, 1.3), Vector::new2(0.9, 1.5)),
    ];
    let pi = std::f64::consts::PI;
    for (a, z) in cases {
        // int e^{i z.eta - <A eta, eta>}: the imaginary part vanishes by symmetry.
        let num = q
            .integrate_plane(|x: f64, y: f64| {
                let eta = Vector::new2(x, y);
                z.dot(&eta).cos() * (-a.quad(&eta)).exp()
            })
            .unwrap();
        let inv = a.inverse().unwrap();
        let exact = pi / a.det().sqrt() * (-0.25 * inv.quad(&z)).exp();
        assert!(rel(num, exact) < 1e-8, "{num} vs {exact}");

        let num = q
            .integrate_plane(|x: f64, y: f64| {
                let eta = Vector::new2(x, y);
                (z.dot(&eta) - inv.quad(&eta)).exp()
            })
            .unwrap();
        let exact = pi * a.det().sqrt() * (0.25 * a.quad(&z)).exp();
        assert!(rel(num, exact) < 1e-8, "{num} vs {exact}");
    }
}

#[test]
fn critical_examples() {
    let r = critical_size(&fisher(0.0), DomainShape::Interval).unwrap();
    assert!((r.size - std::f64::consts::PI).abs() < 1e-12);
    let p2 = ModelParams::new(Matrix::scalar(2, 1.0), Vector::new2(0.0, 0.0), GrowthSpec::Logistic { r: 1.0 }, StageMapSpec::Linear { alpha: 1.0 });
    let r = critical_size(&p2, DomainShape::Hypercube(2)).unwrap();
    assert!((r.size - std::f64::consts::PI * 2f64.sqrt()).abs() < 1e-12);
    let r = critical_size(&fisher(3.0), DomainShape::Interval).unwrap();
    assert!(r.size.is_infinite());
    assert_eq!(r.regime, DomainRegime::Infinite);
}

#[test]
fn savannah_table() {
    let report = scenario_bounds(&ScenarioInputs::Savannah(SavannahInputs { r: 1.0, s: 0.1, a11: 2.0, a22: 1.0, q1: 0.0, q2: 0.0 })).unwrap();
    let ScenarioReport::Savannah(s) = report else { panic!("wrong report") };
    assert_eq!(s.rows.len(), 91);
    let row = &s.rows[45];
    let expected = 2.0 * (8.0f64 / 5.0).sqrt() * (1.0 + 0.9f64.ln()).sqrt();
    assert!(rel(row.ray_speed, expected) < 1e-9);
}
