mod common;

use common::*;
use impulse_front::hybrid::{generation_p, generation_q};
use impulse_front::model::*;
use impulse_front::season::{advance_free, SeasonConfig};
use impulse_front::{Matrix, Vector};
use proptest::prelude::*;

fn maps() -> Vec<StageMapSpec<f64>> {
    vec![
        StageMapSpec::Linear { alpha: 0.9 },
        StageMapSpec::Ricker { beta: 2.0 },
        StageMapSpec::BevertonHolt { lambda: 1.5 },
        StageMapSpec::Skellam { alpha: 2.0, beta: 1.5 },
    ]
}

#[test]
fn map_quotient_nonincreasing() {
    for g in maps() {
        let top = g.monotone_bound().min(50.0);
        let pts: Vec<f64> = (0..1000).map(|k| 1e-6 * (top / 1e-6).powf(k as f64 / 999.0)).collect();
        let q: Vec<f64> = pts.iter().map(|&s| eval_map(&g, s).unwrap() / s).collect();
        assert!(q.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{g:?}");
    }
}

#[test]
fn nonlinear_part_nonpositive() {
    for f in [GrowthSpec::Logistic { r: 1.3 }, GrowthSpec::Quadratic { rate: 0.7, gamma: -0.4 }] {
        assert!((0..=200).all(|k| f.nonlinear_part(k as f64 * 0.01) <= 0.0));
    }
}

#[test]
fn kernel_integrates_to_one() {
    let k = KernelSpec::gaussian(Vector::new1(0.5), Matrix::new1(0.5));
    let sd = 1.0;
    let n = 20_000;
    let h = 20.0 * sd / n as f64;
    let total: f64 = (0..=n).map(|i| k.density(&Vector::new1(0.5 - 10.0 * sd + i as f64 * h)).unwrap() * h).sum();
    assert!((total - 1.0).abs() < 1e-10);
}

fn small_grid() -> Grid<f64> {
    Grid::centered(1, 15.0, 0.1).unwrap()
}

fn season() -> SeasonConfig<f64> {
    SeasonConfig { guard_boundary: false, ..SeasonConfig::default() }
}

/// Random bump data plus a nonnegative increment.
fn ordered_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    let n = small_grid().len();
    (prop::collection::vec(0.0f64..1.0, 8), prop::collection::vec(0.0f64..0.3, 8)).prop_map(move |(a, b)| {
        let bump = |coef: &[f64], i: usize| {
            let x = -15.0 + 0.1 * i as f64;
            coef.iter().enumerate().map(|(k, c)| c * (-(x - (k as f64 - 4.0) * 1.5).powi(2)).exp()).sum::<f64>()
        };
        let u: Vec<f64> = (0..n).map(|i| bump(&a, i)).collect();
        let v: Vec<f64> = (0..n).map(|i| u[i] + bump(&b, i)).collect();
        (u, v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn q_is_monotone((u, v) in ordered_pair()) {
        let p = fisher(0.3);
        let qu = generation_q(&p, &Field::new(small_grid(), u).unwrap(), &season()).unwrap();
        let qv = generation_q(&p, &Field::new(small_grid(), v).unwrap(), &season()).unwrap();
        prop_assert!(qu.values().iter().zip(qv.values()).all(|(a, b)| *a <= *b + 1e-10));
    }

    #[test]
    fn p_is_monotone((u, v) in ordered_pair()) {
        let p = stream();
        let pu = generation_p(&p, &Field::new(small_grid(), u).unwrap(), &season()).unwrap();
        let pv = generation_p(&p, &Field::new(small_grid(), v).unwrap(), &season()).unwrap();
        prop_assert!(pu.values().iter().zip(pv.values()).all(|(a, b)| *a <= *b + 1e-10));
    }

    #[test]
    fn season_comparison((u, v) in ordered_pair()) {
        let p = fisher(-0.4);
        let a = advance_free(&p, &Field::new(small_grid(), u).unwrap(), &season()).unwrap();
        let b = advance_free(&p, &Field::new(small_grid(), v).unwrap(), &season()).unwrap();
        prop_assert!(a.values().iter().zip(b.values()).all(|(x, y)| *x <= *y + 1e-10));
    }

    #[test]
    fn season_translation(cells in -20i32..20, width in 0.5f64..2.0) {
        let p = fisher(0.2);
        let grid = small_grid();
        let h = 0.1;
        let shift = cells as f64 * h;
        let u = Field::from_fn(grid, |x, _| 0.8 * (-(x / width).powi(2)).exp()).unwrap();
        let v = Field::from_fn(grid, |x, _| 0.8 * (-((x - shift) / width).powi(2)).exp()).unwrap();
        let au = advance_free(&p, &u, &season()).unwrap();
        let av = advance_free(&p, &v, &season()).unwrap();
        let n = grid.len() as i32;
        for i in 0..n {
            let j = i + cells;
            if (0..n).contains(&j) {
                prop_assert!((au.values()[i as usize] - av.values()[j as usize]).abs() < 1e-8);
            }
        }
    }
}
