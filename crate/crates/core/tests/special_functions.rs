mod common;

use approx::assert_abs_diff_eq;
use common::{gamma_mp, mainardi_m_mp, mainardi_m_prime_mp, ml_series_mp, wright_mp};
use fracwave::mittag_leffler::{asymptotic_start, x_switch, DEFAULT_TOL};
use fracwave::wright::{mainardi_m_prime_series, mainardi_m_series};
use fracwave::{
    mainardi_f, mainardi_m, mainardi_m_contour, mainardi_m_prime, ml, ml_asymptotic, ml_integral,
    ml_series, wright, Error, FracOrder, MlArg, WrightParams,
};
use proptest::prelude::*;

fn arg(a: f64, x: f64) -> MlArg {
    MlArg::new(a, x).unwrap()
}

fn nu(v: f64) -> FracOrder {
    FracOrder::new(v).unwrap()
}

#[test]
fn mittag_leffler_matches_extended_precision_series() {
    for &alpha in &[1.02, 1.1, 1.5, 1.75, 1.9, 1.99] {
        for &x in &[0.3, 2.0, 8.0, 25.0, 60.0, 100.0, 150.0] {
            let exact = ml_series_mp(alpha, x, 400);
            let r = ml(arg(alpha, x), DEFAULT_TOL).unwrap();
            assert!(
                (r.value - exact).abs() <= r.abs_err.max(1e-15),
                "alpha = {alpha}, x = {x}: {} vs {exact} (err {:e})",
                r.value,
                r.abs_err
            );
            assert!(r.abs_err <= DEFAULT_TOL);
        }
    }
}

#[test]
fn asymptotic_regime_against_series_oracle() {
    let exact = ml_series_mp(1.5, 100.0, 400);
    let r = ml_asymptotic(arg(1.5, 100.0), 1e-6).unwrap();
    assert!(
        (r.value - exact).abs() <= r.abs_err,
        "{} vs {exact}",
        r.value
    );
}

#[test]
fn regimes_agree_around_switch() {
    for &alpha in &[1.1, 1.5, 1.9] {
        let s = x_switch(alpha);
        for &x in &[0.9 * s, s, 1.1 * s] {
            let a = ml_integral(arg(alpha, x), 1e-12).unwrap();
            if let Ok(b) = ml_asymptotic(arg(alpha, x), 1e-12) {
                assert!(
                    (a.value - b.value).abs() <= a.abs_err + b.abs_err,
                    "alpha = {alpha}, x = {x}"
                );
            }
        }
        // continuity where the dispatcher changes route
        let s = asymptotic_start(alpha);
        let near = ml(arg(alpha, s * (1.0 - 1e-9)), 1e-12).unwrap();
        let far = ml(arg(alpha, s * (1.0 + 1e-9)), 1e-12).unwrap();
        assert!((near.value - far.value).abs() <= 2e-12 + 1e-9 * s);
    }
    // moderate x: series and quadrature routes
    let a = ml_series(arg(1.5, 5.0), 1e-12).unwrap();
    let b = ml_integral(arg(1.5, 5.0), 1e-12).unwrap();
    assert!((a.value - b.value).abs() <= a.abs_err + b.abs_err);
}

#[test]
fn exponential_and_cosine_endpoints() {
    for i in 0..=700 {
        let x = i as f64;
        let r = ml(arg(1.0, x), DEFAULT_TOL).unwrap();
        assert!((r.value - (-x).exp()).abs() <= DEFAULT_TOL);
    }
    for i in 0..=800 {
        let x = 1e8 * (i as f64 / 800.0).powi(3);
        let r = ml(arg(2.0, x), DEFAULT_TOL).unwrap();
        assert!((r.value - x.sqrt().cos()).abs() <= DEFAULT_TOL, "x = {x}");
    }
}

#[test]
fn asymptotic_rejected_at_alpha_two() {
    assert!(ml_asymptotic(arg(2.0, 1e4), 1e-12).is_err());
}

#[test]
fn wright_origin_is_reciprocal_gamma() {
    for &(l, m) in &[
        (-0.6, 0.4),
        (-0.25, 1.5),
        (0.5, 2.5),
        (-0.9, 0.1),
        (0.3, 0.75),
    ] {
        let w = wright(WrightParams::new(l, m, 0.0).unwrap(), 1e-12).unwrap();
        assert_abs_diff_eq!(w.value, 1.0 / gamma_mp(m), epsilon = 1e-14);
    }
}

#[test]
fn wright_matches_extended_precision_series() {
    let w = wright(WrightParams::new(-0.75, 0.25, 0.5).unwrap(), 1e-12).unwrap();
    assert_abs_diff_eq!(w.value, wright_mp(-0.75, 0.25, 0.5, 500), epsilon = 1e-12);
    for &(l, m, r) in &[
        (-0.6, 0.4, 1.5),
        (-0.55, 0.0, 2.5),
        (0.5, 1.0, 3.0),
        (-0.7, -0.4, 1.0),
    ] {
        let w = wright(WrightParams::new(l, m, r).unwrap(), 1e-12).unwrap();
        let exact = wright_mp(l, m, r, 500);
        assert!(
            (w.value - exact).abs() <= w.abs_err,
            "({l}, {m}, {r}): {} vs {exact}",
            w.value
        );
    }
}

#[test]
fn mainardi_examples() {
    assert_abs_diff_eq!(
        mainardi_m(nu(0.5), 0.0, 1e-12).unwrap().value,
        0.564_189_583_547_756_3,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(
        mainardi_m(nu(0.5), 2.0, 1e-12).unwrap().value,
        0.207_553_748_710_297_8,
        epsilon = 1e-12
    );
    // 1/Γ(1/4)
    assert_abs_diff_eq!(
        mainardi_m(nu(0.75), 0.0, 1e-12).unwrap().value,
        0.275_815_662_830_209_3,
        epsilon = 1e-12
    );
    assert_eq!(mainardi_f(nu(0.6), 0.0, 1e-12).unwrap().value, 0.0);
    assert_abs_diff_eq!(
        mainardi_f(nu(0.5), 1.0, 1e-12).unwrap().value,
        0.219_695_644_733_861_2,
        epsilon = 1e-12
    );
}

#[test]
fn f_identity() {
    for &v in &[0.55, 0.75, 0.8, 0.9] {
        for i in 0..=30 {
            let r = 0.1 * i as f64;
            let direct = match wright(WrightParams::new(-v, 0.0, r).unwrap(), 1e-12) {
                Ok(w) => w,
                Err(Error::CancellationLoss { .. } | Error::NonConvergence { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let f = mainardi_f(nu(v), r, 1e-12).unwrap();
            assert!((f.value - direct.value).abs() <= 2e-12, "nu = {v}, r = {r}");
        }
    }
}

#[test]
fn derivative_at_origin_of_gaussian_is_zero() {
    // the n = 1 term of the differentiated series is -1/Γ(0) = 0
    let d = mainardi_m_prime(nu(0.5), 0.0, 1e-12).unwrap();
    assert_eq!(d.value, 0.0);
    let h = 1e-6;
    let fd = (mainardi_m(nu(0.5), h, 1e-12).unwrap().value
        - mainardi_m(nu(0.5), 0.0, 1e-12).unwrap().value)
        / h;
    assert!(fd.abs() < 1e-6);
}

#[test]
fn derivative_against_finite_differences() {
    let h = 1e-6;
    for &v in &[0.5, 0.6, 0.75, 0.9] {
        for i in 1..=20 {
            let r = 0.1 * i as f64;
            let p = mainardi_m(nu(v), r + h, 1e-12).unwrap().value;
            let m = mainardi_m(nu(v), r - h, 1e-12).unwrap().value;
            let d = mainardi_m_prime(nu(v), r, 1e-12).unwrap();
            assert_abs_diff_eq!(d.value, (p - m) / (2.0 * h), epsilon = 1e-8);
        }
    }
}

#[test]
fn contour_route_in_cancellation_region() {
    // the series loses all digits here; the oracle sums 2000 terms in 512 bits
    for &(v, r) in &[(0.9, 2.0), (0.85, 2.5), (0.8, 3.0)] {
        assert!(mainardi_m_series(nu(v), r, 1e-12).is_err());
        let m = mainardi_m(nu(v), r, 1e-12).unwrap();
        let exact = mainardi_m_mp(v, r, 2000);
        assert!(
            (m.value - exact).abs() <= m.abs_err,
            "nu = {v}, r = {r}: {} vs {exact}",
            m.value
        );
        let d = mainardi_m_prime(nu(v), r, 1e-12).unwrap();
        let exact = mainardi_m_prime_mp(v, r, 2000);
        assert!(
            (d.value - exact).abs() <= d.abs_err,
            "nu = {v}, r = {r}: {} vs {exact}",
            d.value
        );
    }
}

#[test]
fn series_routes_match_oracle_where_reliable() {
    for &(v, r) in &[(0.6, 1.0), (0.75, 0.8), (0.9, 0.5)] {
        let m = mainardi_m_series(nu(v), r, 1e-12).unwrap();
        assert!((m.value - mainardi_m_mp(v, r, 600)).abs() <= m.abs_err);
        let d = mainardi_m_prime_series(nu(v), r, 1e-12).unwrap();
        assert!((d.value - mainardi_m_prime_mp(v, r, 600)).abs() <= d.abs_err);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ml_at_zero_is_one(alpha in 1.0f64..=2.0) {
        prop_assert_eq!(ml(arg(alpha, 0.0), DEFAULT_TOL).unwrap().value, 1.0);
    }

    #[test]
    fn ml_error_within_tolerance(alpha in 1.0f64..=2.0, x in 0.0f64..400.0) {
        let r = ml(arg(alpha, x), DEFAULT_TOL).unwrap();
        prop_assert!(r.abs_err >= 0.0 && r.abs_err <= DEFAULT_TOL);
    }

    #[test]
    fn ml_tail_decay(alpha in 1.01f64..1.99, scale in 1.0f64..1e4) {
        let x = x_switch(alpha) * scale;
        let r = ml(arg(alpha, x), DEFAULT_TOL).unwrap();
        let bound = 2.0 / (x * fracwave::gamma::gamma(1.0 - alpha).abs());
        prop_assert!(r.value.abs() <= bound, "alpha = {}, x = {}", alpha, x);
    }

    #[test]
    fn gaussian_identity(r in 0.0f64..10.0) {
        let m = mainardi_m(nu(0.5), r, 1e-12).unwrap();
        prop_assert!((m.value - (-r * r / 4.0).exp() / std::f64::consts::PI.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn mainardi_positive(v in 0.5f64..0.97, r in 0.0f64..3.0) {
        let m = mainardi_m(nu(v), r, 1e-12).unwrap();
        prop_assert!(m.value > 0.0 || m.value.abs() <= m.abs_err, "nu = {}, r = {}: {}", v, r, m.value);
    }

    #[test]
    fn contour_agrees_with_dispatcher(v in 0.5f64..0.95, r in 0.0f64..2.0) {
        let a = mainardi_m(nu(v), r, 1e-12).unwrap();
        let b = mainardi_m_contour(nu(v), r, 1e-12).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.abs_err + b.abs_err);
    }
}
