use super::*;
use crate::specfun::zeta_fn;
use std::f64::consts::PI;

fn finite(f: impl Fn(f64) -> f64 + Send + Sync, a: f64, b: f64, tol: f64) -> QuadratureResult {
    integrate_finite(&QuadratureProblem::new(f, a, b, tol).unwrap()).unwrap()
}

#[test]
fn finite_examples() {
    let r = finite(|x| x, 0.0, 1.0, 1e-12);
    assert!(r.converged);
    assert!((r.value - 0.5).abs() < 1e-15);
    let r = finite(f64::sin, 0.0, PI, 1e-12);
    assert!((r.value - 2.0).abs() <= 1e-14);
    assert_eq!(r.truncation_at, PI);
}

/// Midpoint rule on n cells: a crude but independent oracle for log-singular integrands.
fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

#[test]
fn log_sine_integral_vanishes() {
    let f = |t: f64| (2.0 * (0.5 * t).sin()).ln();
    let r = finite(f, 0.0, 2.0 * PI, 1e-10);
    assert!(r.converged);
    assert!(r.value.abs() <= 1e-10, "{}", r.value);
    // the midpoint error is O(h) near the log singularities
    assert!(midpoint(f, 0.0, 2.0 * PI, 1_000_000).abs() < 1e-5);

    let g = |t: f64| t * (2.0 * (0.5 * t).sin()).ln();
    let r = finite(g, 0.0, 2.0 * PI, 1e-10);
    assert!(r.value.abs() <= 1e-9, "{}", r.value);
}

#[test]
fn declared_singular_point_log() {
    let p = QuadratureProblem::new(f64::ln, 0.0, 1.0, 1e-10).unwrap();
    let r = integrate_finite(&p).unwrap();
    assert!(r.converged);
    assert!((r.value + 1.0).abs() <= 1e-10);
    // interior singularity ln|t − 1/3|, split there
    let f = |t: f64| (t - 1.0 / 3.0).abs().ln();
    let p = QuadratureProblem::new(f, 0.0, 1.0, 1e-9)
        .unwrap()
        .with_singular_points(vec![1.0 / 3.0])
        .unwrap();
    let r = integrate_finite(&p).unwrap();
    let (u, v) = (1.0f64 / 3.0, 2.0f64 / 3.0);
    let exact = u * u.ln() - u + v * v.ln() - v;
    assert!((r.value - exact).abs() <= 1e-9, "{} vs {exact}", r.value);
}

type Case = (fn(f64) -> f64, f64, f64, f64);

fn smooth_suite() -> Vec<Case> {
    vec![
        (|x| x * x, 0.0, 3.0, 9.0),
        (f64::exp, 0.0, 1.0, std::f64::consts::E - 1.0),
        (f64::cos, 0.0, 10.0, -0.544_021_110_889_369_8),
        (|x| 1.0 / (1.0 + x * x), -5.0, 5.0, 2.0 * 1.373_400_766_945_016),
        (|x| x.sqrt(), 0.0, 4.0, 16.0 / 3.0),
        (|x| (-x * x).exp(), 0.0, 3.0, 0.886_207_348_259_521_1),
        (|x| 1.0 / x, 1.0, 100.0, 4.605_170_185_988_092),
        (|x| (20.0 * x).sin() * x, 0.0, 1.0, (20.0f64.sin() - 20.0 * 20.0f64.cos()) / 400.0),
        (|x| x.powi(7) - 2.0 * x, -1.0, 2.0, 255.0 / 8.0 - 3.0),
        (|x| (x.ln()).powi(2), 0.0, 1.0, 2.0),
        (|x| 1.0 / (1.0 + 100.0 * (x - 0.5).powi(2)), 0.0, 1.0, 0.2 * 5.0f64.atan()),
    ]
}

#[test]
fn smooth_suite_within_error_estimate() {
    for (i, (f, a, b, exact)) in smooth_suite().into_iter().enumerate() {
        for tol in [1e-6, 1e-9, 1e-12] {
            let r = finite(f, a, b, tol);
            assert!(r.converged, "case {i} tol {tol}");
            let err = (r.value - exact).abs();
            assert!(err <= r.err_estimate + 4.0 * f64::EPSILON * exact.abs(), "case {i}: {err} > {}", r.err_estimate);
        }
    }
}

#[test]
fn tighter_tolerance_never_worse() {
    for (i, (f, a, b, exact)) in smooth_suite().into_iter().enumerate() {
        let mut prev = f64::INFINITY;
        for tol in [1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11] {
            let err = (finite(f, a, b, tol).value - exact).abs();
            // allow for last-bit noise once both are at round-off level
            assert!(err <= prev + 1e-14 * exact.abs().max(1.0), "case {i} at {tol}: {err} > {prev}");
            prev = prev.min(err);
        }
    }
}

#[test]
fn semiinf_examples() {
    let p = QuadratureProblem::new(|x: f64| (-x).exp(), 0.0, f64::INFINITY, 1e-12)
        .unwrap()
        .with_tail(|t: f64| (-t).exp());
    let r = integrate_semiinf(&p).unwrap();
    assert!(r.converged);
    assert!((r.value - 1.0).abs() <= 1e-12);
    assert!(r.truncation_at > 28.0);

    // Bose integral with μ = 3
    let tol = 1e-11;
    let p = QuadratureProblem::new(|x: f64| x.powi(3) / x.exp_m1(), 0.0, f64::INFINITY, tol)
        .unwrap()
        .with_tail(|t: f64| upper_gamma_bound(4.0, t) / (1.0 - (-t).exp()));
    let r = integrate_semiinf(&p).unwrap();
    assert!((r.value - PI.powi(4) / 15.0).abs() <= tol);
    assert!((r.value - 6.493_939_4).abs() < 1e-7);

    // squared Bose integral: 6 (ζ(3) − ζ(4))
    let p = QuadratureProblem::new(|t: f64| t.powi(3) / t.exp_m1().powi(2), 0.0, f64::INFINITY, tol)
        .unwrap()
        .with_tail(|t: f64| upper_gamma_bound(4.0, 2.0 * t) / 16.0 / (1.0 - (-t).exp()).powi(2));
    let r = integrate_semiinf(&p).unwrap();
    let exact = 6.0 * (zeta_fn(3.0).unwrap() - zeta_fn(4.0).unwrap());
    assert!((r.value - exact).abs() <= tol + 1e-14);
    assert!((r.value - 0.718_402_0).abs() < 1e-7);
}

#[test]
fn semiinf_truncation_honesty() {
    let tol = 1e-9;
    let f = |x: f64| x.powf(2.5) / x.exp_m1();
    let tail = |t: f64| upper_gamma_bound(3.5, t) / (1.0 - (-t).exp());
    let p = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol).unwrap().with_tail(tail);
    let r = integrate_semiinf(&p).unwrap();
    let t2 = 2.0 * r.truncation_at;
    let longer = integrate_finite(&QuadratureProblem::new(f, 0.0, t2, tol / 2.0).unwrap()).unwrap();
    assert!((longer.value - r.value).abs() <= 2.0 * tol);
}

#[test]
fn semiinf_rejects_slow_tails() {
    let p = QuadratureProblem::new(|x: f64| 1.0 / (1.0 + x * x), 0.0, f64::INFINITY, 1e-12)
        .unwrap()
        .with_tail(|t: f64| 1.0 / t);
    assert!(matches!(integrate_semiinf(&p), Err(Error::NonConvergence(_))));
    let p = QuadratureProblem::new(|x: f64| x, 0.0, f64::INFINITY, 1e-12).unwrap();
    assert!(integrate_semiinf(&p).is_err());
}

#[test]
fn periodic_examples() {
    let p = QuadratureProblem::new(f64::sin, 0.0, f64::INFINITY, 1e-10)
        .unwrap()
        .with_period(2.0 * PI)
        .unwrap();
    let r = integrate_periodic_chunks(&p).unwrap();
    assert!(r.converged);
    assert!(r.value.abs() <= 1e-10);

    // alternating chunks: ∫_0^∞ sin t / t = π/2
    let p = QuadratureProblem::new(|t: f64| t.sin() / t, 0.0, f64::INFINITY, 1e-9)
        .unwrap()
        .with_period(PI)
        .unwrap();
    let r = integrate_periodic_chunks(&p).unwrap();
    assert!(r.converged);
    assert!((r.value - 0.5 * PI).abs() <= 1e-9, "{}", r.value);
    assert!(r.truncation_at < 1e3);
}

#[test]
fn periodic_detects_growing_chunks() {
    let p = QuadratureProblem::new(|t: f64| t * t * t.sin(), 0.0, f64::INFINITY, 1e-8)
        .unwrap()
        .with_period(2.0 * PI)
        .unwrap();
    assert!(matches!(integrate_periodic_chunks(&p), Err(Error::NonConvergence(_))));
}

#[test]
fn problem_validation() {
    assert!(QuadratureProblem::new(|x| x, 1.0, 0.0, 1e-8).is_err());
    assert!(QuadratureProblem::new(|x| x, 0.0, 1.0, 0.0).is_err());
    let p = QuadratureProblem::new(|x| x, 0.0, 1.0, 1e-8).unwrap();
    assert!(p.with_singular_points(vec![0.5, 0.2]).is_err());
    let p = QuadratureProblem::new(|x| x, 0.0, 1.0, 1e-8).unwrap();
    assert!(p.with_singular_points(vec![2.0]).is_err());
    let p = QuadratureProblem::new(|x| x, 0.0, 1.0, 1e-8).unwrap();
    assert!(p.with_period(-1.0).is_err());
}

#[test]
fn upper_gamma_bound_dominates() {
    for &(a, x) in &[(0.5, 0.3), (0.5, 3.0), (1.0, 2.0), (3.0, 5.0), (4.0, 2.0), (6.5, 30.0)] {
        let exact = finite(move |t: f64| t.powf(a - 1.0) * (-t).exp(), x, x + 200.0, 1e-13).value;
        let b = upper_gamma_bound(a, x);
        assert!(b >= exact * (1.0 - 1e-12), "a={a} x={x}: {b} < {exact}");
    }
}
