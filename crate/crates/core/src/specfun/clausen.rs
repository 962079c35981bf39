use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use super::zeta_fn;

const SERIES_TERMS: usize = 32;

/// ζ(2k) / (k (2k+1) (2π)^{2k}) for k = 1..=SERIES_TERMS.
fn coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = [0.0; SERIES_TERMS];
        let mut pw = 1.0;
        for (i, slot) in c.iter_mut().enumerate() {
            let k = (i + 1) as f64;
            pw /= TAU * TAU;
            let z = zeta_fn(2.0 * k).expect("even zeta arguments are in range");
            *slot = z * pw / (k * (2.0 * k + 1.0));
        }
        c
    })
}

/// Clausen function Cl₂(θ) = Σ sin(nθ)/n².
///
/// Odd and 2π-periodic. After reduction to [0, π] it is evaluated from
/// Cl₂(θ) = θ − θ ln θ + Σ_k ζ(2k) θ^{2k+1} / (k (2k+1) (2π)^{2k}),
/// which converges geometrically there (ratio ≤ 1/4).
pub fn clausen2(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let sign = if theta < 0.0 { -1.0 } else { 1.0 };
    let mut t = theta.abs() % TAU;
    let mut s = sign;
    if t > PI {
        t = TAU - t;
        s = -s;
    }
    if t == 0.0 || t == PI {
        return 0.0;
    }
    s * clausen2_reduced(t)
}

fn clausen2_reduced(t: f64) -> f64 {
    let t2 = t * t;
    let mut pw = t * t2;
    let mut sum = 0.0;
    for &c in coefficients() {
        let term = c * pw;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        pw *= t2;
    }
    t - t * t.ln() + sum
}

/// Σ cos(nθ)/n = −ln(2|sin(θ/2)|), the derivative of −Cl₂.
pub fn log_sine(theta: f64) -> f64 {
    -(2.0 * (0.5 * theta).sin().abs()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Σ (−1)^k / (2k+1)² by pairing terms, with the alternating remainder halved.
    fn catalan_brute() -> f64 {
        let n = 2_000_000usize;
        let mut s = 0.0;
        for k in (0..n).rev() {
            let d = (2 * k + 1) as f64;
            s += if k % 2 == 0 { 1.0 } else { -1.0 } / (d * d);
        }
        // next term has sign (+) since n is even; averaging the last two partial sums
        let d = (2 * n + 1) as f64;
        s + 0.5 / (d * d)
    }

    fn sine_series(theta: f64, n: usize) -> f64 {
        (1..=n).rev().map(|k| (k as f64 * theta).sin() / (k * k) as f64).sum()
    }

    #[test]
    fn special_points() {
        assert_eq!(clausen2(0.0), 0.0);
        assert_abs_diff_eq!(clausen2(PI), 0.0, epsilon = 1e-15);
        let catalan = catalan_brute();
        assert_abs_diff_eq!(catalan, 0.915_965_594_177_219, epsilon = 1e-14);
        assert_abs_diff_eq!(clausen2(PI / 2.0), catalan, epsilon = 1e-14);
        // maximum at π/3
        assert_abs_diff_eq!(clausen2(PI / 3.0), 1.014_941_606_409_653_6, epsilon = 1e-14);
    }

    #[test]
    fn matches_raw_sine_series() {
        for &t in &[0.3, 1.0, 2.0, 2.9, 4.0, 5.5] {
            // raw series tail is O(1/N) → compare loosely
            assert_abs_diff_eq!(clausen2(t), sine_series(t, 200_000), epsilon = 2e-5);
        }
    }

    #[test]
    fn log_sine_is_derivative() {
        for &t in &[0.4, 1.3, 3.0, 5.0] {
            let h = 1e-5;
            let fd = (clausen2(t + h) - clausen2(t - h)) / (2.0 * h);
            assert_abs_diff_eq!(fd, log_sine(t), epsilon = 1e-8);
        }
    }

    proptest! {
        #[test]
        fn odd_exactly(t in -50.0f64..50.0) {
            prop_assert_eq!(clausen2(-t), -clausen2(t));
        }

        #[test]
        fn periodic(t in -20.0f64..20.0) {
            prop_assert!((clausen2(t + TAU) - clausen2(t)).abs() <= 1e-12);
        }
    }
}
