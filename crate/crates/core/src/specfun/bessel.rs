use std::f64::consts::PI;

use super::gamma_fn;
use crate::error::{domain, Result};

/// Order ν ≥ 0 of a first-kind Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_nan() || nu < 0.0 {
            return Err(domain(format!("Bessel order must be >= 0, got {nu}")));
        }
        if nu > 150.0 {
            return Err(domain(format!("Bessel order {nu} is beyond the supported range")));
        }
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Above this argument the ascending series is abandoned (sum of |terms| ≤ I_0(8) ≈ 427).
const SERIES_MAX_X: f64 = 8.0;

/// First-kind Bessel function J_ν(x) for ν ≥ 0, x ≥ 0.
///
/// Three regimes: the ascending power series for small x (or x below the
/// turning point), the Hankel asymptotic expansion once x ≥ 25 + ν²/2, and
/// Miller's backward recurrence normalised by the Neumann sum in between.
/// Absolute error is below 1e-11 for x ≤ 1e4.
pub fn bessel_j(nu: BesselOrder, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    let nu = nu.value();
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let j = if x <= SERIES_MAX_X || 0.25 * x * x < nu + 1.0 {
        ascending_series(nu, x)?
    } else if x >= 25.0 + 0.5 * nu * nu {
        match hankel(nu, x) {
            Some(v) => v,
            None => miller(nu, x)?,
        }
    } else {
        miller(nu, x)?
    };
    debug_assert!(j.abs() <= 1.0 + 1e-9, "von Lommel bound violated: J_{nu}({x}) = {j}");
    Ok(j)
}

fn ascending_series(nu: f64, x: f64) -> Result<f64> {
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = half.powf(nu) / gamma_fn(nu + 1.0)?;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) || k > 300.0 {
            break;
        }
        k += 1.0;
    }
    Ok(sum)
}

/// Hankel expansion J_ν(x) = √(2/πx) (P cos χ − Q sin χ), χ = x − (ν/2 + 1/4)π.
///
/// Returns `None` when the asymptotic series stalls before reaching f64 accuracy.
fn hankel(nu: f64, x: f64) -> Option<f64> {
    let (p, q) = hankel_pq(nu, x)?;
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    Some((2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi))
}

/// The P and Q series of the Hankel expansion, summed to the smallest term.
pub(crate) fn hankel_pq(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu4 = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= (mu4 - odd * odd) / (k as f64 * 8.0 * x);
        let a = term.abs();
        if a == 0.0 {
            return Some((p, q));
        }
        if a > prev {
            return None;
        }
        // Signs: P = t0 - t2 + t4 - ..., Q = t1 - t3 + ...
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if a < 1e-17 {
            return Some((p, q));
        }
        prev = a;
    }
    None
}

/// Miller backward recurrence on orders ν₀ + j (ν₀ = frac ν), normalised with
/// (x/2)^ν₀ = Γ(ν₀+1) J_ν₀ + Σ_{k≥1} (ν₀+2k) Γ(ν₀+k)/k! J_{ν₀+2k}.
fn miller(nu: f64, x: f64) -> Result<f64> {
    let m = nu.floor() as usize;
    let nu0 = nu - m as f64;
    let mut start = x.max(nu).ceil() as usize + 10 * x.cbrt().ceil() as usize + 25;
    if start % 2 == 1 {
        start += 1;
    }
    // Neumann weights indexed by k where j = 2k.
    let g1 = gamma_fn(nu0 + 1.0)?;
    let mut weights = Vec::with_capacity(start / 2 + 1);
    weights.push(g1);
    let mut g = g1; // Γ(ν₀ + k) / k! at k = 1
    for k in 1..=start / 2 {
        let kf = k as f64;
        if k > 1 {
            g *= (nu0 + kf - 1.0) / kf;
        }
        weights.push((nu0 + 2.0 * kf) * g);
    }

    let mut f_next = 0.0; // f_{j+1}
    let mut f = 1e-300; // f_j
    let mut norm = 0.0;
    let mut target = 0.0;
    let mut j = start;
    loop {
        if j.is_multiple_of(2) {
            norm += weights[j / 2] * f;
        }
        if j == m {
            target = f;
        }
        if j == 0 {
            break;
        }
        let f_prev = 2.0 * (nu0 + j as f64) / x * f - f_next;
        f_next = f;
        f = f_prev;
        j -= 1;
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
    }
    Ok(target * (0.5 * x).powf(nu0) / norm)
}

/// Normalised Bessel function 𝒥_μ(x) = 2^μ Γ(μ+1) J_μ(x) / x^μ, μ > −1.
///
/// Even in x, equal to 1 at x = 0, and bounded by 1 in modulus for μ > −1/2.
pub fn normalized_bessel(mu: f64, x: f64) -> Result<f64> {
    if mu.is_nan() || mu <= -1.0 {
        return Err(domain(format!("normalized_bessel requires mu > -1, got {mu}")));
    }
    let x = x.abs();
    let v = if x <= SERIES_MAX_X {
        // Σ (−x²/4)^k / (k! (μ+1)_k)
        let q = -0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        while k < 300.0 {
            term *= q / (k * (mu + k));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
                break;
            }
            k += 1.0;
        }
        sum
    } else if mu >= 0.0 {
        let j = bessel_j(BesselOrder::new(mu)?, x)?;
        2f64.powf(mu) * gamma_fn(mu + 1.0)? * j / x.powf(mu)
    } else {
        // J_μ = (2(μ+1)/x) J_{μ+1} − J_{μ+2} for −1 < μ < 0.
        let j1 = bessel_j(BesselOrder::new(mu + 1.0)?, x)?;
        let j2 = bessel_j(BesselOrder::new(mu + 2.0)?, x)?;
        let j = 2.0 * (mu + 1.0) / x * j1 - j2;
        2f64.powf(mu) * gamma_fn(mu + 1.0)? * j / x.powf(mu)
    };
    if mu > -0.5 {
        debug_assert!(v.abs() <= 1.0 + 1e-9, "|normalized J_{mu}({x})| = {} > 1", v.abs());
    }
    Ok(v)
}

/// Closed form J_{1/2}(x) = √(2/(πx)) sin x.
#[cfg(test)]
pub(crate) fn j_half(x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt() * x.sin()
}

/// Closed form J_{3/2}(x) = √(2/(πx)) (sin x / x − cos x).
#[cfg(test)]
pub(crate) fn j_three_halves(x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos())
}


#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn j(nu: f64, x: f64) -> f64 {
        bessel_j(BesselOrder::new(nu).unwrap(), x).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(j(0.0, 0.0), 1.0);
        assert_eq!(j(2.5, 0.0), 0.0);
        assert_abs_diff_eq!(j(1.5, PI), 2f64.sqrt() / PI, epsilon = 1e-14);
        assert_abs_diff_eq!(j(0.5, FRAC_PI_2), 2.0 / PI, epsilon = 1e-14);
        // Tabulated: J0(1), J1(10), J0(100)
        assert_abs_diff_eq!(j(0.0, 1.0), 0.765_197_686_557_966_6, epsilon = 1e-14);
        assert_abs_diff_eq!(j(1.0, 10.0), 0.043_472_746_168_861_44, epsilon = 1e-12);
        assert_abs_diff_eq!(j(0.0, 100.0), 0.019_985_850_304_223_122, epsilon = 1e-12);
    }

    #[test]
    fn half_integer_orders_match_closed_forms_across_regimes() {
        let mut x = 0.01;
        while x < 1e4 {
            assert_abs_diff_eq!(j(0.5, x), j_half(x), epsilon = 1e-12);
            assert_abs_diff_eq!(j(1.5, x), j_three_halves(x), epsilon = 1e-12);
            x *= 1.07;
        }
    }

    #[test]
    fn regime_boundaries_agree() {
        for &nu in &[0.0, 0.3, 1.0, 2.5, 4.7, 8.0] {
            for &x in &[SERIES_MAX_X, 25.0 + 0.5 * nu * nu] {
                let lo = j(nu, x * (1.0 - 1e-12));
                let hi = j(nu, x * (1.0 + 1e-12));
                assert_abs_diff_eq!(lo, hi, epsilon = 1e-11);
                let m = miller(nu, x).unwrap();
                let other = if x == SERIES_MAX_X {
                    ascending_series(nu, x).unwrap()
                } else {
                    hankel(nu, x).unwrap()
                };
                assert_abs_diff_eq!(m, other, epsilon = 5e-11);
            }
        }
    }

    #[test]
    fn recurrence_holds() {
        for &nu in &[1.0, 1.25, 2.5, 3.7, 5.0] {
            let mut x = 0.1;
            while x <= 50.0 {
                let lhs = j(nu - 1.0, x) + j(nu + 1.0, x);
                let rhs = 2.0 * nu / x * j(nu, x);
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-9);
                x += 0.37;
            }
        }
    }

    #[test]
    fn normalized_limits_and_zeros() {
        assert_eq!(normalized_bessel(1.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(normalized_bessel(0.5, PI).unwrap(), 0.0, epsilon = 1e-15);
        let direct = 2f64.powf(1.5) * gamma_fn(2.5).unwrap() * j(1.5, 2.0) / 2f64.powf(1.5);
        assert_abs_diff_eq!(normalized_bessel(1.5, 2.0).unwrap(), direct, epsilon = 1e-14);
        // 𝒥_{-1/2}(x) = cos x
        assert_abs_diff_eq!(normalized_bessel(-0.5, 3.0).unwrap(), 3f64.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(normalized_bessel(-0.5, 30.0).unwrap(), 30f64.cos(), epsilon = 1e-12);
        assert!(normalized_bessel(-1.0, 1.0).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(BesselOrder::new(-0.1).is_err());
        assert!(bessel_j(BesselOrder::new(1.0).unwrap(), -1.0).is_err());
    }
}
