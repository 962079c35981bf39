use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::mathieu::{mathieu_s_rel, MathieuPoint};
use crate::quadrature::{integrate_semiinf, upper_gamma_bound, QuadratureProblem};
use crate::specfun::{gamma_fn, zeta_fn};

/// Quadrature left side against a closed-form right side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub mu: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    /// Error estimate of the quadrature side.
    pub err_estimate: f64,
}

impl IdentityReport {
    fn new(name: &str, mu: f64, lhs: f64, rhs: f64, err_estimate: f64) -> Self {
        let abs_diff = (lhs - rhs).abs();
        Self {
            name: name.to_string(),
            mu,
            lhs,
            rhs,
            abs_diff,
            rel_diff: abs_diff / rhs.abs(),
            err_estimate,
        }
    }
}

/// `∫₀^∞ x^μ / (e^x − 1) dx = Γ(μ+1) ζ(μ+1)`.
pub fn identity_bose(mu: f64, tol: f64) -> Result<IdentityReport> {
    if !(mu > 0.0) {
        return Err(domain(format!("identity_bose needs mu > 0, got {mu}")));
    }
    let f = move |x: f64| x.powf(mu - 1.0) * (x / x.exp_m1());
    let tail = move |t: f64| upper_gamma_bound(mu + 1.0, t) / -(-t).exp_m1();
    let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol)?.with_tail(tail);
    let q = integrate_semiinf(&prob)?.require_converged("Bose integral")?;
    let rhs = gamma_fn(mu + 1.0)? * zeta_fn(mu + 1.0)?;
    Ok(IdentityReport::new("bose", mu, q.value, rhs, q.err_estimate))
}

/// `∫₀^∞ t^{μ−1} / (e^t − 1)² dt = Γ(μ) (ζ(μ−1) − ζ(μ))` for μ > 2.
pub fn identity_squared_bose(mu: f64, tol: f64) -> Result<IdentityReport> {
    if !(mu > 2.0) {
        return Err(domain(format!("identity_squared_bose needs mu > 2, got {mu}")));
    }
    let f = move |t: f64| {
        let q = t / t.exp_m1();
        t.powf(mu - 3.0) * q * q
    };
    // 1/(e^t − 1)² ≤ e^{−2t} / (1 − e^{−T})² on [T, ∞)
    let tail = move |t: f64| {
        upper_gamma_bound(mu, 2.0 * t) / 2f64.powf(mu) / (-(-t).exp_m1()).powi(2)
    };
    let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol)?.with_tail(tail);
    let q = integrate_semiinf(&prob)?.require_converged("squared Bose integral")?;
    let rhs = gamma_fn(mu)? * (zeta_fn(mu - 1.0)? - zeta_fn(mu)?);
    Ok(IdentityReport::new("squared_bose", mu, q.value, rhs, q.err_estimate))
}

/// `∫₀^∞ S_μ(r) dr = √π Γ(μ+1/2) ζ(2μ) / Γ(μ+1)` for μ > 1/2.
///
/// The slowly decaying part `1/(μ r^{2μ})` is subtracted on [1, ∞) and
/// integrated exactly, so the quadrature sees an `O(r^{−2μ−1})` integrand.
pub fn identity_integral_of_s(mu: f64, tol: f64) -> Result<IdentityReport> {
    if !(mu > 0.5) {
        return Err(domain(format!(
            "identity_integral_of_s needs mu > 1/2 (zeta(2 mu) diverges otherwise), got {mu}"
        )));
    }
    let inner_rel = 1e-13;
    let f = move |r: f64| {
        let s = MathieuPoint::new(mu, r)
            .and_then(|p| mathieu_s_rel(p, inner_rel))
            .map_or(f64::NAN, |e| e.value);
        if r >= 1.0 {
            s - 1.0 / (mu * r.powf(2.0 * mu))
        } else {
            s
        }
    };
    // |Σ f(n) − ∫₀^∞ f| ≤ max f for the unimodal summand, which gives
    // |integrand| ≤ A r^{−2μ−1}.
    let a = 2.0 / (2.0 * mu + 1.0).sqrt() * ((2.0 * mu + 1.0) / (2.0 * mu + 2.0)).powf(mu + 1.0);
    let tail = move |t: f64| a / (2.0 * mu * t.powf(2.0 * mu));
    let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol)?
        .with_tail(tail)
        .with_singular_points(vec![1.0])?;
    let q = integrate_semiinf(&prob)?.require_converged("integral of S_mu")?;
    // the quadrature only sees relative 1e-13 noise per node; fold it in
    let lhs = q.value + 1.0 / (mu * (2.0 * mu - 1.0));
    let rhs = PI.sqrt() * gamma_fn(mu + 0.5)? * zeta_fn(2.0 * mu)? / gamma_fn(mu + 1.0)?;
    Ok(IdentityReport::new("integral_of_s", mu, lhs, rhs, q.err_estimate + inner_rel * lhs.abs()))
}
