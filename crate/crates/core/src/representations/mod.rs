//! Integral representations of `S_mu(r)` and `zeta(2 mu + 1)`, the Kapteyn
//! kernels behind them, and closed-form identity checks.

mod identities;
mod kapteyn;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::mathieu::{Evaluation, MathieuPoint, Method};
use crate::quadrature::{integrate_semiinf, upper_gamma_bound, QuadratureProblem};
use crate::specfun::{gamma_fn, normalized_bessel};

pub use identities::{identity_bose, identity_integral_of_s, identity_squared_bose, IdentityReport};
pub use kapteyn::{
    apery_via_kernel, kapteyn_g, kernel_K, kernel_K_mu, s_via_laplace, zeta_via_kapteyn,
    zeta_via_kapteyn_with, AperyReport, KernelConfig, ZetaMode, ABEL_RADII,
};

/// Prefactors of the Bessel-kernel and Kapteyn representations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepresentationConstants {
    /// √π / ((2r)^{μ−1/2} Γ(μ+1)).
    #[serde(rename = "C_mu_of_r")]
    pub c_mu_of_r: f64,
    /// √π / (2^{μ−1/2} Γ(μ+1)).
    pub c_mu: f64,
    /// √π / (2^{2μ−1} Γ(μ+1/2) Γ(μ+1)).
    pub c_mu_1: f64,
}

impl RepresentationConstants {
    pub fn new(mu: f64, r: f64) -> Result<Self> {
        if !(mu > 0.0) || !(r > 0.0) || !mu.is_finite() || !r.is_finite() {
            return Err(domain(format!("constants need mu > 0 and r > 0, got ({mu}, {r})")));
        }
        let g1 = gamma_fn(mu + 1.0)?;
        Ok(Self {
            c_mu_of_r: PI.sqrt() / ((2.0 * r).powf(mu - 0.5) * g1),
            c_mu: c_mu(mu)?,
            c_mu_1: c_mu_1(mu)?,
        })
    }
}

pub(crate) fn c_mu(mu: f64) -> Result<f64> {
    Ok(PI.sqrt() / (2f64.powf(mu - 0.5) * gamma_fn(mu + 1.0)?))
}

pub(crate) fn c_mu_1(mu: f64) -> Result<f64> {
    Ok(PI.sqrt() / (2f64.powf(2.0 * mu - 1.0) * gamma_fn(mu + 0.5)? * gamma_fn(mu + 1.0)?))
}

fn positive_r(p: &MathieuPoint) -> Result<()> {
    if p.r > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("this representation needs r > 0, got {}", p.r)))
    }
}

/// `S(r) = (1/r) ∫₀^∞ x sin(rx) / (e^x − 1) dx`, the μ = 1 series.
pub fn s_via_emersleben(r: f64, tol: f64) -> Result<Evaluation> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(domain(format!("s_via_emersleben needs r > 0, got {r}")));
    }
    let f = move |x: f64| (r * x).sin() * x / x.exp_m1();
    let tail = |t: f64| (t + 1.0) * (-t).exp() / -(-t).exp_m1();
    let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol * r)?.with_tail(tail);
    let q = integrate_semiinf(&prob)?.require_converged("Emersleben integral")?;
    Ok(Evaluation::new(q.value / r, q.err_estimate / r, Method::Emersleben, q.panels * 15))
}

/// `S_μ(r) = C_μ(r) ∫₀^∞ x^{μ+1/2} J_{μ−1/2}(rx) / (e^x − 1) dx`.
///
/// Evaluated in the equivalent form `c_{μ,1} ∫ x^{2μ} 𝒥_{μ−1/2}(rx) / (e^x − 1) dx`,
/// which has no r-dependent prefactor and is regular at x = 0 for μ ≥ 1/2.
pub fn s_via_bessel_integral(p: MathieuPoint, tol: f64) -> Result<Evaluation> {
    positive_r(&p)?;
    let MathieuPoint { mu, r } = p;
    let c = c_mu_1(mu)?;
    let order = mu - 0.5;
    let f = move |x: f64| {
        let bose = x.powf(2.0 * mu - 1.0) * (x / x.exp_m1());
        // |𝒥| ≤ 1 for order ≥ −1/2, so a failure here is out of the supported range
        bose * normalized_bessel(order, r * x).unwrap_or(f64::NAN)
    };
    let tail = move |t: f64| upper_gamma_bound(2.0 * mu + 1.0, t) / -(-t).exp_m1();
    let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol / c)?.with_tail(tail);
    let q = integrate_semiinf(&prob)?.require_converged("Bessel-kernel integral")?;
    Ok(Evaluation::new(c * q.value, c * q.err_estimate, Method::BesselIntegral, q.panels * 15))
}
