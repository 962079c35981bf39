//! Direct evaluation of the generalized Mathieu series
//! `S_mu(r) = sum_{n>=1} 2n / (n^2 + r^2)^(mu + 1)` and its derivatives.
//!
//! Summation is exact up to an index N, after which the tail is replaced by its
//! Euler-Maclaurin expansion (integral, half term and Bernoulli corrections
//! through B12). The derivatives needed for the corrections come from a
//! truncated Taylor series of the summand, so the same machinery serves the
//! μ-derivatives `(-1)^m sum 2n log^m(n^2+r^2) / (n^2+r^2)^(mu+1)`.
//! The remainder bound |B12|/12! ∫|f^(12)| is rigorous once the summand's
//! high derivatives have settled into constant sign, which the starting index
//! N ≥ 24 + 4r guarantees.

mod jet;

use serde::{Deserialize, Serialize};

use self::jet::Jet;
use crate::error::{domain, Error, Result};
use crate::specfun::{zeta_with_err, Accuracy};
use crate::summation::CompensatedSum;

/// A (μ, r) evaluation coordinate with μ > 0 and r ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MathieuPoint {
    pub mu: f64,
    pub r: f64,
}

impl MathieuPoint {
    pub fn new(mu: f64, r: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(domain(format!("Mathieu series requires mu > 0, got {mu}")));
        }
        if !(r >= 0.0) || !r.is_finite() {
            return Err(domain(format!("Mathieu series requires r >= 0, got {r}")));
        }
        Ok(Self { mu, r })
    }
}

/// Which representation produced an [`Evaluation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectSum,
    BesselIntegral,
    Emersleben,
    LaplaceKapteyn,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DirectSum => "direct_sum",
            Method::BesselIntegral => "bessel_integral",
            Method::Emersleben => "emersleben",
            Method::LaplaceKapteyn => "laplace_kapteyn",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// A computed value with its absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub err_bound: f64,
    pub method: Method,
    /// Terms summed or integrand evaluations spent.
    pub terms_or_nodes: u64,
    /// False when a work cap was hit before the requested tolerance.
    pub converged: bool,
}

impl Evaluation {
    pub(crate) fn new(value: f64, err_bound: f64, method: Method, work: u64) -> Self {
        Self { value, err_bound, method, terms_or_nodes: work, converged: true }
    }
}

/// B_{2k} / (2k) for k = 1..=6.
const BERNOULLI_OVER_INDEX: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
];

const MAX_TERMS: usize = 1 << 27;

#[derive(Debug, Clone, Copy)]
enum Summand {
    /// 2n / (n²+r²)^{μ+1}
    Series { mu: f64 },
    /// 2n ln^m(n²+r²) / (n²+r²)^{μ+1}
    LogPower { mu: f64, m: u32 },
}

impl Summand {
    fn eval(self, n: f64, r: f64) -> f64 {
        let u = n * n + r * r;
        match self {
            Summand::Series { mu } => 2.0 * n * u.powf(-mu - 1.0),
            Summand::LogPower { mu, m } => 2.0 * n * u.ln().powi(m as i32) * u.powf(-mu - 1.0),
        }
    }

    fn jet(self, n: f64, r: f64) -> Jet {
        let x = Jet::variable(n);
        let mut u = x.mul(&x);
        u.0[0] += r * r;
        let base = x.scale(2.0).mul(&u.powf(-self.mu() - 1.0));
        match self {
            Summand::Series { .. } => base,
            Summand::LogPower { m, .. } => base.mul(&u.ln().powi(m)),
        }
    }

    /// ∫_N^∞ of the summand, in closed form.
    fn tail_integral(self, n: f64, r: f64) -> f64 {
        let u0 = n * n + r * r;
        match self {
            Summand::Series { mu } => u0.powf(-mu) / mu,
            Summand::LogPower { mu, m } => {
                // ∫_{v0}^∞ v^m e^{-μ v} dv = m! e^{-y} Σ_{k≤m} y^k/k! / μ^{m+1}, y = μ v0
                let y = mu * u0.ln();
                let mut term = 1.0;
                let mut acc = 1.0;
                let mut fact = 1.0;
                for k in 1..=m {
                    term *= y / k as f64;
                    acc += term;
                    fact *= k as f64;
                }
                fact * (-y).exp() * acc / mu.powi(m as i32 + 1)
            }
        }
    }

    fn mu(self) -> f64 {
        match self {
            Summand::Series { mu } | Summand::LogPower { mu, .. } => mu,
        }
    }

    fn min_start(self, r: f64) -> usize {
        let extra = match self {
            Summand::Series { .. } => 0,
            Summand::LogPower { m, .. } => 8 * m as usize,
        };
        24 + (4.0 * r).ceil() as usize + extra
    }
}

struct EmSum {
    value: f64,
    remainder: f64,
    rounding: f64,
    terms: usize,
}

impl EmSum {
    fn err(&self) -> f64 {
        self.remainder + self.rounding
    }
}

fn em_at(kind: Summand, r: f64, n_cut: usize) -> EmSum {
    let mut acc = CompensatedSum::new();
    for n in 1..n_cut {
        acc.add(kind.eval(n as f64, r));
    }
    let nf = n_cut as f64;
    let jet = kind.jet(nf, r);
    let integral = kind.tail_integral(nf, r);
    acc.add(integral);
    acc.add(0.5 * jet.0[0]);
    let mut last = 0.0;
    for (k, &b) in BERNOULLI_OVER_INDEX.iter().enumerate() {
        last = b * jet.0[2 * k + 1];
        acc.add(-last);
    }
    let value = acc.value();
    EmSum {
        value,
        // the last correction's magnitude equals |B12|/12! |f^(11)(N)|; doubled
        remainder: 2.0 * last.abs(),
        rounding: 4.0 * f64::EPSILON * acc.abs_total(),
        terms: n_cut - 1,
    }
}

fn em_sum(kind: Summand, r: f64, accept: impl Fn(&EmSum) -> bool) -> Result<EmSum> {
    let mut n_cut = kind.min_start(r);
    loop {
        let s = em_at(kind, r, n_cut);
        if accept(&s) {
            return Ok(s);
        }
        if n_cut > MAX_TERMS {
            return Err(Error::NonConvergence(format!(
                "Euler-Maclaurin remainder {:e} not reduced below target after {} terms",
                s.remainder, s.terms
            )));
        }
        n_cut *= 2;
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be > 0, got {tol}")));
    }
    Ok(())
}

/// S_μ(r) with absolute error at most `tol`.
///
/// At r = 0 the series collapses to 2ζ(2μ+1), which is returned directly
/// with the [`Method::ClosedForm`] tag.
pub fn mathieu_s(p: MathieuPoint, tol: f64) -> Result<Evaluation> {
    check_tol(tol)?;
    if p.r == 0.0 {
        let (z, err) = zeta_with_err(2.0 * p.mu + 1.0)?;
        Accuracy::new(tol, 2.0 * err)?;
        return Ok(Evaluation::new(2.0 * z, 2.0 * err, Method::ClosedForm, 0));
    }
    mathieu_s_direct(p, tol)
}

/// S_μ(r) by summation even at r = 0 (no closed-form shortcut).
pub fn mathieu_s_direct(p: MathieuPoint, tol: f64) -> Result<Evaluation> {
    check_tol(tol)?;
    let s = em_sum(Summand::Series { mu: p.mu }, p.r, |s| s.remainder <= 0.5 * tol)?;
    let acc = Accuracy::new(tol, s.err())?;
    Ok(Evaluation::new(s.value, acc.achieved, Method::DirectSum, s.terms as u64))
}

/// S_μ(r) to a relative accuracy `rel` (plus rounding), for callers that do
/// not know the magnitude in advance.
pub fn mathieu_s_rel(p: MathieuPoint, rel: f64) -> Result<Evaluation> {
    check_tol(rel)?;
    let s = em_sum(Summand::Series { mu: p.mu }, p.r, |s| s.remainder <= rel * s.value.abs())?;
    Ok(Evaluation::new(s.value, s.err(), Method::DirectSum, s.terms as u64))
}

/// Upper bound on the tail Σ_{n>N} 2n/(n²+r²)^{μ+1} from the integral test.
///
/// When the summand is still increasing at N (N < r/√(2μ+1)), the terms up to
/// the first decreasing index are added explicitly before the integral.
pub fn tail_bound(p: MathieuPoint, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(domain("tail_bound requires N >= 1"));
    }
    let peak = p.r / (2.0 * p.mu + 1.0).sqrt();
    let mut start = n;
    let mut explicit = 0.0;
    let kind = Summand::Series { mu: p.mu };
    // Scan at most ⌈r⌉ steps forward to the first decreasing index.
    while (start as f64) < peak {
        start += 1;
        explicit += kind.eval(start as f64, p.r);
    }
    Ok(explicit + kind.tail_integral(start as f64, p.r))
}

/// ∂S_μ/∂r = −2r(μ+1) S_{μ+1}(r).
pub fn mathieu_s_deriv_r(p: MathieuPoint, tol: f64) -> Result<Evaluation> {
    check_tol(tol)?;
    if p.r == 0.0 {
        return Ok(Evaluation::new(0.0, 0.0, Method::ClosedForm, 0));
    }
    let scale = 2.0 * p.r * (p.mu + 1.0);
    let inner = mathieu_s(MathieuPoint::new(p.mu + 1.0, p.r)?, tol / scale)?;
    Ok(Evaluation {
        value: -scale * inner.value,
        err_bound: scale * inner.err_bound,
        ..inner
    })
}

/// ∂^m S_μ(r)/∂μ^m by term-wise differentiation.
pub fn mathieu_s_deriv_mu(p: MathieuPoint, m: u32, tol: f64) -> Result<Evaluation> {
    check_tol(tol)?;
    if m < 1 {
        return Err(domain("derivative order m must be >= 1"));
    }
    let s = em_sum(Summand::LogPower { mu: p.mu, m }, p.r, |s| s.remainder <= 0.5 * tol)?;
    let acc = Accuracy::new(tol, s.err())?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(Evaluation::new(sign * s.value, acc.achieved, Method::DirectSum, s.terms as u64))
}

/// Relative-accuracy variant of [`mathieu_s_deriv_mu`].
pub fn mathieu_s_deriv_mu_rel(p: MathieuPoint, m: u32, rel: f64) -> Result<Evaluation> {
    check_tol(rel)?;
    if m < 1 {
        return Err(domain("derivative order m must be >= 1"));
    }
    let s = em_sum(Summand::LogPower { mu: p.mu, m }, p.r, |s| s.remainder <= rel * s.value.abs())?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(Evaluation::new(sign * s.value, s.err(), Method::DirectSum, s.terms as u64))
}
