use std::f64::consts::PI;
use std::sync::Mutex;

use serde::Serialize;

use super::{c_mu, positive_r};
use crate::error::{domain, Error, Result};
use crate::mathieu::{Evaluation, MathieuPoint, Method};
use crate::quadrature::{
    choose_truncation, integrate_finite, integrate_periodic_chunks, integrate_semiinf,
    upper_gamma_bound, QuadratureProblem,
};
use crate::specfun::{bessel_j, clausen2, log_sine, zeta_fn, BesselOrder};
use crate::summation::CompensatedSum;

const TWO_PI: f64 = 2.0 * PI;

/// Settings for the Kapteyn series `g_μ(t) = Σ J_{μ+1/2}(nt) / n^{μ−1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelConfig {
    mu: f64,
    pub kapteyn_terms_max: u64,
    /// Smooth-window averaging of the partial sums.
    pub accel: bool,
}

impl KernelConfig {
    pub const DEFAULT_TERMS_MAX: u64 = 100_000;

    pub fn new(mu: f64) -> Result<Self> {
        if !(mu >= 1.0) || !mu.is_finite() {
            return Err(Error::Hypothesis(format!("Kapteyn kernels need mu >= 1, got {mu}")));
        }
        Ok(Self { mu, kapteyn_terms_max: Self::DEFAULT_TERMS_MAX, accel: true })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn with_terms_max(mut self, n: u64) -> Self {
        self.kapteyn_terms_max = n.max(64);
        self
    }

    pub fn with_accel(mut self, accel: bool) -> Self {
        self.accel = accel;
        self
    }
}

/// Σ_{n>N} |J_ν(nt)| / n^{μ−1/2}, from |J_ν(x)| ≤ √(2/(πx)) (valid for ν ≥ 1/2).
fn plain_tail(mu: f64, t: f64, n: usize) -> f64 {
    if mu > 1.0 {
        (2.0 / (PI * t)).sqrt() * (n as f64).powf(1.0 - mu) / (mu - 1.0)
    } else {
        f64::INFINITY
    }
}

fn bump(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        0.0
    } else {
        (-1.0 / (s * (1.0 - s))).exp()
    }
}

/// Partial sums averaged against a smooth bump over `terms`, written as the
/// tapered sum Σ a_j τ(j) with τ(j) = share of window weight at or after j.
fn windowed(terms: &[f64]) -> f64 {
    let len = terms.len();
    let w: Vec<f64> = (0..len).map(|i| bump((i as f64 + 0.5) / len as f64)).collect();
    let total: f64 = w.iter().sum();
    let mut after = total;
    let mut acc = CompensatedSum::new();
    for (a, wi) in terms.iter().zip(&w) {
        acc.add(a * after / total);
        after -= wi;
    }
    acc.value()
}

/// Distance from t to the nearest multiple of 2π.
fn distance_to_lattice(t: f64) -> f64 {
    (t - TWO_PI * (t / TWO_PI).round()).abs()
}

/// The Kapteyn series `g_μ(t) = Σ_{n≥1} J_{μ+1/2}(nt) / n^{μ−1/2}`.
///
/// Terms decay only like n^{−μ}. With `accel` the direct sum is taken while
/// the Bessel factors are pre-asymptotic, and the oscillating remainder is
/// handled by averaging partial sums over a window of at most c/θ terms, θ
/// being the distance from t to 2πℤ. The error estimate compares full and
/// half windows. `converged` is false if the term cap stops the series first.
pub fn kapteyn_g(cfg: KernelConfig, t: f64, tol: f64) -> Result<Evaluation> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("kapteyn_g needs t > 0, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let mu = cfg.mu;
    let nu = mu + 0.5;
    let power = mu - 0.5;
    let order = BesselOrder::new(nu)?;
    let cap = cfg.kapteyn_terms_max as usize;
    let term = |n: usize| -> Result<f64> {
        let nf = n as f64;
        Ok(bessel_j(order, nf * t)? / nf.powf(power))
    };

    if !cfg.accel {
        let mut sum = CompensatedSum::new();
        let mut n = 0;
        while n < cap {
            n += 1;
            sum.add(term(n)?);
            if n % 64 == 0 && plain_tail(mu, t, n) <= 0.5 * tol {
                break;
            }
        }
        let err = plain_tail(mu, t, n) + 4.0 * f64::EPSILON * sum.abs_total();
        let mut e = Evaluation::new(sum.value(), err, Method::LaplaceKapteyn, n as u64);
        e.converged = err <= tol;
        return Ok(e);
    }

    let n0 = (((25.0 + 0.5 * nu * nu) / t).ceil() as usize).max(16).min(cap / 2);
    let c = tol.ln().powi(2).clamp(50.0, 1600.0);
    let want = (c / distance_to_lattice(t)).ceil();
    let longest = if want <= (cap - n0) as f64 { (want as usize).max(64) } else { cap - n0 };

    let mut head = CompensatedSum::new();
    for n in 1..=n0 {
        head.add(term(n)?);
    }
    // c/θ is a worst case; grow the window by doubling and stop once two
    // successive halvings agree
    let mut window: Vec<f64> = Vec::with_capacity(longest.min(1 << 12));
    let mut len = 64.min(longest);
    let mut prev_diff = f64::INFINITY;
    let (full, half) = loop {
        while window.len() < len {
            window.push(term(n0 + window.len() + 1)?);
        }
        let full = head.value() + windowed(&window[..len]);
        let half = head.value() + windowed(&window[..len / 2]);
        let diff = (full - half).abs();
        if len == longest || (diff <= tol && prev_diff <= 8.0 * tol) {
            break (full, half);
        }
        prev_diff = diff;
        len = (2 * len).min(longest);
    };
    let abs_total = head.abs_total() + window[..len].iter().map(|a| a.abs()).sum::<f64>();
    let rounding = 4.0 * f64::EPSILON * abs_total;
    let mut value = full;
    let mut err = (full - half).abs() + rounding;

    // For μ > 1 the plain partial sum may carry the better certificate.
    let plain = plain_tail(mu, t, n0 + len) + rounding;
    if plain < err {
        value = head.value() + window[..len].iter().sum::<f64>();
        err = plain;
    }
    let mut e = Evaluation::new(value, err, Method::LaplaceKapteyn, (n0 + len) as u64);
    e.converged = err <= tol;
    Ok(e)
}

/// `K_μ(t) = t^{μ+1/2} g_μ(t)`.
#[allow(non_snake_case)]
pub fn kernel_K_mu(cfg: KernelConfig, t: f64, tol: f64) -> Result<Evaluation> {
    if !(t > 0.0) {
        return Err(domain(format!("kernel_K_mu needs t > 0, got {t}")));
    }
    let scale = t.powf(cfg.mu + 0.5);
    let g = kapteyn_g(cfg, t, tol / scale)?;
    let mut e = Evaluation::new(g.value * scale, g.err_bound * scale, g.method, g.terms_or_nodes);
    e.converged = g.converged;
    Ok(e)
}

/// `K(t) = Cl₂(t) + t ln(2|sin(t/2)|)`, the μ = 1 kernel in closed form.
///
/// Logarithmically singular at nonzero multiples of 2π.
#[allow(non_snake_case)]
pub fn kernel_K(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("kernel_K needs t > 0, got {t}")));
    }
    let k = (t / TWO_PI).round();
    if k >= 1.0 && (t - TWO_PI * k).abs() <= 4.0 * f64::EPSILON * t {
        return Err(Error::Singularity(format!("kernel_K is singular at t = 2π·{k}")));
    }
    Ok(clausen2(t) - t * log_sine(t))
}

/// ∫ over one period of |ln(2|sin(t/2)|)| = 4 Cl₂(π/3).
const LOG_SINE_L1: f64 = 4.059_766_425_638_614;
/// max Cl₂ = Cl₂(π/3).
const CLAUSEN_MAX: f64 = 1.014_941_606_409_653_6;

/// Bound on ∫_T^∞ e^{−rt} |K(t)| dt, one period at a time from the period containing T.
fn laplace_tail_mu1(r: f64, t: f64) -> f64 {
    let m = (t / TWO_PI).floor();
    let q = (-TWO_PI * r).exp();
    let one_minus_q = -(-TWO_PI * r).exp_m1();
    let qm = q.powf(m);
    // Σ_{k≥m} q^k [2π CLAUSEN_MAX + 2π(k+1) LOG_SINE_L1]
    let geometric = qm / one_minus_q;
    let weighted = qm * ((m + 1.0) / one_minus_q + q / (one_minus_q * one_minus_q));
    TWO_PI * (CLAUSEN_MAX * geometric + LOG_SINE_L1 * weighted)
}

fn lattice_points(upto: f64) -> Vec<f64> {
    let n = (upto / TWO_PI).ceil() as usize;
    (1..=n).map(|k| TWO_PI * k as f64).collect()
}

/// Panel budget when every node is a Kapteyn sum.
const KAPTEYN_PANELS: usize = 20_000;

#[derive(Default)]
struct KernelStats {
    /// (t, kernel error) at every node the quadrature visited.
    nodes: Vec<(f64, f64)>,
    terms: u64,
}

impl KernelStats {
    /// ∫ e^{−rt} err(t) dt over the visited nodes, taking the larger error of
    /// each neighbouring pair on the gap between them.
    fn weighted_error(mut self, r: f64) -> f64 {
        self.nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        self.nodes
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) * w[0].1.max(w[1].1) * (-r * w[0].0).exp())
            .sum()
    }
}

/// `S_μ(r) = c_μ ∫₀^∞ e^{−rt} K_μ(t) dt` for μ ≥ 1 (for μ = 1, c₁K₁ = K).
///
/// The μ = 1 case uses the closed-form kernel. Otherwise every node sums a
/// Kapteyn series and the kernel errors, integrated over the visited nodes, are
/// added to the quadrature estimate; `converged` is false when that pushes the
/// estimate past tol.
pub fn s_via_laplace(p: MathieuPoint, tol: f64) -> Result<Evaluation> {
    positive_r(&p)?;
    let MathieuPoint { mu, r } = p;
    let cfg = KernelConfig::new(mu)?;
    if mu == 1.0 {
        let f = move |t: f64| (-r * t).exp() * kernel_K(t).unwrap_or(f64::NAN);
        let tail = move |t: f64| laplace_tail_mu1(r, t);
        let cut = choose_truncation(0.0, 0.5 * tol, tail)
            .ok_or_else(|| Error::NonConvergence("Laplace tail too heavy".into()))?;
        let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol)?
            .with_tail(tail)
            .with_singular_points(lattice_points(cut))?;
        let q = integrate_semiinf(&prob)?.require_converged("Laplace integral")?;
        return Ok(Evaluation::new(q.value, q.err_estimate, Method::LaplaceKapteyn, q.panels * 15));
    }

    let c = c_mu(mu)?;
    // kernel noise has to sit well below what the Kronrod estimate resolves
    let kernel_tol = 1e-3 * tol * r / c;
    let stats = Mutex::new(KernelStats::default());
    let f = |t: f64| match kernel_K_mu(cfg, t, kernel_tol) {
        Ok(k) => {
            let mut s = stats.lock().unwrap();
            s.nodes.push((t, k.err_bound));
            s.terms += k.terms_or_nodes;
            c * (-r * t).exp() * k.value
        }
        Err(_) => f64::NAN,
    };
    // |K_μ(t)| ≤ √(2/π) ζ(μ) t^μ
    let envelope = c * (2.0 / PI).sqrt() * zeta_fn(mu)?;
    let tail = move |t: f64| envelope * upper_gamma_bound(mu + 1.0, r * t) / r.powf(mu + 1.0);
    let cut = choose_truncation(0.0, 0.25 * tol, tail)
        .ok_or_else(|| Error::NonConvergence("Laplace tail too heavy".into()))?;
    let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, 0.5 * tol)?
        .with_tail(tail)
        .with_singular_points(lattice_points(cut))?
        .with_max_panels(KAPTEYN_PANELS);
    let q = integrate_semiinf(&prob)?.require_converged("Laplace integral")?;
    drop(prob);
    let s = stats.into_inner().unwrap();
    let terms = s.terms;
    let err = q.err_estimate + c * s.weighted_error(r);
    let mut e = Evaluation::new(q.value, err, Method::LaplaceKapteyn, terms);
    e.converged = err <= tol;
    Ok(e)
}

/// Damping parameters r for the Abel limit of the μ = 1 integral.
pub const ABEL_RADII: [f64; 3] = [0.1, 0.05, 0.025];
/// For μ > 1 every node is a Kapteyn sum and small r means long ranges, so
/// the radii stay larger and the extrapolation remainder is larger too.
const ABEL_RADII_GENERAL: [f64; 3] = [0.2, 0.1, 0.05];

/// How the undamped integral ∫₀^∞ K_μ(t) dt is given a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMode {
    /// lim_{r→0⁺} ∫ e^{−rt} K_μ(t) dt, Richardson-extrapolated in r².
    Abel,
    /// Σ_k ∫ over [2πk, 2π(k+1)], Euler-accelerated.
    Chunked,
}

/// ζ(2μ+1) = (c_μ/2) ∫₀^∞ K_μ(t) dt with the integral read as an Abel limit.
pub fn zeta_via_kapteyn(mu: f64, tol: f64) -> Result<Evaluation> {
    zeta_via_kapteyn_with(mu, ZetaMode::Abel, tol)
}

pub fn zeta_via_kapteyn_with(mu: f64, mode: ZetaMode, tol: f64) -> Result<Evaluation> {
    let cfg = KernelConfig::new(mu)?;
    match mode {
        ZetaMode::Abel => abel_limit(mu, tol),
        ZetaMode::Chunked => chunked(cfg, tol),
    }
}

/// S_μ(r) is even and analytic in r for |r| < 1 with S_μ(0) = 2ζ(2μ+1), so
/// damped integrals at a few radii are extrapolated to r = 0 as a polynomial in r².
fn abel_limit(mu: f64, tol: f64) -> Result<Evaluation> {
    let radii: &[f64] = if mu == 1.0 { &ABEL_RADII } else { &ABEL_RADII_GENERAL };
    let x: Vec<f64> = radii.iter().map(|r| r * r).collect();
    // Lagrange weights for evaluation at x = 0
    let w: Vec<f64> = (0..x.len())
        .map(|i| (0..x.len()).filter(|&j| j != i).map(|j| x[j] / (x[j] - x[i])).product())
        .collect();
    let amplification: f64 = w.iter().map(|v| v.abs()).sum();
    let mut value = CompensatedSum::new();
    let mut err = 0.0;
    let mut work = 0;
    let mut converged = true;
    for (&r, wi) in radii.iter().zip(&w) {
        let e = s_via_laplace(MathieuPoint::new(mu, r)?, 0.25 * tol / amplification)?;
        value.add(wi * e.value);
        err += wi.abs() * e.err_bound;
        work += e.terms_or_nodes;
        converged &= e.converged;
    }
    let err = 0.5 * (err + extrapolation_remainder(mu, &x, &w)?);
    let mut e = Evaluation::new(0.5 * value.value(), err, Method::LaplaceKapteyn, work);
    e.converged = converged && err <= tol;
    Ok(e)
}

/// Bound on what the extrapolation leaves behind, from the Taylor series
/// S_μ(r) = Σ_k (−1)^k C(μ+k, k) 2ζ(2μ+2k+1) r^{2k}: powers below the node
/// count are reproduced exactly, the r^{2k} term beyond survives with weight
/// |Σ_i w_i x_i^k|.
fn extrapolation_remainder(mu: f64, x: &[f64], w: &[f64]) -> Result<f64> {
    let m = x.len();
    let z = 2.0 * zeta_fn(2.0 * mu + 2.0 * m as f64 + 1.0)?;
    let mut binom = 1.0;
    for j in 1..=m {
        binom *= (mu + j as f64) / j as f64;
    }
    let mut total = 0.0;
    for k in m..400 {
        let residual: f64 = x.iter().zip(w).map(|(xi, wi)| wi * xi.powi(k as i32)).sum();
        let term = residual.abs() * z * binom;
        total += term;
        if term < 1e-18 * total {
            break;
        }
        binom *= (mu + k as f64 + 1.0) / (k as f64 + 1.0);
    }
    Ok(total)
}

fn chunked(cfg: KernelConfig, tol: f64) -> Result<Evaluation> {
    let mu = cfg.mu;
    let q = if mu == 1.0 {
        let f = |t: f64| 0.5 * kernel_K(t).unwrap_or(f64::NAN);
        let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol)?
            .with_period(TWO_PI)?
            .with_singular_points(vec![0.0, TWO_PI])?;
        integrate_periodic_chunks(&prob)?
    } else {
        let half_c = 0.5 * c_mu(mu)?;
        let f = move |t: f64| {
            kernel_K_mu(cfg, t, 1e-3 * tol / half_c).map_or(f64::NAN, |k| half_c * k.value)
        };
        let prob = QuadratureProblem::new(f, 0.0, f64::INFINITY, tol)?
            .with_period(TWO_PI)?
            .with_singular_points(vec![0.0, TWO_PI])?;
        integrate_periodic_chunks(&prob)?
    };
    let mut e = Evaluation::new(q.value, q.err_estimate, Method::LaplaceKapteyn, q.panels * 15);
    e.converged = q.converged;
    Ok(e)
}

/// Both readings of ζ(3) = ½ ∫₀^∞ K(t) dt.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AperyReport {
    /// Period-chunked improper integral, if the chunk sum settled.
    pub chunked: Option<Evaluation>,
    pub chunked_error: Option<String>,
    /// Abel-regularised value.
    pub abel: Evaluation,
    /// c₁ = ∫₀^{2π} K(t) dt.
    pub first_chunk: f64,
}

/// ζ(3) from the μ = 1 kernel, in chunked and Abel modes. Needs tol ≥ 1e-6.
pub fn apery_via_kernel(tol: f64) -> Result<AperyReport> {
    if !(tol >= 1e-6) {
        return Err(domain(format!("apery_via_kernel needs tol >= 1e-6, got {tol}")));
    }
    let prob = QuadratureProblem::new(|t: f64| kernel_K(t).unwrap_or(f64::NAN), 0.0, TWO_PI, 1e-12)?;
    let first_chunk = integrate_finite(&prob)?.require_converged("first period of K")?.value;
    let (chunked, chunked_error) = match zeta_via_kapteyn_with(1.0, ZetaMode::Chunked, tol) {
        Ok(e) => (Some(e), None),
        Err(err) => (None, Some(err.to_string())),
    };
    let abel = zeta_via_kapteyn_with(1.0, ZetaMode::Abel, tol)?;
    Ok(AperyReport { chunked, chunked_error, abel, first_chunk })
}
