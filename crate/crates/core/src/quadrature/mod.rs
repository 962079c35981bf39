//! Adaptive Gauss-Kronrod integration on finite intervals, on [a, ∞) with a
//! caller-supplied tail bound, and period by period for oscillatory integrands.

mod rule;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::specfun::gamma_fn;
use crate::summation::CompensatedSum;
use rule::{gk15, Panel};

/// Maximum number of panels a single finite integration may create.
pub const PANEL_BUDGET: usize = 1_000_000;
/// Largest truncation point tried by [`integrate_semiinf`].
pub const MAX_TRUNCATION: f64 = 1e6;
/// Largest number of periods summed by [`integrate_periodic_chunks`].
pub const MAX_CHUNKS: usize = 10_000;

type Func<'a> = Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>;

/// An integral to evaluate. Build with [`QuadratureProblem::new`] and the
/// `with_*` methods; `upper = f64::INFINITY` marks a semi-infinite range.
pub struct QuadratureProblem<'a> {
    integrand: Func<'a>,
    lower: f64,
    upper: f64,
    tol: f64,
    tail_estimator: Option<Func<'a>>,
    singular_points: Vec<f64>,
    period: Option<f64>,
    max_panels: usize,
}

impl std::fmt::Debug for QuadratureProblem<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuadratureProblem")
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("tol", &self.tol)
            .field("tail_estimator", &self.tail_estimator.is_some())
            .field("singular_points", &self.singular_points)
            .field("period", &self.period)
            .finish()
    }
}

impl<'a> QuadratureProblem<'a> {
    pub fn new<F>(integrand: F, lower: f64, upper: f64, tol: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'a,
    {
        if !lower.is_finite() || upper.is_nan() || !(lower < upper) {
            return Err(domain(format!("need finite lower < upper, got [{lower}, {upper}]")));
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(domain(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self {
            integrand: Box::new(integrand),
            lower,
            upper,
            tol,
            tail_estimator: None,
            singular_points: Vec::new(),
            period: None,
            max_panels: PANEL_BUDGET,
        })
    }

    /// Bound T ↦ |∫_T^∞ f|, required for semi-infinite ranges; must decrease in T.
    pub fn with_tail<F>(mut self, tail: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'a,
    {
        self.tail_estimator = Some(Box::new(tail));
        self
    }

    /// Points where the integrand may be singular. In periodic mode they are
    /// offsets within one period, measured from the start of each chunk.
    pub fn with_singular_points(mut self, points: Vec<f64>) -> Result<Self> {
        if points.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(domain("singular points must be sorted"));
        }
        self.singular_points = points;
        self.check_singular_points()?;
        Ok(self)
    }

    /// Lowers the panel budget below [`PANEL_BUDGET`].
    pub fn with_max_panels(mut self, n: usize) -> Self {
        self.max_panels = n.clamp(1, PANEL_BUDGET);
        self
    }

    pub fn with_period(mut self, period: f64) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(domain(format!("period must be positive, got {period}")));
        }
        self.period = Some(period);
        self.check_singular_points()?;
        Ok(self)
    }

    fn check_singular_points(&self) -> Result<()> {
        let (lo, hi) = match self.period {
            Some(p) => (0.0, p),
            None => (self.lower, self.upper),
        };
        if self.singular_points.iter().any(|&s| !(s >= lo && s <= hi)) {
            return Err(domain(format!("singular points must lie in [{lo}, {hi}]")));
        }
        Ok(())
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn period(&self) -> Option<f64> {
        self.period
    }

    pub fn singular_points(&self) -> &[f64] {
        &self.singular_points
    }

    fn eval(&self, x: f64) -> f64 {
        (self.integrand)(x)
    }
}

/// Outcome of an integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    /// Where an infinite range was cut (the upper bound for finite ranges).
    pub truncation_at: f64,
    pub panels: u64,
    pub converged: bool,
}

impl QuadratureResult {
    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self, what: &str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence(format!(
                "{what}: error estimate {:.3e} after {} panels",
                self.err_estimate, self.panels
            )))
        }
    }
}

struct ByErr(Panel);

impl PartialEq for ByErr {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ByErr {}
impl PartialOrd for ByErr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByErr {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; ties go to the leftmost panel so the order is fixed.
        self.0
            .err
            .total_cmp(&other.0.err)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

/// A panel whose error is at the round-off floor, or which is too narrow to split
/// (below ~1000 ulps every Kronrod node could round onto an endpoint).
fn settled(p: &Panel) -> bool {
    let width_floor = 2.5e-13 * (p.a.abs() + p.b.abs());
    p.err <= 50.0 * f64::EPSILON * p.abs || (p.b - p.a) <= width_floor
}

fn breakpoints(lower: f64, upper: f64, interior: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut cuts = vec![lower];
    for s in interior {
        if s > lower && s < upper && s > *cuts.last().unwrap() {
            cuts.push(s);
        }
    }
    cuts.push(upper);
    cuts
}

/// Global adaptive subdivision: always bisect the panel with the largest error.
fn adaptive(
    f: &(dyn Fn(f64) -> f64 + Sync),
    cuts: &[f64],
    tol: f64,
    budget: usize,
) -> QuadratureResult {
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel> = Vec::new();
    for w in cuts.windows(2) {
        let p = gk15(f, w[0], w[1]);
        if settled(&p) {
            done.push(p);
        } else {
            heap.push(ByErr(p));
        }
    }
    let mut panels = cuts.len() - 1;
    let mut total_err: f64 = heap.iter().map(|p| p.0.err).chain(done.iter().map(|p| p.err)).sum();
    loop {
        while total_err > tol && panels < budget {
            let Some(ByErr(worst)) = heap.pop() else { break };
            let mid = 0.5 * (worst.a + worst.b);
            let left = gk15(f, worst.a, mid);
            let right = gk15(f, mid, worst.b);
            total_err += left.err + right.err - worst.err;
            panels += 1;
            for p in [left, right] {
                if settled(&p) {
                    done.push(p);
                } else {
                    heap.push(ByErr(p));
                }
            }
        }
        // Re-add from scratch to shed drift in the running total.
        let exact: f64 = heap.iter().map(|p| p.0.err).chain(done.iter().map(|p| p.err)).sum();
        let stuck = heap.is_empty() || panels >= budget;
        total_err = exact;
        if exact <= tol || stuck {
            break;
        }
    }
    let mut all: Vec<Panel> = heap.into_iter().map(|p| p.0).chain(done).collect();
    all.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut sum = CompensatedSum::new();
    for p in &all {
        sum.add(p.value);
    }
    QuadratureResult {
        value: sum.value(),
        err_estimate: total_err,
        truncation_at: *cuts.last().unwrap(),
        panels: panels as u64,
        converged: total_err <= tol,
    }
}

/// Integrates over a finite range, splitting first at the declared singular points.
///
/// Runs out of budget after [`PANEL_BUDGET`] panels; the result then has
/// `converged == false`.
pub fn integrate_finite(prob: &QuadratureProblem<'_>) -> Result<QuadratureResult> {
    if !prob.upper.is_finite() {
        return Err(domain("integrate_finite needs a finite upper bound"));
    }
    let cuts = breakpoints(prob.lower, prob.upper, prob.singular_points.iter().copied());
    Ok(adaptive(&|x| prob.eval(x), &cuts, prob.tol, prob.max_panels))
}

/// Integrates over [lower, ∞): doubles the cut-off T until the tail bound is at
/// most tol/2, then integrates [lower, T] to tol/2.
pub fn integrate_semiinf(prob: &QuadratureProblem<'_>) -> Result<QuadratureResult> {
    if prob.upper != f64::INFINITY {
        return Err(domain("integrate_semiinf needs upper = +inf"));
    }
    let tail = prob
        .tail_estimator
        .as_ref()
        .ok_or_else(|| domain("integrate_semiinf needs a tail estimator"))?;
    let half = 0.5 * prob.tol;
    let cut = choose_truncation(prob.lower, half, tail).ok_or_else(|| {
        Error::NonConvergence(format!("tail bound still above {half:.3e} at T = {MAX_TRUNCATION:e}"))
    })?;
    let cuts = breakpoints(prob.lower, cut, prob.singular_points.iter().copied());
    let mut r = adaptive(&|x| prob.eval(x), &cuts, half, prob.max_panels);
    r.err_estimate += tail(cut).abs();
    r.truncation_at = cut;
    r.converged = r.converged && r.err_estimate <= prob.tol;
    Ok(r)
}

/// Fewest chunks summed before the stopping rule may fire.
const MIN_CHUNKS: usize = 8;
/// Depth of the binomial averaging applied to the partial sums.
const EULER_DEPTH: usize = 12;
/// Consecutive growing chunks that count as divergence.
const GROWTH_RUN: usize = 8;

/// Iterated pairwise averaging of the last partial sums (Euler transform).
fn euler_average(partial: &[f64]) -> f64 {
    let n = partial.len();
    let m = (n - 1).min(EULER_DEPTH);
    let mut row: Vec<f64> = partial[n - 1 - m..].to_vec();
    for _ in 0..m {
        for j in 0..row.len() - 1 {
            row[j] = 0.5 * (row[j] + row[j + 1]);
        }
        row.pop();
    }
    row[0]
}

/// Sums the integrals over consecutive periods of [lower, ∞), accelerated by
/// the Euler transform; stops once the accelerated increment is ≤ tol/4.
///
/// Fails with [`Error::NonConvergence`] when the chunk integrals keep growing
/// or [`MAX_CHUNKS`] periods are not enough.
pub fn integrate_periodic_chunks(prob: &QuadratureProblem<'_>) -> Result<QuadratureResult> {
    let period = prob
        .period
        .ok_or_else(|| domain("integrate_periodic_chunks needs a period"))?;
    if prob.upper != f64::INFINITY {
        return Err(domain("integrate_periodic_chunks needs upper = +inf"));
    }
    let chunk_tol = prob.tol / 64.0;
    let mut sum = CompensatedSum::new();
    let mut partial = Vec::new();
    let mut chunk_err = 0.0;
    let mut panels = 0u64;
    let mut all_converged = true;
    let mut prev_acc: Option<f64> = None;
    let mut prev_mag = f64::INFINITY;
    let mut growth = 0usize;
    for k in 0..MAX_CHUNKS {
        let a = prob.lower + k as f64 * period;
        let b = a + period;
        let cuts = breakpoints(a, b, prob.singular_points.iter().map(|s| a + s));
        let r = adaptive(&|x| prob.eval(x), &cuts, chunk_tol, prob.max_panels);
        all_converged &= r.converged;
        chunk_err += r.err_estimate;
        panels += r.panels;
        sum.add(r.value);
        partial.push(sum.value());

        let mag = r.value.abs();
        growth = if mag > prev_mag && mag > prob.tol { growth + 1 } else { 0 };
        prev_mag = mag;
        if growth >= GROWTH_RUN {
            return Err(Error::NonConvergence(format!(
                "chunk integrals grow over {GROWTH_RUN} consecutive periods (|c_{k}| = {mag:.3e})"
            )));
        }

        let acc = euler_average(&partial);
        if let Some(prev) = prev_acc {
            let inc = (acc - prev).abs();
            if k + 1 >= MIN_CHUNKS && inc <= 0.25 * prob.tol {
                let err = inc + chunk_err;
                return Ok(QuadratureResult {
                    value: acc,
                    err_estimate: err,
                    truncation_at: b,
                    panels,
                    converged: all_converged && err <= prob.tol,
                });
            }
        }
        prev_acc = Some(acc);
    }
    Err(Error::NonConvergence(format!(
        "chunk sum not settled after {MAX_CHUNKS} periods"
    )))
}

/// Dispatches on the problem shape: periodic, semi-infinite or finite.
pub fn integrate(prob: &QuadratureProblem<'_>) -> Result<QuadratureResult> {
    if prob.period.is_some() {
        integrate_periodic_chunks(prob)
    } else if prob.upper.is_infinite() {
        integrate_semiinf(prob)
    } else {
        integrate_finite(prob)
    }
}

/// Upper bound on Γ(a, x) = ∫_x^∞ t^{a−1} e^{−t} dt for a > 0, x > 0.
pub fn upper_gamma_bound(a: f64, x: f64) -> f64 {
    if a <= 1.0 {
        // t^{a−1} ≤ x^{a−1} on [x, ∞)
        x.powf(a - 1.0) * (-x).exp()
    } else if x > a - 1.0 {
        // t^{a−1} e^{−t} decays at least geometrically with ratio (a−1)/x
        let lead = ((a - 1.0) * x.ln() - x).exp();
        lead / (1.0 - (a - 1.0) / x)
    } else {
        gamma_fn(a).unwrap_or(f64::INFINITY)
    }
}

/// Smallest T on the grid lower + 2^k at which `tail(T) ≤ target`, if any below
/// [`MAX_TRUNCATION`].
pub fn choose_truncation(lower: f64, target: f64, tail: impl Fn(f64) -> f64) -> Option<f64> {
    let mut width = 1.0;
    loop {
        let t = lower + width;
        if t > MAX_TRUNCATION {
            return None;
        }
        let v = tail(t);
        if v.is_finite() && v <= target {
            return Some(t);
        }
        width *= 2.0;
    }
}

#[cfg(test)]
mod tests;
