//! Numerical certification of the Mathieu-series and zeta inequalities.
//!
//! Each check evaluates both sides at a parameter point with rigorous error
//! bounds and reports a signed margin (nonnegative when the inequality holds
//! as written) against an error budget. Statements whose constants or
//! exponents are ambiguous come in several variants, and sweeps tabulate
//! every variant side by side instead of picking one.

mod bounded;
mod checks;
mod grid;
mod landau;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mathieu::{mathieu_s_rel, MathieuPoint};
use crate::specfun::{gamma_fn, zeta_with_err};
use bounded::Bounded;

pub use checks::{
    AmGmVariant, Checker, JensenVariant, KimberlingBaseline, LaforgiaComparison, PowerMeanVariant,
    RecurrenceVariant, SpecialCase, SpecialUpperVariant, ZerExponent, LANDAU_C_L,
};
pub use grid::{Axis, AxisValues, GridSpec, Scale, AXIS_NAMES};
pub use landau::landau_constant;
pub use sweep::{registry, sweep, sweep_with, CheckInfo, SweepReport, VariantSummary};

/// Outcome of comparing a margin with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    WithinNoise,
}

impl Verdict {
    pub fn from_margin(margin: f64, err_budget: f64) -> Self {
        if margin > err_budget {
            Verdict::Holds
        } else if margin < -err_budget {
            Verdict::Fails
        } else {
            Verdict::WithinNoise
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::WithinNoise => "within_noise",
        }
    }
}

/// Parameters of a check; unused ones stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
}

/// One inequality evaluated at one point.
///
/// `lhs` and `rhs` are the two sides as written; `margin` is oriented so that
/// a nonnegative value means the inequality holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub point: ParamPoint,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub err_budget: f64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Direction of the inequality as written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sense {
    /// lhs ≤ rhs
    Le,
    /// lhs ≥ rhs
    Ge,
}

pub(crate) fn report(
    name: &str,
    variant: Option<&str>,
    point: ParamPoint,
    lhs: Bounded,
    rhs: Bounded,
    sense: Sense,
) -> InequalityReport {
    let margin = match sense {
        Sense::Le => rhs.v - lhs.v,
        Sense::Ge => lhs.v - rhs.v,
    };
    let err_budget = lhs.e + rhs.e + 4.0 * f64::EPSILON * (lhs.v.abs() + rhs.v.abs());
    InequalityReport {
        name: name.to_string(),
        variant: variant.map(str::to_string),
        point,
        lhs: lhs.v,
        rhs: rhs.v,
        margin,
        err_budget,
        verdict: Verdict::from_margin(margin, err_budget),
        notes: Vec::new(),
    }
}

pub(crate) fn hypothesis(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis(msg()))
    }
}

/// Relative accuracy promised by the Lanczos Γ.
const GAMMA_REL: f64 = 1e-13;

pub(crate) fn gamma_b(x: f64) -> Result<Bounded> {
    Ok(Bounded::rel(gamma_fn(x)?, GAMMA_REL))
}

pub(crate) fn zeta_b(s: f64) -> Result<Bounded> {
    let (z, e) = zeta_with_err(s)?;
    Ok(Bounded::new(z, e))
}

pub(crate) fn mathieu_b(mu: f64, r: f64, rel: f64) -> Result<Bounded> {
    Ok(mathieu_s_rel(MathieuPoint::new(mu, r)?, rel)?.into())
}
