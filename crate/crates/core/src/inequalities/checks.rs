use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bounded::Bounded;
use super::{gamma_b, hypothesis, mathieu_b, report, zeta_b, InequalityReport, ParamPoint, Sense};
use crate::error::{domain, Result};
use crate::mathieu::{mathieu_s_deriv_mu_rel, MathieuPoint};

/// c_L = sup_{x>0} x^{1/3} J₀(x), to the eight digits it is usually quoted with.
pub const LANDAU_C_L: f64 = 0.785_746_87;
/// Half a unit in the last quoted digit of [`LANDAU_C_L`].
const LANDAU_C_L_ERR: f64 = 5e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JensenVariant {
    /// μ ≥ 1, |J_ν| ≤ 1.
    General,
    /// μ ≥ 3/2, |J_ν| ≤ 1/√2 adds a factor 2^{−p/2}.
    Sharp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// S(r) = S₁(r), the p = 2, μ = 1 case.
    S1,
    /// S_{3/2}(r), the p = 2, μ = 3/2 case.
    S32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialUpperVariant {
    /// Constants exactly as printed.
    AsTypeset,
    /// Constants obtained by specializing the general Jensen bound.
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecurrenceVariant {
    /// r³ and 2^{2μ−2} as printed.
    AsStated,
    /// r³ kept, 2^{2μ−1} from the constant c_{μ,1}.
    AsProved,
    /// r² and 2^{2μ−1}: what integration by parts actually gives.
    Rederived,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KimberlingBaseline {
    /// S(r) read as S₁(r).
    S1,
    /// S(r) read as S_ε(r).
    SEps(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerMeanVariant {
    /// S_λ(r)/ζ(2λ+1) as printed.
    AsStated,
    /// S_λ(r)/(2ζ(2λ+1)), normalized by S_λ(0).
    TwoFactor,
}

pub type AmGmVariant = PowerMeanVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZerExponent {
    /// ζ^{3/2}(2μ+1) as printed.
    Paper32,
    /// ζ³(2μ+1), which integrating the Gaussian lower bound gives.
    Derived3,
}

/// Both zeta Turán bounds at one μ and how their right-hand sides compare.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaforgiaComparison {
    pub turan: InequalityReport,
    pub laforgia: InequalityReport,
    /// RHS(Turán) / RHS(Laforgia–Natalini), algebraically (μ+1)/μ.
    pub rhs_ratio: f64,
    /// Whether the zeta Turán bound has the larger right-hand side.
    pub turan_is_sharper: bool,
}

/// Evaluates inequality checks with Mathieu sums accurate to a relative `rel`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checker {
    pub rel: f64,
}

impl Default for Checker {
    fn default() -> Self {
        Self { rel: 1e-13 }
    }
}

fn positive_r(r: f64) -> Result<()> {
    hypothesis(r > 0.0 && r.is_finite(), || format!("needs r > 0, got {r}"))
}

fn nonneg_r(r: f64) -> Result<()> {
    hypothesis(r >= 0.0 && r.is_finite(), || format!("needs r >= 0, got {r}"))
}

fn pt(mu: f64, r: f64) -> ParamPoint {
    ParamPoint { mu: Some(mu), r: Some(r), ..Default::default() }
}

/// C_μ(r) = √π / ((2r)^{μ−1/2} Γ(μ+1)).
fn c_mu_of_r(mu: f64, r: f64) -> Result<Bounded> {
    Ok(Bounded::exact(PI.sqrt()) / (Bounded::exact(2.0 * r).powf(mu - 0.5) * gamma_b(mu + 1.0)?))
}

impl Checker {
    pub fn with_rel(rel: f64) -> Result<Self> {
        if !(rel > 0.0 && rel < 1.0) {
            return Err(domain(format!("relative accuracy must lie in (0, 1), got {rel}")));
        }
        Ok(Self { rel })
    }

    fn s(&self, mu: f64, r: f64) -> Result<Bounded> {
        mathieu_b(mu, r, self.rel)
    }

    /// S_μ^p(r) ≤ C_μ^p(r) Γ^{p−1}(μ+½) ζ^{p−1}(μ+½) Γ(p+μ+½) ζ(p+μ+½), times 2^{−p/2} when sharp.
    pub fn check_jensen_upper(&self, mu: f64, r: f64, p: f64, variant: JensenVariant) -> Result<InequalityReport> {
        hypothesis(p > 1.0 && p.is_finite(), || format!("jensen_upper needs p > 1, got {p}"))?;
        let mu_min = match variant {
            JensenVariant::General => 1.0,
            JensenVariant::Sharp => 1.5,
        };
        hypothesis(mu >= mu_min, || format!("jensen_upper ({variant:?}) needs mu >= {mu_min}, got {mu}"))?;
        positive_r(r)?;
        let lhs = self.s(mu, r)?.powf(p);
        let k = gamma_b(mu + 0.5)? * zeta_b(mu + 0.5)?;
        let mut rhs = c_mu_of_r(mu, r)?.powf(p) * k.powf(p - 1.0) * gamma_b(p + mu + 0.5)? * zeta_b(p + mu + 0.5)?;
        let tag = match variant {
            JensenVariant::General => "general",
            JensenVariant::Sharp => {
                rhs = rhs.scale(2f64.powf(-0.5 * p));
                "sharp"
            }
        };
        let point = ParamPoint { p: Some(p), ..pt(mu, r) };
        Ok(report("jensen_upper", Some(tag), point, lhs, rhs, Sense::Le))
    }

    /// The p = 2 specializations: S(r) and S_{3/2}(r) bounded above.
    pub fn check_special_upper(&self, r: f64, which: SpecialCase, variant: SpecialUpperVariant) -> Result<InequalityReport> {
        positive_r(r)?;
        let (mu, name) = match which {
            SpecialCase::S1 => (1.0, "s1"),
            SpecialCase::S32 => (1.5, "s32"),
        };
        let lhs = self.s(mu, r)?;
        let rhs = special_upper_rhs(r, which, variant)?;
        let tag = match variant {
            SpecialUpperVariant::AsTypeset => format!("{name}_as_typeset"),
            SpecialUpperVariant::Derived => format!("{name}_derived"),
        };
        let mut rep = report("special_upper", Some(&tag), pt(mu, r), lhs, rhs, Sense::Le);
        let other = match variant {
            SpecialUpperVariant::AsTypeset => SpecialUpperVariant::Derived,
            SpecialUpperVariant::Derived => SpecialUpperVariant::AsTypeset,
        };
        let o = special_upper_rhs(r, which, other)?;
        let agree = ((o.v - rhs.v) / rhs.v).abs() <= 1e-12;
        rep.notes.push(format!("constants agree: {agree}"));
        Ok(rep)
    }

    /// S_μ(r) ≥ (2μ−1)/(2μ r^k) S_{μ−1}(r) − (2μ−1)√π Γ(2μ) ζ(2μ−1) / (2^j r^k Γ(μ+1) Γ(μ+½)).
    pub fn check_recurrence_lower(&self, mu: f64, r: f64, variant: RecurrenceVariant) -> Result<InequalityReport> {
        let (k, j, mu_min, tag) = match variant {
            RecurrenceVariant::AsStated => (3.0, 2.0 * mu - 2.0, 1.5, "as_stated"),
            RecurrenceVariant::AsProved => (3.0, 2.0 * mu - 1.0, 1.5, "as_proved"),
            // needs only |𝒥_{μ−3/2}| ≤ 1, i.e. μ > 1
            RecurrenceVariant::Rederived => (2.0, 2.0 * mu - 1.0, 1.0, "rederived"),
        };
        hypothesis(mu > mu_min, || format!("recurrence_lower ({tag}) needs mu > {mu_min}, got {mu}"))?;
        positive_r(r)?;
        let lhs = self.s(mu, r)?;
        let rk = r.powf(k);
        let a = (2.0 * mu - 1.0) / (2.0 * mu * rk);
        let first = self.s(mu - 1.0, r)?.scale(a);
        let num = gamma_b(2.0 * mu)? * zeta_b(2.0 * mu - 1.0)?;
        let den = gamma_b(mu + 1.0)? * gamma_b(mu + 0.5)?;
        let second = (num / den).scale((2.0 * mu - 1.0) * PI.sqrt() / (2f64.powf(j) * rk));
        Ok(report("recurrence_lower", Some(tag), pt(mu, r), lhs, first - second, Sense::Ge))
    }

    /// S_{μ+2}(r) S_μ(r) − S²_{μ+1}(r) ≥ 0.
    pub fn check_turan_mathieu(&self, mu: f64, r: f64) -> Result<InequalityReport> {
        nonneg_r(r)?;
        let (a, b, c) = (self.s(mu + 2.0, r)?, self.s(mu, r)?, self.s(mu + 1.0, r)?);
        let lhs = a * b - c * c;
        Ok(report("turan_mathieu", None, pt(mu, r), lhs, Bounded::exact(0.0), Sense::Ge))
    }

    /// (−1)^m ∂^m S_μ/∂μ^m ≥ 0 for m = 1..=m_max; the reported side is the minimum.
    pub fn check_complete_monotonicity(&self, mu: f64, r: f64, m_max: u32) -> Result<InequalityReport> {
        hypothesis((1..=4).contains(&m_max), || format!("complete_monotonicity needs 1 <= m_max <= 4, got {m_max}"))?;
        positive_r(r)?;
        let p = MathieuPoint::new(mu, r)?;
        let mut worst: Option<(u32, Bounded)> = None;
        for m in 1..=m_max {
            let d: Bounded = mathieu_s_deriv_mu_rel(p, m, self.rel)?.into();
            let signed = if m.is_multiple_of(2) { d } else { -d };
            if worst.is_none_or(|(_, w)| signed.v < w.v) {
                worst = Some((m, signed));
            }
        }
        let (m, lhs) = worst.expect("m_max >= 1");
        let point = ParamPoint { m: Some(m_max as f64), ..pt(mu, r) };
        let mut rep = report("complete_monotonicity", None, point, lhs, Bounded::exact(0.0), Sense::Ge);
        rep.notes.push(format!("smallest signed derivative at m = {m}"));
        Ok(rep)
    }

    /// S_{μ₂+1}/S_{μ₂} ≥ S_{μ₁+1}/S_{μ₁} for μ₁ ≤ μ₂.
    pub fn check_ratio_monotone(&self, mu1: f64, mu2: f64, r: f64) -> Result<InequalityReport> {
        hypothesis(mu1 > 0.0 && mu1 <= mu2, || format!("ratio_monotone needs 0 < mu1 <= mu2, got {mu1}, {mu2}"))?;
        positive_r(r)?;
        let lhs = self.s(mu2 + 1.0, r)? / self.s(mu2, r)?;
        let rhs = self.s(mu1 + 1.0, r)? / self.s(mu1, r)?;
        let point = ParamPoint { mu2: Some(mu2), ..pt(mu1, r) };
        Ok(report("ratio_monotone", None, point, lhs, rhs, Sense::Ge))
    }

    /// S_{μ+ν}(r) S(r) ≥ S_μ(r) S_ν(r) with S read according to `baseline`.
    pub fn check_kimberling(&self, mu: f64, nu: f64, r: f64, baseline: KimberlingBaseline) -> Result<InequalityReport> {
        hypothesis(mu > 0.0 && nu > 0.0, || format!("kimberling needs mu, nu > 0, got {mu}, {nu}"))?;
        positive_r(r)?;
        let (base_mu, tag, eps) = match baseline {
            KimberlingBaseline::S1 => (1.0, "s1", None),
            KimberlingBaseline::SEps(e) => {
                hypothesis(e > 0.0, || format!("kimberling baseline needs eps > 0, got {e}"))?;
                (e, "s_eps", Some(e))
            }
        };
        let lhs = self.s(mu + nu, r)? * self.s(base_mu, r)?;
        let rhs = self.s(mu, r)? * self.s(nu, r)?;
        let point = ParamPoint { nu: Some(nu), eps, ..pt(mu, r) };
        Ok(report("kimberling", Some(tag), point, lhs, rhs, Sense::Ge))
    }

    fn normalized_root(&self, lambda: f64, r: f64, variant: PowerMeanVariant) -> Result<Bounded> {
        let k = match variant {
            PowerMeanVariant::AsStated => 1.0,
            PowerMeanVariant::TwoFactor => 2.0,
        };
        Ok((self.s(lambda, r)? / zeta_b(2.0 * lambda + 1.0)?.scale(k)).powf(1.0 / (lambda + 1.0)))
    }

    /// [S_ν/ζ(2ν+1)]^{1/(ν+1)} ≥ [S_μ/ζ(2μ+1)]^{1/(μ+1)} for μ ≥ ν, optionally with 2ζ.
    pub fn check_power_mean(&self, mu: f64, nu: f64, r: f64, variant: PowerMeanVariant) -> Result<InequalityReport> {
        hypothesis(nu > 0.0 && mu >= nu, || format!("power_mean needs mu >= nu > 0, got {mu}, {nu}"))?;
        positive_r(r)?;
        let lhs = self.normalized_root(nu, r, variant)?;
        let rhs = self.normalized_root(mu, r, variant)?;
        let point = ParamPoint { nu: Some(nu), ..pt(mu, r) };
        Ok(report("power_mean", Some(variant_tag(variant)), point, lhs, rhs, Sense::Ge))
    }

    /// [S_μ/ζ(2μ+1)]^{1/(μ+1)} + ζ(2μ+3) S_μ / (ζ(2μ+1) S_{μ+1}) ≥ 2.
    pub fn check_am_gm(&self, mu: f64, r: f64, variant: AmGmVariant) -> Result<InequalityReport> {
        hypothesis(mu > 0.0, || format!("am_gm needs mu > 0, got {mu}"))?;
        positive_r(r)?;
        let first = self.normalized_root(mu, r, variant)?;
        let second = (zeta_b(2.0 * mu + 3.0)? * self.s(mu, r)?) / (zeta_b(2.0 * mu + 1.0)? * self.s(mu + 1.0, r)?);
        let lhs = first + second;
        Ok(report("am_gm", Some(variant_tag(variant)), pt(mu, r), lhs, Bounded::exact(2.0), Sense::Ge))
    }

    /// S_μ(r) ≤ c_L √π Γ(μ+7/6) ζ(μ−1/6) / (2^{μ−1/2} Γ(μ+1) r^{μ+7/6}).
    pub fn check_landau_upper(&self, mu: f64, r: f64) -> Result<InequalityReport> {
        hypothesis(mu > 7.0 / 6.0, || format!("landau_upper needs mu > 7/6, got {mu}"))?;
        positive_r(r)?;
        let lhs = self.s(mu, r)?;
        let c = Bounded::new(LANDAU_C_L, LANDAU_C_L_ERR);
        let rhs = (c * gamma_b(mu + 7.0 / 6.0)? * zeta_b(mu - 1.0 / 6.0)? / gamma_b(mu + 1.0)?)
            .scale(PI.sqrt() / (2f64.powf(mu - 0.5) * r.powf(mu + 7.0 / 6.0)));
        Ok(report("landau_upper", None, pt(mu, r), lhs, rhs, Sense::Le))
    }

    /// ζ(μ) ζ(μ+2) − ζ²(μ+1) ≥ 0.
    pub fn check_zeta_turan(&self, mu: f64) -> Result<InequalityReport> {
        hypothesis(mu > 1.0, || format!("zeta_turan needs mu > 1, got {mu}"))?;
        let (a, b, c) = (zeta_b(mu)?, zeta_b(mu + 2.0)?, zeta_b(mu + 1.0)?);
        let point = ParamPoint { mu: Some(mu), ..Default::default() };
        Ok(report("zeta_turan", None, point, a * b, c * c, Sense::Ge))
    }

    /// ζ(μ) ζ(μ+2) ≥ μ/(μ+1) ζ²(μ+1) next to the zeta Turán bound.
    pub fn compare_laforgia(&self, mu: f64) -> Result<LaforgiaComparison> {
        let turan = self.check_zeta_turan(mu)?;
        let (a, b, c) = (zeta_b(mu)?, zeta_b(mu + 2.0)?, zeta_b(mu + 1.0)?);
        let rhs = (c * c).scale(mu / (mu + 1.0));
        let point = ParamPoint { mu: Some(mu), ..Default::default() };
        let laforgia = report("laforgia", Some("laforgia_natalini"), point, a * b, rhs, Sense::Ge);
        let rhs_ratio = turan.rhs / laforgia.rhs;
        Ok(LaforgiaComparison { turan_is_sharper: turan.rhs >= laforgia.rhs, rhs_ratio, turan, laforgia })
    }

    /// ζ(2μ) ≤ √(3π/2) Γ(μ+1)/Γ(μ+½).
    pub fn check_zeta_upper_147(&self, mu: f64) -> Result<InequalityReport> {
        hypothesis(mu >= 1.0, || format!("zeta_upper_147 needs mu >= 1, got {mu}"))?;
        let lhs = zeta_b(2.0 * mu)?;
        let rhs = (gamma_b(mu + 1.0)? / gamma_b(mu + 0.5)?).scale((1.5 * PI).sqrt());
        let point = ParamPoint { mu: Some(mu), ..Default::default() };
        Ok(report("zeta_upper_147", None, point, lhs, rhs, Sense::Le))
    }

    /// ζ^a(2μ+1) / (ζ²(2μ) ζ(2μ+3)) ≤ (μ+1) Γ²(μ+½)/Γ²(μ+1), a = 3/2 or 3.
    pub fn check_zeta_ratio_zer(&self, mu: f64, exponent: ZerExponent) -> Result<InequalityReport> {
        hypothesis(mu >= 1.0, || format!("zeta_ratio_zer needs mu >= 1, got {mu}"))?;
        let (a, tag) = match exponent {
            ZerExponent::Paper32 => (1.5, "exponent_3_2"),
            ZerExponent::Derived3 => (3.0, "exponent_3"),
        };
        let z2 = zeta_b(2.0 * mu)?;
        let lhs = zeta_b(2.0 * mu + 1.0)?.powf(a) / (z2 * z2 * zeta_b(2.0 * mu + 3.0)?);
        let g = gamma_b(mu + 0.5)? / gamma_b(mu + 1.0)?;
        let rhs = (g * g).scale(mu + 1.0);
        let point = ParamPoint { mu: Some(mu), ..Default::default() };
        Ok(report("zeta_ratio_zer", Some(tag), point, lhs, rhs, Sense::Le))
    }

    /// S_μ(r) < 1/(r² + 1/6) for μ ≥ 1.
    pub fn check_alzer(&self, mu: f64, r: f64) -> Result<InequalityReport> {
        hypothesis(mu >= 1.0, || format!("alzer needs mu >= 1, got {mu}"))?;
        positive_r(r)?;
        let lhs = self.s(mu, r)?;
        let rhs = Bounded::exact(1.0) / Bounded::exact(r * r + 1.0 / 6.0);
        Ok(report("alzer", None, pt(mu, r), lhs, rhs, Sense::Le))
    }

    /// 2ζ(2μ+1) exp(−(μ+1) ζ(2μ+3)/ζ(2μ+1) r²) ≤ S_μ(r).
    pub fn check_gaussian_lower(&self, mu: f64, r: f64) -> Result<InequalityReport> {
        hypothesis(mu > 0.0, || format!("gaussian_lower needs mu > 0, got {mu}"))?;
        nonneg_r(r)?;
        let z1 = zeta_b(2.0 * mu + 1.0)?;
        let rate = (zeta_b(2.0 * mu + 3.0)? / z1).scale((mu + 1.0) * r * r);
        let lhs = z1.scale(2.0) * (-rate).exp();
        let rhs = self.s(mu, r)?;
        Ok(report("gaussian_lower", None, pt(mu, r), lhs, rhs, Sense::Le))
    }
}

fn variant_tag(v: PowerMeanVariant) -> &'static str {
    match v {
        PowerMeanVariant::AsStated => "as_stated",
        PowerMeanVariant::TwoFactor => "two_factor",
    }
}

/// Right-hand sides of the two special bounds.
///
/// Specializing the Jensen bound at p = 2 gives S(r) ≤ √(15π ζ(3/2) ζ(7/2)) √π / (4√(2r))
/// and, on the sharp branch at μ = 3/2, S_{3/2}(r) ≤ √2 π³ / (9√10 r).
fn special_upper_rhs(r: f64, which: SpecialCase, variant: SpecialUpperVariant) -> Result<Bounded> {
    Ok(match (which, variant) {
        (SpecialCase::S1, v) => {
            let z = zeta_b(1.5)? * zeta_b(3.5)?;
            let tail = match v {
                SpecialUpperVariant::AsTypeset => PI,
                SpecialUpperVariant::Derived => PI.sqrt(),
            };
            z.scale(15.0 * PI).powf(0.5).scale(tail / (4.0 * (2.0 * r).sqrt()))
        }
        (SpecialCase::S32, SpecialUpperVariant::AsTypeset) => Bounded::exact(PI.powi(3) / (9.0 * 10f64.sqrt() * r * r)),
        (SpecialCase::S32, SpecialUpperVariant::Derived) => {
            Bounded::exact(2f64.sqrt() * PI.powi(3) / (9.0 * 10f64.sqrt() * r))
        }
    })
}
