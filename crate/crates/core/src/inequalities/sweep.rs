use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::{GridSpec, InequalityReport, ParamPoint, Verdict};
use crate::error::{Error, Result};

type Eval = fn(&Checker, &ParamPoint, &str) -> Result<InequalityReport>;

/// A registered check: its parameters, variants and default grid.
#[derive(Clone, Copy)]
pub struct CheckInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameters read from each grid point.
    pub params: &'static [&'static str],
    pub variants: &'static [&'static str],
    pub default_grid: &'static str,
    /// The statement is ambiguous or suspected wrong; failures are findings,
    /// not defects.
    pub adjudicates: bool,
    eval: Eval,
}

impl std::fmt::Debug for CheckInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheckInfo").field("name", &self.name).field("variants", &self.variants).finish()
    }
}

impl CheckInfo {
    pub fn default_grid(&self) -> GridSpec {
        GridSpec::parse(self.default_grid).expect("registered default grids parse")
    }

    pub fn run(&self, checker: &Checker, point: &ParamPoint, variant: &str) -> Result<InequalityReport> {
        if !self.variants.contains(&variant) {
            return Err(Error::UnknownCheck(format!("{}:{variant}", self.name)));
        }
        for &p in self.params {
            if get(point, p).is_none() {
                return Err(Error::Grid(format!("check `{}` needs parameter `{p}`", self.name)));
            }
        }
        (self.eval)(checker, point, variant)
    }
}

fn get(p: &ParamPoint, name: &str) -> Option<f64> {
    match name {
        "mu" => p.mu,
        "mu2" => p.mu2,
        "nu" => p.nu,
        "r" => p.r,
        "p" => p.p,
        "eps" => p.eps,
        "m" => p.m,
        _ => None,
    }
}

fn v(p: &ParamPoint, name: &str) -> f64 {
    get(p, name).unwrap_or(f64::NAN)
}

fn as_count(x: f64) -> Result<u32> {
    if x.fract() == 0.0 && (1.0..=4.0).contains(&x) {
        Ok(x as u32)
    } else {
        Err(Error::Hypothesis(format!("m must be an integer in 1..=4, got {x}")))
    }
}

static REGISTRY: [CheckInfo; 16] = [
    CheckInfo {
        name: "jensen_upper",
        summary: "S_mu^p(r) <= C_mu^p(r) G^(p-1)(mu+1/2) z^(p-1)(mu+1/2) G(p+mu+1/2) z(p+mu+1/2), sharp adds 2^(-p/2)",
        params: &["mu", "r", "p"],
        variants: &["general", "sharp"],
        default_grid: "mu=1.501:5:8,r=0.1:10:8:log,p=1.001/2/3",
        adjudicates: false,
        eval: |c, p, var| {
            let variant = if var == "sharp" { JensenVariant::Sharp } else { JensenVariant::General };
            c.check_jensen_upper(v(p, "mu"), v(p, "r"), v(p, "p"), variant)
        },
    },
    CheckInfo {
        name: "special_upper",
        summary: "p = 2 bounds on S(r) and S_3/2(r), printed constants and rederived ones",
        params: &["r"],
        variants: &["s1_as_typeset", "s1_derived", "s32_as_typeset", "s32_derived"],
        default_grid: "r=0.01:100:20:log",
        adjudicates: true,
        eval: |c, p, var| {
            let which = if var.starts_with("s32") { SpecialCase::S32 } else { SpecialCase::S1 };
            let variant = if var.ends_with("derived") {
                SpecialUpperVariant::Derived
            } else {
                SpecialUpperVariant::AsTypeset
            };
            c.check_special_upper(v(p, "r"), which, variant)
        },
    },
    CheckInfo {
        name: "recurrence_lower",
        summary: "S_mu(r) >= (2mu-1)/(2mu r^k) S_(mu-1)(r) - const/r^k",
        params: &["mu", "r"],
        variants: &["as_stated", "as_proved", "rederived"],
        default_grid: "mu=1.501:5:8,r=0.1:10:10:log",
        adjudicates: true,
        eval: |c, p, var| {
            let variant = match var {
                "as_stated" => RecurrenceVariant::AsStated,
                "as_proved" => RecurrenceVariant::AsProved,
                _ => RecurrenceVariant::Rederived,
            };
            c.check_recurrence_lower(v(p, "mu"), v(p, "r"), variant)
        },
    },
    CheckInfo {
        name: "turan_mathieu",
        summary: "S_(mu+2)(r) S_mu(r) - S_(mu+1)(r)^2 >= 0",
        params: &["mu", "r"],
        variants: &["default"],
        default_grid: "mu=0.25:5:20,r=0.1:10:20:log",
        adjudicates: false,
        eval: |c, p, _| c.check_turan_mathieu(v(p, "mu"), v(p, "r")),
    },
    CheckInfo {
        name: "complete_monotonicity",
        summary: "(-1)^m d^m S_mu / d mu^m >= 0 for m = 1..m_max",
        params: &["mu", "r", "m"],
        variants: &["default"],
        default_grid: "mu=0.25:5:8,r=0.1:10:8:log,m=4",
        adjudicates: false,
        eval: |c, p, _| c.check_complete_monotonicity(v(p, "mu"), v(p, "r"), as_count(v(p, "m"))?),
    },
    CheckInfo {
        name: "ratio_monotone",
        summary: "mu -> S_(mu+1)/S_mu is increasing (mu <= mu2)",
        params: &["mu", "mu2", "r"],
        variants: &["default"],
        default_grid: "mu=0.25:2.5:6,mu2=2.5:5:6,r=0.1:10:8:log",
        adjudicates: false,
        eval: |c, p, _| c.check_ratio_monotone(v(p, "mu"), v(p, "mu2"), v(p, "r")),
    },
    CheckInfo {
        name: "kimberling",
        summary: "S_(mu+nu)(r) S(r) >= S_mu(r) S_nu(r) with S = S_1 or S_eps",
        params: &["mu", "nu", "r"],
        variants: &["s1", "s_eps"],
        default_grid: "mu=0.2:3:6,nu=0.2:3:6,r=0.1:10:6:log,eps=0.001",
        adjudicates: true,
        eval: |c, p, var| {
            let baseline = if var == "s_eps" {
                KimberlingBaseline::SEps(p.eps.unwrap_or(1e-3))
            } else {
                KimberlingBaseline::S1
            };
            c.check_kimberling(v(p, "mu"), v(p, "nu"), v(p, "r"), baseline)
        },
    },
    CheckInfo {
        name: "power_mean",
        summary: "[S_nu/z(2nu+1)]^(1/(nu+1)) >= [S_mu/z(2mu+1)]^(1/(mu+1)) for mu >= nu, optionally with 2z",
        params: &["mu", "nu", "r"],
        variants: &["as_stated", "two_factor"],
        default_grid: "mu=1:5:10,nu=0.25:1:4,r=0.1:10:10:log",
        adjudicates: true,
        eval: |c, p, var| c.check_power_mean(v(p, "mu"), v(p, "nu"), v(p, "r"), power_mean_variant(var)),
    },
    CheckInfo {
        name: "am_gm",
        summary: "[S_mu/z(2mu+1)]^(1/(mu+1)) + z(2mu+3) S_mu / (z(2mu+1) S_(mu+1)) >= 2",
        params: &["mu", "r"],
        variants: &["as_stated", "two_factor"],
        default_grid: "mu=0.25:5:10,r=0.1:10:10:log",
        adjudicates: true,
        eval: |c, p, var| c.check_am_gm(v(p, "mu"), v(p, "r"), power_mean_variant(var)),
    },
    CheckInfo {
        name: "landau_upper",
        summary: "S_mu(r) <= c_L sqrt(pi) G(mu+7/6) z(mu-1/6) / (2^(mu-1/2) G(mu+1) r^(mu+7/6))",
        params: &["mu", "r"],
        variants: &["default"],
        default_grid: "mu=1.1677:5:8,r=0.1:10:10:log",
        adjudicates: true,
        eval: |c, p, _| c.check_landau_upper(v(p, "mu"), v(p, "r")),
    },
    CheckInfo {
        name: "zeta_turan",
        summary: "z(mu) z(mu+2) - z(mu+1)^2 >= 0",
        params: &["mu"],
        variants: &["default"],
        default_grid: "mu=1.1:30:30",
        adjudicates: false,
        eval: |c, p, _| c.check_zeta_turan(v(p, "mu")),
    },
    CheckInfo {
        name: "laforgia",
        summary: "z(mu) z(mu+2) >= mu/(mu+1) z(mu+1)^2, weaker than the zeta Turan bound",
        params: &["mu"],
        variants: &["default"],
        default_grid: "mu=1.1:30:30",
        adjudicates: false,
        eval: |c, p, _| {
            let cmp = c.compare_laforgia(v(p, "mu"))?;
            let mut rep = cmp.laforgia;
            rep.notes.push(format!("rhs(turan)/rhs(laforgia) = {:.17e}", cmp.rhs_ratio));
            rep.notes.push(format!("turan is sharper: {}", cmp.turan_is_sharper));
            Ok(rep)
        },
    },
    CheckInfo {
        name: "zeta_upper_147",
        summary: "z(2mu) <= sqrt(3pi/2) G(mu+1)/G(mu+1/2)",
        params: &["mu"],
        variants: &["default"],
        default_grid: "mu=1:30:30",
        adjudicates: false,
        eval: |c, p, _| c.check_zeta_upper_147(v(p, "mu")),
    },
    CheckInfo {
        name: "zeta_ratio_zer",
        summary: "z^a(2mu+1) / (z^2(2mu) z(2mu+3)) <= (mu+1) G^2(mu+1/2)/G^2(mu+1), a = 3/2 or 3",
        params: &["mu"],
        variants: &["exponent_3_2", "exponent_3"],
        default_grid: "mu=1:20:20",
        adjudicates: true,
        eval: |c, p, var| {
            let e = if var == "exponent_3" { ZerExponent::Derived3 } else { ZerExponent::Paper32 };
            c.check_zeta_ratio_zer(v(p, "mu"), e)
        },
    },
    CheckInfo {
        name: "alzer",
        summary: "S_mu(r) < 1/(r^2 + 1/6) for mu >= 1",
        params: &["mu", "r"],
        variants: &["default"],
        default_grid: "mu=1:5:8,r=0.0001:100:12:log",
        adjudicates: false,
        eval: |c, p, _| c.check_alzer(v(p, "mu"), v(p, "r")),
    },
    CheckInfo {
        name: "gaussian_lower",
        summary: "2 z(2mu+1) exp(-(mu+1) z(2mu+3)/z(2mu+1) r^2) <= S_mu(r)",
        params: &["mu", "r"],
        variants: &["default"],
        default_grid: "mu=0.25:5:8,r=0.01:10:10:log",
        adjudicates: false,
        eval: |c, p, _| c.check_gaussian_lower(v(p, "mu"), v(p, "r")),
    },
];

fn power_mean_variant(var: &str) -> PowerMeanVariant {
    if var == "two_factor" {
        PowerMeanVariant::TwoFactor
    } else {
        PowerMeanVariant::AsStated
    }
}

/// Every registered check, in a fixed order.
pub fn registry() -> &'static [CheckInfo] {
    &REGISTRY
}

fn lookup(name: &str) -> Result<(&'static CheckInfo, Vec<&'static str>)> {
    let (base, variant) = match name.split_once(':') {
        Some((b, v)) => (b, Some(v)),
        None => (name, None),
    };
    let info = REGISTRY.iter().find(|c| c.name == base).ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
    let variants = match variant {
        None => info.variants.to_vec(),
        Some(v) => vec![*info.variants.iter().find(|x| **x == v).ok_or_else(|| Error::UnknownCheck(name.to_string()))?],
    };
    Ok((info, variants))
}

/// Per-variant tally within a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantSummary {
    pub variant: String,
    pub holds: usize,
    pub fails: usize,
    pub within_noise: usize,
    pub min_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub name: String,
    pub grid: GridSpec,
    pub adjudicates: bool,
    pub reports: Vec<InequalityReport>,
    pub min_margin: f64,
    pub failures: Vec<InequalityReport>,
    pub within_noise: usize,
    pub variants: Vec<VariantSummary>,
}

impl SweepReport {
    /// True when some report fails in a check that is not an adjudication.
    pub fn has_genuine_failures(&self) -> bool {
        !self.adjudicates && !self.failures.is_empty()
    }
}

/// Runs a check over a grid. `name` is a registered check, optionally
/// narrowed to one variant as `name:variant`; grid axes override the check's
/// default grid by name.
pub fn sweep(name: &str, grid: &GridSpec) -> Result<SweepReport> {
    sweep_with(&Checker::default(), name, grid)
}

pub fn sweep_with(checker: &Checker, name: &str, grid: &GridSpec) -> Result<SweepReport> {
    let (info, variants) = lookup(name)?;
    let grid = grid.overriding(&info.default_grid());
    let points = grid.points();
    let nested: Vec<Vec<InequalityReport>> = points
        .par_iter()
        .map(|p| variants.iter().map(|var| info.run(checker, p, var)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let reports: Vec<InequalityReport> = nested.into_iter().flatten().collect();

    let summaries = variants
        .iter()
        .map(|&var| {
            let tag = |r: &InequalityReport| r.variant.as_deref().unwrap_or("default") == var || variants.len() == 1;
            let mine: Vec<&InequalityReport> = reports.iter().filter(|r| tag(r)).collect();
            let count = |v: Verdict| mine.iter().filter(|r| r.verdict == v).count();
            VariantSummary {
                variant: var.to_string(),
                holds: count(Verdict::Holds),
                fails: count(Verdict::Fails),
                within_noise: count(Verdict::WithinNoise),
                min_margin: mine.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min),
            }
        })
        .collect();
    Ok(SweepReport {
        name: name.to_string(),
        adjudicates: info.adjudicates,
        min_margin: reports.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min),
        failures: reports.iter().filter(|r| r.verdict == Verdict::Fails).cloned().collect(),
        within_noise: reports.iter().filter(|r| r.verdict == Verdict::WithinNoise).count(),
        variants: summaries,
        grid,
        reports,
    })
}
