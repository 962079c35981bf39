use mathieu_core::inequalities::{landau_constant, registry, sweep_with, Checker, GridSpec, LANDAU_C_L};
use mathieu_core::mathieu::{mathieu_s, mathieu_s_direct};
use mathieu_core::representations::{kernel_K, kernel_K_mu, s_via_bessel_integral, s_via_emersleben, s_via_laplace};
use mathieu_core::specfun::{bessel_j, clausen2, gamma_fn, zeta_fn, BesselOrder};
use mathieu_core::{Error, Evaluation, KernelConfig, MathieuPoint, RepresentationConstants, SweepReport};
use serde::Serialize;
use serde_json::json;

use crate::output::OutputRecord;

/// What a command produced and whether it should fail the exit code.
pub struct Outcome {
    pub record: OutputRecord,
    pub verification_failed: bool,
    pub not_converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Function {
    #[value(name = "S")]
    S,
    #[value(name = "S_mu")]
    SMu,
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "besselj")]
    BesselJ,
    #[value(name = "clausen2")]
    Clausen2,
    #[value(name = "K")]
    K,
    #[value(name = "K_mu")]
    KMu,
}

#[derive(Debug, Default, Clone, Copy, Serialize)]
pub struct EvalArgs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

#[derive(Debug, Serialize)]
struct EvalResult {
    function: &'static str,
    value: f64,
    err_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms_or_nodes: Option<u64>,
    converged: bool,
}

impl EvalResult {
    fn from_eval(function: &'static str, e: Evaluation) -> Self {
        Self {
            function,
            value: e.value,
            err_bound: e.err_bound,
            method: Some(e.method.as_str()),
            terms_or_nodes: Some(e.terms_or_nodes),
            converged: e.converged,
        }
    }

    fn scalar(function: &'static str, value: f64, err_bound: f64) -> Self {
        Self { function, value, err_bound, method: None, terms_or_nodes: None, converged: true }
    }
}

fn need(v: Option<f64>, flag: &str, function: &str) -> Result<f64, Error> {
    v.ok_or_else(|| Error::Domain(format!("`{function}` needs --{flag}")))
}

fn function_name(f: Function) -> &'static str {
    match f {
        Function::S => "S",
        Function::SMu => "S_mu",
        Function::Zeta => "zeta",
        Function::Gamma => "gamma",
        Function::BesselJ => "besselj",
        Function::Clausen2 => "clausen2",
        Function::K => "K",
        Function::KMu => "K_mu",
    }
}

pub fn eval(f: Function, a: EvalArgs, tol: f64) -> Result<Outcome, Error> {
    let name = function_name(f);
    let res = match f {
        Function::S => EvalResult::from_eval(name, mathieu_s(MathieuPoint::new(1.0, need(a.r, "r", name)?)?, tol)?),
        Function::SMu => {
            let p = MathieuPoint::new(need(a.mu, "mu", name)?, need(a.r, "r", name)?)?;
            EvalResult::from_eval(name, mathieu_s(p, tol)?)
        }
        Function::Zeta => {
            let z = zeta_fn(need(a.s, "s", name)?)?;
            EvalResult::scalar(name, z, 1e-12 * z.abs())
        }
        Function::Gamma => {
            let g = gamma_fn(need(a.x, "x", name)?)?;
            EvalResult::scalar(name, g, 1e-13 * g.abs())
        }
        Function::BesselJ => {
            let j = bessel_j(BesselOrder::new(need(a.nu, "nu", name)?)?, need(a.x, "x", name)?)?;
            EvalResult::scalar(name, j, 1e-11)
        }
        Function::Clausen2 => EvalResult::scalar(name, clausen2(need(a.theta, "theta", name)?), 1e-12),
        Function::K => {
            let t = need(a.t, "t", name)?;
            EvalResult::scalar(name, kernel_K(t)?, 1e-12 * (1.0 + t))
        }
        Function::KMu => {
            let cfg = KernelConfig::new(need(a.mu, "mu", name)?)?;
            EvalResult::from_eval(name, kernel_K_mu(cfg, need(a.t, "t", name)?, tol)?)
        }
    };
    let not_converged = !res.converged;
    let mut record = OutputRecord::new("eval", json!({ "function": name, "params": a, "tol": tol }));
    record.push(&res);
    Ok(Outcome { record, verification_failed: false, not_converged })
}

/// Laplace/Kapteyn evaluations are slow; they never run tighter than this.
const LAPLACE_TOL_FLOOR: f64 = 1e-6;

#[derive(Debug, Serialize)]
struct MethodResult {
    method: String,
    #[serde(flatten)]
    eval: Evaluation,
}

#[derive(Debug, Serialize)]
struct PairCheck {
    a: String,
    b: String,
    diff: f64,
    allowed: f64,
    consistent: bool,
}

pub fn xcheck(mu: f64, r: f64, methods: &[String], tol: f64) -> Result<Outcome, Error> {
    let p = MathieuPoint::new(mu, r)?;
    let mut evals: Vec<(String, Evaluation)> = Vec::new();
    for m in methods {
        let e = match m.as_str() {
            "direct" => mathieu_s_direct(p, tol)?,
            "emersleben" => {
                if mu != 1.0 {
                    return Err(Error::Domain(format!("the Emersleben integral is for mu = 1, got {mu}")));
                }
                s_via_emersleben(r, tol)?
            }
            "bessel" => s_via_bessel_integral(p, tol)?,
            "laplace" => s_via_laplace(p, tol.max(LAPLACE_TOL_FLOOR))?,
            other => {
                return Err(Error::Domain(format!(
                    "unknown method `{other}` (expected direct, emersleben, bessel, laplace)"
                )))
            }
        };
        evals.push((m.clone(), e));
    }
    let mut pairs = Vec::new();
    for (i, (na, a)) in evals.iter().enumerate() {
        for (nb, b) in &evals[i + 1..] {
            let diff = (a.value - b.value).abs();
            let allowed = a.err_bound + b.err_bound + 4.0 * f64::EPSILON * (a.value.abs() + b.value.abs());
            pairs.push(PairCheck { a: na.clone(), b: nb.clone(), diff, allowed, consistent: diff <= allowed });
        }
    }
    let mut record = OutputRecord::new("xcheck", json!({ "mu": mu, "r": r, "methods": methods, "tol": tol }));
    let not_converged = evals.iter().any(|(_, e)| !e.converged);
    for (m, e) in evals {
        record.push(&MethodResult { method: m, eval: e });
    }
    let verification_failed = pairs.iter().any(|p| !p.consistent);
    for p in &pairs {
        record.push(p);
    }
    Ok(Outcome { record, verification_failed, not_converged })
}

pub fn verify(check: &str, grid: Option<&str>, tol: f64) -> Result<(Outcome, Vec<SweepReport>), Error> {
    let user = match grid {
        Some(g) => GridSpec::parse(g)?,
        None => GridSpec::default(),
    };
    let checker = Checker::with_rel(tol)?;
    let names: Vec<String> = if check == "all" {
        registry().iter().map(|c| c.name.to_string()).collect()
    } else {
        vec![check.to_string()]
    };
    let mut sweeps = Vec::new();
    for name in &names {
        let base = name.split(':').next().unwrap_or(name);
        let info = registry()
            .iter()
            .find(|c| c.name == base)
            .ok_or_else(|| Error::UnknownCheck(name.clone()))?;
        let defaults = info.default_grid();
        let mut g = GridSpec::default();
        for axis in &user.axes {
            if defaults.axis(&axis.name).is_some() {
                g.axes.push(axis.clone());
            } else if check != "all" {
                return Err(Error::Grid(format!("check `{base}` has no parameter `{}`", axis.name)));
            }
        }
        sweeps.push(sweep_with(&checker, name, &g)?);
    }
    let mut record = OutputRecord::new("verify", json!({ "check": check, "grid": grid, "tol": tol }));
    for s in &sweeps {
        record.push(s);
    }
    let verification_failed = sweeps.iter().any(|s| s.has_genuine_failures());
    Ok((Outcome { record, verification_failed, not_converged: false }, sweeps))
}

/// Agreement demanded between the recomputed and the quoted c_L.
const C_L_AGREEMENT: f64 = 1e-6;

pub fn constants(mu: f64, r: f64) -> Result<Outcome, Error> {
    let reps = RepresentationConstants::new(mu, r)?;
    let (argmax, c_l) = landau_constant()?;
    let agree = (c_l - LANDAU_C_L).abs() <= C_L_AGREEMENT;
    let mut record = OutputRecord::new("constants", json!({ "mu": mu, "r": r }));
    record.push(&json!({
        "c_L_quoted": LANDAU_C_L,
        "c_L_recomputed": c_l,
        "c_L_argmax": argmax,
        "c_L_agree": agree,
        "C_mu_of_r": reps.c_mu_of_r,
        "c_mu": reps.c_mu,
        "c_mu_1": reps.c_mu_1,
    }));
    Ok(Outcome { record, verification_failed: !agree, not_converged: false })
}
