//! Parameter grids: `name=lo:hi:count[:log]` ranges and `name=a/b/c` lists,
//! comma separated, e.g. `mu=0.5:5:20,r=0.1:10:20:log,p=1.5/2/3`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ParamPoint;
use crate::error::{Error, Result};

/// Parameter names a grid axis may use.
pub const AXIS_NAMES: [&str; 7] = ["mu", "mu2", "nu", "r", "p", "eps", "m"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisValues {
    Range { lo: f64, hi: f64, count: usize, scale: Scale },
    List(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: AxisValues,
}

impl Axis {
    pub fn range(name: &str, lo: f64, hi: f64, count: usize, scale: Scale) -> Result<Self> {
        let axis = Axis { name: name.to_string(), values: AxisValues::Range { lo, hi, count, scale } };
        axis.validate()?;
        Ok(axis)
    }

    pub fn list(name: &str, values: Vec<f64>) -> Result<Self> {
        let axis = Axis { name: name.to_string(), values: AxisValues::List(values) };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Grid(format!("axis `{}`: {msg}", self.name)));
        if !AXIS_NAMES.contains(&self.name.as_str()) {
            return bad(format!("unknown parameter (expected one of {})", AXIS_NAMES.join(", ")));
        }
        match &self.values {
            AxisValues::Range { lo, hi, count, scale } => {
                if *count < 2 {
                    return bad(format!("range needs at least 2 points, got {count}"));
                }
                if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                    return bad(format!("need finite lo <= hi, got {lo}..{hi}"));
                }
                if *scale == Scale::Log && !(*lo > 0.0) {
                    return bad(format!("log scale needs lo > 0, got {lo}"));
                }
            }
            AxisValues::List(v) => {
                if v.is_empty() {
                    return bad("empty list".into());
                }
                if let Some(x) = v.iter().find(|x| !x.is_finite()) {
                    return bad(format!("non-finite value {x}"));
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        match &self.values {
            AxisValues::List(v) => v.clone(),
            AxisValues::Range { lo, hi, count, scale } => {
                let n = *count;
                (0..n)
                    .map(|i| {
                        if i == 0 {
                            return *lo;
                        }
                        if i == n - 1 {
                            return *hi;
                        }
                        let f = i as f64 / (n - 1) as f64;
                        match scale {
                            Scale::Linear => lo + f * (hi - lo),
                            Scale::Log => (lo.ln() + f * (hi.ln() - lo.ln())).exp(),
                        }
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.values {
            AxisValues::Range { lo, hi, count, scale } => {
                write!(f, "{}={lo}:{hi}:{count}", self.name)?;
                if *scale == Scale::Log {
                    write!(f, ":log")?;
                }
                Ok(())
            }
            AxisValues::List(v) => {
                let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}={}", self.name, items.join("/"))
            }
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, spec) = s
            .split_once('=')
            .ok_or_else(|| Error::Grid(format!("`{s}`: expected name=lo:hi:count[:log] or name=a/b/c")))?;
        let name = name.trim();
        let num = |t: &str| -> Result<f64> {
            t.trim().parse::<f64>().map_err(|_| Error::Grid(format!("`{s}`: `{t}` is not a number")))
        };
        if spec.contains(':') {
            let parts: Vec<&str> = spec.split(':').collect();
            let scale = match parts.get(3).map(|t| t.trim()) {
                None | Some("lin") | Some("linear") => Scale::Linear,
                Some("log") => Scale::Log,
                Some(other) => return Err(Error::Grid(format!("`{s}`: unknown scale `{other}`"))),
            };
            if !(3..=4).contains(&parts.len()) {
                return Err(Error::Grid(format!("`{s}`: range needs lo:hi:count[:log]")));
            }
            let count = parts[2]
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Grid(format!("`{s}`: count `{}` is not an integer", parts[2])))?;
            Axis::range(name, num(parts[0])?, num(parts[1])?, count, scale)
        } else {
            let values = spec.split('/').map(num).collect::<Result<Vec<_>>>()?;
            Axis::list(name, values)
        }
    }
}

/// A Cartesian grid; the first axis varies slowest.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<Axis>,
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }

    pub fn axis(&self, name: &str) -> Option<&Axis> {
        self.axes.iter().find(|a| a.name == name)
    }

    /// Axes of `self` replace same-named axes of `base`; the others are kept.
    pub fn overriding(&self, base: &GridSpec) -> GridSpec {
        let mut axes: Vec<Axis> = base
            .axes
            .iter()
            .map(|a| self.axis(&a.name).cloned().unwrap_or_else(|| a.clone()))
            .collect();
        for a in &self.axes {
            if base.axis(&a.name).is_none() {
                axes.push(a.clone());
            }
        }
        GridSpec { axes }
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values().len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<ParamPoint> {
        let mut out = vec![ParamPoint::default()];
        for axis in &self.axes {
            let vals = axis.values();
            out = out
                .into_iter()
                .flat_map(|p| vals.iter().map(move |&v| with(p, &axis.name, v)))
                .collect();
        }
        out
    }
}

fn with(mut p: ParamPoint, name: &str, v: f64) -> ParamPoint {
    let slot = match name {
        "mu" => &mut p.mu,
        "mu2" => &mut p.mu2,
        "nu" => &mut p.nu,
        "r" => &mut p.r,
        "p" => &mut p.p,
        "eps" => &mut p.eps,
        "m" => &mut p.m,
        _ => unreachable!("axis names are validated"),
    };
    *slot = Some(v);
    p
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut axes: Vec<Axis> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let axis: Axis = part.parse()?;
            if axes.iter().any(|a| a.name == axis.name) {
                return Err(Error::Grid(format!("axis `{}` given twice", axis.name)));
            }
            axes.push(axis);
        }
        Ok(GridSpec { axes })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.axes.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
