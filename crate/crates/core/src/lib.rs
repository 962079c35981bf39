//! Generalized Mathieu series `S_mu(r) = sum 2n / (n^2 + r^2)^(mu + 1)` and the
//! Riemann zeta quantities attached to it.
//!
//! The crate evaluates `S_mu(r)` through several independent routes (direct
//! summation with an Euler-Maclaurin tail, Bessel-kernel and Emersleben
//! integrals, a Laplace transform of Kapteyn-series kernels) and certifies a
//! family of inequalities numerically: every check reports both sides, a signed
//! margin and an error budget, and sweeps aggregate those over parameter grids.
//!
//! ```
//! use mathieu_core::{mathieu::mathieu_s, specfun::zeta_fn, MathieuPoint};
//!
//! let s = mathieu_s(MathieuPoint::new(1.0, 0.0).unwrap(), 1e-12).unwrap();
//! assert!((s.value - 2.0 * zeta_fn(3.0).unwrap()).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is the idiom used throughout to reject NaN together with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tabulated coefficients keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod error;
pub mod inequalities;
pub mod mathieu;
pub mod quadrature;
pub mod representations;
pub mod specfun;
mod summation;

pub use error::{Error, Result};

pub use inequalities::{GridSpec, InequalityReport, SweepReport, Verdict};
pub use mathieu::{Evaluation, MathieuPoint, Method};
pub use quadrature::{QuadratureProblem, QuadratureResult};
pub use representations::{KernelConfig, RepresentationConstants};


