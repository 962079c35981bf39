//! Real-argument special functions: Γ, ζ, J_ν, the normalised Bessel function
//! and the Clausen function Cl₂. Every other module is built on these.
//!
//! All functions are pure and deterministic.

mod bessel;
mod clausen;
mod gamma;
mod zeta;

pub use bessel::{bessel_j, normalized_bessel, BesselOrder};
pub use clausen::{clausen2, log_sine};
pub use gamma::{gamma_fn, GAMMA_MAX_ARG};
pub use zeta::zeta_fn;

#[cfg(test)]
pub(crate) use bessel::j_three_halves;
pub(crate) use zeta::zeta_with_err;

use crate::error::{Error, Result};

/// Requested versus achieved absolute accuracy of an evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub abs_tol: f64,
    pub achieved: f64,
}

impl Accuracy {
    /// Fails with a range error when `achieved` exceeds ten times `abs_tol`.
    pub fn new(abs_tol: f64, achieved: f64) -> Result<Self> {
        if !(achieved <= 10.0 * abs_tol) {
            return Err(Error::Range { requested: abs_tol, achieved });
        }
        Ok(Self { abs_tol, achieved })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn accuracy_contract() {
        assert!(Accuracy::new(1e-10, 5e-10).is_ok());
        assert!(matches!(Accuracy::new(1e-10, 2e-9), Err(Error::Range { .. })));
        assert!(Accuracy::new(1e-10, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn gamma_recurrence(x in 0.5f64..50.0) {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            prop_assert!(((lhs - rhs) / rhs).abs() <= 1e-12);
        }

        #[test]
        fn zeta_above_one_and_decreasing(s in 1.001f64..29.9, ds in 1e-3f64..0.1) {
            let a = zeta_fn(s).unwrap();
            let b = zeta_fn(s + ds).unwrap();
            prop_assert!(a > 1.0 && b > 1.0);
            prop_assert!(a > b);
        }

        #[test]
        fn von_lommel_bounds(nu in 0.0f64..5.0, x in 0.0f64..100.0) {
            let j = bessel_j(BesselOrder::new(nu).unwrap(), x).unwrap();
            prop_assert!(j.abs() <= 1.0 + 1e-9);
            if nu >= 1.0 {
                prop_assert!(j.abs() <= std::f64::consts::FRAC_1_SQRT_2 + 1e-9);
            }
        }
    }
}
