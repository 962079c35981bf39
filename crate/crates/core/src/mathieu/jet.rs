//! Truncated Taylor series, used to get high derivatives of the Mathieu
//! summands at the Euler-Maclaurin cut without symbolic differentiation.

pub(crate) const JET_LEN: usize = 12;

/// Coefficients c_j = f^{(j)}(x₀) / j! for j < JET_LEN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet(pub [f64; JET_LEN]);

impl Jet {
    pub(crate) fn constant(c: f64) -> Self {
        let mut a = [0.0; JET_LEN];
        a[0] = c;
        Jet(a)
    }

    /// The identity function expanded about x₀.
    pub(crate) fn variable(x0: f64) -> Self {
        let mut a = [0.0; JET_LEN];
        a[0] = x0;
        a[1] = 1.0;
        Jet(a)
    }

    pub(crate) fn mul(&self, other: &Jet) -> Jet {
        let mut out = [0.0; JET_LEN];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.0.iter().take(JET_LEN - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Jet(out)
    }

    pub(crate) fn scale(&self, s: f64) -> Jet {
        Jet(self.0.map(|c| c * s))
    }

    /// u^a for u(x₀) > 0, via w_k = Σ_{j=1..k} ((a+1) j − k) u_j w_{k−j} / (k u₀).
    pub(crate) fn powf(&self, a: f64) -> Jet {
        let u = &self.0;
        let mut w = [0.0; JET_LEN];
        w[0] = u[0].powf(a);
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += ((a + 1.0) * j as f64 - k as f64) * u[j] * w[k - j];
            }
            w[k] = s / (k as f64 * u[0]);
        }
        Jet(w)
    }

    /// ln u for u(x₀) > 0.
    pub(crate) fn ln(&self) -> Jet {
        let u = &self.0;
        let mut l = [0.0; JET_LEN];
        l[0] = u[0].ln();
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..k {
                s += j as f64 * l[j] * u[k - j];
            }
            l[k] = (u[k] - s / k as f64) / u[0];
        }
        Jet(l)
    }

    pub(crate) fn powi(&self, m: u32) -> Jet {
        let mut out = Jet::constant(1.0);
        for _ in 0..m {
            out = out.mul(self);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn power_of_linear() {
        // (2 + h)^{-1.5}: c_k = binom(-1.5, k) 2^{-1.5-k}
        let u = Jet::variable(2.0);
        let w = u.powf(-1.5);
        let mut binom = 1.0;
        for k in 0..JET_LEN {
            if k > 0 {
                binom *= (-1.5 - (k as f64 - 1.0)) / k as f64;
            }
            assert_relative_eq!(w.0[k], binom * 2f64.powf(-1.5 - k as f64), max_relative = 1e-13);
        }
    }

    #[test]
    fn log_of_linear() {
        // ln(3 + h) = ln 3 + Σ (−1)^{k+1} h^k / (k 3^k)
        let l = Jet::variable(3.0).ln();
        assert_relative_eq!(l.0[0], 3f64.ln());
        for k in 1..JET_LEN {
            let expect = if k % 2 == 1 { 1.0 } else { -1.0 } / (k as f64 * 3f64.powi(k as i32));
            assert_relative_eq!(l.0[k], expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn product_and_power_agree() {
        let u = Jet::variable(1.7).mul(&Jet::variable(1.7)).mul(&Jet::constant(1.0));
        let sq = Jet::variable(1.7).powf(2.0);
        for k in 0..JET_LEN {
            assert!((u.0[k] - sq.0[k]).abs() < 1e-13);
        }
    }
}
