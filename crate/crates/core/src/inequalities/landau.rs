use crate::error::Result;
use crate::specfun::{bessel_j, BesselOrder};

/// Maximizer and value of x^{1/3} J₀(x) over x > 0.
///
/// Past the first zero of J₀ the envelope of x^{1/3}|J₀(x)| decays like
/// x^{−1/6}, so the supremum sits on the first hump; a coarse scan of
/// (0, 2.4] brackets it and golden-section search refines it.
pub fn landau_constant() -> Result<(f64, f64)> {
    let j0 = BesselOrder::new(0.0)?;
    let f = |x: f64| -> Result<f64> { Ok(x.cbrt() * bessel_j(j0, x)?) };

    let step = 0.01;
    let mut best = (step, f(step)?);
    for i in 2..=240 {
        let x = i as f64 * step;
        let v = f(x)?;
        if v > best.1 {
            best = (x, v);
        }
    }
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}
