//! Trapezoid rule on a horizontal line, refined by step halving.

use crate::error::{Error, Result};
use num_complex::Complex64 as C;

/// The line `t + i·shift`, truncated to `[-left, right]`.
#[derive(Clone, Copy, Debug)]
pub struct LineSpec {
    pub shift: f64,
    pub left: f64,
    pub right: f64,
    pub h0: f64,
    pub rel_tol: f64,
    pub max_halvings: u32,
}

impl LineSpec {
    /// Truncation from exponential decay rates `e^{−r|t|}` at each end.
    pub fn from_rates(shift: f64, r_left: f64, r_right: f64) -> Result<Self> {
        if r_left <= 0.0 || r_right <= 0.0 {
            return Err(Error::Numeric(format!(
                "integrand does not decay (rates {r_left:.3}, {r_right:.3})"
            )));
        }
        let cut = |r: f64| (40.0 / r + 1.0).min(400.0);
        Ok(LineSpec { shift, left: cut(r_left), right: cut(r_right), h0: 0.1, rel_tol: 1e-12, max_halvings: 7 })
    }
}

/// ∫ f(t + i·shift) dt. Returns the value and the last refinement change.
pub fn line_integral<F>(spec: &LineSpec, f: F) -> Result<(C, f64)>
where
    F: Fn(C) -> Result<C>,
{
    let n = ((spec.left + spec.right) / spec.h0).ceil() as usize;
    let h = (spec.left + spec.right) / n as f64;
    let at = |t: f64| f(C::new(t, spec.shift));
    let mut sum = C::new(0.0, 0.0);
    for k in 0..=n {
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        sum += w * at(-spec.left + k as f64 * h)?;
    }
    let mut h = h;
    let mut n = n;
    let mut val = sum * h;
    let mut change = f64::INFINITY;
    for _ in 0..spec.max_halvings {
        let mut mid = C::new(0.0, 0.0);
        for k in 0..n {
            mid += at(-spec.left + (k as f64 + 0.5) * h)?;
        }
        sum += mid;
        h /= 2.0;
        n *= 2;
        let next = sum * h;
        change = (next - val).norm();
        val = next;
        if !val.is_finite() {
            return Err(Error::Numeric("quadrature overflow".into()));
        }
        if change <= spec.rel_tol * val.norm().max(1e-300) {
            return Ok((val, change));
        }
    }
    Err(Error::Numeric(format!("quadrature did not converge, estimated error {change:.3e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian() {
        let spec = LineSpec::from_rates(0.3, 1.0, 1.0).unwrap();
        let (v, _) = line_integral(&spec, |t| Ok((-t * t).exp())).unwrap();
        assert!((v - C::new(std::f64::consts::PI.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn no_decay_is_an_error() {
        assert!(LineSpec::from_rates(0.0, 0.0, 1.0).is_err());
    }
}
