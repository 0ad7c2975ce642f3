//! Noncompact quantum dilogarithm φ(z) in double precision, its functional
//! equations, and the modular-double R/K integral kernels.

mod identities;
mod kernels;
mod quad;

pub use identities::{check_identity, default_samples, Identity, IdentityCheck};
pub use kernels::{
    fourier_cross_check, kernel_k_coord, kernel_k_mom, kernel_r_coord, kernel_r_mom, r_coord_form, r_coord_printed_form,
    Delta, FourierCheck, KernelValue, Lin, RForm,
};
pub use quad::{line_integral, LineSpec};

use crate::error::{Error, Result};
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub(crate) const I: C = C::new(0.0, 1.0);

/// 𝔟 together with the derived constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularParams {
    pub b: C,
    /// e^{iπ𝔟²}
    pub q: C,
    /// e^{−iπ𝔟^{−2}}
    pub qbar: C,
    /// (𝔟+𝔟^{−1})/2
    pub eta: C,
    /// (2𝔟+𝔟^{−1})/2
    pub eta_tilde: C,
}

impl ModularParams {
    pub fn new(b: C) -> Result<Self> {
        if b.norm() == 0.0 || !b.is_finite() {
            return Err(Error::Numeric(format!("b = {b} is not admissible")));
        }
        let binv = b.inv();
        if b.re <= 0.0 || binv.re <= 0.0 {
            return Err(Error::Numeric(format!(
                "b = {b}: the defining integral needs Re b > 0 and Re 1/b > 0"
            )));
        }
        Ok(ModularParams {
            b,
            q: (I * PI * b * b).exp(),
            qbar: (-I * PI * binv * binv).exp(),
            eta: (b + binv) / 2.0,
            eta_tilde: (2.0 * b + binv) / 2.0,
        })
    }

    pub fn real(b: f64) -> Result<Self> {
        Self::new(C::new(b, 0.0))
    }

    /// K = e^{−iπ(4η²+1)/12}.
    pub fn k_const(&self) -> C {
        (-I * PI * (4.0 * self.eta * self.eta + 1.0) / 12.0).exp()
    }

    /// e^{−iπ(1−2η²)/6}, the constant in φ(z)φ(−z).
    pub fn inversion_const(&self) -> C {
        (-I * PI * (1.0 - 2.0 * self.eta * self.eta) / 6.0).exp()
    }
}

/// Evaluator for φ at a fixed 𝔟.
#[derive(Clone, Copy, Debug)]
pub struct Dilog {
    pub params: ModularParams,
    /// height of the integration line above the real axis
    eps: f64,
    /// the shorter of 𝔟, 𝔟^{−1}; used for recursion steps
    step: C,
}

/// Above this real part, φ is obtained from φ(−z) by inversion.
const INVERT_ABOVE: f64 = 3.0;
/// Target: integrand below e^{−42} at the truncation points.
const LOG_TOL: f64 = 42.0;

impl Dilog {
    pub fn new(params: ModularParams) -> Self {
        let (b, binv) = (params.b, params.b.inv());
        let eps = PI * b.re.min(binv.re) / 2.0;
        let step = if b.norm() <= binv.norm() { b } else { binv };
        Dilog { params, eps, step }
    }

    pub fn with_b(b: f64) -> Result<Self> {
        Ok(Self::new(ModularParams::real(b)?))
    }

    pub fn eta(&self) -> C {
        self.params.eta
    }

    /// The defining integral, evaluated on the line Im w = ε with the
    /// trapezoid rule. Needs |Im z| < Re η.
    pub fn phi_direct(&self, z: C) -> Result<C> {
        let eta = self.params.eta.re;
        if z.im.abs() >= eta {
            return Err(Error::Numeric(format!("φ integral diverges at z = {z} (|Im z| ≥ Re η)")));
        }
        if !z.is_finite() {
            return Err(Error::Numeric(format!("φ at non-finite z = {z}")));
        }
        let (b, binv) = (self.params.b, self.params.b.inv());
        let rate = 2.0 * (eta - z.im.abs());
        let w_max = LOG_TOL / rate + 1.0;
        let d = 0.95 * self.eps;
        let h = 2.0 * PI * d / (LOG_TOL + 2.0 * z.re.abs() * d);
        let n = (w_max / h).ceil() as i64;
        let mut s = C::new(0.0, 0.0);
        for k in -n..=n {
            let w = C::new(k as f64 * h, self.eps);
            // 1/(sinh(w𝔟) sinh(w/𝔟)) = 4e^{∓2ηw}/((1−e^{∓2w𝔟})(1−e^{∓2w/𝔟})), sign of Re w
            let sg = if k >= 0 { 1.0 } else { -1.0 };
            let num = (-2.0 * I * z * w - sg * 2.0 * self.params.eta * w).exp();
            s += 4.0 * num / ((1.0 - (-sg * 2.0 * w * b).exp()) * (1.0 - (-sg * 2.0 * w * binv).exp()) * w);
        }
        let out = (0.25 * h * s).exp();
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::Numeric(format!("φ overflow at z = {z}")))
        }
    }

    /// φ(z) anywhere off its poles: recursion brings Im z into
    /// |Im z| ≤ Re η/2, inversion handles large positive Re z.
    pub fn phi(&self, z: C) -> Result<C> {
        let half = self.params.eta.re / 2.0;
        let s = self.step;
        let mut z = z;
        let mut factor = C::new(1.0, 0.0);
        let mut guard = 0;
        while z.im.abs() > half {
            guard += 1;
            if guard > 10_000 {
                return Err(Error::Numeric("recursion did not reach the strip".into()));
            }
            if z.im > 0.0 {
                // φ(z) = φ(z − is) / (1 + e^{2π(z − is/2)s})
                let den = 1.0 + (2.0 * PI * (z - I * s / 2.0) * s).exp();
                if den.norm() < 1e-13 {
                    return Err(Error::Numeric(format!("pole of φ at {z}")));
                }
                factor /= den;
                z -= I * s;
            } else {
                // φ(z) = φ(z + is) (1 + e^{2π(z + is/2)s})
                factor *= 1.0 + (2.0 * PI * (z + I * s / 2.0) * s).exp();
                z += I * s;
            }
        }
        let core = if z.re > INVERT_ABOVE {
            (I * PI * z * z).exp() * self.params.inversion_const() / self.phi_direct(-z)?
        } else {
            self.phi_direct(z)?
        };
        let out = core * factor;
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::Numeric(format!("φ is not finite at {z}")))
        }
    }

    /// φ_{√2𝔟}(z/√2), written φ̃.
    pub fn tilde(&self) -> Result<Dilog> {
        Ok(Dilog::new(ModularParams::new(self.params.b * 2f64.sqrt())?))
    }

    /// Infinite-product form, only when |q| < 1 (Im 𝔟² > 0).
    pub fn phi_product(&self, z: C) -> Result<C> {
        let p = &self.params;
        let (q2, qb2) = (p.q * p.q, p.qbar * p.qbar);
        if q2.norm() >= 1.0 || qb2.norm() >= 1.0 {
            return Err(Error::Numeric(format!("product form needs |q| < 1, have |q| = {}", p.q.norm())));
        }
        let num = qpoch_inf((2.0 * PI * (z + I * p.eta) * p.b).exp(), q2);
        let den = qpoch_inf((2.0 * PI * (z - I * p.eta) / p.b).exp(), qb2);
        Ok(num / den)
    }
}

/// (x; r)_∞ for |r| < 1.
fn qpoch_inf(x: C, r: C) -> C {
    let mut acc = C::new(1.0, 0.0);
    let mut t = x;
    for _ in 0..100_000 {
        acc *= 1.0 - t;
        t *= r;
        if t.norm() < 1e-18 {
            break;
        }
    }
    acc
}
