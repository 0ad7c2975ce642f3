//! Functional equations of φ, checked numerically.

use super::quad::{line_integral, LineSpec};
use super::{Dilog, I};
use crate::error::{Error, Result};
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// φ(z)φ(−z) = e^{iπz²}·e^{−iπ(1−2η²)/6}; args `[z]`
    Inversion,
    /// φ(z−i𝔟/2)/φ(z+i𝔟/2) = 1+e^{2πz𝔟}; args `[z]`
    RecursionB,
    /// the same with 𝔟^{−1}; args `[z]`
    RecursionBinv,
    /// ∫ φ(t+u)/φ(t+v) e^{2πiwt} dt against both closed forms; args `[u, v, w]`
    RamanujanFull,
    /// ∫ e^{2πiwt}/φ(t+v) dt; args `[w, v]`
    Ram1,
    /// ∫ φ(t+u) e^{2πiwt} dt; args `[w, u]`
    Ram2,
    /// the Heine-type transformation; args `[a, b, c, d]`
    Heine,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Inversion,
        Identity::RecursionB,
        Identity::RecursionBinv,
        Identity::RamanujanFull,
        Identity::Ram1,
        Identity::Ram2,
        Identity::Heine,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Inversion => "inversion",
            Identity::RecursionB => "recursion_b",
            Identity::RecursionBinv => "recursion_binv",
            Identity::RamanujanFull => "ramanujan_full",
            Identity::Ram1 => "ram1",
            Identity::Ram2 => "ram2",
            Identity::Heine => "heine",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Identity::Inversion | Identity::RecursionB | Identity::RecursionBinv => 1,
            Identity::Ram1 | Identity::Ram2 => 2,
            Identity::RamanujanFull => 3,
            Identity::Heine => 4,
        }
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::UnknownName(s.into()))
    }
}

/// One evaluated identity. `residual` is `|lhs − rhs| / max(1, |rhs|)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub args: Vec<C>,
    pub lhs: C,
    pub rhs: C,
    pub residual: f64,
    /// last step-halving change of the quadratures, 0 for pointwise identities
    pub quad_error: f64,
}

fn residual(l: C, r: C) -> f64 {
    (l - r).norm() / r.norm().max(1.0)
}

/// Evaluates both sides. Integrals run along the real line except the
/// right side of `heine`, which runs below the real axis, above the zeros
/// of its denominator.
pub fn check_identity(d: &Dilog, id: Identity, args: &[C]) -> Result<IdentityCheck> {
    if args.len() != id.arity() {
        return Err(Error::LengthMismatch(format!("{} takes {} arguments", id.name(), id.arity())));
    }
    let eta = d.eta();
    let b = d.params.b;
    let k = d.params.k_const();
    let tau = 2.0 * PI;
    let (lhs, rhs, qe) = match id {
        Identity::Inversion => {
            let z = args[0];
            let l = d.phi_direct(z)? * d.phi_direct(-z)?;
            (l, (I * PI * z * z).exp() * d.params.inversion_const(), 0.0)
        }
        Identity::RecursionB | Identity::RecursionBinv => {
            let s = if id == Identity::RecursionB { b } else { b.inv() };
            let z = args[0];
            let l = d.phi_direct(z - I * s / 2.0)? / d.phi_direct(z + I * s / 2.0)?;
            (l, 1.0 + (tau * z * s).exp(), 0.0)
        }
        Identity::Ram1 => {
            let (w, v) = (args[0], args[1]);
            let spec = LineSpec::from_rates(0.0, -tau * w.im, tau * (w.im - v.im))?;
            let (l, e) = line_integral(&spec, |t| Ok((tau * I * w * t).exp() / d.phi(t + v)?))?;
            (l, d.phi(w + I * eta)? / k * (-tau * I * w * (v + I * eta)).exp(), e)
        }
        Identity::Ram2 => {
            let (w, u) = (args[0], args[1]);
            let spec = LineSpec::from_rates(0.0, -tau * w.im, tau * (u.im + w.im))?;
            let (l, e) = line_integral(&spec, |t| Ok(d.phi(t + u)? * (tau * I * w * t).exp()))?;
            (l, k / d.phi(-w - I * eta)? * (-tau * I * w * (u - I * eta)).exp(), e)
        }
        Identity::RamanujanFull => {
            let (u, v, w) = (args[0], args[1], args[2]);
            let spec = LineSpec::from_rates(0.0, -tau * w.im, tau * (u.im - v.im + w.im))?;
            let (l, e) = line_integral(&spec, |t| Ok(d.phi(t + u)? / d.phi(t + v)? * (tau * I * w * t).exp()))?;
            let r1 = d.phi(u - v - I * eta)? * d.phi(w + I * eta)? / (k * d.phi(u - v + w - I * eta)?)
                * (-tau * I * w * (v + I * eta)).exp();
            let r2 = k * d.phi(v - u - w + I * eta)? / (d.phi(v - u + I * eta)? * d.phi(-w - I * eta)?)
                * (-tau * I * w * (u - I * eta)).exp();
            // report the worse of the two closed forms
            let rhs = if residual(l, r1) >= residual(l, r2) { r1 } else { r2 };
            (l, rhs, e)
        }
        Identity::Heine => {
            let (a, bb, c, dd) = (args[0], args[1], args[2], args[3]);
            let gap = (-dd.im).min(a.im - c.im);
            if gap <= 0.0 {
                return Err(Error::Numeric("heine: need Im d < 0 and Im c < Im a to separate the poles".into()));
            }
            let spec_l = LineSpec::from_rates(0.0, -tau * dd.im, tau * (a.im + bb.im - c.im + dd.im))?;
            let (l, e1) = line_integral(&spec_l, |t| {
                Ok(d.phi(t + a)? * d.phi(t + bb)? * (tau * I * t * dd).exp() / d.phi(t + c)?)
            })?;
            let spec_r = LineSpec::from_rates(
                -gap / 2.0,
                tau * (2.0 * eta.re - bb.im + c.im),
                tau * (eta.re + dd.im - a.im + bb.im),
            )?;
            let (ri, e2) = line_integral(&spec_r, |t| {
                Ok(d.phi(t + I * eta)? * (tau * I * t * (bb - c - 2.0 * I * eta)).exp()
                    / (d.phi(t - dd - I * eta)? * d.phi(t + a - c - I * eta)?))
            })?;
            let r = (-tau * I * (bb - I * eta) * dd).exp() * d.phi(a - c - I * eta)? * ri;
            (l, r, e1.max(e2))
        }
    };
    Ok(IdentityCheck { identity: id, args: args.to_vec(), lhs, rhs, residual: residual(lhs, rhs), quad_error: qe })
}

/// The documented parameter grid for each identity. Strip points are
/// scaled by Re η so they stay inside the region where the direct
/// integral converges.
pub fn default_samples(d: &Dilog, id: Identity) -> Vec<Vec<C>> {
    let eta = d.eta().re;
    let c = C::new;
    match id {
        Identity::Inversion => {
            // ten points spread over the strip |Im z| < Re η
            (0..10)
                .map(|j| {
                    let x = -1.8 + 0.4 * j as f64;
                    let y = eta * 0.85 * ((j as f64 * 0.7).sin());
                    vec![c(x, y)]
                })
                .collect()
        }
        Identity::RecursionB | Identity::RecursionBinv => {
            let s = if id == Identity::RecursionB { d.params.b } else { d.params.b.inv() };
            let room = eta - s.re.abs() / 2.0;
            (0..6).map(|j| vec![c(-1.5 + 0.6 * j as f64, 0.7 * room * ((j as f64 * 1.3).cos()))]).collect()
        }
        Identity::Ram1 => vec![
            vec![c(0.3, -0.2), c(0.1, -0.6)],
            vec![c(0.5, -0.3), c(-0.2, -0.7)],
            vec![c(-0.4, -0.35), c(0.25, -0.8)],
        ],
        Identity::Ram2 => vec![vec![c(0.3, -0.3), c(0.2, 0.6)], vec![c(-0.4, -0.25), c(-0.1, 0.7)]],
        Identity::RamanujanFull => vec![
            vec![c(0.2, 0.3), c(-0.1, -0.2), c(0.35, -0.25)],
            vec![c(-0.3, 0.4), c(0.2, -0.1), c(-0.15, -0.3)],
        ],
        Identity::Heine => vec![
            vec![c(0.3, 0.2), c(-0.1, 0.1), c(0.2, -0.2), c(0.25, -0.3)],
            vec![c(-0.2, 0.25), c(0.4, 0.05), c(-0.1, -0.15), c(-0.3, -0.35)],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("pentagon".parse::<Identity>().is_err());
    }

    #[test]
    fn pointwise_identities() {
        let d = Dilog::with_b(0.8).unwrap();
        for id in [Identity::Inversion, Identity::RecursionB, Identity::RecursionBinv] {
            for a in default_samples(&d, id) {
                let r = check_identity(&d, id, &a).unwrap();
                assert!(r.residual < 1e-8, "{id:?} {a:?} {}", r.residual);
            }
        }
    }

    #[test]
    fn arity_checked() {
        let d = Dilog::with_b(0.8).unwrap();
        assert!(check_identity(&d, Identity::Ram1, &[C::new(0.0, -0.1)]).is_err());
    }

    #[test]
    fn non_decaying_parameters_rejected() {
        let d = Dilog::with_b(0.8).unwrap();
        // Im w > 0: no decay to the left
        assert!(check_identity(&d, Identity::Ram1, &[C::new(0.0, 0.2), C::new(0.0, -0.3)]).is_err());
    }
}
