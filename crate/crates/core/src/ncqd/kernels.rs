//! Integral kernels of the modular-double R and K in the coordinate and
//! momentum representations. Delta factors are returned as constraints.

use super::{Dilog, I};
use crate::error::{Error, Result};
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// A delta constraint `δ(Σ c_i v_i − Σ c'_i v'_i)` over unprimed then primed
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta {
    pub unprimed: Vec<i64>,
    pub primed: Vec<i64>,
    pub var: char,
}

impl Delta {
    fn new(var: char, unprimed: &[i64], primed: &[i64]) -> Self {
        Delta { unprimed: unprimed.to_vec(), primed: primed.to_vec(), var }
    }

    /// Value of the argument at a point.
    pub fn argument(&self, v: &[f64], vp: &[f64]) -> f64 {
        let a: f64 = self.unprimed.iter().zip(v).map(|(c, x)| *c as f64 * x).sum();
        let b: f64 = self.primed.iter().zip(vp).map(|(c, x)| *c as f64 * x).sum();
        a - b
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let terms = self
            .unprimed
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, format!("{}{}", self.var, i + 1)))
            .chain(self.primed.iter().enumerate().map(|(i, c)| (-*c, format!("{}'{}", self.var, i + 1))));
        for (c, name) in terms.filter(|(c, _)| *c != 0) {
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}{name}"));
        }
        write!(f, "δ({s})")
    }
}

/// Kernel at a point: delta constraints plus the remaining factor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelValue {
    pub constraints: Vec<Delta>,
    pub amplitude: C,
    /// whether the point lies on the support of the deltas (to 1e−12)
    pub on_support: bool,
    /// name of an overall constant set to 1, if any
    pub symbolic_constant: Option<String>,
}

/// Linear form in `X = x₁−x'₁`, `Y = x₂−x'₂`, `ℓ₁₃`, `ℓ₂₃` and `iη`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lin {
    pub x: C,
    pub y: C,
    pub l13: C,
    pub l23: C,
    pub ieta: C,
}

impl Lin {
    pub fn eval(&self, x: f64, y: f64, ell: &[f64; 3], eta: C) -> C {
        self.x * x + self.y * y + self.l13 * (ell[0] - ell[2]) + self.l23 * (ell[1] - ell[2]) + self.ieta * I * eta
    }
}

/// The R coordinate kernel as `ϱ_x φ(phi_arg) e^{iπ·exp_a·exp_b}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RForm {
    pub phi_arg: Lin,
    pub exp_a: Lin,
    pub exp_b: Lin,
}

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn zero() -> C {
    c(0.0)
}

/// General form with parameters ξ, ζ.
pub fn r_coord_form(xi: C, zeta: C) -> RForm {
    RForm {
        phi_arg: Lin { x: c(1.0), y: zero(), l13: zero(), l23: (xi - zeta) / 2.0, ieta: c(1.0) },
        exp_a: Lin { x: c(1.0), y: zero(), l13: zero(), l23: xi, ieta: zero() },
        exp_b: Lin { x: zero(), y: c(1.0), l13: zeta, l23: zero(), ieta: c(-2.0) },
    }
}

/// The kernel without ξ, ζ: `φ(X+ℓ₂₃+iη) e^{iπ(X+ℓ₂₃)(Y−ℓ₁₃−2iη)}`.
pub fn r_coord_printed_form() -> RForm {
    RForm {
        phi_arg: Lin { x: c(1.0), y: zero(), l13: zero(), l23: c(1.0), ieta: c(1.0) },
        exp_a: Lin { x: c(1.0), y: zero(), l13: zero(), l23: c(1.0), ieta: zero() },
        exp_b: Lin { x: zero(), y: c(1.0), l13: c(-1.0), l23: zero(), ieta: c(-2.0) },
    }
}

impl RForm {
    /// Amplitude without ϱ_x.
    pub fn eval(&self, d: &Dilog, x: f64, y: f64, ell: &[f64; 3]) -> Result<C> {
        let eta = d.eta();
        let e = self.exp_a.eval(x, y, ell, eta) * self.exp_b.eval(x, y, ell, eta);
        Ok(d.phi(self.phi_arg.eval(x, y, ell, eta))? * (I * PI * e).exp())
    }
}

fn on_support(cs: &[Delta], v: &[f64], vp: &[f64]) -> bool {
    cs.iter().all(|d| d.argument(v, vp).abs() < 1e-12)
}

fn finite(v: KernelValue) -> Result<KernelValue> {
    if v.amplitude.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric("kernel amplitude is not finite (pole of φ)".into()))
    }
}

/// `⟨x|R₁₂₃|x'⟩` with spectral ℓ and parameters ξ, ζ. ϱ_x = (2K)^{−1}.
pub fn kernel_r_coord(d: &Dilog, x: &[f64; 3], xp: &[f64; 3], ell: &[f64; 3], xi: C, zeta: C) -> Result<KernelValue> {
    let constraints = vec![Delta::new('x', &[0, 1, 0], &[1, 0, 1]), Delta::new('x', &[-1, 0, -1], &[0, -1, 0])];
    let rho = 1.0 / (2.0 * d.params.k_const());
    let amp = rho * r_coord_form(xi, zeta).eval(d, x[0] - xp[0], x[1] - xp[1], ell)?;
    finite(KernelValue { on_support: on_support(&constraints, x, xp), constraints, amplitude: amp, symbolic_constant: None })
}

/// ϱ_p = 8ϱ_x e^{iπξℓ₂₃(ζℓ₁₃−2iη)}.
fn rho_p(d: &Dilog, ell: &[f64; 3], xi: C, zeta: C) -> C {
    let (l13, l23) = (ell[0] - ell[2], ell[1] - ell[2]);
    let rho_x = 1.0 / (2.0 * d.params.k_const());
    8.0 * rho_x * (I * PI * xi * l23 * (zeta * l13 - 2.0 * I * d.eta())).exp()
}

/// `⟨p|R₁₂₃|p'⟩`.
pub fn kernel_r_mom(d: &Dilog, p: &[f64; 3], pp: &[f64; 3], ell: &[f64; 3], xi: C, zeta: C) -> Result<KernelValue> {
    let constraints = vec![Delta::new('p', &[1, 1, 0], &[1, 1, 0]), Delta::new('p', &[0, 1, 1], &[0, 1, 1])];
    let (l13, l23) = (ell[0] - ell[2], ell[1] - ell[2]);
    let eta = d.eta();
    let s = p[1] - pp[2];
    let phi = d.phi(s - (xi + zeta) / 2.0 * l23 + I * eta)?;
    let e = (s - xi * l23) * (p[2] - p[0] + zeta * l13 - 2.0 * I * eta);
    let amp = rho_p(d, ell, xi, zeta) * phi * (I * PI * e).exp();
    finite(KernelValue { on_support: on_support(&constraints, p, pp), constraints, amplitude: amp, symbolic_constant: None })
}

/// φ̃(z) = φ_{√2𝔟}(z/√2).
fn phi_tilde(t: &Dilog, z: C) -> Result<C> {
    t.phi(z / 2f64.sqrt())
}

/// `⟨x|K₁₂₃₄|x'⟩` up to the unknown constant ϱ'_x (set to 1).
pub fn kernel_k_coord(d: &Dilog, x: &[f64; 4], xp: &[f64; 4]) -> Result<KernelValue> {
    let constraints = vec![Delta::new('x', &[1, 0, 1, 0], &[1, 0, 1, 0]), Delta::new('x', &[0, 1, 0, 1], &[0, 1, 0, 1])];
    let t = d.tilde()?;
    let (eta, et) = (d.eta(), d.params.eta_tilde);
    let [x1, x2, x3, x4] = *x;
    let [y1, y2, y3, y4] = *xp;
    let alpha = c((x2 + x3 + x4) * y1 - x1 * y3 + 0.5 * (x4 * y4 - x2 * y2))
        + (x1 - y1) * (2.0 * y1 + y4 - 2.0 * I * eta)
        + 0.5 * (x2 - 2.0 * y1 - y4) * (x2 + 2.0 * x3 - 2.0 * y1 - y4);
    let num = d.phi(x1 - y1 + I * eta)? * phi_tilde(&t, -2.0 * x1 + 2.0 * y1 - I * et)?;
    let den = phi_tilde(&t, -2.0 * x1 + x2 - y4 - I * et)? * phi_tilde(&t, x4 + 2.0 * y1 - y2 - I * et)?;
    let amp = (I * PI * alpha).exp() * num / den;
    finite(KernelValue {
        on_support: on_support(&constraints, x, xp),
        constraints,
        amplitude: amp,
        symbolic_constant: Some("varrho'_x".into()),
    })
}

/// `⟨p|K₁₂₃₄|p'⟩` up to the unknown constant ϱ'_p (set to 1).
pub fn kernel_k_mom(d: &Dilog, p: &[f64; 4], pp: &[f64; 4]) -> Result<KernelValue> {
    let constraints = vec![Delta::new('p', &[1, 1, 1, 0], &[1, 1, 1, 0]), Delta::new('p', &[0, 1, 2, 1], &[0, 1, 2, 1])];
    let t = d.tilde()?;
    let (eta, et) = (d.eta(), d.params.eta_tilde);
    let [p1, p2, p3, p4] = *p;
    let [q1, q2, q3, q4] = *pp;
    let beta = c(0.25 * (p2 * p2 + p4 * p4 - 5.0 * q2 * q2 - 5.0 * q4 * q4) - p1 * p1
        + q1 * (3.0 * p1 - 2.0 * q1)
        + q2 * (3.0 * p1 - p4 - 4.0 * q1)
        + q3 * (p2 + p3 - q3)
        + q4 * (p1 + 3.0 * p2 + 3.0 * p3 - 4.0 * q3))
        + 2.0 * (p1 - q1 - q2 + q4) * I * eta;
    let num = d.phi(p2 + p3 - q3 - q4 + I * eta)? * phi_tilde(&t, -p2 + p4 - q2 + q4 - I * et)?;
    let den = phi_tilde(&t, p4 - q2 - I * et)? * phi_tilde(&t, q4 - p2 - I * et)?;
    let amp = (I * PI * beta).exp() * num / den;
    finite(KernelValue {
        on_support: on_support(&constraints, p, pp),
        constraints,
        amplitude: amp,
        symbolic_constant: Some("varrho'_p".into()),
    })
}

/// Result of comparing the Fourier transform of the coordinate R kernel
/// with the momentum kernel.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FourierCheck {
    pub transformed: C,
    pub momentum: C,
    pub residual: f64,
}

/// Both kernels smeared over `p'₃` with `g(p'₃) = e^{−(p'₃−center)²/σ²}`,
/// at free momenta `(p₁, p₂, p'₂)`; the other two momenta sit on the delta
/// support.
///
/// Coordinate side: after the two plane-wave integrals that produce the
/// deltas, the kernel is integrated over `s = x₁−x'₁` and `y = x'₃−x₃`
/// against `e^{iπ(s(p'₂−p₁)−y p₂)} ĝ(y)`. Needs real ξ and `Im ζ·ℓ₂₃ > 0`
/// so that no pole of φ sits on either integration line.
#[allow(clippy::too_many_arguments)]
pub fn fourier_cross_check(
    d: &Dilog,
    free: [f64; 3],
    center: f64,
    sigma: f64,
    ell: &[f64; 3],
    xi: C,
    zeta: C,
) -> Result<FourierCheck> {
    let l23 = ell[1] - ell[2];
    if xi.im != 0.0 || zeta.im * l23 <= 0.0 {
        return Err(Error::Numeric("fourier check needs real ξ and Im ζ·ℓ23 > 0".into()));
    }
    let [p1, p2, q2] = free;
    let form = r_coord_form(xi, zeta);
    let rho_x = 1.0 / (2.0 * d.params.k_const());
    let sq_pi = PI.sqrt();
    // ĝ(y) = σ√π e^{iπyc} e^{−π²σ²y²/4}
    let ghat = |y: f64| sigma * sq_pi * (I * PI * y * center).exp() * (-(PI * sigma * y).powi(2) / 4.0).exp();
    let half = 10.0 * sigma;
    let s0 = p2 - center - xi.re * l23;
    let hs = sigma / 50.0;
    let ns = (2.0 * half / hs).ceil() as i64;
    let ymax = 14.0 / (PI * sigma);
    let ny = (2.0 * ymax / 0.02).ceil() as i64;
    let hy = 2.0 * ymax / ny as f64;
    let eta = d.eta();
    let mut lhs = C::new(0.0, 0.0);
    for i in 0..=ns {
        let s = s0 - half + i as f64 * hs;
        let phi = d.phi(form.phi_arg.eval(s, 0.0, ell, eta))?;
        let a = form.exp_a.eval(s, 0.0, ell, eta);
        let mut inner = C::new(0.0, 0.0);
        for j in 0..=ny {
            let y = -ymax + j as f64 * hy;
            // Y = x₂ − x'₂ = y − s on the delta support
            let b = form.exp_b.eval(s, y - s, ell, eta);
            inner += ghat(y) * (I * PI * (a * b - y * p2)).exp();
        }
        lhs += phi * inner * hy * (I * PI * s * (q2 - p1)).exp();
    }
    lhs *= 4.0 * rho_x * hs;

    let hp = sigma / 50.0;
    let np = (2.0 * half / hp).ceil() as i64;
    let mut rhs = C::new(0.0, 0.0);
    for i in 0..=np {
        let q3 = center - half + i as f64 * hp;
        let g = (-((q3 - center) / sigma).powi(2)).exp();
        let p3 = q2 + q3 - p2;
        let q1 = p1 + p2 - q2;
        let k = kernel_r_mom(d, &[p1, p2, p3], &[q1, q2, q3], ell, xi, zeta)?;
        rhs += g * k.amplitude;
    }
    rhs *= hp;
    Ok(FourierCheck { transformed: lhs, momentum: rhs, residual: (lhs - rhs).norm() / rhs.norm().max(1e-300) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_form_is_the_xi_one_zeta_minus_one_case() {
        assert_eq!(r_coord_form(c(1.0), c(-1.0)), r_coord_printed_form());
        assert_ne!(r_coord_form(c(1.0), c(1.0)), r_coord_printed_form());
    }

    #[test]
    fn delta_display() {
        let d = Delta::new('x', &[0, 1, 0], &[1, 0, 1]);
        assert_eq!(d.to_string(), "δ(x2-x'1-x'3)");
    }

    #[test]
    fn ell_enters_only_with_xi_zeta() {
        let d = Dilog::with_b(0.8).unwrap();
        let (x, xp) = ([0.1, 0.4, -0.3], [0.5, -0.2, -0.1]);
        let a = kernel_r_coord(&d, &x, &xp, &[0.0; 3], c(0.0), c(0.0)).unwrap();
        let b = kernel_r_coord(&d, &x, &xp, &[0.7, -0.2, 1.1], c(0.0), c(0.0)).unwrap();
        assert!((a.amplitude - b.amplitude).norm() < 1e-14);
    }
}
