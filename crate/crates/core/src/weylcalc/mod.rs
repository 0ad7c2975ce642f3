//! q-Weyl calculus modulo center: P and P^K operators as affine maps,
//! φ embeddings, and the tetrahedron / 3D reflection checks at the
//! level of adjoint actions.
//!
//! Exponentials are Weyl ordered: `e^X e^Y = q^{[X,Y]/2ħ} e^{X+Y}`.

mod form;
mod op;

pub use form::{parse_mono, q, qr, solve, Form, Gen, WeylMono, Q};
pub use op::AffineOp;

use crate::error::{Error, Result};
use crate::qtorus::{dilog_factors, instance, tau_composite, tau_map, PsiFactor, TauMap};
use crate::quiver::{builtin_quiver, BuiltinQuiver, Seed};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

pub const TETRA_WEIGHTS: [i64; 6] = [1; 6];
pub const REFL_WEIGHTS: [i64; 9] = [1, 1, 2, 1, 1, 2, 1, 1, 2];

fn distinct(ix: &[usize], n: usize) -> Result<()> {
    for (a, &x) in ix.iter().enumerate() {
        if x == 0 || x > n {
            return Err(Error::VertexOutOfRange(x));
        }
        if ix[..a].contains(&x) {
            return Err(Error::BadPermutation(format!("index clash {ix:?}")));
        }
    }
    Ok(())
}

/// `P_ijk = ρ_jk e^{p_i(u_k−u_j)/ħ} e^{(1−α)λ_jk(u_k−u_i)/ħ} e^{αλ_jk(p_i−p_j+p_k)/ħ}`.
pub fn make_p(w: &[i64], i: usize, j: usize, k: usize, alpha: &Q) -> Result<AffineOp> {
    distinct(&[i, j, k], w.len())?;
    let n = w.len();
    let l = Form::lam_diff(n, j, k);
    let a1 = l.scale(&(Q::one() - alpha));
    let a2 = l.scale(alpha);
    Ok(AffineOp::product(&[
        AffineOp::rho(w, j, k),
        AffineOp::exp_pu(w, i, &[(k, 1), (j, -1)]),
        AffineOp::exp_linear(w, &[(a1.clone(), Gen::U(k)), (a1.scale(&q(-1)), Gen::U(i))]),
        AffineOp::exp_linear(w, &[(a2.clone(), Gen::P(i)), (a2.scale(&q(-1)), Gen::P(j)), (a2, Gen::P(k))]),
    ]))
}

/// `P^K_ijkl = ρ_jl e^{p_i(u_l−u_j)/ħ}
///   e^{(λ_jl/2ħ)(2(1−β)(u_k−u_i)+(1−γ)(u_l−u_j))}
///   e^{(λ_jl/2ħ)(2βp_i+(γ−2β)p_j+2(β−γ)p_k+γp_l)}`.
pub fn make_pk(w: &[i64], i: usize, j: usize, k: usize, l: usize, beta: &Q, gamma: &Q) -> Result<AffineOp> {
    distinct(&[i, j, k, l], w.len())?;
    let n = w.len();
    let h = Form::lam_diff(n, j, l).scale(&qr(1, 2));
    let one = Q::one();
    let c = |x: Q| h.scale(&x);
    let two = q(2);
    Ok(AffineOp::product(&[
        AffineOp::rho(w, j, l),
        AffineOp::exp_pu(w, i, &[(l, 1), (j, -1)]),
        AffineOp::exp_linear(
            w,
            &[
                (c(&two * (&one - beta)), Gen::U(k)),
                (c(-&two * (&one - beta)), Gen::U(i)),
                (c(&one - gamma), Gen::U(l)),
                (c(-(&one - gamma)), Gen::U(j)),
            ],
        ),
        AffineOp::exp_linear(
            w,
            &[
                (c(&two * beta), Gen::P(i)),
                (c(gamma - &two * beta), Gen::P(j)),
                (c(&two * (beta - gamma)), Gen::P(k)),
                (c(gamma.clone()), Gen::P(l)),
            ],
        ),
    ]))
}

fn lin(n: usize, terms: &[(i64, Gen)], lam: &Form, lc: &Q) -> Form {
    Form::from_terms(n, terms).add(&lam.scale(lc))
}

/// The printed π_ijk(α) table.
pub fn pi_map(w: &[i64], i: usize, j: usize, k: usize, alpha: &Q) -> Result<AffineOp> {
    distinct(&[i, j, k], w.len())?;
    let n = w.len();
    let l = Form::lam_diff(n, j, k);
    let one = Q::one();
    let b = &one - alpha;
    use Gen::*;
    Ok(AffineOp::identity(w)
        .with_image(P(i), lin(n, &[(1, P(i))], &l, &b))
        .with_image(P(j), lin(n, &[(1, P(k)), (1, P(i))], &l, &Q::zero()))
        .with_image(P(k), lin(n, &[(1, P(j)), (-1, P(i))], &l, &-b.clone()))
        .with_image(U(i), lin(n, &[(1, U(i)), (1, U(j)), (-1, U(k))], &l, alpha))
        .with_image(U(j), lin(n, &[(1, U(k))], &l, &-alpha.clone()))
        .with_image(U(k), lin(n, &[(1, U(j))], &l, alpha)))
}

/// The printed π^K_ijkl(β, γ) table.
pub fn pi_k_map(w: &[i64], i: usize, j: usize, k: usize, l: usize, beta: &Q, gamma: &Q) -> Result<AffineOp> {
    distinct(&[i, j, k, l], w.len())?;
    let n = w.len();
    let lam = Form::lam_diff(n, j, l);
    let one = Q::one();
    let two = q(2);
    use Gen::*;
    Ok(AffineOp::identity(w)
        .with_image(P(i), lin(n, &[(1, P(i))], &lam, &(&one - beta)))
        .with_image(P(j), lin(n, &[(1, P(l)), (2, P(i))], &lam, &(&one - gamma)))
        .with_image(P(k), lin(n, &[(1, P(k))], &lam, &-(&one - beta)))
        .with_image(P(l), lin(n, &[(1, P(j)), (-2, P(i))], &lam, &-(&one - gamma)))
        .with_image(U(i), lin(n, &[(1, U(i)), (1, U(j)), (-1, U(l))], &lam, beta))
        .with_image(U(j), lin(n, &[(1, U(l))], &lam, &(gamma - &two * beta)))
        .with_image(U(k), lin(n, &[(1, U(k))], &lam, &(beta - gamma)))
        .with_image(U(l), lin(n, &[(1, U(j))], &lam, gamma)))
}

/// An operator occurrence in a tetrahedron or reflection word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpIdx {
    R(usize, usize, usize),
    K(usize, usize, usize, usize),
}

impl OpIdx {
    fn name(&self) -> String {
        match *self {
            OpIdx::R(i, j, k) => format!("P{i}{j}{k}"),
            OpIdx::K(i, j, k, l) => format!("PK{i}{j}{k}{l}"),
        }
    }
}

use OpIdx::{K, R};

pub const TETRA_LHS: [OpIdx; 4] = [R(4, 5, 6), R(2, 3, 6), R(1, 3, 5), R(1, 2, 4)];
pub const TETRA_RHS: [OpIdx; 4] = [R(1, 2, 4), R(1, 3, 5), R(2, 3, 6), R(4, 5, 6)];
pub const REFL_LHS: [OpIdx; 7] = [R(4, 5, 7), K(4, 6, 8, 9), K(2, 3, 7, 9), R(2, 5, 8), R(1, 7, 8), K(1, 3, 5, 6), R(1, 2, 4)];
pub const REFL_RHS: [OpIdx; 7] = [R(1, 2, 4), K(1, 3, 5, 6), R(1, 7, 8), R(2, 5, 8), K(2, 3, 7, 9), K(4, 6, 8, 9), R(4, 5, 7)];

/// Parameters (α for R-type, β and γ for K-type).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub alpha: Q,
    pub beta: Q,
    pub gamma: Q,
}

impl Default for Params {
    fn default() -> Self {
        Params { alpha: Q::zero(), beta: Q::zero(), gamma: Q::zero() }
    }
}

fn word(w: &[i64], ops: &[OpIdx], prm: &Params, printed: bool) -> Result<AffineOp> {
    let v: Result<Vec<AffineOp>> = ops
        .iter()
        .map(|o| match (*o, printed) {
            (R(i, j, k), false) => make_p(w, i, j, k, &prm.alpha),
            (R(i, j, k), true) => pi_map(w, i, j, k, &prm.alpha),
            (K(i, j, k, l), false) => make_pk(w, i, j, k, l, &prm.beta, &prm.gamma),
            (K(i, j, k, l), true) => pi_k_map(w, i, j, k, l, &prm.beta, &prm.gamma),
        })
        .collect();
    Ok(AffineOp::product(&v?))
}

pub fn verify_pi_tetrahedron(alpha: &Q) -> Result<bool> {
    let p = Params { alpha: alpha.clone(), ..Params::default() };
    Ok(word(&TETRA_WEIGHTS, &TETRA_LHS, &p, true)? == word(&TETRA_WEIGHTS, &TETRA_RHS, &p, true)?)
}
pub fn verify_p_tetrahedron(alpha: &Q) -> Result<bool> {
    let p = Params { alpha: alpha.clone(), ..Params::default() };
    Ok(word(&TETRA_WEIGHTS, &TETRA_LHS, &p, false)? == word(&TETRA_WEIGHTS, &TETRA_RHS, &p, false)?)
}
pub fn verify_pi_reflection(p: &Params) -> Result<bool> {
    Ok(word(&REFL_WEIGHTS, &REFL_LHS, p, true)? == word(&REFL_WEIGHTS, &REFL_RHS, p, true)?)
}
pub fn verify_p_reflection(p: &Params) -> Result<bool> {
    Ok(word(&REFL_WEIGHTS, &REFL_LHS, p, false)? == word(&REFL_WEIGHTS, &REFL_RHS, p, false)?)
}

/// Permutation parts only: ρ_24ρ_35ρ_36ρ_56 = ρ_56ρ_36ρ_35ρ_24.
pub fn verify_rho_braid() -> bool {
    let w = &TETRA_WEIGHTS;
    let r = |i, j| AffineOp::rho(w, i, j);
    AffineOp::product(&[r(2, 4), r(3, 5), r(3, 6), r(5, 6)]) == AffineOp::product(&[r(5, 6), r(3, 6), r(3, 5), r(2, 4)])
}

/// Every P and P^K agrees with its printed π table and preserves the commutators.
pub fn verify_ad_faithfulness(p: &Params) -> Result<bool> {
    for (w, ops) in [(&TETRA_WEIGHTS[..], &TETRA_LHS[..]), (&REFL_WEIGHTS[..], &REFL_LHS[..])] {
        for o in ops {
            let a = word(w, &[*o], p, false)?;
            if a != word(w, &[*o], p, true)? || !a.preserves_symplectic() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `P_123` at α = 0 rebuilt as ρ_23 ∘ Ad(e^{p_1(u_3−u_2)/ħ}) ∘ Ad(e^{λ_23(u_3−u_1)/ħ}).
pub fn verify_p123_composition() -> Result<bool> {
    let w = [1, 1, 1];
    let l = Form::lam_diff(3, 2, 3);
    let built = AffineOp::product(&[
        AffineOp::rho(&w, 2, 3),
        AffineOp::exp_pu(&w, 1, &[(3, 1), (2, -1)]),
        AffineOp::exp_linear(&w, &[(l.clone(), Gen::U(3)), (l.scale(&q(-1)), Gen::U(1))]),
    ]);
    Ok(built == make_p(&w, 1, 2, 3, &Q::zero())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhiName {
    A2_121,
    A2_212,
    C2_1212,
    C2_2121,
    A3_123121,
    C3_123123123,
}

impl FromStr for PhiName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A2_121" => PhiName::A2_121,
            "A2_212" => PhiName::A2_212,
            "C2_1212" => PhiName::C2_1212,
            "C2_2121" => PhiName::C2_2121,
            "A3_123121" => PhiName::A3_123121,
            "C3_123123123" => PhiName::C3_123123123,
            _ => return Err(Error::UnknownName(s.into())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiEmbedding {
    pub weights: Vec<i64>,
    pub images: Vec<WeylMono>,
}

const PHI_TABLE: &[(PhiName, &str, &[&str])] = &[
    (PhiName::A2_121, "1 1 1", &["k2^-1 p2 -u2 -p1", "k2 p2 u2 -p3", "k1^-1 p1 -u1", "k1 k3^-1 p1 u1 p3 -u3 -p2", "k3 p3 u3"]),
    (PhiName::A2_212, "1 1 1", &["k3^-1 p3 -u3", "k1 p1 u1", "k2^-1 p2 -u2 -p3", "k1^-1 k3 p3 u3 p1 -u1 -p2", "k2 p2 u2 -p1"]),
    (
        PhiName::C2_1212,
        "1 2 1 2",
        &["k2^-1 p2 -u2 -2p1", "k2 k4^-1 p2 u2 p4 -u4 -2p3", "k4 p4 u4", "k1^-1 p1 -u1", "k1 k3^-1 p1 u1 p3 -u3 -p2", "k3 p3 u3 -p4"],
    ),
    (
        PhiName::C2_2121,
        "1 2 1 2",
        &["k4^-1 p4 -u4", "k4 k2^-1 p4 u4 p2 -u2 -2p3", "k2 p2 u2 -2p1", "k3^-1 p3 -u3 -p4", "k3 k1^-1 p3 u3 p1 -u1 -p2", "k1 p1 u1"],
    ),
    (
        PhiName::A3_123121,
        "1 1 1 1 1 1",
        &[
            "k3^-1 p3 -u3 -p2",
            "k3 p3 u3 -p5",
            "k2^-1 p2 -u2 -p1",
            "k2 k5^-1 p2 u2 p5 -u5 -p3 -p4",
            "k5 p5 u5 -p6",
            "k1^-1 p1 -u1",
            "k1 k4^-1 p1 u1 p4 -u4 -p2",
            "k4 k6^-1 p4 u4 p6 -u6 -p5",
            "k6 p6 u6",
        ],
    ),
    (
        PhiName::C3_123123123,
        "1 1 2 1 1 2 1 1 2",
        &[
            "k3^-1 p3 -u3 -2p2",
            "k3 k6^-1 p3 u3 p6 -u6 -2p5",
            "k6 k9^-1 p6 u6 p9 -u9 -2p8",
            "k9 p9 u9",
            "k2^-1 p2 -u2 -p1",
            "k2 k5^-1 p2 u2 p5 -u5 -p3 -p4",
            "k5 k8^-1 p5 u5 p8 -u8 -p6 -p7",
            "k8 p8 u8 -p9",
            "k1^-1 p1 -u1",
            "k1 k4^-1 p1 u1 p4 -u4 -p2",
            "k4 k7^-1 p4 u4 p7 -u7 -p5",
            "k7 p7 u7 -p8",
        ],
    ),
];

pub fn build_phi(name: PhiName) -> PhiEmbedding {
    let (_, w, rows) = PHI_TABLE.iter().find(|r| r.0 == name).expect("table entry");
    let weights: Vec<i64> = w.split_whitespace().map(|x| x.parse().unwrap()).collect();
    let n = weights.len();
    let images = rows.iter().map(|r| parse_mono(n, r).expect("table row parses")).collect();
    PhiEmbedding { weights, images }
}

impl PhiEmbedding {
    pub fn n(&self) -> usize {
        self.weights.len()
    }
    /// φ(Y^v) = exp(Σ v_i X_i) in Weyl order.
    pub fn image_of(&self, v: &[i64]) -> WeylMono {
        let mut f = Form::zero(self.n());
        for (x, img) in v.iter().zip(&self.images) {
            if *x != 0 {
                f = f.add(&img.form.scale(&q(*x)));
            }
        }
        WeylMono::new(f)
    }
    /// Integer v with φ(Y^v) = e^F, if any.
    pub fn preimage(&self, f: &Form) -> Option<Vec<i64>> {
        let cols: Vec<Vec<Q>> = self.images.iter().map(|m| m.form.c.clone()).collect();
        let x = solve(&cols, &f.c)?;
        // the images are independent, so the solution is unique
        x.iter().map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None }).collect()
    }
}

/// Whether Σ w_i(a_i b'_i − b_i a'_i) = 2b̂_ij for every pair.
pub fn check_phi_commutation(phi: &PhiEmbedding, seed: &Seed) -> bool {
    if phi.images.len() != seed.n {
        return false;
    }
    (1..=seed.n).all(|i| {
        (1..=seed.n).all(|j| phi.images[i - 1].form.commutator(&phi.images[j - 1].form, &phi.weights) == q(seed.bhat2(i, j)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramCase {
    R,
    K,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramOutcome {
    pub holds: bool,
    /// `(generator, π∘φ' image, φ∘τ image)` for every generator.
    pub rows: Vec<(usize, String, String)>,
}

/// π_123∘φ' = φ∘τ_{4,+} (R), and π^K_1234∘φ' = φ∘τ_{2,+}τ_{5,+}τ_{2,−} (K).
pub fn verify_diagram(case: DiagramCase) -> Result<DiagramOutcome> {
    let (phi, phi2, tau, pi): (PhiEmbedding, PhiEmbedding, TauMap, AffineOp) = match case {
        DiagramCase::R => {
            let s = builtin_quiver(BuiltinQuiver::J121);
            let phi = build_phi(PhiName::A2_121);
            let pi = pi_map(&phi.weights, 1, 2, 3, &Q::zero())?;
            (phi, build_phi(PhiName::A2_212), tau_map(&s, 4, 1)?, pi)
        }
        DiagramCase::K => {
            let s = builtin_quiver(BuiltinQuiver::J1212);
            let phi = build_phi(PhiName::C2_1212);
            let pi = pi_k_map(&phi.weights, 1, 2, 3, 4, &Q::zero(), &Q::zero())?;
            (phi, build_phi(PhiName::C2_2121), tau_composite(&s, &[2, 5, 2], &[1, 1, -1])?.0, pi)
        }
    };
    let mut rows = Vec::new();
    let mut holds = true;
    for i in 1..=phi2.images.len() {
        let a = WeylMono { form: pi.apply(&phi2.images[i - 1].form), qpow2: phi2.images[i - 1].qpow2 };
        let b = phi.image_of(&tau.cols[i - 1]);
        holds &= a == b;
        rows.push((i, a.to_string(), b.to_string()));
    }
    Ok(DiagramOutcome { holds, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainCase {
    Tetra,
    Reflection,
}

/// Ψ-arguments of the R and K factors, as `(exponent, base, inverse)`.
pub fn factor_args(w: &[i64], o: OpIdx) -> Vec<(Form, i64, bool)> {
    let n = w.len();
    use Gen::*;
    let r = |i, j, k| Form::from_terms(n, &[(1, P(i)), (1, U(i)), (1, P(k)), (-1, U(k)), (-1, P(j)), (1, Lam(i)), (-1, Lam(k))]);
    match o {
        R(i, j, k) => vec![(r(i, j, k), 1, false)],
        K(i, j, k, l) => {
            let a = Form::from_terms(n, &[(1, P(j)), (1, U(j)), (1, P(l)), (-1, U(l)), (-2, P(k)), (1, Lam(j)), (-1, Lam(l))]);
            vec![(a.clone(), 2, false), (r(i, j, k), 1, false), (a, 2, true)]
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainStep {
    pub op: String,
    /// Argument of the R/K factor.
    pub argument: String,
    /// The same argument conjugated into φ-coordinates.
    pub conjugated: String,
    /// Its torus exponent, if it lies in the image of φ.
    pub exponent: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainOutcome {
    pub holds: bool,
    pub steps: Vec<ChainStep>,
    pub factors: Vec<PsiFactor>,
    pub expected: Vec<PsiFactor>,
}

/// Moves every P to the right: the m-th R/K argument conjugated by
/// Ad(P_1⋯P_{m−1}) must be φ of the m-th block of the dilogarithm product.
pub fn verify_full_conjugation_chain(side: Side, case: ChainCase) -> Result<ChainOutcome> {
    let (w, ops, phi, inst): (&[i64], &[OpIdx], PhiEmbedding, _) = match case {
        ChainCase::Tetra => (
            &TETRA_WEIGHTS,
            if side == Side::L { &TETRA_LHS } else { &TETRA_RHS },
            build_phi(PhiName::A3_123121),
            instance("r")?,
        ),
        ChainCase::Reflection => (
            &REFL_WEIGHTS,
            if side == Side::L { &REFL_LHS } else { &REFL_RHS },
            build_phi(PhiName::C3_123123123),
            instance("k")?,
        ),
    };
    // The K-type word on the left carries the block pattern R K K R R K R,
    // which is that of the second mutation sequence; the words pair crosswise.
    let left_seq = match case {
        ChainCase::Tetra => side == Side::L,
        ChainCase::Reflection => side == Side::R,
    };
    let seq = if left_seq { &inst.seq_a } else { &inst.seq_b };
    let expected = dilog_factors(&inst.seed(), seq)?;
    let zero = Params::default();
    let mut prefix = AffineOp::identity(w);
    let mut steps = Vec::new();
    let mut factors = Vec::new();
    let mut ok = true;
    for o in ops {
        for (arg, base, inverse) in factor_args(w, *o) {
            let c = prefix.apply(&arg);
            let v = phi.preimage(&c);
            match &v {
                Some(v) => factors.push(PsiFactor { alpha: v.clone(), base, inverse }),
                None => ok = false,
            }
            steps.push(ChainStep { op: o.name(), argument: arg.to_string(), conjugated: c.to_string(), exponent: v });
        }
        prefix = prefix.compose(&word(w, &[*o], &zero, false)?);
    }
    let holds = ok && factors == expected;
    Ok(ChainOutcome { holds, steps, factors, expected })
}

/// Ad(P_prefix)^{-1} applied to an argument: the printed direction of the chain.
pub fn conjugate_back(w: &[i64], prefix: &[OpIdx], f: &Form) -> Result<Form> {
    if prefix.is_empty() {
        return Ok(f.clone());
    }
    Ok(word(w, prefix, &Params::default(), false)?.inverse()?.apply(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_matches_pi_at_zero() {
        let w = [1, 1, 1];
        assert_eq!(make_p(&w, 1, 2, 3, &Q::zero()).unwrap(), pi_map(&w, 1, 2, 3, &Q::zero()).unwrap());
    }

    #[test]
    fn inverse_roundtrip() {
        let w = REFL_WEIGHTS;
        let a = make_pk(&w, 4, 6, 8, 9, &qr(1, 3), &qr(-2, 5)).unwrap();
        assert_eq!(a.compose(&a.inverse().unwrap()), AffineOp::identity(&w));
    }

    #[test]
    fn index_clash() {
        assert!(make_p(&[1, 1, 1], 1, 1, 2, &Q::zero()).is_err());
    }
}
